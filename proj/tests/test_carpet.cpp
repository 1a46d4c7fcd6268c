#include <doctest.h>

#include "bmc/errors.hpp"
#include "support.hpp"

#include <cmath>

using namespace bmc;
using fx::q;

namespace {

DigitSequence seq(const char* text, int base) { return DigitSequence::parse(text, base); }

std::vector<Interval> as_intervals(const SelfSimilarSlice& s, int j) { return s.level(j); }

}  // namespace

TEST_CASE("spec validation") {
    CHECK_THROWS_AS(CarpetSpec(2, 3, {{0, 0}}), ValidationError);
    CHECK_THROWS_AS(CarpetSpec(3, 3, {{0, 0}}), ValidationError);
    CHECK_THROWS_AS(CarpetSpec(3, 1, {{0, 0}}), ValidationError);
    CHECK_THROWS_AS(CarpetSpec(3, 2, {}), ValidationError);
    CHECK_THROWS_AS(CarpetSpec(3, 2, {{3, 0}}), ValidationError);
    CHECK_THROWS_AS(CarpetSpec(3, 2, {{0, 2}}), ValidationError);
    CHECK_THROWS_AS(CarpetSpec(3, 2, {{0, 0}, {0, 0}}), ValidationError);
}

TEST_CASE("fixture files match the inline fixtures") {
    CHECK(fx::load("ex1") == fx::ex1());
    CHECK(fx::load("ex2") == fx::ex2());
    CHECK(fx::load("ex3") == fx::ex3());
    CHECK(fx::load("product53") == fx::product53());
}

TEST_CASE("classification") {
    auto c1 = validate(fx::ex1());
    CHECK_FALSE(c1.is_product);
    CHECK(c1.independent);
    CHECK(c1.case_label == 'A');
    auto c2 = validate(fx::ex2());
    CHECK_FALSE(c2.is_product);
    CHECK(c2.case_label == 'B');
    CHECK(c2.full_rows == std::vector<int>{1});
    auto c3 = validate(CarpetSpec(3, 2, {{0, 0}, {2, 0}, {0, 1}, {2, 1}}));
    CHECK(c3.is_product);
    auto c4 = validate(CarpetSpec(3, 2, {{0, 0}, {1, 0}, {2, 0}, {0, 1}, {1, 1}, {2, 1}}));
    CHECK(c4.case_label == 'C');
    auto c5 = validate(CarpetSpec(4, 2, {{0, 0}, {1, 1}}));
    CHECK_FALSE(c5.independent);
    auto c6 = validate(CarpetSpec(3, 2, {{0, 1}, {2, 1}}));
    CHECK(c6.single_row);
    auto c7 = validate(CarpetSpec(3, 2, {{1, 0}, {1, 1}}));
    CHECK(c7.single_column);
    CHECK(validate(fx::product53()).is_product);
}

TEST_CASE("carpet_approx examples") {
    const auto s = fx::ex1();
    CHECK(carpet_approx(s, 0) == BoxSet({Box::make(0, 0, 1, 1)}));
    CHECK(carpet_approx(s, 1) == BoxSet({Box::make(0, 0, q(1, 3), q(1, 2)), Box::make(q(1, 3), q(1, 2), q(2, 3), 1),
                                         Box::make(q(2, 3), 0, 1, q(1, 2))}));
    for (const auto& spec : {fx::ex1(), fx::ex2(), fx::ex3(), fx::product53()}) {
        for (int k = 0; k <= 4; ++k) {
            const BoxSet a = carpet_approx(spec, k);
            CHECK(a.size() == static_cast<std::size_t>(std::pow(spec.gamma().size(), k)));
            const auto cells = fx::brute_cells(spec, k);
            CHECK(a.boxes() == std::vector<Box>(cells.begin(), cells.end()));
        }
    }
}

TEST_CASE("carpet_approx nests") {
    for (const auto& spec : {fx::ex1(), fx::ex2(), fx::ex3()}) {
        for (int k = 0; k < 4; ++k) {
            const BoxSet coarse = carpet_approx(spec, k);
            const BoxSet fine = carpet_approx(spec, k + 1);
            for (const auto& b : fine.boxes()) {
                bool inside = false;
                for (const auto& c : coarse.boxes()) inside = inside || c.contains(b);
                CHECK(inside);
            }
        }
    }
}

TEST_CASE("carpet_approx budget") {
    CHECK_THROWS_AS(carpet_approx(fx::ex2(), 12, 1000), ResourceError);
}

TEST_CASE("gamma rows and columns") {
    const auto s = fx::ex1();
    CHECK(gamma_row(s, {0}) == std::vector<Word>{{0}, {2}});
    CHECK(gamma_row(s, {1}) == std::vector<Word>{{1}});
    CHECK(gamma_row(s, {0, 1}) == std::vector<Word>{{0, 1}, {2, 1}});
    CHECK(gamma_col(s, {1}) == std::vector<Word>{{1}});
    CHECK(gamma_col(s, {0, 2}) == std::vector<Word>{{0, 0}});
    // Brute force over gamma^3.
    for (const auto& b : std::vector<Word>{{0, 0, 1}, {1, 0, 1}, {1, 1, 1}}) {
        std::vector<Word> expect;
        for (const auto& w : gamma_words(s, 3)) {
            if (w.b == b) expect.push_back(w.a);
        }
        std::sort(expect.begin(), expect.end());
        CHECK(gamma_row(s, b) == expect);
    }
}

TEST_CASE("gamma words and witnesses") {
    const auto s = fx::ex1();
    const auto w2 = gamma_words(s, 2);
    CHECK(w2.size() == 9);
    CHECK(std::is_sorted(w2.begin(), w2.end()));
    const GammaWord w = parse_gamma_word(s, "1,1;0,0");
    CHECK(w.a == Word{1, 0});
    CHECK(w.b == Word{1, 0});
    CHECK(to_string(w) == "1,1;0,0");
    CHECK(witness_point(s, w) == Point2{fx::series_value({}, {1, 0}, 3), fx::series_value({}, {1, 0}, 2)});
    CHECK_THROWS_AS(parse_gamma_word(s, "1,0"), ParseError);
    CHECK_THROWS_AS(parse_gamma_word(s, "x"), ParseError);
    for (int k = 1; k <= 3; ++k) {
        for (const auto& g : gamma_words(s, k)) {
            const Point2 p = witness_point(s, g);
            for (int d = 0; d <= 6; ++d) CHECK(in_carpet_approx(s, p, d));
        }
    }
}

TEST_CASE("membership and distance agree with box scans") {
    for (const auto& spec : {fx::ex1(), fx::ex2(), fx::ex3()}) {
        for (int d = 1; d <= 4; ++d) {
            const auto cells = fx::brute_cells(spec, d);
            for (long i = -2; i <= 14; ++i) {
                for (long j = -2; j <= 14; ++j) {
                    const Point2 p{q(i, 12), q(j, 12)};
                    CHECK(in_carpet_approx(spec, p, d) == fx::brute_contains(cells, p));
                    CHECK(dist_sq_to_approx(spec, p, d) == fx::brute_dist_sq(cells, p));
                }
            }
        }
    }
}

TEST_CASE("symbolic slices") {
    const auto s = fx::ex1();
    for (int d = 0; d <= 6; ++d) {
        CHECK(symbolic_slice_approx(s, seq("(0)", 2), d).intervals == dd_level_approx(DeletedDigitSpec(3, {0, 2}), d));
    }
    const auto one = symbolic_slice_approx(s, seq("(1)", 2), 8);
    REQUIRE(one.intervals.size() == 1);
    CHECK(one.intervals[0].contains(q(1, 2)));
    CHECK(one.intervals[0].length() == fx::pow_inv(3, 8));
    const CarpetSpec gap(3, 2, {{0, 0}, {1, 0}});
    CHECK(symbolic_slice_approx(gap, seq("1(0)", 2), 3).empty());
}

TEST_CASE("slice_at examples") {
    const auto s2 = fx::ex2();
    for (int d = 1; d <= 7; ++d) {
        // (1/3)(C + i) for i = 0, 1, 2 together with [0,1/3] and [2/3,1].
        std::vector<Interval> expect{{q(0), q(1, 3)}, {q(2, 3), q(1)}};
        for (const auto& iv : fx::brute_levels({0, 2}, 3, d - 1)) {
            for (int i = 0; i < 3; ++i) expect.push_back({(iv.lo + i) / 3, (iv.hi + i) / 3});
        }
        CHECK(merge_intervals(slice_at(s2, q(1, 2), d).intervals) == merge_intervals(expect));
    }
    const auto zero = slice_at(fx::ex1(), q(0), 5);
    CHECK(zero.sources.size() == 1);
    CHECK(zero.intervals == dd_level_approx(DeletedDigitSpec(3, {0, 2}), 5));
    CHECK(slice_at(s2, q(1, 2), 4).sources.size() == 2);
    CHECK_THROWS_AS(slice_at(s2, q(3, 2), 2), DomainError);
}

TEST_CASE("slices agree with carpet bands") {
    // For y = j / n^d the cells whose band closure contains y give the slice at depth d.
    for (const auto& spec : {fx::ex1(), fx::ex2(), fx::ex3()}) {
        for (int d = 1; d <= 4; ++d) {
            const long nd = static_cast<long>(std::pow(spec.n(), d));
            for (long t = 0; t <= nd; ++t) {
                const Rational y = q(t, nd);
                std::vector<Interval> band;
                for (const auto& b : fx::brute_cells(spec, d)) {
                    if (b.y0 <= y && y <= b.y1) band.push_back({b.x0, b.x1});
                }
                CHECK(merge_intervals(slice_at(spec, y, d).intervals) == merge_intervals(band));
            }
        }
    }
}

TEST_CASE("slice dimension") {
    const auto s = fx::ex1();
    CHECK(*slice_dimension(s, seq("(0)", 2)) == LogRatio(q(2), BigInt(3)));
    CHECK(slice_dimension(s, seq("(1)", 2))->rational_value() == q(0));
    CHECK(*slice_dimension(s, seq("(01)", 2)) == LogRatio(q(2), BigInt(9)));
    const CarpetSpec gap(3, 2, {{0, 0}, {1, 0}});
    CHECK_FALSE(slice_dimension(gap, seq("(1)", 2)).has_value());
    // Slices sit inside P1 F.
    for (const auto& spec : {fx::ex1(), fx::ex2(), fx::ex3()}) {
        const double p1 = dd_dimension(projection(spec, 1)).to_double();
        for (const char* e : {"(0)", "(1)", "(01)", "0(1)", "(001)"}) {
            if (auto d = slice_dimension(spec, seq(e, spec.n()))) CHECK(d->to_double() <= p1 + 1e-12);
        }
    }
}

TEST_CASE("projections") {
    auto p = projection(fx::ex1(), 1);
    CHECK(p.base == 3);
    CHECK(p.digits == std::vector<int>{0, 1, 2});
    p = projection(fx::ex1(), 2);
    CHECK(p.base == 2);
    CHECK(p.digits == std::vector<int>{0, 1});
    CHECK(projection(CarpetSpec(3, 2, {{0, 0}, {2, 0}, {1, 1}}), 1).digits == std::vector<int>{0, 1, 2});
    CHECK_THROWS_AS(projection(fx::ex1(), 3), DomainError);
    for (const auto& spec : {fx::ex1(), fx::ex2(), fx::ex3(), fx::product53()}) {
        for (int k = 0; k <= 4; ++k) {
            std::vector<Interval> xs, ys;
            const BoxSet a = carpet_approx(spec, k);
            for (const auto& b : a.boxes()) {
                xs.push_back({b.x0, b.x1});
                ys.push_back({b.y0, b.y1});
            }
            CHECK(merge_intervals(xs) == dd_level_approx(projection(spec, 1), k, true));
            CHECK(merge_intervals(ys) == dd_level_approx(projection(spec, 2), k, true));
        }
    }
}

TEST_CASE("self-similar slice form") {
    const auto s = fx::ex1();
    auto f0 = slice_self_similar_form(s, seq("(0)", 2));
    CHECK(f0.offsets == std::vector<Rational>{q(0)});
    CHECK(f0.prefix_length == 0);
    CHECK(f0.base == 3);
    CHECK(f0.digits == std::vector<BigInt>{0, 2});
    auto f1 = slice_self_similar_form(s, seq("(1)", 2));
    CHECK(f1.digits == std::vector<BigInt>{1});
    auto f01 = slice_self_similar_form(s, seq("(01)", 2));
    CHECK(f01.base == 9);
    CHECK(f01.digits == std::vector<BigInt>{1, 7});
    CHECK_THROWS_AS(slice_self_similar_form(s, seq("1(0)", 2)), PreconditionError);
    for (int j = 0; j <= 3; ++j) {
        CHECK(as_intervals(f01, j) == symbolic_slice_approx(s, seq("(01)", 2), 2 * j).intervals);
    }
}

TEST_CASE("interval length bound") {
    CHECK(max_interval_length_bound(fx::ex1(), seq("(01)", 2), 1) == q(1, 3));
    const auto s2 = fx::ex2();
    CHECK(max_interval_length_bound(s2, seq("(0)", 2), 1) == q(1, 3));
    CHECK(longest_merged_interval(symbolic_slice_approx(s2, seq("(0)", 2), 8).intervals) <= q(1, 3));
    CHECK(max_interval_length_bound(s2, seq("1(0)", 2), 2) == q(1, 9));
    CHECK(longest_merged_interval(symbolic_slice_approx(s2, seq("1(0)", 2), 8).intervals) <= q(1, 9));
    CHECK_THROWS_AS(max_interval_length_bound(s2, seq("1(0)", 2), 1), PreconditionError);
    // F_{(1)} is [0,1].
    CHECK(longest_merged_interval(symbolic_slice_approx(s2, seq("(1)", 2), 6).intervals) == 1);
}

TEST_CASE("tight hull approximation") {
    const auto s = fx::ex3();
    const Box h = carpet_hull(s);
    CHECK(h == Box::make(0, 0, 1, 1));
    const CarpetSpec inner(3, 2, {{1, 0}, {2, 1}});
    CHECK(carpet_hull(inner) == Box::make(q(1, 2), 0, 1, 1));
    const BoxSet t = carpet_tight_approx(inner, 3);
    CHECK(t.size() == 8);
    for (const auto& b : t.boxes()) CHECK(h.contains(b));
}
