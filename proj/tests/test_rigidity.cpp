#include <doctest.h>

#include "bmc/errors.hpp"
#include "bmc/rigidity.hpp"
#include "support.hpp"

using namespace bmc;
using fx::q;

namespace {

AffineMap2 linear(Rational a, Rational b, Rational c, Rational d, Rational tx = 0, Rational ty = 0) {
    AffineMap2 g;
    g.a = a;
    g.b = b;
    g.c = c;
    g.d = d;
    g.tx = tx;
    g.ty = ty;
    return g;
}

}  // namespace

TEST_CASE("classify_map examples") {
    auto c = classify_map(AffineMap2::diagonal(q(1, 3), q(1, 2)));
    CHECK(c.diagonal);
    CHECK_FALSE(c.similarity);
    CHECK(c.label() == "diagonal");
    c = classify_map(linear(0, 1, 1, 0));
    CHECK(c.anti_diagonal);
    CHECK(c.similarity);
    CHECK(c.alpha == q(1));
    c = classify_map(linear(q(3, 5), q(4, 5), q(-4, 5), q(3, 5)));
    CHECK(c.similarity);
    CHECK(c.label() == "similarity");
    CHECK(c.alpha == q(1));
    REQUIRE(c.orthogonal.has_value());
    CHECK((*c.orthogonal)[0] == q(3, 5));
    c = classify_map(linear(1, 1, -1, 1));
    CHECK(c.similarity);
    CHECK(c.alpha_sq == q(2));
    CHECK_FALSE(c.alpha.has_value());
    c = classify_map(linear(1, 2, 3, 4));
    CHECK(c.label() == "general");
    CHECK_THROWS_AS(classify_map(linear(1, 2, 2, 4)), DomainError);
}

TEST_CASE("composition closure of diagonal and anti-diagonal maps") {
    const std::vector<Rational> vals{q(1), q(-1), q(1, 3), q(-2, 5), q(7, 2)};
    std::vector<AffineMap2> diag, anti;
    for (const auto& a : vals) {
        for (const auto& b : vals) {
            diag.push_back(AffineMap2::diagonal(a, b, q(1, 7), q(-1, 2)));
            anti.push_back(linear(0, a, b, 0, q(2, 3), q(1, 9)));
        }
    }
    for (const auto& g : diag) {
        for (const auto& h : diag) CHECK(classify_map(compose(g, h)).diagonal);
        for (const auto& h : anti) {
            CHECK(classify_map(compose(g, h)).anti_diagonal);
            CHECK(classify_map(compose(h, g)).anti_diagonal);
        }
    }
    for (const auto& g : anti) {
        for (const auto& h : anti) CHECK(classify_map(compose(g, h)).diagonal);
    }
}

TEST_CASE("induced axis maps and slice actions") {
    auto [g1, g2] = induced_axis_maps(AffineMap2::identity());
    CHECK(g1 == Affine1{q(1), q(0)});
    CHECK(g2 == Affine1{q(1), q(0)});
    std::tie(g1, g2) = induced_axis_maps(AffineMap2::diagonal(q(1, 3), q(1, 2), q(1, 3), q(1, 4)));
    CHECK(g1 == Affine1{q(1, 3), q(1, 3)});
    CHECK(g2 == Affine1{q(1, 2), q(1, 4)});
    CHECK_THROWS_AS(induced_axis_maps(linear(0, 1, 1, 0)), PreconditionError);

    const auto s = fx::ex1();
    const AffineMap2 refl = AffineMap2::diagonal(-1, 1, 1, 0);
    for (long t = 0; t <= 16; ++t) CHECK(slice_action_holds(s, refl, q(t, 16), 6));
    // The IFS map for digit (0,0) preserves F; the homothety x/3 sends
    // F_1 = {1/2} to 1/6, which is not in F_(1/3).
    CHECK(slice_action_holds(s, AffineMap2::diagonal(q(1, 3), q(1, 2)), q(2, 3), 6));
    CHECK_FALSE(slice_action_holds(s, AffineMap2::diagonal(q(1, 3), q(1, 3)), q(1), 6));
}

TEST_CASE("symmetry groups") {
    auto r = symmetry_group(fx::ex1());
    REQUIRE(r.elements.size() == 2);
    CHECK(r.contains(SymmetryKind::identity));
    CHECK(r.contains(SymmetryKind::reflect_x));
    CHECK(r.elements[1].x_line == q(1, 2));
    CHECK(r.elements[1].map == AffineMap2::diagonal(-1, 1, 1, 0));
    for (const auto& e : r.elements) CHECK(e.verified);

    r = symmetry_group(CarpetSpec(3, 2, {{0, 0}, {2, 0}, {0, 1}, {2, 1}}));
    CHECK(r.elements.size() == 4);
    for (const auto& e : r.elements) CHECK(e.verified);

    r = symmetry_group(CarpetSpec(3, 2, {{0, 0}, {1, 1}, {2, 1}}));
    CHECK(r.elements.size() == 1);
    CHECK(r.contains(SymmetryKind::identity));

    // Off-centre hull: the x-line is the midpoint of [0, 1/3].
    r = symmetry_group(CarpetSpec(4, 3, {{0, 0}, {1, 0}, {0, 2}, {1, 2}}));
    CHECK(r.elements.size() == 4);
    CHECK(r.elements[1].x_line == q(1, 6));
    CHECK(r.elements[2].y_line == q(1, 2));
    for (const auto& e : r.elements) CHECK(e.verified);
}

TEST_CASE("symmetries are never refuted and are closed under composition") {
    for (const auto& s : {fx::ex1(), fx::ex2(), fx::ex3(), fx::product53()}) {
        const auto r = symmetry_group(s);
        for (const auto& e : r.elements) {
            CHECK(e.verified);
            for (int d = 1; d <= 4; ++d) CHECK(refute_embedding(s, e.map, d).kind == Verdict::Kind::consistent);
            for (const auto& f : r.elements) {
                const AffineMap2 c = compose(e.map, f.map);
                bool found = false;
                for (const auto& h : r.elements) found = found || h.map == c;
                CHECK(found);
            }
        }
    }
}

TEST_CASE("refute_embedding") {
    const auto s = fx::ex1();
    const auto refl = refute_embedding(s, AffineMap2::diagonal(-1, 1, 1, 0), 6);
    CHECK(refl.kind == Verdict::Kind::consistent);
    CHECK(refl.slack_sq == fx::pow_inv(3, 12) + fx::pow_inv(2, 12));
    const auto homo = refute_embedding(s, AffineMap2::diagonal(q(1, 3), q(1, 3)), 6);
    REQUIRE(homo.kind == Verdict::Kind::refuted);
    CHECK(homo.depth <= 6);
    CHECK(homo.separation_sq > 0);
    // Independent re-check of the witness.
    const auto cells = fx::brute_cells(s, homo.depth);
    CHECK(fx::brute_contains(fx::brute_cells(s, 8), homo.witness));
    CHECK_FALSE(fx::brute_contains(cells, homo.image));
    CHECK(fx::brute_dist_sq(cells, homo.image) == homo.separation_sq);
    CHECK(AffineMap2::diagonal(q(1, 3), q(1, 3))(homo.witness) == homo.image);
    CHECK_THROWS_AS(refute_embedding(s, linear(1, 1, 1, 1), 3), DomainError);
}

TEST_CASE("refute_embedding in one dimension") {
    const DeletedDigitSpec c(3, {0, 2});
    auto v = refute_embedding_1d(c, Affine1{q(1, 3), q(2, 3)}, 6);
    CHECK(v.kind == Verdict::Kind::consistent);
    v = refute_embedding_1d(c, Affine1{q(-1), q(1)}, 6);
    CHECK(v.kind == Verdict::Kind::consistent);
    v = refute_embedding_1d(c, Affine1{q(1, 2), q(0)}, 6);
    REQUIRE(v.kind == Verdict::Kind::refuted);
    CHECK(v.separation > 0);
    bool in_level = false;
    for (const auto& iv : fx::brute_levels({0, 2}, 3, v.depth)) in_level = in_level || iv.contains(v.image);
    CHECK_FALSE(in_level);
}

TEST_CASE("commensurability witness") {
    auto r = commensurability_witness(q(1, 9), 3, 2);
    CHECK(r.log_m == q(-2));
    CHECK_FALSE(r.log_n.has_value());
    CHECK(r.obstructed_n);
    CHECK(r.planar_obstruction);
    r = commensurability_witness(q(1), 3, 2);
    CHECK(r.log_m == q(0));
    CHECK(r.log_n == q(0));
    CHECK_FALSE(r.planar_obstruction);
    r = commensurability_witness(q(1, 6), 3, 2);
    CHECK(r.obstructed_m);
    r = commensurability_witness(q(-1, 9), 3, 2);
    CHECK(r.log_m == q(-2));
    CHECK_THROWS_AS(commensurability_witness(q(0), 3, 2), DomainError);
}

TEST_CASE("translation oracle") {
    const auto r = oracle_translations({0, 2}, 3, 1, 8);
    const auto& surv = r.survivors();
    auto has = [&](const Rational& t) { return std::find(surv.begin(), surv.end(), t) != surv.end(); };
    CHECK(has(q(0)));
    CHECK(has(q(2, 3)));
    CHECK_FALSE(has(q(1, 9)));
    for (const auto& t : surv) CHECK(is_integer(t * 9));
    for (std::size_t d = 1; d < r.survivors_by_depth.size(); ++d) {
        for (const auto& t : r.survivors_by_depth[d]) {
            const auto& prev = r.survivors_by_depth[d - 1];
            CHECK(std::find(prev.begin(), prev.end(), t) != prev.end());
        }
    }
    CHECK_THROWS_AS(oracle_translations({0, 1}, 3, 0, 4), PreconditionError);
    CHECK_THROWS_AS(oracle_translations({0}, 3, 1, 4), PreconditionError);
    CHECK_THROWS_AS(oracle_translations({0, 1, 2}, 3, 1, 4), PreconditionError);
}

TEST_CASE("generalized translation oracle") {
    const auto single = oracle_generalized_translations({0, 2}, 3, 1, {CoverPiece{0, q(0)}}, 6);
    CHECK(single.survivors() == oracle_translations({0, 2}, 3, 1, 6).survivors());
    const auto two = oracle_generalized_translations({0, 2}, 3, 1, {CoverPiece{1, q(0)}, CoverPiece{1, q(2)}}, 7);
    for (const auto& t : two.survivors()) CHECK(is_nadic(t, 3).has_value());
    CHECK_THROWS_AS(oracle_generalized_translations({0, 2}, 3, 1, {}, 4), PreconditionError);
}

TEST_CASE("case B interval argument") {
    const auto s = fx::ex2();
    auto r = case_b_interval_argument(s, q(1, 27), 6);
    CHECK(r.full_slice_checked);
    CHECK(r.power == 2);
    CHECK(r.alpha_used == q(1, 729));
    CHECK(r.p == 6);
    CHECK(r.p_is_large);
    CHECK(r.contradiction);

    r = case_b_interval_argument(s, q(1, 27), 6, 1);
    CHECK(r.p == 3);
    CHECK_FALSE(r.p_is_large);
    CHECK_FALSE(r.contradiction);

    r = case_b_interval_argument(s, q(1, 27), 6, 3);
    CHECK(r.alpha_used == fx::pow_inv(3, 9));
    CHECK(r.p == 9);
    CHECK(r.p_is_large);
    CHECK(r.upper_bound == fx::pow_inv(3, 8));
    CHECK(r.lower_bound == fx::pow_inv(2, 10));
    CHECK(r.contradiction);

    r = case_b_interval_argument(s, q(1, 2), 6);
    CHECK(r.power == 7);
    CHECK(r.p == 5);
    CHECK(r.contradiction);

    CHECK_THROWS_AS(case_b_interval_argument(s, q(1), 6), PreconditionError);
    CHECK_THROWS_AS(case_b_interval_argument(fx::ex1(), q(1, 2), 6), PreconditionError);
}
