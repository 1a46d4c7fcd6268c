#include <doctest.h>

#include "bmc/errors.hpp"
#include "bmc/tangent.hpp"
#include "support.hpp"

#include <cmath>
#include <random>

using namespace bmc;
using fx::q;

namespace {

DigitSequence seq(const char* text, int base) { return DigitSequence::parse(text, base); }

// [m^l (cells - f)] n Q from the brute-force cell list.
BoxSet brute_mini(const CarpetSpec& s, const Point2& f, int l, int depth) {
    const Rational ml = 1 / fx::pow_inv(s.m(), l);
    std::vector<Box> boxes;
    for (const auto& b : fx::brute_cells(s, depth)) {
        boxes.push_back(Box::make(ml * (b.x0 - f.x), ml * (b.y0 - f.y), ml * (b.x1 - f.x), ml * (b.y1 - f.y)));
    }
    return window(BoxSet(boxes), window_q());
}

}  // namespace

TEST_CASE("frame examples") {
    auto f = frame_of(1, 3, 2);
    CHECK(f.k == 1);
    CHECK(f.r == q(3, 2));
    f = frame_of(5, 3, 2);
    CHECK(f.k == 7);
    CHECK(f.r == q(243, 128));
    CHECK_THROWS_AS(frame_of(2, 4, 2), DomainError);
    CHECK_THROWS_AS(frame_of(0, 3, 2), DomainError);
    CHECK(f.s(2) == LogRatio(q(243, 128), BigInt(2)));
    const auto [lo, hi] = f.s_enclosure(2, 30);
    CHECK(lo.get_d() <= f.s(2).to_double());
    CHECK(f.s(2).to_double() <= hi.get_d());
    CHECK(hi - lo == fx::pow_inv(2, 30));
}

TEST_CASE("frame invariants") {
    for (auto [m, n] : std::vector<std::pair<int, int>>{{3, 2}, {4, 3}, {5, 3}, {5, 2}, {7, 4}}) {
        for (int l = 1; l <= 40; ++l) {
            const Frame f = frame_of(l, m, n);
            const BigInt ml = ipow(BigInt(m), l), nk = ipow(BigInt(n), f.k), ml1 = ipow(BigInt(m), l - 1);
            CHECK(nk < ml);      // m^-l < n^-k
            CHECK(ml1 <= nk);    // n^-k <= m^-(l-1)
            CHECK(f.k >= l);
            CHECK(f.r > 1);
            CHECK(f.r < n);
            if (l >= 10) CHECK(f.k > l);
            CHECK(std::abs(f.s(n).to_double() - std::fmod(l * std::log(m) / std::log(n), 1.0)) < 1e-9);
        }
    }
}

TEST_CASE("H of a row word") {
    const auto s = fx::ex1();
    for (int d = 0; d <= 3; ++d) {
        const BoxSet base = carpet_approx(s, d);
        auto copy_at = [&](const Rational& x) {
            return affine_image(base, AffineMap2::diagonal(q(1, 3), 1, x, 0));
        };
        CHECK(H_of(s, {0}, d) == unite(copy_at(0), copy_at(q(2, 3))));
        CHECK(H_of(s, {1}, d) == copy_at(q(1, 3)));
    }
    CHECK(H_of(CarpetSpec(3, 2, {{0, 0}}), {1}, 2).empty());
    CHECK(H_of(s, {}, 2) == carpet_approx(s, 2));
}

TEST_CASE("mini-set at l = 0 is the windowed approximation") {
    for (const auto& s : {fx::ex1(), fx::ex2()}) {
        const auto ms = mini_set(s, Point2{q(0), q(0)}, 0, 3);
        CHECK(ms.boxset == carpet_approx(s, 3));
        CHECK_FALSE(ms.frame.has_value());
    }
}

TEST_CASE("mini-sets match the brute-force zoom and contain the origin") {
    for (const auto& s : {fx::ex1(), fx::ex2(), fx::ex3()}) {
        for (int len = 1; len <= 2; ++len) {
            for (const auto& w : gamma_words(s, len)) {
                const Point2 f = witness_point(s, w);
                for (int l = 1; l <= 3; ++l) {
                    const auto ms = mini_set(s, w, l, 2);
                    CHECK(ms.boxset.contains(Point2{q(0), q(0)}));
                    CHECK(ms.boxset == brute_mini(s, f, l, ms.k + 2));
                    for (const auto& b : ms.boxset.boxes()) CHECK(window_q().contains(b));
                }
            }
        }
    }
}

TEST_CASE("mini-set certificate") {
    const auto ms = mini_set(fx::ex1(), Point2{q(0), q(0)}, 3, 2);
    // Cell of depth K = k + 2 rescaled by m^l.
    const int K = ms.k + 2;
    const Rational w = fx::pow_inv(3, K) * 27, h = fx::pow_inv(2, K) * 27;
    CHECK(ms.certificate_sq == w * w + h * h);
}

TEST_CASE("decomposition reproduces the mini-set") {
    const auto s = fx::ex1();
    const Point2 origin{q(0), q(0)};
    const auto d = basic_decomposition(s, origin, 1);
    CHECK(tails_of(d).size() == 1);
    CHECK(tails_of(d).front() == Word{});
    CHECK(render_decomposition(s, d, 4) == mini_set(s, origin, 1, 4).boxset);
    for (int l = 1; l <= 5; ++l) {
        const auto dl = basic_decomposition(s, origin, l);
        for (const auto& t : tails_of(dl)) {
            for (int digit : t) CHECK(digit == 0);
        }
        CHECK(render_decomposition(s, dl, 3) == mini_set(s, origin, l, 3).boxset);
    }
}

TEST_CASE("|B(f,l)| and prefix counts stay bounded") {
    std::mt19937 rng(77);
    for (const auto& s : {fx::ex1(), fx::ex2(), fx::ex3()}) {
        for (int t = 0; t < 40; ++t) {
            const int len = 1 + static_cast<int>(rng() % 4);
            GammaWord w;
            for (int i = 0; i < len; ++i) {
                const auto& g = s.gamma()[rng() % s.gamma().size()];
                w.a.push_back(g.first);
                w.b.push_back(g.second);
            }
            const int l = 1 + static_cast<int>(rng() % 7);
            const auto d = basic_decomposition(s, witness_point(s, w), l);
            CHECK(!d.empty());
            CHECK(tails_of(d).size() <= 4);
            CHECK(prefixes_of(d).size() <= 4);
            for (const auto& x : d) CHECK(x.b_tail.size() == static_cast<std::size_t>(x.frame.k - l));
        }
    }
}

TEST_CASE("orbit closure") {
    auto r = orbit_closure(seq("(0)", 2), 3, 2, 4);
    CHECK(r.closure == std::vector<DigitSequence>{seq("(0)", 2)});
    r = orbit_closure(seq("(01)", 2), 3, 2, 4);
    CHECK(r.closure == std::vector<DigitSequence>{seq("(01)", 2), seq("(10)", 2)});
    r = orbit_closure(seq("1(0)", 2), 3, 2, 3);
    CHECK(r.closure == std::vector<DigitSequence>{seq("(0)", 2)});
    CHECK(r.orbit.size() == 3);
    CHECK(r.orbit[0] == seq("1(0)", 2));
    CHECK(r.orbit[1] == seq("(0)", 2));
    CHECK_THROWS_AS(orbit_closure(seq("(0)", 2), 4, 2, 2), DomainError);
    for (const char* e : {"(011)", "10(0110)", "(1)"}) {
        const auto rr = orbit_closure(seq(e, 2), 3, 2, 2);
        for (const auto& x : rr.closure) {
            CHECK(std::find(rr.closure.begin(), rr.closure.end(), x.shift()) != rr.closure.end());
        }
    }
}

TEST_CASE("predicted tangent") {
    const auto s = fx::ex1();
    for (int d = 1; d <= 4; ++d) {
        std::vector<Box> expect;
        for (const auto& xs : fx::brute_levels({0, 2}, 3, d)) {
            for (const auto& ys : fx::brute_levels({0, 1}, 2, d)) expect.push_back(Box::make(xs.lo, ys.lo, xs.hi, ys.hi));
        }
        CHECK(predicted_tangent(s, seq("(0)", 2), q(1), {Point2{q(0), q(0)}}, d) == BoxSet(expect));
    }
    CHECK_THROWS_AS(predicted_tangent(s, seq("(0)", 2), q(1), {Point2{q(3), q(0)}}, 2), DomainError);
}

TEST_CASE("mini-sets approach the predicted tangent pieces") {
    // At f = 0 the tails are all zero and each mini-set is close to the
    // (0-bar, s(l)) set with the offsets of its decomposition.
    const auto s = fx::ex1();
    const Point2 origin{q(0), q(0)};
    std::vector<double> gaps;
    for (int l = 2; l <= 7; ++l) {
        const auto d = basic_decomposition(s, origin, l);
        std::vector<Point2> z;
        for (const auto& x : d) z.push_back(x.z);
        const auto ms = mini_set(s, origin, l, 4);
        const auto pt = predicted_tangent(s, seq("(0)", 2), ms.frame->r, z, 8);
        const auto h = hausdorff_distance(ms.boxset, pt);
        const int kl = ms.k - l;
        // Horizontal squeeze of H(0^(k-l)) plus both approximation scales.
        const double bound = std::pow(3.0, -kl) + std::sqrt(ms.certificate_sq.get_d()) + 2 * std::pow(2.0, -8) +
                             std::pow(3.0, -8);
        CHECK(h.lower() <= bound);
        gaps.push_back(h.upper());
    }
    CHECK(gaps.back() < gaps.front());
}

TEST_CASE("covariance under the identity and the reflection") {
    const auto s = fx::ex1();
    for (const auto& w : gamma_words(s, 2)) {
        const Point2 f = witness_point(s, w);
        auto r = covariance_check(s, AffineMap2::identity(), f, 2, 0, 3);
        CHECK(r.holds);
        CHECK(r.upper_sq == 0);
        r = covariance_check(s, AffineMap2::diagonal(-1, 1, 1, 0), f, 2, 0, 3);
        CHECK(r.holds);
        CHECK_FALSE(r.violated);
    }
    CHECK_THROWS_AS(covariance_check(s, AffineMap2::diagonal(3, 3), Point2{q(0), q(0)}, 2, 0, 2), PreconditionError);
    CHECK_THROWS_AS(covariance_check(s, AffineMap2::identity(), Point2{q(0), q(0)}, 2, 3, 2), PreconditionError);
    AffineMap2 swap;
    swap.a = 0;
    swap.b = 1;
    swap.c = 1;
    swap.d = 0;
    CHECK_THROWS_AS(covariance_check(s, swap, Point2{q(0), q(0)}, 2, 0, 2), PreconditionError);
    CHECK_NOTHROW(covariance_check(s, AffineMap2::diagonal(3, 3), Point2{q(0), q(0)}, 2, 1, 2));
}
