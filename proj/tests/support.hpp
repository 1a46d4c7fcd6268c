#pragma once

// Fixtures and brute-force oracles shared by the test executables. The
// oracles deliberately avoid the library's own algorithms.

#include "bmc/carpet.hpp"
#include "bmc/json_io.hpp"

#include <set>
#include <string>
#include <vector>

namespace fx {

using namespace bmc;

inline std::string fixture_path(const std::string& name) { return std::string(FIXTURE_DIR) + "/" + name + ".json"; }

inline CarpetSpec load(const std::string& name) { return carpet_from_json(read_json_file(fixture_path(name))); }

// (3,2) with rows {0,2} and {1}.
inline CarpetSpec ex1() { return CarpetSpec(3, 2, {{0, 0}, {1, 1}, {2, 0}}); }
// (3,2) with row 1 full.
inline CarpetSpec ex2() { return CarpetSpec(3, 2, {{0, 0}, {2, 0}, {0, 1}, {1, 1}, {2, 1}}); }
inline CarpetSpec ex3() { return CarpetSpec(4, 3, {{0, 0}, {3, 0}, {1, 1}, {2, 1}, {0, 2}, {2, 2}}); }
inline CarpetSpec product53() { return CarpetSpec(5, 3, {{0, 0}, {2, 0}, {0, 2}, {2, 2}}); }

inline Rational q(long a, long b = 1) { return make_rational(a, b); }

inline Rational pow_inv(long base, int e) {
    Rational r = 1;
    for (int i = 0; i < e; ++i) r /= base;
    return r;
}

// Value of pre (per)(per)... in base b by summing the finite part and the
// geometric tail directly.
inline Rational series_value(const std::vector<int>& pre, const std::vector<int>& per, long b) {
    Rational v = 0, scale = 1;
    for (int d : pre) {
        scale /= b;
        v += d * scale;
    }
    Rational block = 0, bscale = 1;
    for (int d : per) {
        bscale /= b;
        block += d * bscale;
    }
    // sum_{t>=0} block * bscale^t = block / (1 - bscale)
    return v + scale * block / (1 - bscale);
}

// All level-k cylinders of the carpet by recursive word enumeration.
inline std::set<Box> brute_cells(const CarpetSpec& s, int k) {
    std::set<Box> out;
    struct Rec {
        const CarpetSpec& s;
        int k;
        std::set<Box>& out;
        void go(int level, Rational x, Rational y, Rational w, Rational h) {
            if (level == k) {
                out.insert(Box::make(x, y, x + w, y + h));
                return;
            }
            for (const auto& [i, j] : s.gamma()) go(level + 1, x + i * w / s.m(), y + j * h / s.n(), w / s.m(), h / s.n());
        }
    } r{s, k, out};
    r.go(0, 0, 0, 1, 1);
    return out;
}

inline bool brute_contains(const std::set<Box>& cells, const Point2& p) {
    for (const auto& b : cells) {
        if (b.x0 <= p.x && p.x <= b.x1 && b.y0 <= p.y && p.y <= b.y1) return true;
    }
    return false;
}

// Squared distance by scanning every box.
inline Rational brute_dist_sq(const std::set<Box>& cells, const Point2& p) {
    bool first = true;
    Rational best;
    for (const auto& b : cells) {
        Rational dx = p.x < b.x0 ? Rational(b.x0 - p.x) : (p.x > b.x1 ? Rational(p.x - b.x1) : Rational(0));
        Rational dy = p.y < b.y0 ? Rational(b.y0 - p.y) : (p.y > b.y1 ? Rational(p.y - b.y1) : Rational(0));
        Rational d = dx * dx + dy * dy;
        if (first || d < best) best = d;
        first = false;
    }
    return best;
}

// Exact Hausdorff distance squared between finite point sets.
inline Rational brute_hausdorff_sq(const std::vector<Point2>& a, const std::vector<Point2>& b) {
    auto directed = [](const std::vector<Point2>& u, const std::vector<Point2>& v) {
        Rational worst = 0;
        for (const auto& p : u) {
            Rational best = -1;
            for (const auto& r : v) {
                Rational d = (p.x - r.x) * (p.x - r.x) + (p.y - r.y) * (p.y - r.y);
                if (best < 0 || d < best) best = d;
            }
            if (best > worst) worst = best;
        }
        return worst;
    };
    Rational x = directed(a, b), y = directed(b, a);
    return x > y ? x : y;
}

// Level intervals of D(lambda, b) by enumerating digit words.
inline std::vector<Interval> brute_levels(const std::vector<int>& lambda, long b, int depth) {
    std::vector<Rational> lefts{0};
    Rational scale = 1;
    for (int i = 0; i < depth; ++i) {
        scale /= b;
        std::vector<Rational> next;
        for (const auto& x : lefts) {
            for (int d : lambda) next.push_back(x + d * scale);
        }
        lefts = next;
    }
    std::set<Rational> uniq(lefts.begin(), lefts.end());
    std::vector<Interval> out;
    for (const auto& x : uniq) out.push_back({x, x + scale});
    return out;
}

}  // namespace fx
