#pragma once

// Finite unions of closed axis-aligned rectangles and the Hausdorff metric
// between them, with distances carried as exact squared rationals.

#include "bmc/affine.hpp"
#include "bmc/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace bmc {

/// Closed rectangle [x0,x1] x [y0,y1]; degenerate sides are allowed.
struct Box {
    Rational x0, y0, x1, y1;

    static Box make(Rational x0, Rational y0, Rational x1, Rational y1);
    static Box point(const Point2& p) { return {p.x, p.y, p.x, p.y}; }

    bool is_point() const { return x0 == x1 && y0 == y1; }
    bool contains(const Point2& p) const { return x0 <= p.x && p.x <= x1 && y0 <= p.y && p.y <= y1; }
    bool contains(const Box& o) const { return x0 <= o.x0 && o.x1 <= x1 && y0 <= o.y0 && o.y1 <= y1; }
    bool intersects(const Box& o) const { return x0 <= o.x1 && o.x0 <= x1 && y0 <= o.y1 && o.y0 <= y1; }
    Point2 center() const { return {(x0 + x1) / 2, (y0 + y1) / 2}; }
    Rational half_diagonal_sq() const;

    friend bool operator==(const Box&, const Box&) = default;
};

bool operator<(const Box& a, const Box& b);

/// [-1,1]^2.
Box window_q();

class BoxSet {
public:
    BoxSet() = default;
    explicit BoxSet(std::vector<Box> boxes, std::optional<int> depth_tag = std::nullopt, bool merged = false);
    static BoxSet from_points(const std::vector<Point2>& pts);

    const std::vector<Box>& boxes() const { return boxes_; }
    std::size_t size() const { return boxes_.size(); }
    bool empty() const { return boxes_.empty(); }
    std::optional<int> depth_tag() const { return depth_tag_; }
    /// True when the boxes are known to have pairwise disjoint interiors.
    bool merged() const { return merged_; }
    bool is_point_set() const;

    bool contains(const Point2& p) const;
    Rational max_half_diagonal_sq() const;

    /// Set equality of the box lists (both are kept sorted and deduplicated).
    friend bool operator==(const BoxSet& a, const BoxSet& b) { return a.boxes_ == b.boxes_; }

private:
    std::vector<Box> boxes_;
    std::optional<int> depth_tag_;
    bool merged_ = false;
};

BoxSet unite(const BoxSet& a, const BoxSet& b);

Rational dist_sq(const Point2& p, const Box& b);
/// Exact squared distance from p to the union; throws PreconditionError if empty.
Rational dist_sq(const Point2& p, const BoxSet& s);

/// Certified enclosure of sup_{a in from} d(a, to), squared.
struct DirectedDistance {
    Rational lower_sq;
    Rational upper_sq;
    bool exact = false;
};

DirectedDistance directed_distance(const BoxSet& from, const BoxSet& to);

struct HausdorffResult {
    Rational lower_sq;
    Rational upper_sq;
    bool exact = false;
    /// One side empty: the value is 1 + diam(Q) = 1 + 2 sqrt 2 and the
    /// squared fields are unused.
    bool empty_convention = false;

    double lower() const;
    double upper() const;
};

/// 1 + diam(Q) for Q = [-1,1]^2.
double empty_set_distance();

HausdorffResult hausdorff_distance(const BoxSet& a, const BoxSet& b);

/// Requires a diagonal linear part; throws PreconditionError otherwise.
BoxSet affine_image(const BoxSet& s, const AffineMap2& g);

BoxSet window(const BoxSet& s, const Box& rect);

struct LimitReport {
    std::vector<std::vector<HausdorffResult>> table;
    /// Fitted geometric ratio of successive distances, when all are positive.
    std::optional<double> cauchy_rate;
};

LimitReport limit_diagnostics(const std::vector<BoxSet>& seq);

struct UnionSplitReport {
    /// Per index i: d_H(A_i u B_i, A u B) and max(d_H(A_i, A), d_H(B_i, B)),
    /// with A, B the last members of the two sequences.
    std::vector<HausdorffResult> union_distance;
    std::vector<HausdorffResult> component_bound;
    bool holds = true;
};

UnionSplitReport union_splitting_check(const std::vector<BoxSet>& a, const std::vector<BoxSet>& b);

}  // namespace bmc
