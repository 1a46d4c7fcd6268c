#include "bmc/setgeom.hpp"

#include "bmc/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace bmc {

Box Box::make(Rational x0, Rational y0, Rational x1, Rational y1) {
    if (x0 > x1 || y0 > y1) throw DomainError("box corners out of order");
    return {std::move(x0), std::move(y0), std::move(x1), std::move(y1)};
}

Rational Box::half_diagonal_sq() const {
    const Rational w = x1 - x0;
    const Rational h = y1 - y0;
    return (w * w + h * h) / 4;
}

bool operator<(const Box& a, const Box& b) {
    if (a.x0 != b.x0) return a.x0 < b.x0;
    if (a.y0 != b.y0) return a.y0 < b.y0;
    if (a.x1 != b.x1) return a.x1 < b.x1;
    return a.y1 < b.y1;
}

Box window_q() { return {-1, -1, 1, 1}; }

BoxSet::BoxSet(std::vector<Box> boxes, std::optional<int> depth_tag, bool merged)
    : boxes_(std::move(boxes)), depth_tag_(depth_tag), merged_(merged) {
    std::sort(boxes_.begin(), boxes_.end());
    boxes_.erase(std::unique(boxes_.begin(), boxes_.end()), boxes_.end());
}

BoxSet BoxSet::from_points(const std::vector<Point2>& pts) {
    std::vector<Box> boxes;
    boxes.reserve(pts.size());
    for (const auto& p : pts) boxes.push_back(Box::point(p));
    return BoxSet(std::move(boxes));
}

bool BoxSet::is_point_set() const {
    return std::all_of(boxes_.begin(), boxes_.end(), [](const Box& b) { return b.is_point(); });
}

bool BoxSet::contains(const Point2& p) const {
    return std::any_of(boxes_.begin(), boxes_.end(), [&](const Box& b) { return b.contains(p); });
}

Rational BoxSet::max_half_diagonal_sq() const {
    Rational best = 0;
    for (const auto& b : boxes_) best = std::max(best, b.half_diagonal_sq());
    return best;
}

BoxSet unite(const BoxSet& a, const BoxSet& b) {
    std::vector<Box> all = a.boxes();
    all.insert(all.end(), b.boxes().begin(), b.boxes().end());
    std::optional<int> tag;
    if (a.depth_tag() == b.depth_tag()) tag = a.depth_tag();
    return BoxSet(std::move(all), tag);
}

Rational dist_sq(const Point2& p, const Box& b) {
    Rational dx = 0, dy = 0;
    if (p.x < b.x0) dx = b.x0 - p.x;
    else if (p.x > b.x1) dx = p.x - b.x1;
    if (p.y < b.y0) dy = b.y0 - p.y;
    else if (p.y > b.y1) dy = p.y - b.y1;
    return dx * dx + dy * dy;
}

Rational dist_sq(const Point2& p, const BoxSet& s) {
    if (s.empty()) throw PreconditionError("distance to an empty set");
    Rational best = dist_sq(p, s.boxes().front());
    for (const auto& b : s.boxes()) {
        if (best == 0) break;
        Rational d = dist_sq(p, b);
        if (d < best) best = std::move(d);
    }
    return best;
}

namespace {

struct DBox {
    double x0, y0, x1, y1;
};

double gap(double lo0, double hi0, double lo1, double hi1) {
    if (hi0 < lo1) return lo1 - hi0;
    if (hi1 < lo0) return lo0 - hi1;
    return 0.0;
}

double dbox_dist(const DBox& a, const DBox& b) { return std::hypot(gap(a.x0, a.x1, b.x0, b.x1), gap(a.y0, a.y1, b.y0, b.y1)); }

// Uniform grid over the target boxes in double precision. It only selects
// candidates; every decision is then made in exact arithmetic.
class BoxIndex {
public:
    explicit BoxIndex(const std::vector<Box>& boxes) {
        dboxes_.reserve(boxes.size());
        X0_ = Y0_ = std::numeric_limits<double>::infinity();
        double X1 = -X0_, Y1 = -Y0_;
        for (const auto& b : boxes) {
            DBox d{b.x0.get_d(), b.y0.get_d(), b.x1.get_d(), b.y1.get_d()};
            X0_ = std::min(X0_, d.x0);
            Y0_ = std::min(Y0_, d.y0);
            X1 = std::max(X1, d.x1);
            Y1 = std::max(Y1, d.y1);
            dboxes_.push_back(d);
        }
        G_ = std::clamp(static_cast<int>(std::ceil(std::sqrt(static_cast<double>(boxes.size())))), 1, 512);
        cw_ = std::max((X1 - X0_) / G_, 1e-300);
        ch_ = std::max((Y1 - Y0_) / G_, 1e-300);
        extent_ = std::hypot(X1 - X0_, Y1 - Y0_);
        cells_.resize(static_cast<std::size_t>(G_) * G_);
        for (std::size_t i = 0; i < dboxes_.size(); ++i) {
            const auto& d = dboxes_[i];
            for (int gx = cx(d.x0); gx <= cx(d.x1); ++gx)
                for (int gy = cy(d.y0); gy <= cy(d.y1); ++gy) cells_[gx * G_ + gy].push_back(i);
        }
        stamp_.assign(dboxes_.size(), 0);
    }

    const DBox& dbox(std::size_t i) const { return dboxes_[i]; }

    // All boxes within double distance r of q.
    void query(const DBox& q, double r, std::vector<std::size_t>& out) {
        out.clear();
        ++tick_;
        for (int gx = cx(q.x0 - r); gx <= cx(q.x1 + r); ++gx) {
            for (int gy = cy(q.y0 - r); gy <= cy(q.y1 + r); ++gy) {
                for (std::size_t i : cells_[gx * G_ + gy]) {
                    if (stamp_[i] == tick_) continue;
                    stamp_[i] = tick_;
                    if (dbox_dist(q, dboxes_[i]) <= r) out.push_back(i);
                }
            }
        }
    }

    double nearest(const DBox& q, std::vector<std::size_t>& scratch) {
        double r = std::max(cw_, ch_);
        const double far = dbox_dist(q, {X0_, Y0_, X0_ + cw_ * G_, Y0_ + ch_ * G_}) + extent_ + r;
        for (;; r *= 2) {
            query(q, r, scratch);
            if (!scratch.empty()) {
                double best = std::numeric_limits<double>::infinity();
                for (std::size_t i : scratch) best = std::min(best, dbox_dist(q, dboxes_[i]));
                return best;
            }
            if (r > far) return far;
        }
    }

private:
    int cx(double x) const { return std::clamp(static_cast<int>(std::floor((x - X0_) / cw_)), 0, G_ - 1); }
    int cy(double y) const { return std::clamp(static_cast<int>(std::floor((y - Y0_) / ch_)), 0, G_ - 1); }

    std::vector<DBox> dboxes_;
    std::vector<std::vector<std::size_t>> cells_;
    std::vector<unsigned> stamp_;
    unsigned tick_ = 0;
    double X0_, Y0_, cw_, ch_, extent_;
    int G_;
};

constexpr double kRel = 1e-9;
constexpr double kAbs = 1e-12;

}  // namespace

DirectedDistance directed_distance(const BoxSet& from, const BoxSet& to) {
    if (from.empty() || to.empty()) throw PreconditionError("directed distance needs nonempty sets");
    BoxIndex index(to.boxes());
    const auto& targets = to.boxes();
    std::vector<std::size_t> cand, scratch;
    DirectedDistance out{0, 0, from.is_point_set()};

    for (const auto& s : from.boxes()) {
        const DBox ds{s.x0.get_d(), s.y0.get_d(), s.x1.get_d(), s.y1.get_d()};
        const Point2 c = s.center();
        const DBox dc{c.x.get_d(), c.y.get_d(), c.x.get_d(), c.y.get_d()};
        const double half = 0.5 * std::hypot(ds.x1 - ds.x0, ds.y1 - ds.y0);
        const double reach = (index.nearest(dc, scratch) + half) * (1 + kRel) + kAbs;
        index.query(ds, reach, cand);

        // Upper: some single target box within reach of every corner.
        const Point2 corners[4] = {{s.x0, s.y0}, {s.x0, s.y1}, {s.x1, s.y0}, {s.x1, s.y1}};
        const int ncorners = s.is_point() ? 1 : 4;
        std::optional<Rational> upper;
        for (std::size_t i : cand) {
            Rational worst = 0;
            for (int k = 0; k < ncorners; ++k) {
                Rational d = dist_sq(corners[k], targets[i]);
                if (d > worst) worst = std::move(d);
                if (upper && worst >= *upper) break;
            }
            if (!upper || worst < *upper) upper = std::move(worst);
            if (*upper == 0) break;
        }
        if (!upper) throw std::logic_error("directed_distance: candidate search came back empty");

        // Lower: distances from sample points of the piece.
        Rational lower = 0;
        if (*upper > 0) {
            const Point2 samples[5] = {corners[0], corners[1], corners[2], corners[3], c};
            for (int k = 0; k < (s.is_point() ? 1 : 5); ++k) {
                std::optional<Rational> best;
                for (std::size_t i : cand) {
                    Rational d = dist_sq(samples[k], targets[i]);
                    if (!best || d < *best) best = std::move(d);
                    if (*best == 0) break;
                }
                if (*best > lower) lower = *best;
            }
        }
        if (lower > out.lower_sq) out.lower_sq = lower;
        if (*upper > out.upper_sq) out.upper_sq = *upper;
    }
    if (out.exact) out.lower_sq = out.upper_sq;
    return out;
}

double empty_set_distance() { return 1.0 + 2.0 * std::sqrt(2.0); }

double HausdorffResult::lower() const { return empty_convention ? empty_set_distance() : std::sqrt(lower_sq.get_d()); }
double HausdorffResult::upper() const { return empty_convention ? empty_set_distance() : std::sqrt(upper_sq.get_d()); }

HausdorffResult hausdorff_distance(const BoxSet& a, const BoxSet& b) {
    HausdorffResult r;
    if (a.empty() && b.empty()) {
        r.exact = true;
        return r;
    }
    if (a.empty() || b.empty()) {
        r.exact = true;
        r.empty_convention = true;
        return r;
    }
    if (a == b) {
        r.exact = true;
        return r;
    }
    const auto ab = directed_distance(a, b);
    const auto ba = directed_distance(b, a);
    r.lower_sq = std::max(ab.lower_sq, ba.lower_sq);
    r.upper_sq = std::max(ab.upper_sq, ba.upper_sq);
    r.exact = ab.exact && ba.exact;
    return r;
}

BoxSet affine_image(const BoxSet& s, const AffineMap2& g) {
    if (!g.is_diagonal()) throw PreconditionError("affine_image supports diagonal linear parts only: " + g.to_string());
    std::vector<Box> out;
    out.reserve(s.size());
    for (const auto& b : s.boxes()) {
        Rational x0 = g.a * b.x0 + g.tx, x1 = g.a * b.x1 + g.tx;
        Rational y0 = g.d * b.y0 + g.ty, y1 = g.d * b.y1 + g.ty;
        if (x0 > x1) std::swap(x0, x1);
        if (y0 > y1) std::swap(y0, y1);
        out.push_back({std::move(x0), std::move(y0), std::move(x1), std::move(y1)});
    }
    return BoxSet(std::move(out), s.depth_tag(), s.merged() && g.a != 0 && g.d != 0);
}

BoxSet window(const BoxSet& s, const Box& rect) {
    std::vector<Box> out;
    for (const auto& b : s.boxes()) {
        if (!b.intersects(rect)) continue;
        out.push_back({std::max(b.x0, rect.x0), std::max(b.y0, rect.y0), std::min(b.x1, rect.x1),
                       std::min(b.y1, rect.y1)});
    }
    return BoxSet(std::move(out), s.depth_tag(), s.merged());
}

LimitReport limit_diagnostics(const std::vector<BoxSet>& seq) {
    if (seq.size() < 2) throw PreconditionError("limit_diagnostics needs at least two sets");
    LimitReport rep;
    const std::size_t n = seq.size();
    rep.table.assign(n, std::vector<HausdorffResult>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            rep.table[i][j] = hausdorff_distance(seq[i], seq[j]);
            rep.table[j][i] = rep.table[i][j];
        }
        rep.table[i][i].exact = true;
    }
    // Least-squares slope of log d(i, i+1) against i.
    std::vector<double> ys;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double d = rep.table[i][i + 1].upper();
        if (!(d > 0)) return rep;
        ys.push_back(std::log(d));
    }
    if (ys.size() < 2) return rep;
    const double m = static_cast<double>(ys.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < ys.size(); ++i) {
        const double x = static_cast<double>(i);
        sx += x;
        sy += ys[i];
        sxx += x * x;
        sxy += x * ys[i];
    }
    rep.cauchy_rate = std::exp((m * sxy - sx * sy) / (m * sxx - sx * sx));
    return rep;
}

UnionSplitReport union_splitting_check(const std::vector<BoxSet>& a, const std::vector<BoxSet>& b) {
    if (a.size() != b.size() || a.size() < 2)
        throw PreconditionError("union_splitting_check needs two sequences of equal length >= 2");
    UnionSplitReport rep;
    const BoxSet limit = unite(a.back(), b.back());
    for (std::size_t i = 0; i < a.size(); ++i) {
        const auto du = hausdorff_distance(unite(a[i], b[i]), limit);
        const auto da = hausdorff_distance(a[i], a.back());
        const auto db = hausdorff_distance(b[i], b.back());
        HausdorffResult bound;
        bound.empty_convention = da.empty_convention || db.empty_convention;
        bound.lower_sq = std::max(da.lower_sq, db.lower_sq);
        bound.upper_sq = std::max(da.upper_sq, db.upper_sq);
        bound.exact = da.exact && db.exact;
        if (!bound.empty_convention && (du.empty_convention || du.lower_sq > bound.upper_sq)) rep.holds = false;
        rep.union_distance.push_back(du);
        rep.component_bound.push_back(bound);
    }
    return rep;
}

}  // namespace bmc
