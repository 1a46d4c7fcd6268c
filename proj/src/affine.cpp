#include "bmc/affine.hpp"

#include "bmc/errors.hpp"

namespace bmc {

Rational dist_sq(const Point2& p, const Point2& q) {
    const Rational dx = p.x - q.x;
    const Rational dy = p.y - q.y;
    return dx * dx + dy * dy;
}

AffineMap2 AffineMap2::diagonal(const Rational& sx, const Rational& sy, const Rational& tx, const Rational& ty) {
    AffineMap2 g;
    g.a = sx;
    g.d = sy;
    g.tx = tx;
    g.ty = ty;
    return g;
}

AffineMap2 AffineMap2::translation(const Rational& tx, const Rational& ty) { return diagonal(1, 1, tx, ty); }

Point2 AffineMap2::operator()(const Point2& p) const { return {a * p.x + b * p.y + tx, c * p.x + d * p.y + ty}; }

AffineMap2 AffineMap2::inverse() const {
    const Rational D = det();
    if (D == 0) throw DomainError("affine map is singular");
    AffineMap2 g;
    g.a = d / D;
    g.b = -b / D;
    g.c = -c / D;
    g.d = a / D;
    g.tx = -(g.a * tx + g.b * ty);
    g.ty = -(g.c * tx + g.d * ty);
    return g;
}

std::string AffineMap2::to_string() const {
    return "[[" + a.get_str() + ", " + b.get_str() + "], [" + c.get_str() + ", " + d.get_str() + "]] + (" +
           tx.get_str() + ", " + ty.get_str() + ")";
}

AffineMap2 compose(const AffineMap2& g, const AffineMap2& h) {
    AffineMap2 r;
    r.a = g.a * h.a + g.b * h.c;
    r.b = g.a * h.b + g.b * h.d;
    r.c = g.c * h.a + g.d * h.c;
    r.d = g.c * h.b + g.d * h.d;
    r.tx = g.a * h.tx + g.b * h.ty + g.tx;
    r.ty = g.c * h.tx + g.d * h.ty + g.ty;
    return r;
}

}  // namespace bmc
