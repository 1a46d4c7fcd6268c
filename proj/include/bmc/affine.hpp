#pragma once

// Points and affine maps of the plane with exact rational coefficients.

#include "bmc/rational.hpp"

#include <string>

namespace bmc {

struct Point2 {
    Rational x;
    Rational y;

    friend bool operator==(const Point2& p, const Point2& q) { return p.x == q.x && p.y == q.y; }
    friend bool operator<(const Point2& p, const Point2& q) { return p.x < q.x || (p.x == q.x && p.y < q.y); }
};

Rational dist_sq(const Point2& p, const Point2& q);

/// v -> A v + t with A = [[a, b], [c, d]].
struct AffineMap2 {
    Rational a{1}, b{0}, c{0}, d{1};
    Rational tx{0}, ty{0};

    static AffineMap2 identity() { return {}; }
    static AffineMap2 diagonal(const Rational& sx, const Rational& sy, const Rational& tx = 0,
                               const Rational& ty = 0);
    static AffineMap2 translation(const Rational& tx, const Rational& ty);

    Point2 operator()(const Point2& p) const;
    Rational det() const { return a * d - b * c; }
    bool is_diagonal() const { return b == 0 && c == 0; }
    bool is_antidiagonal() const { return a == 0 && d == 0; }

    /// Throws DomainError when singular.
    AffineMap2 inverse() const;
    std::string to_string() const;

    friend bool operator==(const AffineMap2&, const AffineMap2&) = default;
};

/// g after h.
AffineMap2 compose(const AffineMap2& g, const AffineMap2& h);

/// x -> scale * x + shift.
struct Affine1 {
    Rational scale{1};
    Rational shift{0};

    Rational operator()(const Rational& x) const { return scale * x + shift; }
    friend bool operator==(const Affine1&, const Affine1&) = default;
};

}  // namespace bmc
