#pragma once

// m-adic zooms of a carpet: frames, mini-sets, their decomposition into
// basic sets, shift-orbit closures and predicted tangent pieces.

#include "bmc/carpet.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace bmc {

/// k = floor(l log_n m), r = m^l / n^k, s = log_n r.
struct Frame {
    int l = 0;
    int k = 0;
    Rational r;

    LogRatio s(int n) const { return LogRatio(r, BigInt(n)); }
    /// Dyadic enclosure [lo, hi] of s with hi - lo = 2^-bits.
    std::pair<Rational, Rational> s_enclosure(int n, int bits = 20) const;
};

/// Largest k with n^k <= m^l.
int frame_depth(int l, int m, int n);

/// Throws DomainError for l < 1 or when r = 1 (dependent bases).
Frame frame_of(int l, int m, int n);

struct MiniSetApprox {
    BoxSet boxset;
    std::optional<Frame> frame;  // absent for l = 0
    int l = 0;
    int k = 0;
    int inner_depth = 0;
    Point2 anchor;
    /// Squared diameter of one rescaled cell of the underlying approximation.
    Rational certificate_sq;
};

/// [m^l (F_K - f)] n Q with F_K the level-(k + inner_depth) approximation.
MiniSetApprox mini_set(const CarpetSpec& spec, const Point2& f, int l, int inner_depth, std::uint64_t budget = 0);
MiniSetApprox mini_set(const CarpetSpec& spec, const GammaWord& f, int l, int inner_depth,
                       std::uint64_t budget = 0);

/// Union over a in Gamma_b of diag(m^-|b|, 1) F + (pi_m a, 0); the empty
/// word gives F itself.
BoxSet H_of(const CarpetSpec& spec, const Word& b, int depth, std::uint64_t budget = 0);

/// diag(1, r) (H(b_tail) + z) for one prefix a' of length l and one row
/// word b of length k.
struct BasicSetDescriptor {
    Word a_prefix;
    Word b;
    Word b_tail;
    Point2 z;
    Frame frame;
};

std::vector<BasicSetDescriptor> basic_decomposition(const CarpetSpec& spec, const Point2& f, int l);

/// Distinct tails b'' of a decomposition.
std::vector<Word> tails_of(const std::vector<BasicSetDescriptor>& d);
/// Distinct prefixes a' of a decomposition.
std::vector<Word> prefixes_of(const std::vector<BasicSetDescriptor>& d);

BoxSet render_descriptor(const CarpetSpec& spec, const BasicSetDescriptor& d, int inner_depth,
                         std::uint64_t budget = 0);

/// window(union of rendered descriptors, Q).
BoxSet render_decomposition(const CarpetSpec& spec, const std::vector<BasicSetDescriptor>& d, int inner_depth,
                            std::uint64_t budget = 0);

struct OrbitReport {
    /// Accumulation points of the shift orbit: the cyclic shifts of the period.
    std::vector<DigitSequence> closure;
    /// sigma^0 eta, ..., sigma^(horizon-1) eta.
    std::vector<DigitSequence> orbit;
    /// Marginal of the s-coordinate over each closure element.
    std::string s_marginal = "[0,1)";
};

/// Throws DomainError for dependent (m, n).
OrbitReport orbit_closure(const DigitSequence& eta, int m, int n, int horizon);

/// Union over z of diag(1, r) (slice(xi) x P2F + z), windowed to Q, with
/// r = n^s given exactly. Throws DomainError if a piece leaves [-2,2]^2.
BoxSet predicted_tangent(const CarpetSpec& spec, const DigitSequence& xi, const Rational& r,
                         const std::vector<Point2>& offsets, int depth, std::uint64_t budget = 0);

struct CovarianceReport {
    /// Directed distance from m^-p A T to T', squared.
    Rational lower_sq;
    Rational upper_sq;
    /// T' empty while m^-p A T is not: distance 1 + diam(Q).
    bool target_empty = false;
    Rational source_certificate_sq;
    Rational target_certificate_sq;
    /// Upper distance within the summed certificates.
    bool holds = false;
    /// Lower distance beyond the summed certificates.
    bool violated = false;
};

/// Compares m^-p A mini_set(f, l) with mini_set(g(f), l - p). Requires a
/// diagonal linear part A with m^-p A Q inside Q.
CovarianceReport covariance_check(const CarpetSpec& spec, const AffineMap2& g, const Point2& f, int l, int p,
                                  int inner_depth, std::uint64_t budget = 0);

}  // namespace bmc
