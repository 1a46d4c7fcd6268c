#pragma once

// Affine self-maps of carpets: classification, symmetry enumeration,
// finite-depth refutation of g(F) in F, and translation oracles for
// deleted-digit sets.

#include "bmc/carpet.hpp"

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace bmc {

struct MapClass {
    bool diagonal = false;
    bool anti_diagonal = false;
    /// A = alpha O with O orthogonal.
    bool similarity = false;
    std::optional<Rational> alpha_sq;
    /// Present when alpha_sq is a rational square.
    std::optional<Rational> alpha;
    /// O row-major, present when alpha is.
    std::optional<std::array<Rational, 4>> orthogonal;

    /// "diagonal", "anti-diagonal", "similarity" or "general", first match.
    std::string label() const;
};

/// Throws DomainError when the linear part is singular.
MapClass classify_map(const AffineMap2& g);

/// (g1, g2) with g(x, y) = (g1(x), g2(y)); PreconditionError unless diagonal.
std::pair<Affine1, Affine1> induced_axis_maps(const AffineMap2& g);

/// g1(F_y) inside F_{g2(y)} at the given level of approximation.
bool slice_action_holds(const CarpetSpec& spec, const AffineMap2& g, const Rational& y, int depth);

enum class SymmetryKind { identity, reflect_x, reflect_y, rotate_pi };
std::string to_string(SymmetryKind k);

struct SymmetryElement {
    SymmetryKind kind;
    AffineMap2 map;
    /// x = x_line (resp. y = y_line) is the reflection axis, when present.
    std::optional<Rational> x_line;
    std::optional<Rational> y_line;
    /// Image of the level-verify_depth hull cylinders equals the set itself.
    bool verified = false;
};

struct SymmetryGroupReport {
    std::vector<SymmetryElement> elements;
    int verify_depth = 0;

    bool contains(SymmetryKind k) const;
};

/// Axis symmetries of F found from digit invariance of gamma under
/// i -> i_min + i_max - i and j -> j_min + j_max - j.
SymmetryGroupReport symmetry_group(const CarpetSpec& spec, int verify_depth = 6);

struct Verdict {
    enum class Kind { refuted, consistent };
    Kind kind = Kind::consistent;
    int depth = 0;
    std::optional<GammaWord> witness_word;
    Point2 witness;
    Point2 image;
    /// Squared distance from image to the level-depth approximation (> 0).
    Rational separation_sq;
    /// Squared diameter of a level-depth cell; the residual uncertainty.
    Rational slack_sq;
};

/// Checks g(x_w) against carpet_approx(k) for witnesses w in gamma^k,
/// k = 1..max_depth. A refutation is a proof that g(F) is not inside F.
Verdict refute_embedding(const CarpetSpec& spec, const AffineMap2& g, int max_depth, std::uint64_t budget = 0);

struct Verdict1D {
    Verdict::Kind kind = Verdict::Kind::consistent;
    int depth = 0;
    Word witness_word;
    Rational witness;
    Rational image;
    Rational separation;
};

/// One-dimensional analogue for K = D(Lambda, base) and g(x) = scale x + shift.
Verdict1D refute_embedding_1d(const DeletedDigitSpec& k, const Affine1& g, int max_depth, std::uint64_t budget = 0);

struct CommensurabilityReport {
    Rational alpha;
    std::optional<Rational> log_m;
    std::optional<Rational> log_n;
    /// log|alpha| / log m irrational: no self-embedding of a nontrivial
    /// deleted-digit set in base m with this ratio.
    bool obstructed_m = false;
    bool obstructed_n = false;
    /// A product of nontrivial sets in bases m and n cannot map into itself
    /// by a similarity with this ratio.
    bool planar_obstruction = false;
    std::string message;
};

CommensurabilityReport commensurability_witness(const Rational& alpha, int m, int n);

struct TranslationOracleResult {
    /// Candidate translations, ascending.
    std::vector<Rational> pool;
    /// survivors_by_depth[d - 1]: candidates not refuted at depth d.
    std::vector<std::vector<Rational>> survivors_by_depth;

    const std::vector<Rational>& survivors() const { return survivors_by_depth.back(); }
};

/// Translations t with n^-l K + t inside K = D(Lambda, n), by refutation.
TranslationOracleResult oracle_translations(const std::vector<int>& lambda, int n, int l, int search_depth);

/// Cover piece n^-l_i (K + p_i).
struct CoverPiece {
    int l;
    Rational p;
};

TranslationOracleResult oracle_generalized_translations(const std::vector<int>& lambda, int n, int l,
                                                        const std::vector<CoverPiece>& covers, int search_depth);

struct CaseBReport {
    /// The full row after normalising so that 0 is a row digit and the full
    /// row is not 0.
    int full_row = 0;
    bool reflected = false;
    int power = 1;
    Rational alpha_used;
    int p = 0;
    /// m^(p-1) / n^(p+1) > 1.
    bool p_is_large = false;
    /// |y - y'| = alpha j1 / n and the two bounds on it.
    Rational separation;
    Rational upper_bound;
    Rational lower_bound;
    bool contradiction = false;
    /// The full-row slice is [0,1] at the requested depth.
    bool full_slice_checked = false;
};

/// Throws PreconditionError unless the carpet is in case B and 0 < alpha < 1.
/// Without an explicit power, alpha is raised to the least power that makes
/// p large.
CaseBReport case_b_interval_argument(const CarpetSpec& spec, const Rational& alpha, int depth,
                                     std::optional<int> power = std::nullopt);

}  // namespace bmc
