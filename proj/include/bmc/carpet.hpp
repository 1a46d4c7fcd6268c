#pragma once

// Bedford-McMullen carpets: digit data, cylinder approximations, slices,
// projections, and exact in-carpet witness points.

#include "bmc/digits.hpp"
#include "bmc/numtheory.hpp"
#include "bmc/setgeom.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace bmc {

/// (i, j): column digit i in [m], row digit j in [n].
using Digit2 = std::pair<int, int>;

class CarpetSpec {
public:
    /// Throws ValidationError unless m > n >= 2 and gamma is a nonempty set
    /// of in-range, distinct pairs.
    CarpetSpec(int m, int n, std::vector<Digit2> gamma);

    int m() const { return m_; }
    int n() const { return n_; }
    const std::vector<Digit2>& gamma() const { return gamma_; }
    bool has(int i, int j) const;

    /// Columns i with (i, j) in gamma, ascending.
    const std::vector<int>& row(int j) const { return rows_.at(static_cast<std::size_t>(j)); }
    const std::vector<int>& column(int i) const { return cols_.at(static_cast<std::size_t>(i)); }

    friend bool operator==(const CarpetSpec& a, const CarpetSpec& b) {
        return a.m_ == b.m_ && a.n_ == b.n_ && a.gamma_ == b.gamma_;
    }

private:
    int m_, n_;
    std::vector<Digit2> gamma_;
    std::vector<std::vector<int>> rows_, cols_;
};

struct Classification {
    bool is_product = false;
    bool independent = false;
    bool single_row = false;
    bool single_column = false;
    /// 'A': no full row; 'B': exactly one; 'C': two or more.
    char case_label = 'A';
    std::vector<int> full_rows;
};

Classification validate(const CarpetSpec& spec);

/// A word of length k over gamma, split into its column and row words.
struct GammaWord {
    Word a;
    Word b;

    std::size_t size() const { return a.size(); }
    friend bool operator==(const GammaWord&, const GammaWord&) = default;
    friend auto operator<=>(const GammaWord&, const GammaWord&) = default;
};

/// Parses "i,j;i,j;..." checking every letter against gamma.
GammaWord parse_gamma_word(const CarpetSpec& spec, const std::string& text);
std::string to_string(const GammaWord& w);

/// All words of gamma^k in lexicographic order of their letters.
std::vector<GammaWord> gamma_words(const CarpetSpec& spec, int k, std::uint64_t budget = 0);

/// Integer cell coordinates (X, Y) of the level-k cylinders:
/// [X/m^k, (X+1)/m^k] x [Y/n^k, (Y+1)/n^k].
std::vector<std::pair<std::int64_t, std::int64_t>> carpet_cells(const CarpetSpec& spec, int depth,
                                                                  std::uint64_t budget = 0);

BoxSet carpet_approx(const CarpetSpec& spec, int depth, std::uint64_t budget = 0);

/// Level cylinders built on the bounding box of F instead of the unit
/// square, so axis reflections of F map cylinders onto cylinders.
BoxSet carpet_tight_approx(const CarpetSpec& spec, int depth, std::uint64_t budget = 0);

/// Bounding box of F.
Box carpet_hull(const CarpetSpec& spec);

/// Gamma_b: column words a with (a, b) in gamma^|b|.
std::vector<Word> gamma_row(const CarpetSpec& spec, const Word& b);
/// Row words b with (a, b) in gamma^|a|.
std::vector<Word> gamma_col(const CarpetSpec& spec, const Word& a);

struct SliceApprox {
    std::vector<Interval> intervals;
    int depth = 0;
    /// Row-digit sequences whose symbolic slices were nonempty at this depth.
    std::vector<DigitSequence> sources;

    bool empty() const { return intervals.empty(); }
};

SliceApprox symbolic_slice_approx(const CarpetSpec& spec, const DigitSequence& eta, int depth,
                                  std::uint64_t budget = 0);

/// Union of the symbolic slices over every base-n expansion of y.
SliceApprox slice_at(const CarpetSpec& spec, const Rational& y, int depth, std::uint64_t budget = 0);

/// Exact dimension of the symbolic slice; empty when a digit fiber is empty.
std::optional<LogRatio> slice_dimension(const CarpetSpec& spec, const DigitSequence& eta);

/// Deleted-digit description of the projection to axis 1 or 2.
DeletedDigitSpec projection(const CarpetSpec& spec, int axis);

/// F_y = E + m^-(k-1) D(Lambda, m^p) for y with a unique expansion.
struct SelfSimilarSlice {
    std::vector<Rational> offsets;  // E, ascending
    int prefix_length = 0;          // k - 1
    Rational prefix_scale;          // m^-(k-1)
    BigInt base;                    // m^p
    std::vector<BigInt> digits;     // Lambda, ascending

    bool empty() const { return offsets.empty() || digits.empty(); }
    /// Level intervals at depth prefix_length + j * p.
    std::vector<Interval> level(int j) const;
};

SelfSimilarSlice slice_self_similar_form(const CarpetSpec& spec, const DigitSequence& eta);

/// m^-k for a row digit eta_k outside the full rows; PreconditionError otherwise.
Rational max_interval_length_bound(const CarpetSpec& spec, const DigitSequence& eta, int k);

/// Length of the longest run after merging touching intervals (0 if empty).
Rational longest_merged_interval(const std::vector<Interval>& intervals);

/// pi of the periodic word (w w w ...); an exact point of F.
Point2 witness_point(const CarpetSpec& spec, const GammaWord& w);

/// Exact membership of p in carpet_approx(spec, depth).
bool in_carpet_approx(const CarpetSpec& spec, const Point2& p, int depth);

/// Exact squared distance from p to carpet_approx(spec, depth).
Rational dist_sq_to_approx(const CarpetSpec& spec, const Point2& p, int depth);

}  // namespace bmc
