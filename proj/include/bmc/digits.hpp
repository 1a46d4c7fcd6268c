#pragma once

// Eventually periodic digit sequences, base-b coding, and deleted-digit sets.

#include "bmc/numtheory.hpp"
#include "bmc/rational.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace bmc {

using Word = std::vector<int>;

/// Value of the finite word w in base b: sum w_k b^-k.
Rational pi_word(const Word& w, int base);

/// An eventually periodic sequence over [base], kept in canonical form
/// (least period, then shortest preperiod), so == is sequence equality.
class DigitSequence {
public:
    DigitSequence(int base, Word preperiod, Word period);

    /// Text form "12(0)": preperiod digits then the period in parentheses.
    /// Digits above 9 use lowercase letters.
    static DigitSequence parse(std::string_view text, int base);

    int base() const { return base_; }
    const Word& preperiod() const { return pre_; }
    const Word& period() const { return per_; }

    /// k-th letter, 1-based.
    int at(std::size_t k) const;
    Word prefix(std::size_t len) const;
    DigitSequence shift(std::size_t k = 1) const;

    std::string to_string() const;

    friend bool operator==(const DigitSequence&, const DigitSequence&) = default;
    friend auto operator<=>(const DigitSequence&, const DigitSequence&) = default;

private:
    int base_;
    Word pre_;
    Word per_;
};

Rational pi_b(const DigitSequence& seq);

/// All expansions of x in [0,1], the greedy (eventually 0) one first.
std::vector<DigitSequence> expansions_of(const Rational& x, int base);

DigitSequence other_expansion(const DigitSequence& seq);

DigitSequence add_with_carry(const DigitSequence& xi, const DigitSequence& eta);

struct DeletedDigitSpec {
    int base;
    std::vector<int> digits;  // sorted, unique, nonempty

    DeletedDigitSpec(int base, std::vector<int> digits);
};

struct Interval {
    Rational lo;
    Rational hi;

    Rational length() const { return hi - lo; }
    bool contains(const Rational& x) const { return lo <= x && x <= hi; }
    bool contains(const Interval& o) const { return lo <= o.lo && o.hi <= hi; }
};

bool operator==(const Interval& a, const Interval& b);
bool operator<(const Interval& a, const Interval& b);

/// Sorts and joins intervals that overlap or share an endpoint.
std::vector<Interval> merge_intervals(std::vector<Interval> v);

/// The |digits|^depth level intervals, sorted.
std::vector<Interval> dd_level_approx(const DeletedDigitSpec& spec, int depth, bool merge = false,
                                      std::uint64_t budget = 0);

LogRatio dd_dimension(const DeletedDigitSpec& spec);

struct MadicRational {
    BigInt numerator;
    int base;
    unsigned exponent;

    Rational value() const;
    friend bool operator==(const MadicRational&, const MadicRational&) = default;
};

std::optional<MadicRational> is_nadic(const Rational& x, int base);

/// Cell budget used when a caller passes 0: CARPET_BUDGET if set, else 10^7.
std::uint64_t default_cell_budget();

/// Throws ResourceError naming the budget when count > budget.
void check_budget(std::uint64_t count, std::uint64_t budget, const char* what);

}  // namespace bmc
