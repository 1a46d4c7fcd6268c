#pragma once

// Integer and rational number theory: factorization, multiplicative
// independence of bases, exact rational logarithms, and symbolic log ratios.

#include "bmc/rational.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>

namespace bmc {

/// prime -> exponent. Exponents are >= 1 for integers; signed exponents are
/// used internally for rationals.
using PrimeFactorization = std::map<std::uint64_t, long>;

/// Trial-division factorization. Throws DomainError for n < 2.
PrimeFactorization factorize(std::uint64_t n);

/// True iff m^a != n^b for all positive integers a, b.
bool multiplicatively_independent(std::uint64_t m, std::uint64_t n);

/// u/v with alpha = m^(u/v) when log(alpha)/log(m) is rational, else empty.
/// Throws DomainError for alpha <= 0 or m < 2.
std::optional<Rational> rational_log(const Rational& alpha, std::uint64_t m);

/// Symbolic value log(arg) / log(base) with arg > 0 and base >= 2.
class LogRatio {
public:
    LogRatio(Rational arg, BigInt base);

    const Rational& arg() const { return arg_; }
    const BigInt& base() const { return base_; }

    /// The value when it is rational.
    std::optional<Rational> rational_value() const;

    /// Exact comparison against p/q: log a / log b vs p/q  <=>  a^q vs b^p.
    std::strong_ordering compare(const Rational& value) const;

    /// Exact comparison when the two bases are multiplicatively dependent;
    /// empty otherwise.
    std::optional<std::strong_ordering> compare(const LogRatio& other) const;

    double to_double() const;
    std::string to_string() const;

    /// Formal equality: rational values agree, or the prime-exponent forms
    /// define the same quotient of logarithms.
    friend bool operator==(const LogRatio& a, const LogRatio& b);

private:
    Rational arg_;
    BigInt base_;
};

}  // namespace bmc
