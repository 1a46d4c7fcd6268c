#pragma once

// Exact arithmetic primitives shared by every module. Rationals are GMP
// rationals kept in canonical (reduced, positive denominator) form.

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace bmc {

using BigInt = mpz_class;
using Rational = mpq_class;

/// Builds num/den in lowest terms. Throws DomainError when den == 0.
Rational make_rational(long num, long den = 1);
Rational make_rational(const BigInt& num, const BigInt& den);

BigInt ipow(const BigInt& base, unsigned long exp);
BigInt ipow(long base, unsigned long exp);
/// base^exp for any integer exp; base must be nonzero when exp < 0.
Rational rpow(const Rational& base, long exp);

BigInt floor_of(const Rational& x);
BigInt ceil_of(const Rational& x);

bool is_integer(const Rational& x);

/// "p/q" or "p" when the denominator is 1.
std::string to_string(const Rational& x);

/// Accepts "p", "-p", "p/q" with optional surrounding whitespace.
/// Throws ParseError on malformed text or a zero denominator.
Rational parse_rational(std::string_view text);

/// Exact test of sqrt(u) <= sqrt(a) + sqrt(b) for nonnegative u, a, b.
bool sqrt_le_sum_of_sqrts(const Rational& u, const Rational& a, const Rational& b);

std::int64_t to_int64(const BigInt& x);

}  // namespace bmc
