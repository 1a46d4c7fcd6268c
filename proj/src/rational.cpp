#include "bmc/rational.hpp"

#include "bmc/errors.hpp"

#include <cctype>
#include <limits>

namespace bmc {

Rational make_rational(long num, long den) {
    if (den == 0) throw DomainError("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

Rational make_rational(const BigInt& num, const BigInt& den) {
    if (den == 0) throw DomainError("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

BigInt ipow(const BigInt& base, unsigned long exp) {
    BigInt out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exp);
    return out;
}

BigInt ipow(long base, unsigned long exp) { return ipow(BigInt(base), exp); }

Rational rpow(const Rational& base, long exp) {
    if (exp >= 0) {
        return make_rational(ipow(base.get_num(), static_cast<unsigned long>(exp)),
                             ipow(base.get_den(), static_cast<unsigned long>(exp)));
    }
    if (base == 0) throw DomainError("zero raised to a negative power");
    const auto e = static_cast<unsigned long>(-exp);
    return make_rational(ipow(base.get_den(), e), ipow(base.get_num(), e));
}

BigInt floor_of(const Rational& x) {
    BigInt q;
    mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return q;
}

BigInt ceil_of(const Rational& x) {
    BigInt q;
    mpz_cdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return q;
}

bool is_integer(const Rational& x) { return x.get_den() == 1; }

std::string to_string(const Rational& x) { return x.get_str(); }

Rational parse_rational(std::string_view text) {
    auto trim = [](std::string_view s) {
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
        return s;
    };
    auto parse_int = [&](std::string_view s) {
        s = trim(s);
        std::size_t i = 0;
        if (!s.empty() && (s[0] == '-' || s[0] == '+')) i = 1;
        if (i == s.size()) throw ParseError("malformed rational '" + std::string(text) + "'");
        for (std::size_t j = i; j < s.size(); ++j) {
            if (!std::isdigit(static_cast<unsigned char>(s[j])))
                throw ParseError("malformed rational '" + std::string(text) + "'");
        }
        std::string digits(s[0] == '+' ? s.substr(1) : s);
        return BigInt(digits);
    };
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_int(text));
    const BigInt num = parse_int(text.substr(0, slash));
    const BigInt den = parse_int(text.substr(slash + 1));
    if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    return make_rational(num, den);
}

bool sqrt_le_sum_of_sqrts(const Rational& u, const Rational& a, const Rational& b) {
    // sqrt(u) <= sqrt(a) + sqrt(b)  <=>  u - a - b <= 2 sqrt(ab)
    const Rational lhs = u - a - b;
    if (lhs <= 0) return true;
    return lhs * lhs <= 4 * a * b;
}

std::int64_t to_int64(const BigInt& x) {
    if (!x.fits_slong_p()) throw ResourceError("integer exceeds 64-bit range: " + x.get_str());
    return x.get_si();
}

}  // namespace bmc
