#include "bmc/numtheory.hpp"

#include "bmc/errors.hpp"

#include <cmath>
#include <utility>

namespace bmc {

namespace {

using SignedFactorization = std::map<BigInt, long>;

// Trial division over an arbitrary-size integer. Arguments here are products
// of small digit counts and bases, so the loop bound is never approached in
// practice; a cofactor left after it is kept as a single formal "prime".
SignedFactorization factor_big(BigInt n, long sign) {
    SignedFactorization out;
    if (n < 2) return out;
    for (unsigned long p = 2; p <= 1'000'000; p += (p == 2 ? 1 : 2)) {
        const BigInt bp(p);
        if (bp * bp > n) break;
        long e = 0;
        while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            n /= p;
            ++e;
        }
        if (e) out[bp] += sign * e;
    }
    if (n > 1) out[n] += sign;
    return out;
}

SignedFactorization factor_rational(const Rational& x) {
    auto out = factor_big(x.get_num(), 1);
    for (const auto& [p, e] : factor_big(x.get_den(), -1)) {
        out[p] += e;
        if (out[p] == 0) out.erase(p);
    }
    return out;
}

std::optional<Rational> rational_log_big(const Rational& alpha, const BigInt& base) {
    if (alpha <= 0) throw DomainError("rational_log: argument must be positive");
    if (base < 2) throw DomainError("rational_log: base must be >= 2");
    const auto fa = factor_rational(alpha);
    const auto fb = factor_big(base, 1);
    std::optional<Rational> ratio;
    for (const auto& [p, e] : fb) {
        const auto it = fa.find(p);
        const long ea = it == fa.end() ? 0 : it->second;
        const Rational r = make_rational(ea, e);
        if (ratio && *ratio != r) return std::nullopt;
        ratio = r;
    }
    for (const auto& [p, e] : fa) {
        if (!fb.contains(p)) return std::nullopt;
    }
    return ratio.value_or(Rational(0));
}

}  // namespace

PrimeFactorization factorize(std::uint64_t n) {
    if (n < 2) throw DomainError("factorize: argument must be >= 2, got " + std::to_string(n));
    PrimeFactorization out;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        while (n % p == 0) {
            ++out[p];
            n /= p;
        }
    }
    if (n > 1) ++out[n];
    return out;
}

bool multiplicatively_independent(std::uint64_t m, std::uint64_t n) {
    if (m < 2 || n < 2) throw DomainError("multiplicatively_independent: bases must be >= 2");
    const auto fm = factorize(m);
    const auto fn = factorize(n);
    if (fm.size() != fn.size()) return true;
    // Proportional exponent vectors over the same support.
    std::optional<Rational> ratio;
    for (const auto& [p, e] : fm) {
        const auto it = fn.find(p);
        if (it == fn.end()) return true;
        const Rational r = make_rational(e, it->second);
        if (ratio && *ratio != r) return true;
        ratio = r;
    }
    return false;
}

std::optional<Rational> rational_log(const Rational& alpha, std::uint64_t m) {
    if (m < 2) throw DomainError("rational_log: base must be >= 2");
    return rational_log_big(alpha, BigInt(static_cast<unsigned long>(m)));
}

LogRatio::LogRatio(Rational arg, BigInt base) : arg_(std::move(arg)), base_(std::move(base)) {
    if (arg_ <= 0) throw DomainError("LogRatio: argument must be positive");
    if (base_ < 2) throw DomainError("LogRatio: base must be >= 2");
}

std::optional<Rational> LogRatio::rational_value() const { return rational_log_big(arg_, base_); }

std::strong_ordering LogRatio::compare(const Rational& value) const {
    // log a / log b <=> p/q with log b > 0, q > 0  <=>  a^q <=> b^p.
    const BigInt q = value.get_den();
    const BigInt p = value.get_num();
    if (!q.fits_ulong_p() || !p.fits_slong_p()) throw ResourceError("LogRatio::compare: exponent too large");
    const Rational lhs = rpow(arg_, static_cast<long>(q.get_ui()));
    const Rational rhs = rpow(Rational(base_), p.get_si());
    return cmp(lhs, rhs) <=> 0;
}

std::optional<std::strong_ordering> LogRatio::compare(const LogRatio& other) const {
    // other.base = base^(u/v)  =>  log c / log d = v log c / (u log b).
    const auto rel = rational_log_big(Rational(other.base_), base_);
    if (!rel) return std::nullopt;
    const BigInt u = rel->get_num();
    const BigInt v = rel->get_den();
    if (!u.fits_ulong_p() || !v.fits_ulong_p()) throw ResourceError("LogRatio::compare: exponent too large");
    const Rational lhs = rpow(arg_, static_cast<long>(u.get_ui()));
    const Rational rhs = rpow(other.arg_, static_cast<long>(v.get_ui()));
    return cmp(lhs, rhs) <=> 0;
}

double LogRatio::to_double() const {
    const double a = std::log(arg_.get_num().get_d()) - std::log(arg_.get_den().get_d());
    return a / std::log(base_.get_d());
}

std::string LogRatio::to_string() const {
    return "log(" + bmc::to_string(arg_) + ")/log(" + base_.get_str() + ")";
}

bool operator==(const LogRatio& a, const LogRatio& b) {
    if (const auto ord = a.compare(b)) return *ord == std::strong_ordering::equal;
    const auto ra = a.rational_value();
    const auto rb = b.rational_value();
    if (ra || rb) return ra && rb && *ra == *rb;
    // log x * log d == log c * log b as polynomials in the logs of primes.
    auto bilinear = [](const SignedFactorization& x, const SignedFactorization& y) {
        std::map<std::pair<BigInt, BigInt>, long> out;
        for (const auto& [p, e] : x) {
            for (const auto& [q, f] : y) {
                auto key = p < q ? std::make_pair(p, q) : std::make_pair(q, p);
                out[key] += e * f;
            }
        }
        std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
        return out;
    };
    return bilinear(factor_rational(a.arg_), factor_big(b.base_, 1)) ==
           bilinear(factor_rational(b.arg_), factor_big(a.base_, 1));
}

}  // namespace bmc
