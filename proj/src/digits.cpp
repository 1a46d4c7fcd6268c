#include "bmc/digits.hpp"

#include "bmc/errors.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>

namespace bmc {

namespace {

void check_base(int base) {
    if (base < 2) throw DomainError("base must be >= 2, got " + std::to_string(base));
}

char digit_char(int d) { return static_cast<char>(d < 10 ? '0' + d : 'a' + (d - 10)); }

int char_digit(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'z') return c - 'a' + 10;
    return -1;
}

// Value of the purely periodic sequence (w w w ...) in base b.
Rational periodic_value(const Word& w, int base) {
    const BigInt bp = ipow(BigInt(base), w.size());
    return pi_word(w, base) * bp / (bp - 1);
}

}  // namespace

Rational pi_word(const Word& w, int base) {
    BigInt num = 0;
    for (int d : w) num = num * base + d;
    return make_rational(num, ipow(BigInt(base), w.size()));
}

DigitSequence::DigitSequence(int base, Word preperiod, Word period)
    : base_(base), pre_(std::move(preperiod)), per_(std::move(period)) {
    check_base(base_);
    if (per_.empty()) throw DomainError("digit sequence needs a nonempty period");
    for (const Word* w : {&pre_, &per_}) {
        for (int d : *w) {
            if (d < 0 || d >= base_)
                throw DomainError("digit " + std::to_string(d) + " out of range for base " + std::to_string(base_));
        }
    }
    // Least period.
    const std::size_t p = per_.size();
    for (std::size_t q = 1; q < p; ++q) {
        if (p % q) continue;
        bool ok = true;
        for (std::size_t i = q; i < p && ok; ++i) ok = per_[i] == per_[i - q];
        if (ok) {
            per_.resize(q);
            break;
        }
    }
    // Fold the preperiod into the period from the right.
    while (!pre_.empty() && pre_.back() == per_.back()) {
        pre_.pop_back();
        std::rotate(per_.rbegin(), per_.rbegin() + 1, per_.rend());
    }
}

DigitSequence DigitSequence::parse(std::string_view text, int base) {
    check_base(base);
    const auto open = text.find('(');
    const auto close = text.find(')');
    if (open == std::string_view::npos || close == std::string_view::npos || close != text.size() - 1 ||
        close <= open + 1)
        throw ParseError("digit sequence must look like '12(0)', got '" + std::string(text) + "'");
    auto read = [&](std::string_view s) {
        Word w;
        for (char c : s) {
            const int d = char_digit(c);
            if (d < 0 || d >= base)
                throw ParseError("bad digit '" + std::string(1, c) + "' for base " + std::to_string(base));
            w.push_back(d);
        }
        return w;
    };
    return DigitSequence(base, read(text.substr(0, open)), read(text.substr(open + 1, close - open - 1)));
}

int DigitSequence::at(std::size_t k) const {
    if (k == 0) throw DomainError("digit positions are 1-based");
    if (k <= pre_.size()) return pre_[k - 1];
    return per_[(k - 1 - pre_.size()) % per_.size()];
}

Word DigitSequence::prefix(std::size_t len) const {
    Word w(len);
    for (std::size_t k = 1; k <= len; ++k) w[k - 1] = at(k);
    return w;
}

DigitSequence DigitSequence::shift(std::size_t k) const {
    if (k <= pre_.size()) return DigitSequence(base_, Word(pre_.begin() + static_cast<long>(k), pre_.end()), per_);
    Word per = per_;
    const std::size_t r = (k - pre_.size()) % per.size();
    std::rotate(per.begin(), per.begin() + static_cast<long>(r), per.end());
    return DigitSequence(base_, {}, per);
}

std::string DigitSequence::to_string() const {
    std::string s;
    for (int d : pre_) s += digit_char(d);
    s += '(';
    for (int d : per_) s += digit_char(d);
    s += ')';
    return s;
}

Rational pi_b(const DigitSequence& seq) {
    const int b = seq.base();
    const BigInt scale = ipow(BigInt(b), seq.preperiod().size());
    return pi_word(seq.preperiod(), b) + periodic_value(seq.period(), b) / scale;
}

std::vector<DigitSequence> expansions_of(const Rational& x, int base) {
    check_base(base);
    if (x < 0 || x > 1) throw DomainError("expansions_of: " + x.get_str() + " is outside [0,1]");
    if (x == 1) return {DigitSequence(base, {}, {base - 1})};
    // Long division; the remainder sequence is eventually periodic.
    const BigInt den = x.get_den();
    BigInt rem = x.get_num();
    std::map<BigInt, std::size_t> seen;
    Word digits;
    while (!seen.contains(rem)) {
        seen.emplace(rem, digits.size());
        rem *= base;
        BigInt d;
        mpz_fdiv_qr(d.get_mpz_t(), rem.get_mpz_t(), rem.get_mpz_t(), den.get_mpz_t());
        digits.push_back(static_cast<int>(d.get_si()));
    }
    const std::size_t start = seen[rem];
    DigitSequence greedy(base, Word(digits.begin(), digits.begin() + static_cast<long>(start)),
                         Word(digits.begin() + static_cast<long>(start), digits.end()));
    std::vector<DigitSequence> out{greedy};
    if (x > 0 && greedy.period() == Word{0}) {
        Word pre = greedy.preperiod();
        --pre.back();
        out.emplace_back(base, std::move(pre), Word{base - 1});
    }
    return out;
}

DigitSequence other_expansion(const DigitSequence& seq) {
    for (auto& e : expansions_of(pi_b(seq), seq.base())) {
        if (e != seq) return e;
    }
    return seq;
}

DigitSequence add_with_carry(const DigitSequence& xi, const DigitSequence& eta) {
    if (xi.base() != eta.base()) throw DomainError("add_with_carry: bases differ");
    const int b = xi.base();
    const Rational total = pi_b(xi) + pi_b(eta);
    if (total > 1) throw DomainError("add_with_carry: sum " + total.get_str() + " exceeds 1");
    // The only expansion of 1 has no integer part, so no carry recursion reaches it.
    if (total == 1) return DigitSequence(b, {}, {b - 1});

    const std::size_t L = std::max(xi.preperiod().size(), eta.preperiod().size());
    const std::size_t P = std::lcm(xi.period().size(), eta.period().size());
    const std::size_t N = L + P;
    // s[k], k = 1..N; position N+1 wraps to L+1.
    std::vector<int> s(N + 2);
    for (std::size_t k = 1; k <= N; ++k) s[k] = xi.at(k) + eta.at(k);
    auto next = [&](std::size_t k) { return k == N ? L + 1 : k + 1; };

    // Carries run right to left: c[k] = floor((s[k] + c[k+1]) / b). The carry
    // entering the cycle must be a fixed point of one trip around it; when
    // both 0 and 1 are, the tail equals (b-1)-bar and we keep it uncarried.
    std::vector<int> c(N + 2, 0);
    auto run_cycle = [&](int x) {
        int carry = x;
        for (std::size_t k = N; k >= L + 1; --k) {
            carry = (s[k] + carry) / b;
            c[k] = carry;
            if (k == L + 1) break;
        }
        return carry == x;
    };
    if (!run_cycle(0) && !run_cycle(1)) throw DomainError("add_with_carry: no consistent carry");
    for (std::size_t k = L; k >= 1; --k) c[k] = (s[k] + c[k + 1]) / b;
    if (c[1] != 0) throw DomainError("add_with_carry: carry out of the first digit");

    Word pre(L), per(P);
    for (std::size_t k = 1; k <= N; ++k) {
        const int t = s[k] + c[next(k)] - b * c[k];
        if (t < 0 || t >= b) throw DomainError("add_with_carry: internal carry inconsistency");
        (k <= L ? pre[k - 1] : per[k - L - 1]) = t;
    }
    return DigitSequence(b, std::move(pre), std::move(per));
}

DeletedDigitSpec::DeletedDigitSpec(int b, std::vector<int> d) : base(b), digits(std::move(d)) {
    if (base < 2) throw ValidationError("deleted-digit base must be >= 2");
    std::sort(digits.begin(), digits.end());
    digits.erase(std::unique(digits.begin(), digits.end()), digits.end());
    if (digits.empty()) throw ValidationError("deleted-digit set must be nonempty");
    if (digits.front() < 0 || digits.back() >= base)
        throw ValidationError("deleted-digit set has a digit outside [0, base)");
}

bool operator==(const Interval& a, const Interval& b) { return a.lo == b.lo && a.hi == b.hi; }
bool operator<(const Interval& a, const Interval& b) { return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi); }

std::vector<Interval> merge_intervals(std::vector<Interval> v) {
    std::sort(v.begin(), v.end());
    std::vector<Interval> out;
    for (auto& iv : v) {
        if (!out.empty() && iv.lo <= out.back().hi) {
            if (iv.hi > out.back().hi) out.back().hi = iv.hi;
        } else {
            out.push_back(std::move(iv));
        }
    }
    return out;
}

std::vector<Interval> dd_level_approx(const DeletedDigitSpec& spec, int depth, bool merge, std::uint64_t budget) {
    if (depth < 0) throw DomainError("depth must be >= 0");
    if (budget == 0) budget = default_cell_budget();
    std::uint64_t count = 1;
    for (int i = 0; i < depth; ++i) {
        count *= spec.digits.size();
        check_budget(count, budget, "deleted-digit level approximation");
    }
    // Left endpoints as integers over base^depth; lexicographic order is numeric order.
    std::vector<BigInt> left{0};
    for (int i = 0; i < depth; ++i) {
        std::vector<BigInt> nxt;
        nxt.reserve(left.size() * spec.digits.size());
        for (const auto& x : left) {
            for (int d : spec.digits) nxt.push_back(x * spec.base + d);
        }
        left = std::move(nxt);
    }
    const BigInt den = ipow(BigInt(spec.base), static_cast<unsigned long>(depth));
    std::vector<Interval> out;
    out.reserve(left.size());
    for (const auto& x : left) out.push_back({make_rational(x, den), make_rational(x + 1, den)});
    return merge ? merge_intervals(std::move(out)) : out;
}

LogRatio dd_dimension(const DeletedDigitSpec& spec) {
    return LogRatio(Rational(static_cast<long>(spec.digits.size())), BigInt(spec.base));
}

Rational MadicRational::value() const {
    return make_rational(numerator, ipow(BigInt(base), exponent));
}

std::optional<MadicRational> is_nadic(const Rational& x, int base) {
    check_base(base);
    const BigInt den = x.get_den();
    BigInt rest = den;
    for (BigInt g = gcd(rest, BigInt(base)); g > 1; g = gcd(rest, BigInt(base))) rest /= g;
    if (rest != 1) return std::nullopt;
    BigInt power = 1;
    unsigned e = 0;
    while (power % den != 0) {
        power *= base;
        ++e;
    }
    return MadicRational{x.get_num() * (power / den), base, e};
}

std::uint64_t default_cell_budget() {
    if (const char* env = std::getenv("CARPET_BUDGET")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return v;
    }
    return 10'000'000;
}

void check_budget(std::uint64_t count, std::uint64_t budget, const char* what) {
    if (count > budget)
        throw ResourceError(std::string(what) + " needs more than the cell budget of " + std::to_string(budget) +
                            " (raise --budget or CARPET_BUDGET)");
}

}  // namespace bmc
