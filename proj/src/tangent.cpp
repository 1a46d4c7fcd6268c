#include "bmc/tangent.hpp"

#include "bmc/errors.hpp"

#include <algorithm>
#include <set>

namespace bmc {

namespace {

std::uint64_t resolve(std::uint64_t budget) { return budget ? budget : default_cell_budget(); }

Word digits_of(std::int64_t v, int base, int len) {
    Word w(static_cast<std::size_t>(len));
    for (int i = len - 1; i >= 0; --i) {
        w[static_cast<std::size_t>(i)] = static_cast<int>(v % base);
        v /= base;
    }
    return w;
}

Rational inv_pow(int base, int e) { return make_rational(BigInt(1), ipow(BigInt(base), static_cast<unsigned long>(e))); }

}  // namespace

namespace {

// Round to a multiple of 2^-prec, downwards or upwards.
Rational round_dyadic(const Rational& x, unsigned long prec, bool up) {
    BigInt scaled = x.get_num() << prec;
    BigInt q;
    if (up) mpz_cdiv_q(q.get_mpz_t(), scaled.get_mpz_t(), x.get_den().get_mpz_t());
    else mpz_fdiv_q(q.get_mpz_t(), scaled.get_mpz_t(), x.get_den().get_mpz_t());
    return make_rational(q, ipow(BigInt(2), prec));
}

// First `bits` binary digits of log_b(x) for x in [1, b), by repeated
// squaring on an outward-rounded enclosure. Empty if precision ran out.
std::optional<BigInt> log_bits(const Rational& x, const BigInt& b, int bits, unsigned long prec) {
    Rational lo = x, hi = x;
    const Rational base(b);
    BigInt out = 0;
    for (int i = 0; i < bits; ++i) {
        lo = round_dyadic(lo * lo, prec, false);
        hi = round_dyadic(hi * hi, prec, true);
        out *= 2;
        if (lo >= base) {
            out += 1;
            lo /= base;
            hi /= base;
        } else if (hi >= base) {
            return std::nullopt;
        }
    }
    return out;
}

}  // namespace

std::pair<Rational, Rational> Frame::s_enclosure(int n, int bits) const {
    if (bits < 0) throw DomainError("bits must be >= 0");
    const LogRatio s = this->s(n);
    const BigInt den = ipow(BigInt(2), static_cast<unsigned long>(bits));
    if (const auto rv = s.rational_value()) {
        const BigInt j = (rv->get_num() * den) / rv->get_den();
        return {make_rational(j, den), make_rational(j + 1, den)};
    }
    // Irrational, so every digit is eventually decided.
    for (unsigned long prec = static_cast<unsigned long>(bits) + 64;; prec *= 2) {
        if (const auto j = log_bits(s.arg(), s.base(), bits, prec)) return {make_rational(*j, den), make_rational(*j + 1, den)};
    }
}

int frame_depth(int l, int m, int n) {
    if (l < 0) throw DomainError("l must be >= 0");
    const BigInt ml = ipow(BigInt(m), static_cast<unsigned long>(l));
    int k = 0;
    BigInt nk = n;
    while (nk <= ml) {
        ++k;
        nk *= n;
    }
    return k;
}

Frame frame_of(int l, int m, int n) {
    if (l < 1) throw DomainError("frame needs l >= 1");
    if (!(m > n && n >= 2)) throw DomainError("frame needs m > n >= 2");
    Frame fr;
    fr.l = l;
    fr.k = frame_depth(l, m, n);
    fr.r = make_rational(ipow(BigInt(m), static_cast<unsigned long>(l)), ipow(BigInt(n), static_cast<unsigned long>(fr.k)));
    if (fr.r == 1) throw DomainError("m^l = n^k: bases are multiplicatively dependent");
    return fr;
}

MiniSetApprox mini_set(const CarpetSpec& spec, const Point2& f, int l, int inner_depth, std::uint64_t budget) {
    if (l < 0 || inner_depth < 0) throw DomainError("mini_set needs l >= 0 and inner_depth >= 0");
    budget = resolve(budget);
    const int m = spec.m(), n = spec.n();
    MiniSetApprox out;
    out.l = l;
    out.k = frame_depth(l, m, n);
    if (l >= 1 && ipow(BigInt(m), static_cast<unsigned long>(l)) != ipow(BigInt(n), static_cast<unsigned long>(out.k)))
        out.frame = frame_of(l, m, n);
    out.inner_depth = inner_depth;
    out.anchor = f;
    const int K = out.k + inner_depth;
    if (!ipow(BigInt(m), static_cast<unsigned long>(K)).fits_slong_p())
        throw ResourceError("mini_set: depth too large for 64-bit cell indices");

    // Index ranges of level-d cylinders meeting f + m^-l Q.
    const Rational delta = inv_pow(m, l);
    std::vector<std::int64_t> xlo(K + 1), xhi(K + 1), ylo(K + 1), yhi(K + 1);
    for (int d = 0; d <= K; ++d) {
        const Rational md(ipow(BigInt(m), static_cast<unsigned long>(d)));
        const Rational nd(ipow(BigInt(n), static_cast<unsigned long>(d)));
        auto clamp64 = [](const BigInt& v) -> std::int64_t {
            if (v > BigInt(static_cast<long>(INT64_MAX / 2))) return INT64_MAX / 2;
            if (v < BigInt(static_cast<long>(INT64_MIN / 2))) return INT64_MIN / 2;
            return v.get_si();
        };
        xlo[d] = clamp64(ceil_of((f.x - delta) * md) - 1);
        xhi[d] = clamp64(floor_of((f.x + delta) * md));
        ylo[d] = clamp64(ceil_of((f.y - delta) * nd) - 1);
        yhi[d] = clamp64(floor_of((f.y + delta) * nd));
    }

    struct Node {
        std::int64_t X, Y;
        int d;
    };
    std::vector<Node> stack{{0, 0, 0}};
    std::vector<std::pair<std::int64_t, std::int64_t>> leaves;
    while (!stack.empty()) {
        const Node nd = stack.back();
        stack.pop_back();
        if (nd.X < xlo[nd.d] || nd.X > xhi[nd.d] || nd.Y < ylo[nd.d] || nd.Y > yhi[nd.d]) continue;
        if (nd.d == K) {
            leaves.emplace_back(nd.X, nd.Y);
            check_budget(leaves.size(), budget, "mini-set");
            continue;
        }
        for (const auto& [i, j] : spec.gamma()) stack.push_back({nd.X * m + i, nd.Y * n + j, nd.d + 1});
    }

    const Rational ml(ipow(BigInt(m), static_cast<unsigned long>(l)));
    const Rational mK(ipow(BigInt(m), static_cast<unsigned long>(K)));
    const Rational nK(ipow(BigInt(n), static_cast<unsigned long>(K)));
    std::vector<Box> boxes;
    boxes.reserve(leaves.size());
    for (const auto& [X, Y] : leaves) {
        const Rational x0 = Rational(BigInt(static_cast<long>(X))) / mK, y0 = Rational(BigInt(static_cast<long>(Y))) / nK;
        boxes.push_back({ml * (x0 - f.x), ml * (y0 - f.y), ml * (x0 + 1 / mK - f.x), ml * (y0 + 1 / nK - f.y)});
    }
    out.boxset = window(BoxSet(std::move(boxes), K, true), window_q());
    const Rational w = ml / mK, h = ml / nK;
    out.certificate_sq = w * w + h * h;
    return out;
}

MiniSetApprox mini_set(const CarpetSpec& spec, const GammaWord& f, int l, int inner_depth, std::uint64_t budget) {
    return mini_set(spec, witness_point(spec, f), l, inner_depth, budget);
}

BoxSet H_of(const CarpetSpec& spec, const Word& b, int depth, std::uint64_t budget) {
    const auto words = gamma_row(spec, b);
    if (words.empty()) return BoxSet({}, depth, true);
    const BoxSet base = carpet_approx(spec, depth, budget);
    check_budget(static_cast<std::uint64_t>(words.size()) * base.size(), resolve(budget), "H(b)");
    const Rational squeeze = inv_pow(spec.m(), static_cast<int>(b.size()));
    std::vector<Box> boxes;
    boxes.reserve(words.size() * base.size());
    for (const auto& a : words) {
        const Rational shift = pi_word(a, spec.m());
        for (const auto& bx : base.boxes())
            boxes.push_back({squeeze * bx.x0 + shift, bx.y0, squeeze * bx.x1 + shift, bx.y1});
    }
    return BoxSet(std::move(boxes), depth, true);
}

std::vector<BasicSetDescriptor> basic_decomposition(const CarpetSpec& spec, const Point2& f, int l) {
    const int m = spec.m(), n = spec.n();
    const Frame fr = frame_of(l, m, n);
    const int k = fr.k;
    const Rational ml(ipow(BigInt(m), static_cast<unsigned long>(l)));
    const Rational nk(ipow(BigInt(n), static_cast<unsigned long>(k)));
    const Rational delta = 1 / ml;

    // Prefixes with [A/m^l, (A+1)/m^l] meeting [f1 - delta, f1 + delta]: at most four.
    const BigInt a_lo = std::max(ceil_of(f.x * ml - 2), BigInt(0));
    const BigInt a_hi = std::min(floor_of(f.x * ml + 1), BigInt(ml.get_num() - 1));
    const BigInt b_lo = std::max(ceil_of((f.y - delta) * nk - 1), BigInt(0));
    const BigInt b_hi = std::min(floor_of((f.y + delta) * nk), BigInt(nk.get_num() - 1));

    std::vector<BasicSetDescriptor> out;
    for (BigInt A = a_lo; A <= a_hi; ++A) {
        const Word ap = digits_of(to_int64(A), m, l);
        for (BigInt B = b_lo; B <= b_hi; ++B) {
            const Word b = digits_of(to_int64(B), n, k);
            bool admissible = true;
            for (int i = 0; i < l && admissible; ++i) admissible = spec.has(ap[i], b[i]);
            if (!admissible) continue;
            const Word tail(b.begin() + l, b.end());
            const auto fibers = gamma_row(spec, tail);
            // Some level-k cylinder [a' a''] x [b] must meet the window.
            const Rational x_base = pi_word(ap, m);
            const Rational w = 1 / Rational(ipow(BigInt(m), static_cast<unsigned long>(k)));
            const bool meets = std::any_of(fibers.begin(), fibers.end(), [&](const Word& a2) {
                const Rational x0 = x_base + pi_word(a2, m) / ml;
                return x0 <= f.x + delta && x0 + w >= f.x - delta;
            });
            if (!meets) continue;
            BasicSetDescriptor d;
            d.a_prefix = ap;
            d.b = b;
            d.b_tail = tail;
            d.z = {ml * (x_base - f.x), nk * (pi_word(b, n) - f.y)};
            d.frame = fr;
            out.push_back(std::move(d));
        }
    }
    return out;
}

std::vector<Word> tails_of(const std::vector<BasicSetDescriptor>& d) {
    std::set<Word> s;
    for (const auto& x : d) s.insert(x.b_tail);
    return {s.begin(), s.end()};
}

std::vector<Word> prefixes_of(const std::vector<BasicSetDescriptor>& d) {
    std::set<Word> s;
    for (const auto& x : d) s.insert(x.a_prefix);
    return {s.begin(), s.end()};
}

BoxSet render_descriptor(const CarpetSpec& spec, const BasicSetDescriptor& d, int inner_depth, std::uint64_t budget) {
    const BoxSet h = H_of(spec, d.b_tail, inner_depth, budget);
    return affine_image(h, AffineMap2::diagonal(1, d.frame.r, d.z.x, d.frame.r * d.z.y));
}

BoxSet render_decomposition(const CarpetSpec& spec, const std::vector<BasicSetDescriptor>& d, int inner_depth,
                            std::uint64_t budget) {
    BoxSet acc({}, std::nullopt, false);
    for (const auto& x : d) acc = unite(acc, window(render_descriptor(spec, x, inner_depth, budget), window_q()));
    return acc;
}

OrbitReport orbit_closure(const DigitSequence& eta, int m, int n, int horizon) {
    if (eta.base() != n) throw DomainError("orbit sequence must be in base n");
    if (!multiplicatively_independent(static_cast<std::uint64_t>(m), static_cast<std::uint64_t>(n)))
        throw DomainError("orbit_closure needs multiplicatively independent m, n");
    if (horizon < 0) throw DomainError("horizon must be >= 0");
    OrbitReport rep;
    const DigitSequence tail(n, {}, eta.period());
    std::set<DigitSequence> closure;
    for (std::size_t i = 0; i < eta.period().size(); ++i) closure.insert(tail.shift(i));
    rep.closure.assign(closure.begin(), closure.end());
    for (int i = 0; i < horizon; ++i) rep.orbit.push_back(eta.shift(static_cast<std::size_t>(i)));
    return rep;
}

BoxSet predicted_tangent(const CarpetSpec& spec, const DigitSequence& xi, const Rational& r,
                         const std::vector<Point2>& offsets, int depth, std::uint64_t budget) {
    if (r < 1) throw DomainError("vertical scale n^s must be >= 1");
    const auto slice = symbolic_slice_approx(spec, xi, depth, budget);
    const auto p2 = dd_level_approx(projection(spec, 2), depth, false, budget);
    check_budget(static_cast<std::uint64_t>(slice.intervals.size()) * p2.size() * std::max<std::size_t>(offsets.size(), 1),
                 resolve(budget), "predicted tangent");
    std::vector<Box> boxes;
    for (const auto& z : offsets) {
        for (const auto& xs : slice.intervals) {
            for (const auto& ys : p2) {
                Box b{xs.lo + z.x, r * (ys.lo + z.y), xs.hi + z.x, r * (ys.hi + z.y)};
                if (b.x0 < -2 || b.x1 > 2 || b.y0 < -2 || b.y1 > 2)
                    throw DomainError("predicted tangent piece at offset (" + z.x.get_str() + ", " + z.y.get_str() +
                                      ") leaves [-2,2]^2");
                boxes.push_back(std::move(b));
            }
        }
    }
    return window(BoxSet(std::move(boxes), depth), window_q());
}

CovarianceReport covariance_check(const CarpetSpec& spec, const AffineMap2& g, const Point2& f, int l, int p,
                                  int inner_depth, std::uint64_t budget) {
    if (p < 0 || p > l) throw PreconditionError("covariance_check needs 0 <= p <= l");
    if (!g.is_diagonal()) throw PreconditionError("covariance_check needs a diagonal linear part");
    const Rational mp = inv_pow(spec.m(), p);
    const Rational sx = mp * g.a, sy = mp * g.d;
    if (abs(sx) > 1 || abs(sy) > 1) throw PreconditionError("m^-p A does not map Q into Q; increase p");

    const auto T = mini_set(spec, f, l, inner_depth, budget);
    const auto Tp = mini_set(spec, g(f), l - p, inner_depth, budget);
    const BoxSet image = affine_image(T.boxset, AffineMap2::diagonal(sx, sy));

    CovarianceReport rep;
    const Rational s = std::max(abs(sx), abs(sy));
    rep.source_certificate_sq = T.certificate_sq * s * s;
    rep.target_certificate_sq = Tp.certificate_sq;
    if (image.empty()) {
        rep.holds = true;
        return rep;
    }
    if (Tp.boxset.empty()) {
        rep.target_empty = true;
        rep.violated = true;
        return rep;
    }
    const auto dd = directed_distance(image, Tp.boxset);
    rep.lower_sq = dd.lower_sq;
    rep.upper_sq = dd.upper_sq;
    rep.holds = sqrt_le_sum_of_sqrts(rep.upper_sq, rep.source_certificate_sq, rep.target_certificate_sq);
    rep.violated = !sqrt_le_sum_of_sqrts(rep.lower_sq, rep.source_certificate_sq, rep.target_certificate_sq);
    return rep;
}

}  // namespace bmc
