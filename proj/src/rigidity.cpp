#include "bmc/rigidity.hpp"

#include "bmc/errors.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace bmc {

namespace {

std::uint64_t resolve(std::uint64_t budget) { return budget ? budget : default_cell_budget(); }

std::optional<Rational> rational_sqrt(const Rational& x) {
    if (x < 0) return std::nullopt;
    const BigInt num = x.get_num(), den = x.get_den();
    if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t())) return std::nullopt;
    BigInt a, b;
    mpz_sqrt(a.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(b.get_mpz_t(), den.get_mpz_t());
    return make_rational(a, b);
}

Rational inv_pow(int base, int e) { return make_rational(BigInt(1), ipow(BigInt(base), static_cast<unsigned long>(e))); }

bool in_runs(const std::vector<Interval>& runs, const Rational& x) {
    auto it = std::upper_bound(runs.begin(), runs.end(), x, [](const Rational& v, const Interval& iv) { return v < iv.lo; });
    if (it == runs.begin()) return false;
    return x <= std::prev(it)->hi;
}

bool inside_one_run(const std::vector<Interval>& runs, const Rational& lo, const Rational& hi) {
    auto it = std::upper_bound(runs.begin(), runs.end(), lo, [](const Rational& v, const Interval& iv) { return v < iv.lo; });
    if (it == runs.begin()) return false;
    return hi <= std::prev(it)->hi;
}

// Level-d cylinders of D(lambda, n) built on the hull [min K, max K], merged.
std::vector<Interval> tight_runs(const DeletedDigitSpec& K, int d) {
    const Rational lo = make_rational(K.digits.front(), K.base - 1);
    const Rational hi = make_rational(K.digits.back(), K.base - 1);
    const Rational s = inv_pow(K.base, d);
    auto level = dd_level_approx(K, d);
    for (auto& iv : level) {
        const Rational x = iv.lo;
        iv.lo = x + s * lo;
        iv.hi = x + s * hi;
    }
    return merge_intervals(std::move(level));
}

TranslationOracleResult run_oracle(const DeletedDigitSpec& K, int l, const std::vector<CoverPiece>& covers,
                                   int search_depth) {
    const int n = K.base;
    const Rational min_k = make_rational(K.digits.front(), n - 1);
    const Rational max_k = make_rational(K.digits.back(), n - 1);
    const Rational shrink = inv_pow(n, l);

    std::vector<std::vector<Interval>> targets(static_cast<std::size_t>(search_depth) + 1);
    for (int d = 1; d <= search_depth; ++d) {
        std::vector<Interval> all;
        const auto runs = tight_runs(K, d);
        for (const auto& c : covers) {
            const Rational s = inv_pow(n, c.l);
            for (const auto& r : runs) all.push_back({s * (r.lo + c.p), s * (r.hi + c.p)});
        }
        targets[static_cast<std::size_t>(d)] = merge_intervals(std::move(all));
    }

    TranslationOracleResult res;
    std::set<Rational> pool;
    for (int d = 1; d <= search_depth; ++d) {
        for (const auto& r : targets[static_cast<std::size_t>(d)]) pool.insert(r.lo - shrink * min_k);
    }
    res.pool.assign(pool.begin(), pool.end());

    // Refutes t at depth d by descending through the cylinders of n^-l K + t.
    auto refuted = [&](const Rational& t, int d) {
        const auto& runs = targets[static_cast<std::size_t>(d)];
        const Rational limit = inv_pow(n, d);
        std::function<bool(const Rational&, int)> rec = [&](const Rational& left, int j) {
            // Cylinder image: t + n^-l (left + n^-j [min K, max K]).
            const Rational s = shrink * inv_pow(n, j);
            const Rational lo = t + shrink * left + s * min_k;
            const Rational hi = t + shrink * left + s * max_k;
            if (!in_runs(runs, lo) || !in_runs(runs, hi)) return true;
            if (inside_one_run(runs, lo, hi)) return false;
            if (hi - lo <= limit) return false;
            const Rational step = inv_pow(n, j + 1);
            for (int digit : K.digits) {
                if (rec(left + digit * step, j + 1)) return true;
            }
            return false;
        };
        return rec(Rational(0), 0);
    };

    std::vector<Rational> alive = res.pool;
    for (int d = 1; d <= search_depth; ++d) {
        std::vector<Rational> next;
        for (const auto& t : alive) {
            if (!refuted(t, d)) next.push_back(t);
        }
        alive = next;
        res.survivors_by_depth.push_back(alive);
    }
    return res;
}

void check_oracle_args(const std::vector<int>& lambda, int n, int l, int search_depth) {
    std::set<int> s(lambda.begin(), lambda.end());
    if (!(s.size() >= 2 && static_cast<int>(s.size()) < n))
        throw PreconditionError("translation oracle needs 2 <= |Lambda| < n");
    if (l < 1) throw PreconditionError("translation oracle needs l >= 1");
    if (search_depth < 1) throw PreconditionError("translation oracle needs search_depth >= 1");
}

}  // namespace

std::string MapClass::label() const {
    if (diagonal) return "diagonal";
    if (anti_diagonal) return "anti-diagonal";
    if (similarity) return "similarity";
    return "general";
}

MapClass classify_map(const AffineMap2& g) {
    if (g.det() == 0) throw DomainError("classify_map: singular linear part " + g.to_string());
    MapClass c;
    c.diagonal = g.is_diagonal();
    c.anti_diagonal = g.is_antidiagonal();
    // A^T A = alpha^2 I.
    const Rational col0 = g.a * g.a + g.c * g.c;
    const Rational col1 = g.b * g.b + g.d * g.d;
    c.similarity = col0 == col1 && g.a * g.b + g.c * g.d == 0;
    if (c.similarity) {
        c.alpha_sq = col0;
        c.alpha = rational_sqrt(col0);
        if (c.alpha) c.orthogonal = std::array<Rational, 4>{g.a / *c.alpha, g.b / *c.alpha, g.c / *c.alpha, g.d / *c.alpha};
    }
    return c;
}

std::pair<Affine1, Affine1> induced_axis_maps(const AffineMap2& g) {
    if (!g.is_diagonal()) throw PreconditionError("induced_axis_maps needs a diagonal linear part");
    return {Affine1{g.a, g.tx}, Affine1{g.d, g.ty}};
}

bool slice_action_holds(const CarpetSpec& spec, const AffineMap2& g, const Rational& y, int depth) {
    const auto [g1, g2] = induced_axis_maps(g);
    const Rational y2 = g2(y);
    const auto src = slice_at(spec, y, depth);
    if (src.empty()) return true;
    if (y2 < 0 || y2 > 1) return false;
    const auto dst = merge_intervals(slice_at(spec, y2, depth).intervals);
    for (const auto& iv : src.intervals) {
        Rational a = g1(iv.lo), b = g1(iv.hi);
        if (a > b) std::swap(a, b);
        if (!inside_one_run(dst, a, b)) return false;
    }
    return true;
}

std::string to_string(SymmetryKind k) {
    switch (k) {
        case SymmetryKind::identity: return "id";
        case SymmetryKind::reflect_x: return "reflect_x";
        case SymmetryKind::reflect_y: return "reflect_y";
        case SymmetryKind::rotate_pi: return "rotate_pi";
    }
    return "?";
}

bool SymmetryGroupReport::contains(SymmetryKind k) const {
    return std::any_of(elements.begin(), elements.end(), [&](const SymmetryElement& e) { return e.kind == k; });
}

SymmetryGroupReport symmetry_group(const CarpetSpec& spec, int verify_depth) {
    const auto p1 = projection(spec, 1).digits;
    const auto p2 = projection(spec, 2).digits;
    const int isum = p1.front() + p1.back();
    const int jsum = p2.front() + p2.back();
    const Box hull = carpet_hull(spec);
    const Rational cx = hull.x0 + hull.x1, cy = hull.y0 + hull.y1;

    auto invariant = [&](bool fx, bool fy) {
        return std::all_of(spec.gamma().begin(), spec.gamma().end(), [&](const Digit2& d) {
            return spec.has(fx ? isum - d.first : d.first, fy ? jsum - d.second : d.second);
        });
    };

    SymmetryGroupReport rep;
    rep.verify_depth = verify_depth;
    const BoxSet approx = carpet_tight_approx(spec, verify_depth);
    const struct {
        SymmetryKind kind;
        bool fx, fy;
    } candidates[] = {{SymmetryKind::identity, false, false},
                      {SymmetryKind::reflect_x, true, false},
                      {SymmetryKind::reflect_y, false, true},
                      {SymmetryKind::rotate_pi, true, true}};
    for (const auto& c : candidates) {
        if (!invariant(c.fx, c.fy)) continue;
        SymmetryElement e;
        e.kind = c.kind;
        e.map = AffineMap2::diagonal(c.fx ? -1 : 1, c.fy ? -1 : 1, c.fx ? cx : Rational(0), c.fy ? cy : Rational(0));
        if (c.fx) e.x_line = cx / 2;
        if (c.fy) e.y_line = cy / 2;
        e.verified = affine_image(approx, e.map) == approx;
        rep.elements.push_back(std::move(e));
    }
    return rep;
}

Verdict refute_embedding(const CarpetSpec& spec, const AffineMap2& g, int max_depth, std::uint64_t budget) {
    if (g.det() == 0) throw DomainError("refute_embedding: singular map " + g.to_string());
    if (max_depth < 1) throw DomainError("refute_embedding needs max_depth >= 1");
    budget = resolve(budget);
    Verdict v;
    for (int k = 1; k <= max_depth; ++k) {
        for (const auto& w : gamma_words(spec, k, budget)) {
            const Point2 x = witness_point(spec, w);
            const Point2 y = g(x);
            if (in_carpet_approx(spec, y, k)) continue;
            v.kind = Verdict::Kind::refuted;
            v.depth = k;
            v.witness_word = w;
            v.witness = x;
            v.image = y;
            v.separation_sq = dist_sq_to_approx(spec, y, k);
            return v;
        }
    }
    v.kind = Verdict::Kind::consistent;
    v.depth = max_depth;
    const Rational w = inv_pow(spec.m(), max_depth), h = inv_pow(spec.n(), max_depth);
    v.slack_sq = w * w + h * h;
    return v;
}

Verdict1D refute_embedding_1d(const DeletedDigitSpec& K, const Affine1& g, int max_depth, std::uint64_t budget) {
    if (g.scale == 0) throw DomainError("refute_embedding_1d: singular map");
    if (max_depth < 1) throw DomainError("refute_embedding_1d needs max_depth >= 1");
    budget = resolve(budget);
    const int b = K.base;
    std::function<bool(const Rational&, int, int)> member = [&](const Rational& x, int level, int depth) {
        if (x < 0 || x > 1) return false;
        if (level == depth) return true;
        const Rational bx = x * b;
        for (int d : K.digits) {
            if (d <= bx && bx <= d + 1 && member(bx - d, level + 1, depth)) return true;
        }
        return false;
    };
    Verdict1D v;
    for (int k = 1; k <= max_depth; ++k) {
        std::vector<Word> words{Word{}};
        for (int i = 0; i < k; ++i) {
            check_budget(words.size() * K.digits.size(), budget, "1-D witness enumeration");
            std::vector<Word> nxt;
            for (const auto& w : words) {
                for (int d : K.digits) {
                    nxt.push_back(w);
                    nxt.back().push_back(d);
                }
            }
            words = std::move(nxt);
        }
        for (const auto& w : words) {
            const Rational x = pi_b(DigitSequence(b, {}, w));
            const Rational y = g(x);
            if (member(y, 0, k)) continue;
            v.kind = Verdict::Kind::refuted;
            v.depth = k;
            v.witness_word = w;
            v.witness = x;
            v.image = y;
            std::optional<Rational> best;
            for (const auto& iv : dd_level_approx(K, k, true, budget)) {
                const Rational d = y < iv.lo ? iv.lo - y : (y > iv.hi ? y - iv.hi : Rational(0));
                if (!best || d < *best) best = d;
            }
            v.separation = *best;
            return v;
        }
    }
    v.depth = max_depth;
    return v;
}

CommensurabilityReport commensurability_witness(const Rational& alpha, int m, int n) {
    if (alpha == 0) throw DomainError("commensurability_witness needs alpha != 0");
    CommensurabilityReport r;
    r.alpha = alpha;
    const Rational a = abs(alpha);
    r.log_m = rational_log(a, static_cast<std::uint64_t>(m));
    r.log_n = rational_log(a, static_cast<std::uint64_t>(n));
    r.obstructed_m = !r.log_m.has_value();
    r.obstructed_n = !r.log_n.has_value();
    const bool independent =
        multiplicatively_independent(static_cast<std::uint64_t>(m), static_cast<std::uint64_t>(n));
    // Both logs rational with independent bases forces |alpha| = 1.
    r.planar_obstruction = r.obstructed_m || r.obstructed_n || (independent && a != 1);
    if (!r.planar_obstruction) {
        r.message = "no obstruction: |alpha| = 1";
    } else if (r.obstructed_m && r.obstructed_n) {
        r.message = "log|alpha| is incommensurable with both log " + std::to_string(m) + " and log " +
                    std::to_string(n) + ": neither marginal admits this contraction";
    } else if (r.obstructed_m) {
        r.message = "log|alpha|/log " + std::to_string(m) + " is irrational: the base-" + std::to_string(m) +
                    " marginal admits no such contraction";
    } else if (r.obstructed_n) {
        r.message = "log|alpha|/log " + std::to_string(n) + " is irrational: the base-" + std::to_string(n) +
                    " marginal admits no such contraction";
    } else {
        r.message = "both logs rational but bases are independent: forces |alpha| = 1";
    }
    return r;
}

TranslationOracleResult oracle_translations(const std::vector<int>& lambda, int n, int l, int search_depth) {
    check_oracle_args(lambda, n, l, search_depth);
    return run_oracle(DeletedDigitSpec(n, lambda), l, {CoverPiece{0, Rational(0)}}, search_depth);
}

TranslationOracleResult oracle_generalized_translations(const std::vector<int>& lambda, int n, int l,
                                                        const std::vector<CoverPiece>& covers, int search_depth) {
    check_oracle_args(lambda, n, l, search_depth);
    if (covers.empty()) throw PreconditionError("generalized translation oracle needs a nonempty cover list");
    for (const auto& c : covers) {
        if (c.l < 0) throw PreconditionError("cover pieces need l_i >= 0");
    }
    return run_oracle(DeletedDigitSpec(n, lambda), l, covers, search_depth);
}

CaseBReport case_b_interval_argument(const CarpetSpec& spec, const Rational& alpha, int depth,
                                     std::optional<int> power) {
    const auto cls = validate(spec);
    if (cls.case_label != 'B') throw PreconditionError("case_b_interval_argument needs a case-B carpet");
    if (!(alpha > 0 && alpha < 1)) throw PreconditionError("case_b_interval_argument needs 0 < alpha < 1");
    if (power && *power < 1) throw PreconditionError("power must be >= 1");
    const int m = spec.m(), n = spec.n();
    const auto p2 = projection(spec, 2).digits;
    if (p2.size() < 2) throw PreconditionError("carpet lies on a horizontal line");

    CaseBReport r;
    const int j1 = cls.full_rows.front();
    // Normalise so 0 is a row digit and the full row is not 0.
    if (j1 == p2.front()) {
        r.reflected = true;
        r.full_row = p2.back() - j1;
    } else {
        r.full_row = j1 - p2.front();
    }

    auto p_of = [&](const Rational& a) {
        int p = 1;
        while (inv_pow(m, p) > a) ++p;
        return p;
    };
    auto large = [&](int p) {
        return make_rational(ipow(BigInt(m), static_cast<unsigned long>(p - 1)), ipow(BigInt(n), static_cast<unsigned long>(p + 1))) > 1;
    };
    r.power = power.value_or(1);
    for (;;) {
        r.alpha_used = rpow(alpha, r.power);
        r.p = p_of(r.alpha_used);
        r.p_is_large = large(r.p);
        if (power || r.p_is_large) break;
        ++r.power;
    }
    r.separation = r.alpha_used * r.full_row / n;
    r.upper_bound = inv_pow(m, r.p - 1);
    r.lower_bound = inv_pow(n, r.p + 1);
    r.contradiction = r.separation <= r.upper_bound && r.lower_bound > r.upper_bound;

    const auto full = symbolic_slice_approx(spec, DigitSequence(n, {}, {j1}), depth);
    const auto merged = merge_intervals(full.intervals);
    r.full_slice_checked = merged.size() == 1 && merged.front().lo == 0 && merged.front().hi == 1;
    return r;
}

}  // namespace bmc
