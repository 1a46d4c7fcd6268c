#include "bmc/carpet.hpp"

#include "bmc/errors.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace bmc {

namespace {

std::uint64_t resolve(std::uint64_t budget) { return budget ? budget : default_cell_budget(); }

std::int64_t checked_pow(int base, int exp, const char* what) {
    const BigInt v = ipow(BigInt(base), static_cast<unsigned long>(exp));
    if (!v.fits_slong_p()) throw ResourceError(std::string(what) + ": depth too large for 64-bit cell indices");
    return v.get_si();
}

void check_depth(int depth) {
    if (depth < 0) throw DomainError("depth must be >= 0, got " + std::to_string(depth));
}

// Products of digit fibers, each factor a list of letters.
std::vector<Word> word_product(const std::vector<const std::vector<int>*>& factors) {
    std::vector<Word> out{Word{}};
    for (const auto* f : factors) {
        std::vector<Word> nxt;
        nxt.reserve(out.size() * f->size());
        for (const auto& w : out) {
            for (int d : *f) {
                nxt.push_back(w);
                nxt.back().push_back(d);
            }
        }
        out = std::move(nxt);
        if (out.empty()) break;
    }
    return out;
}

BigInt word_value(const Word& w, int base) {
    BigInt v = 0;
    for (int d : w) v = v * base + d;
    return v;
}

}  // namespace

CarpetSpec::CarpetSpec(int m, int n, std::vector<Digit2> gamma) : m_(m), n_(n), gamma_(std::move(gamma)) {
    if (!(n_ >= 2 && m_ > n_))
        throw ValidationError("carpet needs m > n >= 2, got m=" + std::to_string(m_) + " n=" + std::to_string(n_));
    if (gamma_.empty()) throw ValidationError("digit set gamma is empty");
    std::sort(gamma_.begin(), gamma_.end());
    for (std::size_t k = 0; k < gamma_.size(); ++k) {
        const auto [i, j] = gamma_[k];
        if (i < 0 || i >= m_ || j < 0 || j >= n_)
            throw ValidationError("digit (" + std::to_string(i) + "," + std::to_string(j) + ") outside [m]x[n]");
        if (k > 0 && gamma_[k - 1] == gamma_[k])
            throw ValidationError("digit (" + std::to_string(i) + "," + std::to_string(j) + ") listed twice");
    }
    rows_.resize(static_cast<std::size_t>(n_));
    cols_.resize(static_cast<std::size_t>(m_));
    for (const auto& [i, j] : gamma_) {
        rows_[static_cast<std::size_t>(j)].push_back(i);
        cols_[static_cast<std::size_t>(i)].push_back(j);
    }
    for (auto& r : rows_) std::sort(r.begin(), r.end());
}

bool CarpetSpec::has(int i, int j) const { return std::binary_search(gamma_.begin(), gamma_.end(), Digit2{i, j}); }

Classification validate(const CarpetSpec& spec) {
    Classification c;
    const auto p1 = projection(spec, 1).digits;
    const auto p2 = projection(spec, 2).digits;
    c.is_product = spec.gamma().size() == p1.size() * p2.size();
    c.independent = multiplicatively_independent(static_cast<std::uint64_t>(spec.m()),
                                                 static_cast<std::uint64_t>(spec.n()));
    c.single_row = p2.size() == 1;
    c.single_column = p1.size() == 1;
    for (int j = 0; j < spec.n(); ++j) {
        if (static_cast<int>(spec.row(j).size()) == spec.m()) c.full_rows.push_back(j);
    }
    c.case_label = c.full_rows.empty() ? 'A' : (c.full_rows.size() == 1 ? 'B' : 'C');
    return c;
}

GammaWord parse_gamma_word(const CarpetSpec& spec, const std::string& text) {
    GammaWord w;
    std::stringstream ss(text);
    std::string letter;
    while (std::getline(ss, letter, ';')) {
        if (letter.empty()) continue;
        const auto comma = letter.find(',');
        if (comma == std::string::npos) throw ParseError("gamma word letter '" + letter + "' must be 'i,j'");
        int i = 0, j = 0;
        try {
            std::size_t used = 0;
            i = std::stoi(letter.substr(0, comma), &used);
            if (used != comma) throw std::invalid_argument("trailing");
            const auto rest = letter.substr(comma + 1);
            j = std::stoi(rest, &used);
            if (used != rest.size()) throw std::invalid_argument("trailing");
        } catch (const std::logic_error&) {
            throw ParseError("gamma word letter '" + letter + "' must be 'i,j'");
        }
        if (!spec.has(i, j)) throw ParseError("letter (" + letter + ") is not in gamma");
        w.a.push_back(i);
        w.b.push_back(j);
    }
    if (w.a.empty()) throw ParseError("gamma word is empty");
    return w;
}

std::string to_string(const GammaWord& w) {
    std::string s;
    for (std::size_t k = 0; k < w.size(); ++k) {
        if (k) s += ';';
        s += std::to_string(w.a[k]) + "," + std::to_string(w.b[k]);
    }
    return s;
}

std::vector<GammaWord> gamma_words(const CarpetSpec& spec, int k, std::uint64_t budget) {
    check_depth(k);
    budget = resolve(budget);
    std::uint64_t count = 1;
    for (int i = 0; i < k; ++i) {
        count *= spec.gamma().size();
        check_budget(count, budget, "gamma word enumeration");
    }
    std::vector<GammaWord> out{GammaWord{}};
    for (int level = 0; level < k; ++level) {
        std::vector<GammaWord> nxt;
        nxt.reserve(out.size() * spec.gamma().size());
        for (const auto& w : out) {
            for (const auto& [i, j] : spec.gamma()) {
                nxt.push_back(w);
                nxt.back().a.push_back(i);
                nxt.back().b.push_back(j);
            }
        }
        out = std::move(nxt);
    }
    return out;
}

std::vector<std::pair<std::int64_t, std::int64_t>> carpet_cells(const CarpetSpec& spec, int depth,
                                                                  std::uint64_t budget) {
    check_depth(depth);
    budget = resolve(budget);
    checked_pow(spec.m(), depth, "carpet_cells");
    std::uint64_t count = 1;
    for (int i = 0; i < depth; ++i) {
        count *= spec.gamma().size();
        check_budget(count, budget, "carpet approximation");
    }
    std::vector<std::pair<std::int64_t, std::int64_t>> cells{{0, 0}};
    for (int level = 0; level < depth; ++level) {
        std::vector<std::pair<std::int64_t, std::int64_t>> nxt;
        nxt.reserve(cells.size() * spec.gamma().size());
        for (const auto& [X, Y] : cells) {
            for (const auto& [i, j] : spec.gamma()) nxt.emplace_back(X * spec.m() + i, Y * spec.n() + j);
        }
        cells = std::move(nxt);
    }
    return cells;
}

BoxSet carpet_approx(const CarpetSpec& spec, int depth, std::uint64_t budget) {
    const auto cells = carpet_cells(spec, depth, budget);
    const BigInt mk = ipow(BigInt(spec.m()), static_cast<unsigned long>(depth));
    const BigInt nk = ipow(BigInt(spec.n()), static_cast<unsigned long>(depth));
    std::vector<Box> boxes;
    boxes.reserve(cells.size());
    for (const auto& [X, Y] : cells) {
        const BigInt bx(static_cast<long>(X)), by(static_cast<long>(Y));
        boxes.push_back({make_rational(bx, mk), make_rational(by, nk), make_rational(bx + 1, mk),
                         make_rational(by + 1, nk)});
    }
    return BoxSet(std::move(boxes), depth, true);
}

Box carpet_hull(const CarpetSpec& spec) {
    const auto p1 = projection(spec, 1).digits;
    const auto p2 = projection(spec, 2).digits;
    return {make_rational(p1.front(), spec.m() - 1), make_rational(p2.front(), spec.n() - 1),
            make_rational(p1.back(), spec.m() - 1), make_rational(p2.back(), spec.n() - 1)};
}

BoxSet carpet_tight_approx(const CarpetSpec& spec, int depth, std::uint64_t budget) {
    const auto cells = carpet_cells(spec, depth, budget);
    const Box h = carpet_hull(spec);
    const Rational mk(ipow(BigInt(spec.m()), static_cast<unsigned long>(depth)));
    const Rational nk(ipow(BigInt(spec.n()), static_cast<unsigned long>(depth)));
    std::vector<Box> boxes;
    boxes.reserve(cells.size());
    for (const auto& [X, Y] : cells) {
        const Rational bx(BigInt(static_cast<long>(X))), by(BigInt(static_cast<long>(Y)));
        boxes.push_back({(bx + h.x0) / mk, (by + h.y0) / nk, (bx + h.x1) / mk, (by + h.y1) / nk});
    }
    return BoxSet(std::move(boxes), depth, true);
}

std::vector<Word> gamma_row(const CarpetSpec& spec, const Word& b) {
    std::vector<const std::vector<int>*> f;
    for (int j : b) {
        if (j < 0 || j >= spec.n()) throw DomainError("row digit " + std::to_string(j) + " out of range");
        f.push_back(&spec.row(j));
    }
    return word_product(f);
}

std::vector<Word> gamma_col(const CarpetSpec& spec, const Word& a) {
    std::vector<const std::vector<int>*> f;
    for (int i : a) {
        if (i < 0 || i >= spec.m()) throw DomainError("column digit " + std::to_string(i) + " out of range");
        f.push_back(&spec.column(i));
    }
    return word_product(f);
}

SliceApprox symbolic_slice_approx(const CarpetSpec& spec, const DigitSequence& eta, int depth,
                                  std::uint64_t budget) {
    if (eta.base() != spec.n()) throw DomainError("slice sequence must be in base n");
    check_depth(depth);
    budget = resolve(budget);
    SliceApprox out;
    out.depth = depth;
    std::vector<BigInt> left{0};
    for (int k = 1; k <= depth; ++k) {
        const auto& fiber = spec.row(eta.at(static_cast<std::size_t>(k)));
        check_budget(left.size() * fiber.size(), budget, "slice approximation");
        std::vector<BigInt> nxt;
        nxt.reserve(left.size() * fiber.size());
        for (const auto& x : left) {
            for (int i : fiber) nxt.push_back(x * spec.m() + i);
        }
        left = std::move(nxt);
        if (left.empty()) return out;
    }
    const BigInt den = ipow(BigInt(spec.m()), static_cast<unsigned long>(depth));
    for (const auto& x : left) out.intervals.push_back({make_rational(x, den), make_rational(x + 1, den)});
    out.sources.push_back(eta);
    return out;
}

SliceApprox slice_at(const CarpetSpec& spec, const Rational& y, int depth, std::uint64_t budget) {
    if (y < 0 || y > 1) throw DomainError("slice height " + y.get_str() + " is outside [0,1]");
    SliceApprox out;
    out.depth = depth;
    for (const auto& eta : expansions_of(y, spec.n())) {
        auto part = symbolic_slice_approx(spec, eta, depth, budget);
        if (part.empty()) continue;
        out.intervals.insert(out.intervals.end(), part.intervals.begin(), part.intervals.end());
        out.sources.push_back(eta);
    }
    std::sort(out.intervals.begin(), out.intervals.end());
    out.intervals.erase(std::unique(out.intervals.begin(), out.intervals.end()), out.intervals.end());
    return out;
}

std::optional<LogRatio> slice_dimension(const CarpetSpec& spec, const DigitSequence& eta) {
    if (eta.base() != spec.n()) throw DomainError("slice sequence must be in base n");
    for (int j : eta.preperiod()) {
        if (spec.row(j).empty()) return std::nullopt;
    }
    BigInt product = 1;
    for (int j : eta.period()) {
        if (spec.row(j).empty()) return std::nullopt;
        product *= static_cast<long>(spec.row(j).size());
    }
    return LogRatio(Rational(product), ipow(BigInt(spec.m()), eta.period().size()));
}

DeletedDigitSpec projection(const CarpetSpec& spec, int axis) {
    std::set<int> d;
    if (axis == 1) {
        for (const auto& [i, j] : spec.gamma()) d.insert(i);
        return DeletedDigitSpec(spec.m(), {d.begin(), d.end()});
    }
    if (axis == 2) {
        for (const auto& [i, j] : spec.gamma()) d.insert(j);
        return DeletedDigitSpec(spec.n(), {d.begin(), d.end()});
    }
    throw DomainError("projection axis must be 1 or 2");
}

std::vector<Interval> SelfSimilarSlice::level(int j) const {
    if (j < 0) throw DomainError("level must be >= 0");
    std::vector<BigInt> left{0};
    for (int s = 0; s < j; ++s) {
        std::vector<BigInt> nxt;
        nxt.reserve(left.size() * digits.size());
        for (const auto& x : left) {
            for (const auto& d : digits) nxt.push_back(x * base + d);
        }
        left = std::move(nxt);
    }
    const BigInt scale = ipow(base, static_cast<unsigned long>(j));
    std::vector<Interval> out;
    for (const auto& e : offsets) {
        for (const auto& x : left) {
            out.push_back({e + make_rational(x, scale) * prefix_scale, e + make_rational(x + 1, scale) * prefix_scale});
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

SelfSimilarSlice slice_self_similar_form(const CarpetSpec& spec, const DigitSequence& eta) {
    if (eta.base() != spec.n()) throw DomainError("slice sequence must be in base n");
    if (expansions_of(pi_b(eta), spec.n()).size() != 1)
        throw PreconditionError("slice_self_similar_form needs a height with a unique expansion; " + eta.to_string() +
                                " has two");
    SelfSimilarSlice out;
    out.prefix_length = static_cast<int>(eta.preperiod().size());
    out.prefix_scale = make_rational(BigInt(1), ipow(BigInt(spec.m()), eta.preperiod().size()));
    out.base = ipow(BigInt(spec.m()), eta.period().size());
    for (const auto& a : gamma_row(spec, eta.preperiod())) out.offsets.push_back(pi_word(a, spec.m()));
    for (const auto& a : gamma_row(spec, eta.period())) out.digits.push_back(word_value(a, spec.m()));
    std::sort(out.offsets.begin(), out.offsets.end());
    std::sort(out.digits.begin(), out.digits.end());
    return out;
}

Rational max_interval_length_bound(const CarpetSpec& spec, const DigitSequence& eta, int k) {
    if (k < 1) throw DomainError("digit index k must be >= 1");
    const int j = eta.at(static_cast<std::size_t>(k));
    if (static_cast<int>(spec.row(j).size()) == spec.m())
        throw PreconditionError("row " + std::to_string(j) + " is full; no interval bound at k=" + std::to_string(k));
    return make_rational(BigInt(1), ipow(BigInt(spec.m()), static_cast<unsigned long>(k)));
}

Rational longest_merged_interval(const std::vector<Interval>& intervals) {
    Rational best = 0;
    for (const auto& iv : merge_intervals(intervals)) best = std::max(best, iv.length());
    return best;
}

Point2 witness_point(const CarpetSpec& spec, const GammaWord& w) {
    if (w.size() == 0) throw DomainError("witness word is empty");
    auto periodic = [](const Word& v, int base) {
        const BigInt bp = ipow(BigInt(base), v.size());
        return make_rational(word_value(v, base), bp - 1);
    };
    return {periodic(w.a, spec.m()), periodic(w.b, spec.n())};
}

bool in_carpet_approx(const CarpetSpec& spec, const Point2& p, int depth) {
    check_depth(depth);
    std::function<bool(const Rational&, const Rational&, int)> rec = [&](const Rational& x, const Rational& y,
                                                                          int level) {
        if (x < 0 || x > 1 || y < 0 || y > 1) return false;
        if (level == depth) return true;
        const Rational mx = x * spec.m(), ny = y * spec.n();
        const long i0 = floor_of(mx).get_si(), j0 = floor_of(ny).get_si();
        for (long i = i0 - 1; i <= i0; ++i) {
            if (i < 0 || i >= spec.m() || mx - i > 1) continue;
            for (long j = j0 - 1; j <= j0; ++j) {
                if (j < 0 || j >= spec.n() || ny - j > 1) continue;
                if (!spec.has(static_cast<int>(i), static_cast<int>(j))) continue;
                if (rec(mx - i, ny - j, level + 1)) return true;
            }
        }
        return false;
    };
    return rec(p.x, p.y, 0);
}

Rational dist_sq_to_approx(const CarpetSpec& spec, const Point2& p, int depth) {
    check_depth(depth);
    std::optional<Rational> best;
    const Rational m(spec.m()), n(spec.n());
    std::function<void(const Box&, int)> rec = [&](const Box& cyl, int level) {
        const Rational d = dist_sq(p, cyl);
        if (best && d >= *best) return;
        if (level == depth) {
            best = d;
            return;
        }
        const Rational w = (cyl.x1 - cyl.x0) / m, h = (cyl.y1 - cyl.y0) / n;
        std::vector<std::pair<Rational, Box>> kids;
        for (const auto& [i, j] : spec.gamma()) {
            Box k{cyl.x0 + i * w, cyl.y0 + j * h, cyl.x0 + (i + 1) * w, cyl.y0 + (j + 1) * h};
            kids.emplace_back(dist_sq(p, k), std::move(k));
        }
        std::sort(kids.begin(), kids.end(), [](const auto& u, const auto& v) { return u.first < v.first; });
        for (const auto& [kd, k] : kids) {
            if (best && kd >= *best) break;
            rec(k, level + 1);
        }
    };
    rec(Box{0, 0, 1, 1}, 0);
    return *best;
}

}  // namespace bmc
