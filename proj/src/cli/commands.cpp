#include "bmc/cli.hpp"

#include "bmc/errors.hpp"
#include "bmc/json_io.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <set>
#include <sstream>

namespace bmc {

namespace {

struct RunConfig {
    std::string spec_path;
    int depth = 3;
    int max_depth = 6;
    std::string out;
    std::uint64_t budget = 0;
    std::uint64_t seed = 0;
    // Command-specific.
    std::string f_word;
    std::vector<int> l_list;
    int l = 1;
    int inner_depth = 3;
    std::string map_text;
    std::string y_text;
    std::string eta_text;
    int axis = 1;
    std::string digits_text;
    int base = 3;
    std::string cover_text;
    std::string slope_text = "1";
    int horizon = 8;
    bool json_boxes = false;
};

std::uint64_t budget_of(const RunConfig& c) { return c.budget ? c.budget : default_cell_budget(); }

CarpetSpec load_spec(const RunConfig& c) {
    if (c.spec_path.empty()) throw ParseError("--spec is required for this command");
    return carpet_from_json(read_json_file(c.spec_path));
}

Json envelope(const std::string& command, const RunConfig& c, const CarpetSpec* spec, Json result) {
    Json j{{"command", command}, {"version", BMC_VERSION}};
    if (spec) j["spec_hash"] = spec_hash(*spec);
    j["seed"] = c.seed;
    j["result"] = std::move(result);
    return j;
}

void emit(const Json& j, const RunConfig& c, std::ostream& out) {
    const std::string text = j.dump(2) + "\n";
    if (c.out.empty()) out << text;
    else write_file_atomic(c.out, text);
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> v;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            v.push_back(std::stoi(item, &used));
            if (used != item.size()) throw ParseError("bad integer in list: " + item);
        } catch (const std::logic_error&) {
            throw ParseError("bad integer in list: " + item);
        }
    }
    return v;
}

Json intervals_json(const std::vector<Interval>& v) {
    Json a = Json::array();
    for (const auto& iv : v) a.push_back(Json::array({to_json(iv.lo), to_json(iv.hi)}));
    return a;
}

Json log_ratio_json(const LogRatio& r) {
    Json j{{"symbolic", r.to_string()}, {"approx", r.to_double()}};
    if (auto q = r.rational_value()) j["rational"] = to_json(*q);
    return j;
}

int cmd_render(const RunConfig& c, std::ostream& out) {
    const CarpetSpec spec = load_spec(c);
    const BoxSet s = carpet_approx(spec, c.depth, budget_of(c));
    std::string text;
    if (c.json_boxes) text = envelope("render", c, &spec, to_json(s)).dump(2) + "\n";
    else text = to_svg(s, Box::make(0, 0, 1, 1));
    if (c.out.empty()) out << text;
    else write_file_atomic(c.out, text);
    return exit_ok;
}

int cmd_slice(const RunConfig& c, std::ostream& out) {
    const CarpetSpec spec = load_spec(c);
    Json r;
    if (!c.eta_text.empty()) {
        const DigitSequence eta = DigitSequence::parse(c.eta_text, spec.n());
        const auto approx = symbolic_slice_approx(spec, eta, c.depth, budget_of(c));
        r["eta"] = eta.to_string();
        r["y"] = to_json(pi_b(eta));
        r["intervals"] = intervals_json(approx.intervals);
        r["longest_run"] = to_json(longest_merged_interval(approx.intervals));
        if (auto d = slice_dimension(spec, eta)) r["dimension"] = log_ratio_json(*d);
        else r["dimension"] = nullptr;
    } else if (!c.y_text.empty()) {
        const Rational y = parse_rational(c.y_text);
        const auto approx = slice_at(spec, y, c.depth, budget_of(c));
        r["y"] = to_json(y);
        r["intervals"] = intervals_json(approx.intervals);
        Json src = Json::array();
        for (const auto& s : approx.sources) src.push_back(s.to_string());
        r["sources"] = src;
    } else {
        throw ParseError("slice needs --eta or --y");
    }
    r["depth"] = c.depth;
    emit(envelope("slice", c, &spec, r), c, out);
    return exit_ok;
}

int cmd_project(const RunConfig& c, std::ostream& out) {
    const CarpetSpec spec = load_spec(c);
    if (c.axis != 1 && c.axis != 2) throw ParseError("--axis must be 1 or 2");
    const DeletedDigitSpec k = projection(spec, c.axis);
    Json r{{"axis", c.axis}, {"base", k.base}, {"digits", k.digits}, {"dimension", log_ratio_json(dd_dimension(k))},
           {"depth", c.depth}, {"intervals", intervals_json(dd_level_approx(k, c.depth, true, budget_of(c)))}};
    emit(envelope("project", c, &spec, r), c, out);
    return exit_ok;
}

Json decomposition_json(const CarpetSpec& spec, const Point2& f, int l) {
    const auto d = basic_decomposition(spec, f, l);
    const Frame fr = frame_of(l, spec.m(), spec.n());
    Json descs = Json::array();
    for (const auto& x : d) descs.push_back(to_json(x));
    Json tails = Json::array();
    for (const auto& t : tails_of(d)) tails.push_back(to_json(t));
    return Json{{"frame", to_json(fr)}, {"descriptors", descs}, {"B", tails}, {"B_size", tails.size()},
                {"prefix_count", prefixes_of(d).size()}};
}

int cmd_tangent(const RunConfig& c, std::ostream& out) {
    const CarpetSpec spec = load_spec(c);
    if (c.l_list.empty()) throw ParseError("tangent needs a nonempty --l list");
    if (c.f_word.empty()) throw ParseError("tangent needs --f");
    const GammaWord w = parse_gamma_word(spec, c.f_word);
    const Point2 f = witness_point(spec, w);
    const std::uint64_t budget = budget_of(c);
    if (!c.out.empty()) std::filesystem::create_directories(c.out);

    Json reports = Json::array();
    std::vector<BoxSet> minis;
    for (int l : c.l_list) {
        const MiniSetApprox ms = mini_set(spec, f, l, c.inner_depth, budget);
        Json rep = decomposition_json(spec, f, l);
        const BoxSet rebuilt = render_decomposition(spec, basic_decomposition(spec, f, l), c.inner_depth, budget);
        rep["exact_match"] = rebuilt == ms.boxset;
        rep["boxes"] = ms.boxset.size();
        rep["certificate_sq"] = to_json(ms.certificate_sq);
        if (!c.out.empty()) {
            const std::string path = (std::filesystem::path(c.out) / ("mini_l" + std::to_string(l) + ".svg")).string();
            write_file_atomic(path, to_svg(ms.boxset, window_q()));
        }
        reports.push_back(rep);
        minis.push_back(ms.boxset);
    }
    Json table = Json::array();
    for (std::size_t i = 0; i < minis.size(); ++i) {
        for (std::size_t j = i + 1; j < minis.size(); ++j) {
            Json e = to_json(hausdorff_distance(minis[i], minis[j]));
            e["l1"] = c.l_list[i];
            e["l2"] = c.l_list[j];
            table.push_back(e);
        }
    }
    Json r{{"f", to_json(f)}, {"f_word", to_string(w)}, {"inner_depth", c.inner_depth}, {"reports", reports},
           {"d_H", table}};
    const Json j = envelope("tangent", c, &spec, r);
    if (c.out.empty()) out << j.dump(2) << "\n";
    else write_file_atomic((std::filesystem::path(c.out) / "report.json").string(), j.dump(2) + "\n");
    return exit_ok;
}

int cmd_decompose(const RunConfig& c, std::ostream& out) {
    const CarpetSpec spec = load_spec(c);
    if (c.f_word.empty()) throw ParseError("decompose needs --f");
    const Point2 f = witness_point(spec, parse_gamma_word(spec, c.f_word));
    Json r = decomposition_json(spec, f, c.l);
    r["f"] = to_json(f);
    emit(envelope("decompose", c, &spec, r), c, out);
    return exit_ok;
}

int cmd_symmetries(const RunConfig& c, std::ostream& out) {
    const CarpetSpec spec = load_spec(c);
    emit(envelope("symmetries", c, &spec, to_json(symmetry_group(spec, c.depth))), c, out);
    return exit_ok;
}

int cmd_refute(const RunConfig& c, std::ostream& out) {
    const CarpetSpec spec = load_spec(c);
    if (c.map_text.empty()) throw ParseError("refute needs --map");
    Json mj;
    if (c.map_text.front() == '{') {
        try {
            mj = Json::parse(c.map_text);
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(std::string("--map: ") + e.what());
        }
    } else {
        mj = read_json_file(c.map_text);
    }
    const AffineMap2 g = map_from_json(mj);
    const Verdict v = refute_embedding(spec, g, c.max_depth, budget_of(c));
    Json r = to_json(v);
    r["map"] = to_json(g);
    emit(envelope("refute", c, &spec, r), c, out);
    return v.kind == Verdict::Kind::refuted ? exit_refuted : exit_ok;
}

int cmd_oracle(const RunConfig& c, std::ostream& out) {
    const std::vector<int> lambda = parse_int_list(c.digits_text);
    TranslationOracleResult res;
    if (c.cover_text.empty()) {
        res = oracle_translations(lambda, c.base, c.l, c.depth);
    } else {
        std::vector<CoverPiece> covers;
        std::stringstream ss(c.cover_text);
        std::string item;
        while (std::getline(ss, item, ',')) {
            const auto colon = item.find(':');
            if (colon == std::string::npos) throw ParseError("cover pieces are l:p");
            covers.push_back({parse_int_list(item.substr(0, colon)).at(0), parse_rational(item.substr(colon + 1))});
        }
        res = oracle_generalized_translations(lambda, c.base, c.l, covers, c.depth);
    }
    Json by_depth = Json::array();
    for (const auto& s : res.survivors_by_depth) {
        Json a = Json::array();
        for (const auto& t : s) a.push_back(to_json(t));
        by_depth.push_back(a);
    }
    bool all_nadic = true;
    const BigInt grid = ipow(BigInt(c.base), static_cast<unsigned long>(c.l + 1));
    for (const auto& t : res.survivors()) all_nadic = all_nadic && is_integer(t * grid);
    Json r{{"digits", lambda}, {"base", c.base}, {"l", c.l}, {"search_depth", c.depth}, {"pool_size", res.pool.size()},
           {"survivors_by_depth", by_depth}, {"survivors_on_grid", all_nadic}};
    emit(envelope("oracle", c, nullptr, r), c, out);
    return exit_ok;
}

int cmd_orbit(const RunConfig& c, std::ostream& out) {
    const CarpetSpec spec = load_spec(c);
    if (c.eta_text.empty()) throw ParseError("orbit needs --eta");
    const auto rep = orbit_closure(DigitSequence::parse(c.eta_text, spec.n()), spec.m(), spec.n(), c.horizon);
    Json closure = Json::array(), orbit = Json::array();
    for (const auto& s : rep.closure) closure.push_back(s.to_string());
    for (const auto& s : rep.orbit) orbit.push_back(s.to_string());
    Json r{{"closure", closure}, {"orbit", orbit}, {"s_marginal", rep.s_marginal}};
    emit(envelope("orbit", c, &spec, r), c, out);
    return exit_ok;
}

// Box-counting estimate for the image of P1 F x P2 F under x + slope y.
int cmd_projdim(const RunConfig& c, std::ostream& out, std::ostream& err) {
    const CarpetSpec spec = load_spec(c);
    const Rational slope = parse_rational(c.slope_text);
    if (slope == 0) throw PreconditionError("slope 0 is a principal projection");
    const DeletedDigitSpec k1 = projection(spec, 1), k2 = projection(spec, 2);
    const double expected = std::min(1.0, dd_dimension(k1).to_double() + dd_dimension(k2).to_double());
    const double sl = slope.get_d();
    const std::uint64_t budget = budget_of(c);
    err << "projdim-demo: box-counting estimate only; the projection dimension formula cannot be verified at this "
           "scale and this output is not a test gate.\n";
    Json rows = Json::array();
    for (int d = 1; d <= c.depth; ++d) {
        const double delta = std::pow(spec.m(), -d);
        const int d2 = static_cast<int>(std::ceil(d * std::log(spec.m()) / std::log(spec.n()) - 1e-12));
        const auto a = dd_level_approx(k1, d, true, budget);
        const auto b = dd_level_approx(k2, d2, true, budget);
        check_budget(static_cast<std::uint64_t>(a.size()) * b.size(), budget, "projdim-demo interval pairs");
        std::set<long long> hit;
        for (const auto& I : a) {
            for (const auto& J : b) {
                const double y0 = sl * J.lo.get_d(), y1 = sl * J.hi.get_d();
                const double lo = I.lo.get_d() + std::min(y0, y1), hi = I.hi.get_d() + std::max(y0, y1);
                for (long long q = static_cast<long long>(std::floor(lo / delta)); q <= static_cast<long long>(std::floor(hi / delta)); ++q)
                    hit.insert(q);
            }
        }
        const double est = std::log(static_cast<double>(hit.size())) / (d * std::log(spec.m()));
        rows.push_back(Json{{"depth", d}, {"cells", hit.size()}, {"estimate", est}});
    }
    Json r{{"slope", to_json(slope)}, {"expected", expected}, {"table", rows},
           {"disclaimer", "demo only: a finite box count does not verify the projection dimension formula"}};
    emit(envelope("projdim-demo", c, &spec, r), c, out);
    return exit_ok;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact experiments on Bedford-McMullen carpets", "carpet"};
    app.footer("Exit codes: 0 ok, 1 usage/parse/domain error, 2 budget or IO error, 3 embedding refuted.\n"
               "CARPET_BUDGET overrides the default cell budget.");
    app.require_subcommand(1);
    RunConfig c;

    auto common = [&](CLI::App* s) {
        s->add_option("--spec", c.spec_path, "Carpet spec JSON file");
        s->add_option("--depth", c.depth, "Approximation depth")->check(CLI::NonNegativeNumber);
        s->add_option("--out", c.out, "Output path");
        s->add_option("--budget", c.budget, "Cell budget")->check(CLI::PositiveNumber);
        s->add_option("--seed", c.seed, "Seed recorded in the output");
    };
    auto* render = app.add_subcommand("render", "SVG of the level-depth cylinders");
    common(render);
    render->add_flag("--json", c.json_boxes, "Write the box set as JSON instead of SVG");
    auto* slice = app.add_subcommand("slice", "Horizontal slice by row sequence or height");
    common(slice);
    slice->add_option("--eta", c.eta_text, "Row digit sequence, e.g. 1(01)");
    slice->add_option("--y", c.y_text, "Height p/q");
    auto* project = app.add_subcommand("project", "Coordinate projection");
    common(project);
    project->add_option("--axis", c.axis, "1 or 2");
    auto* tangent = app.add_subcommand("tangent", "Mini-sets and their basic-set decompositions");
    common(tangent);
    tangent->add_option("--f", c.f_word, "Witness word i,j;i,j")->required();
    tangent->add_option("--l", c.l_list, "Zoom levels, comma separated")->delimiter(',');
    tangent->add_option("--inner-depth", c.inner_depth)->check(CLI::NonNegativeNumber);
    auto* decompose = app.add_subcommand("decompose", "Basic-set descriptors at one zoom level");
    common(decompose);
    decompose->add_option("--f", c.f_word, "Witness word i,j;i,j")->required();
    decompose->add_option("--l", c.l, "Zoom level")->check(CLI::PositiveNumber);
    auto* symmetries = app.add_subcommand("symmetries", "Axis symmetries");
    common(symmetries);
    auto* refute = app.add_subcommand("refute", "Finite-depth refutation of g(F) in F");
    common(refute);
    refute->add_option("--map", c.map_text, "Map JSON text or file")->required();
    refute->add_option("--max-depth", c.max_depth)->check(CLI::PositiveNumber);
    auto* oracle = app.add_subcommand("oracle", "Translation oracle for deleted-digit sets");
    common(oracle);
    oracle->add_option("--digits", c.digits_text, "Digit set, comma separated")->required();
    oracle->add_option("--base", c.base);
    oracle->add_option("--l", c.l);
    oracle->add_option("--cover", c.cover_text, "Cover pieces l:p, comma separated");
    auto* orbit = app.add_subcommand("orbit", "Shift-orbit closure of a row sequence");
    common(orbit);
    orbit->add_option("--eta", c.eta_text)->required();
    orbit->add_option("--horizon", c.horizon)->check(CLI::PositiveNumber);
    auto* projdim = app.add_subcommand("projdim-demo", "Box-count estimate for a skew projection (demo)");
    common(projdim);
    projdim->add_option("--slope", c.slope_text, "Rational slope p/q");

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_usage;
    }

    // Per-command defaults when --depth is absent.
    if (symmetries->count("--depth") == 0 && *symmetries) c.depth = 6;
    if (oracle->count("--depth") == 0 && *oracle) c.depth = 8;
    if (projdim->count("--depth") == 0 && *projdim) c.depth = 10;

    try {
        if (*render) return cmd_render(c, out);
        if (*slice) return cmd_slice(c, out);
        if (*project) return cmd_project(c, out);
        if (*tangent) return cmd_tangent(c, out);
        if (*decompose) return cmd_decompose(c, out);
        if (*symmetries) return cmd_symmetries(c, out);
        if (*refute) return cmd_refute(c, out);
        if (*oracle) return cmd_oracle(c, out);
        if (*orbit) return cmd_orbit(c, out);
        if (*projdim) return cmd_projdim(c, out, err);
    } catch (const ResourceError& e) {
        err << "error: " << e.what() << "\n";
        return exit_resource;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: " << e.what() << "\n";
        return exit_resource;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    }
    return exit_usage;
}

}  // namespace bmc
