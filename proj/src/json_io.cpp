#include "bmc/json_io.hpp"

#include "bmc/errors.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace bmc {

Json to_json(const Rational& x) { return to_string(x); }

Rational rational_from_json(const Json& j) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(BigInt(j.dump()));
    throw ParseError("expected a \"p/q\" string or an integer, got " + j.dump());
}

Json to_json(const Point2& p) { return Json::array({to_json(p.x), to_json(p.y)}); }

Json to_json(const Word& w) {
    std::string s;
    for (int d : w) s += d < 10 ? static_cast<char>('0' + d) : static_cast<char>('a' + d - 10);
    return s;
}

Json to_json(const CarpetSpec& spec) {
    Json g = Json::array();
    for (const auto& [i, j] : spec.gamma()) g.push_back(Json::array({i, j}));
    return Json{{"m", spec.m()}, {"n", spec.n()}, {"gamma", g}};
}

CarpetSpec carpet_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("m") || !j.contains("n") || !j.contains("gamma"))
        throw ParseError("carpet spec needs keys m, n, gamma");
    if (!j["m"].is_number_integer() || !j["n"].is_number_integer() || !j["gamma"].is_array())
        throw ParseError("carpet spec: m and n must be integers and gamma an array");
    std::vector<Digit2> gamma;
    for (const auto& e : j["gamma"]) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
            throw ParseError("carpet spec: gamma entries must be [i, j] integer pairs");
        gamma.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
    return CarpetSpec(j["m"].get<int>(), j["n"].get<int>(), std::move(gamma));
}

Json to_json(const BoxSet& s) {
    Json boxes = Json::array();
    for (const auto& b : s.boxes()) boxes.push_back(Json::array({to_json(b.x0), to_json(b.y0), to_json(b.x1), to_json(b.y1)}));
    return Json{{"boxes", boxes}};
}

BoxSet boxset_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("boxes") || !j["boxes"].is_array()) throw ParseError("box set needs a boxes array");
    std::vector<Box> boxes;
    for (const auto& e : j["boxes"]) {
        if (!e.is_array() || e.size() != 4) throw ParseError("box entries must have four coordinates");
        boxes.push_back(Box::make(rational_from_json(e[0]), rational_from_json(e[1]), rational_from_json(e[2]),
                                  rational_from_json(e[3])));
    }
    return BoxSet(std::move(boxes));
}

Json to_json(const AffineMap2& g) {
    return Json{{"linear", Json::array({Json::array({to_json(g.a), to_json(g.b)}), Json::array({to_json(g.c), to_json(g.d)})})},
                {"translation", Json::array({to_json(g.tx), to_json(g.ty)})}};
}

AffineMap2 map_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("linear")) throw ParseError("map needs a linear part");
    const auto& l = j["linear"];
    if (!l.is_array() || l.size() != 2 || !l[0].is_array() || !l[1].is_array() || l[0].size() != 2 || l[1].size() != 2)
        throw ParseError("linear part must be a 2x2 array");
    AffineMap2 g;
    g.a = rational_from_json(l[0][0]);
    g.b = rational_from_json(l[0][1]);
    g.c = rational_from_json(l[1][0]);
    g.d = rational_from_json(l[1][1]);
    if (j.contains("translation")) {
        const auto& t = j["translation"];
        if (!t.is_array() || t.size() != 2) throw ParseError("translation must be a pair");
        g.tx = rational_from_json(t[0]);
        g.ty = rational_from_json(t[1]);
    }
    return g;
}

Json to_json(const Verdict& v) {
    Json j{{"kind", v.kind == Verdict::Kind::refuted ? "refuted" : "consistent"}, {"depth", v.depth}};
    if (v.kind == Verdict::Kind::refuted) {
        j["witness"] = to_json(v.witness);
        j["image"] = to_json(v.image);
        if (v.witness_word) j["witness_word"] = to_string(*v.witness_word);
        j["separation_sq"] = to_json(v.separation_sq);
    } else {
        j["slack_sq"] = to_json(v.slack_sq);
    }
    return j;
}

Json to_json(const HausdorffResult& h) {
    if (h.empty_convention) return Json{{"empty_convention", true}, {"value", "1+2*sqrt(2)"}};
    return Json{{"lower_sq", to_json(h.lower_sq)}, {"upper_sq", to_json(h.upper_sq)}, {"exact", h.exact}};
}

Json to_json(const Frame& f) { return Json{{"l", f.l}, {"k", f.k}, {"r", to_json(f.r)}}; }

Json to_json(const BasicSetDescriptor& d) {
    return Json{{"a_prefix", to_json(d.a_prefix)}, {"b", to_json(d.b)}, {"b_tail", to_json(d.b_tail)}, {"z", to_json(d.z)}};
}

Json to_json(const SymmetryGroupReport& r) {
    Json els = Json::array();
    for (const auto& e : r.elements) {
        Json j{{"kind", to_string(e.kind)}, {"map", to_json(e.map)}, {"verified", e.verified}};
        if (e.x_line) j["x_line"] = to_json(*e.x_line);
        if (e.y_line) j["y_line"] = to_json(*e.y_line);
        els.push_back(j);
    }
    return Json{{"verify_depth", r.verify_depth}, {"elements", els}};
}

std::string spec_hash(const CarpetSpec& spec) {
    const std::string text = to_json(spec).dump();
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return Json::parse(ss.str());
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
}

void write_file_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw ResourceError("cannot write " + tmp);
        out << content;
        if (!out) throw ResourceError("write failed for " + tmp);
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw ResourceError("cannot rename " + tmp + " to " + path + ": " + ec.message());
}

}  // namespace bmc
