#pragma once

// JSON encodings of carpet specs, box sets, maps and reports. Rationals are
// always written as "p/q" strings.

#include "bmc/rigidity.hpp"
#include "bmc/tangent.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>

namespace bmc {

using Json = nlohmann::ordered_json;

Json to_json(const Rational& x);
/// Accepts a "p/q" string or a JSON integer. Throws ParseError otherwise.
Rational rational_from_json(const Json& j);

Json to_json(const Point2& p);
Json to_json(const Word& w);

/// {"m": .., "n": .., "gamma": [[i, j], ...]}.
Json to_json(const CarpetSpec& spec);
/// Throws ParseError for a malformed document, ValidationError for bad digits.
CarpetSpec carpet_from_json(const Json& j);

/// {"boxes": [[x0, y0, x1, y1], ...]}.
Json to_json(const BoxSet& s);
BoxSet boxset_from_json(const Json& j);

/// {"linear": [[a, b], [c, d]], "translation": [tx, ty]}; translation optional.
Json to_json(const AffineMap2& g);
AffineMap2 map_from_json(const Json& j);

Json to_json(const Verdict& v);
Json to_json(const HausdorffResult& h);
Json to_json(const Frame& f);
Json to_json(const BasicSetDescriptor& d);
Json to_json(const SymmetryGroupReport& r);

/// FNV-1a 64 of the canonical spec document, as 16 hex digits.
std::string spec_hash(const CarpetSpec& spec);

/// Throws ParseError when the file is missing or not valid JSON.
Json read_json_file(const std::string& path);
/// Writes through a temporary sibling file and renames it into place.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace bmc
