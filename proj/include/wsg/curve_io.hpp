#pragma once

// Curve files: {"p":2,"q":3,"coeffs":[{"nu":2,"mu":0,"value":"-1"}]}.
// Values are exact rationals ("-1", "3/4", "0.25") unless the document has a
// "precision_bits" field, which makes the curve APPROX with decimal values.

#include <filesystem>
#include <string>

#include <json.hpp>

#include "wsg/curves.hpp"

namespace wsg {

using Json = nlohmann::ordered_json;

Curve curve_from_json(const Json& doc);
/// Zero coefficients are omitted.
Json curve_to_json(const Curve& c);

/// Throws ParseError on unreadable or malformed files.
Curve read_curve_file(const std::filesystem::path& path);
void write_curve_file(const std::filesystem::path& path, const Curve& c);

}  // namespace wsg
