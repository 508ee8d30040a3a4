#pragma once

#include "fqcover/covering.hpp"

#include "json.hpp"

#include <string>
#include <string_view>

namespace fqcover {

/// Header "q=<p>" or "q=<p>^<e>;modulus=<poly in t>".
FieldPtr parse_field_header(std::string_view line);

/// System file: a header line, then one "<offset> | <modulus>" per line.
/// '#' starts a comment; blank lines are skipped.
CoveringSystem parse_system(std::string_view text);
CoveringSystem load_system(const std::string& path);

std::string format_system(const CoveringSystem& system);
nlohmann::ordered_json to_json(const CoveringSystem& system);
nlohmann::ordered_json to_json(const CoverageReport& report);

} // namespace fqcover
