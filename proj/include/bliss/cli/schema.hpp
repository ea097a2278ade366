#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace bliss::cli {

/// The report schema shipped as docs/report.schema.json.
std::string_view report_schema_text();
const nlohmann::json& report_schema();

/// Checks `doc` against a JSON Schema using the subset of keywords the report
/// schema needs: type, enum, minimum, properties, required,
/// additionalProperties (boolean), items and local "#/$defs/..." refs.
/// Returns one message per violation, prefixed with a JSON pointer.
std::vector<std::string> validate_json(const nlohmann::json& doc, const nlohmann::json& schema);

}  // namespace bliss::cli
