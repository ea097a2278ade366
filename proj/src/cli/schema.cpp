#include "bliss/cli/schema.hpp"

#include <cmath>

namespace bliss::cli {

namespace {
#include "report_schema.inc"

using nlohmann::json;

bool has_type(const json& v, const std::string& t) {
  if (t == "object") return v.is_object();
  if (t == "array") return v.is_array();
  if (t == "string") return v.is_string();
  if (t == "boolean") return v.is_boolean();
  if (t == "null") return v.is_null();
  if (t == "integer") return v.is_number_integer();
  if (t == "number") return v.is_number();
  return false;
}

class Validator {
 public:
  explicit Validator(const json& root) : root_(root) {}

  void check(const json& v, const json& s, const std::string& where) {
    if (s.is_boolean()) {
      if (!s.get<bool>()) out_.push_back(where + ": not allowed");
      return;
    }
    if (s.contains("$ref")) {
      const std::string ref = s["$ref"].get<std::string>();
      const std::string prefix = "#/$defs/";
      if (ref.rfind(prefix, 0) != 0 || !root_.contains("$defs") ||
          !root_["$defs"].contains(ref.substr(prefix.size()))) {
        out_.push_back(where + ": unresolvable $ref " + ref);
        return;
      }
      check(v, root_["$defs"][ref.substr(prefix.size())], where);
    }
    if (s.contains("type")) {
      const json& t = s["type"];
      bool ok = false;
      if (t.is_string()) {
        ok = has_type(v, t.get<std::string>());
      } else {
        for (const auto& alt : t) ok = ok || has_type(v, alt.get<std::string>());
      }
      if (!ok) {
        out_.push_back(where + ": expected type " + t.dump() + ", got " + v.type_name());
        return;
      }
    }
    if (s.contains("enum")) {
      bool found = false;
      for (const auto& e : s["enum"]) found = found || e == v;
      if (!found) out_.push_back(where + ": value " + v.dump() + " not in " + s["enum"].dump());
    }
    if (s.contains("minimum") && v.is_number() && v.get<double>() < s["minimum"].get<double>())
      out_.push_back(where + ": " + v.dump() + " below minimum " + s["minimum"].dump());
    if (v.is_object()) {
      if (s.contains("required"))
        for (const auto& r : s["required"])
          if (!v.contains(r.get<std::string>()))
            out_.push_back(where + ": missing required key '" + r.get<std::string>() + "'");
      const json* props = s.contains("properties") ? &s["properties"] : nullptr;
      const bool closed = s.contains("additionalProperties") && s["additionalProperties"].is_boolean() &&
                          !s["additionalProperties"].get<bool>();
      for (auto it = v.begin(); it != v.end(); ++it) {
        if (props && props->contains(it.key()))
          check(it.value(), (*props)[it.key()], where + "/" + it.key());
        else if (closed)
          out_.push_back(where + ": unexpected key '" + it.key() + "'");
      }
    }
    if (v.is_array() && s.contains("items"))
      for (std::size_t i = 0; i < v.size(); ++i) check(v[i], s["items"], where + "/" + std::to_string(i));
  }

  std::vector<std::string> take() { return std::move(out_); }

 private:
  const json& root_;
  std::vector<std::string> out_;
};

}  // namespace

std::string_view report_schema_text() { return kReportSchemaText; }

const nlohmann::json& report_schema() {
  static const nlohmann::json schema = nlohmann::json::parse(kReportSchemaText);
  return schema;
}

std::vector<std::string> validate_json(const nlohmann::json& doc, const nlohmann::json& schema) {
  Validator v(schema);
  v.check(doc, schema, "");
  return v.take();
}

}  // namespace bliss::cli
