#pragma once

#include <json.hpp>

#include <iomanip>
#include <ostream>
#include <string>
#include <vector>

namespace w22hv {

/// Versioned report payload. All numeric entries are exact-rational strings
/// ("a/b") or integers; floats never appear. Reports are deterministic for a
/// fixed configuration: ordered maps, stable iteration, no timestamps.
struct Report {
  static constexpr const char* kSchema = "w22hv-report/1";

  std::string command;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  nlohmann::ordered_json classification = nlohmann::ordered_json::object();
  // rows keyed by integer level; each row is an object of named columns
  std::vector<std::pair<int, nlohmann::ordered_json>> levels;
  // certificate lines: {name, pass, detail?}
  std::vector<nlohmann::ordered_json> certificates;
  std::vector<std::string> notes;

  bool all_passed() const {
    for (const auto& c : certificates)
      if (!c.value("pass", false)) return false;
    return true;
  }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["schema"] = kSchema;
    j["command"] = command;
    j["params"] = params;
    if (!classification.empty()) j["classification"] = classification;
    nlohmann::ordered_json rows = nlohmann::ordered_json::object();
    for (const auto& [lvl, row] : levels) rows[std::to_string(lvl)] = row;
    if (!rows.empty()) j["levels"] = rows;
    if (!certificates.empty()) j["certificates"] = certificates;
    if (!notes.empty()) j["notes"] = notes;
    return j;
  }
};

/// One JSON object per line: header, then level rows, then certificates.
inline void emit_jsonl(std::ostream& os, const Report& r) {
  nlohmann::ordered_json head;
  head["schema"] = Report::kSchema;
  head["command"] = r.command;
  head["params"] = r.params;
  if (!r.classification.empty()) head["classification"] = r.classification;
  os << head.dump() << "\n";
  for (const auto& [lvl, row] : r.levels) {
    nlohmann::ordered_json line;
    line["level"] = lvl;
    for (const auto& [k, v] : row.items()) line[k] = v;
    os << line.dump() << "\n";
  }
  for (const auto& c : r.certificates) os << c.dump() << "\n";
  for (const auto& n : r.notes) {
    nlohmann::ordered_json line;
    line["note"] = n;
    os << line.dump() << "\n";
  }
}

inline void emit_tabular(std::ostream& os, const Report& r) {
  os << "command: " << r.command << "\n";
  if (!r.params.empty()) {
    os << "params:";
    for (const auto& [k, v] : r.params.items())
      os << " " << k << "=" << (v.is_string() ? v.get<std::string>() : v.dump());
    os << "\n";
  }
  if (!r.classification.empty()) {
    os << "classification:";
    for (const auto& [k, v] : r.classification.items())
      os << " " << k << "=" << (v.is_string() ? v.get<std::string>() : v.dump());
    os << "\n";
  }
  if (!r.levels.empty()) {
    std::vector<std::string> cols;
    for (const auto& [k, v] : r.levels.front().second.items()) cols.push_back(k);
    os << std::setw(6) << "level";
    for (const auto& c : cols) os << "  " << std::setw(12) << c;
    os << "\n";
    for (const auto& [lvl, row] : r.levels) {
      os << std::setw(6) << lvl;
      for (const auto& c : cols) {
        const auto& v = row.at(c);
        os << "  " << std::setw(12) << (v.is_string() ? v.get<std::string>() : v.dump());
      }
      os << "\n";
    }
  }
  for (const auto& c : r.certificates) {
    os << (c.value("pass", false) ? "[PASS] " : "[FAIL] ") << c.value("name", "");
    if (c.contains("detail")) os << "  (" << c.at("detail").get<std::string>() << ")";
    os << "\n";
  }
  for (const auto& n : r.notes) os << "note: " << n << "\n";
}

}  // namespace w22hv
