#include <sstream>
#include <string>
#include <variant>

#include <json.hpp>

#include "lqw/cli.hpp"

namespace lqw::cli {

std::string csv_escape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string to_csv(const Table& table) {
  std::string out;
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i) out += ',';
    out += csv_escape(table.columns[i]);
  }
  out += "\n";
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_double(row[i]);
    }
    out += "\n";
  }
  return out;
}

std::string to_csv(const ExperimentReport& report) {
  if (!report.table.columns.empty()) return to_csv(report.table);
  std::string out = "check,measured,tolerance,passed\n";
  for (const auto& v : report.verdicts) {
    out += csv_escape(v.name) + ',' + format_double(v.measured) + ',' + format_double(v.tolerance) + ',' +
           (v.passed ? "true" : "false") + '\n';
  }
  return out;
}

std::string to_json(const ExperimentReport& report) {
  using nlohmann::ordered_json;
  ordered_json doc;
  doc["schema_version"] = 1;
  doc["subcommand"] = report.experiment;

  ordered_json config = ordered_json::object();
  for (const auto& [key, value] : report.config) {
    std::visit([&](const auto& v) { config[key] = v; }, value);
  }
  doc["config"] = config;

  ordered_json results = ordered_json::object();
  for (const auto& [key, value] : report.results) results[key] = value;
  doc["results"] = results;

  ordered_json verdicts = ordered_json::array();
  for (const auto& v : report.verdicts) {
    verdicts.push_back({{"name", v.name}, {"measured", v.measured}, {"tolerance", v.tolerance}, {"passed", v.passed}});
  }
  doc["verdicts"] = verdicts;
  doc["all_passed"] = report.all_passed();
  doc["columns"] = report.table.columns;
  doc["rows"] = report.table.rows.size();
  return doc.dump(2) + "\n";
}

}  // namespace lqw::cli
