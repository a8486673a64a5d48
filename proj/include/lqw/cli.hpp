#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lqw/harness.hpp"

namespace lqw::cli {

/// Parses complex literals such as "0.5", "-2i", "0.5-0.5i", "i/2",
/// "1/sqrt(2)" and "(1+sqrt(2)i)/2".
///
///   expr    := term (('+' | '-') term)*
///   term    := unary (('*' | '/') unary | primary)*      juxtaposition multiplies
///   unary   := ('+' | '-') unary | primary
///   primary := number | 'i' | 'sqrt' '(' expr ')' | '(' expr ')'
///
/// Throws ParseError carrying the 0-based offset of the offending character.
Complex parse_complex(std::string_view text);

/// Shortest representation that reads back to the same double.
std::string format_double(double value);
/// "a+bi" / "a-bi" using format_double; parse_complex reads it back exactly.
std::string format_complex(Complex value);

std::string csv_escape(std::string_view field);
std::string to_csv(const Table& table);
/// The report's table, or for table-less reports (verify) one row per
/// verdict: check,measured,tolerance,passed.
std::string to_csv(const ExperimentReport& report);
/// Versioned JSON document (schema_version = 1), pretty-printed.
std::string to_json(const ExperimentReport& report);

enum class OutputFormat { Both, Csv, Json };

struct CliConfig {
  std::string subcommand;
  int tau = 1;
  std::string alpha_text = "1/sqrt(2)";
  std::string beta_text = "i/sqrt(2)";
  Complex alpha{};
  Complex beta{};
  RunOptions options;
  std::filesystem::path out_dir = ".";
  OutputFormat format = OutputFormat::Both;
};

inline constexpr int kExitPass = 0;
inline constexpr int kExitToleranceFailure = 1;
inline constexpr int kExitUsage = 2;

/// Full front end: parse, validate, run, write <out>/<subcommand>.{csv,json}.
/// Nothing is written when the arguments are rejected.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lqw::cli
