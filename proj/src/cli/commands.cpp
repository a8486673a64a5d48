#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "lqw/cli.hpp"
#include "lqw/error.hpp"

namespace lqw::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using Builder = ExperimentReport (*)(const InitialCondition&, const WalkParams&, const RunOptions&);

const std::map<std::string, Builder>& builders() {
  static const std::map<std::string, Builder> table = {
      {"simulate", &simulate_report}, {"localize", &localize_report}, {"density", &density_report},
      {"variance", &variance_report}, {"verify", &verify_report},
  };
  return table;
}

int env_quadrature_nodes() {
  const char* raw = std::getenv("LQW_QUAD_NODES");
  if (raw == nullptr || *raw == '\0') return kDefaultQuadratureNodes;
  const std::string_view text(raw);
  int n = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), n);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size() || n < 2) {
    throw UsageError("LQW_QUAD_NODES must be an integer >= 2, got \"" + std::string(text) + "\"");
  }
  return n;
}

// Returns nullopt when CLI11 handled the request itself (--help).
std::optional<CliConfig> parse_args(const std::vector<std::string>& args, std::ostream& out,
                                    std::ostream& err, int& exit_code) {
  CliConfig cfg;
  cfg.options.quadrature_nodes = env_quadrature_nodes();

  CLI::App app{"Lackadaisical quantum walk simulator and analytic cross-checks", "lqw"};
  app.require_subcommand(1);
  std::string format = "both";
  std::optional<int> quad_nodes;

  const std::pair<const char*, const char*> commands[] = {
      {"simulate", "position distribution after T steps"},
      {"localize", "origin probability series against its long-time limit"},
      {"density", "tabulated weak-limit density, point mass and support bound"},
      {"variance", "variance series and power-law fit"},
      {"verify", "cross-check suite: simulation, Fourier oracle, closed forms"},
  };
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--tau", cfg.tau, "number of self-loops per vertex (>= 1)")->required();
    sub->add_option("--alpha", cfg.alpha_text, "left coin amplitude, e.g. 1/sqrt(2)")->capture_default_str();
    sub->add_option("--beta", cfg.beta_text, "right coin amplitude, e.g. i/sqrt(2)")->capture_default_str();
    sub->add_option("--steps,-T", cfg.options.steps, "number of walk steps")->capture_default_str();
    sub->add_option("--grid", cfg.options.grid_size, "Fourier grid size (0 = automatic)");
    sub->add_option("--quad-nodes", quad_nodes, "Gauss-Legendre nodes (default: $LQW_QUAD_NODES or 2048)");
    sub->add_option("--points", cfg.options.density_points, "density table points")->capture_default_str();
    sub->add_option("--epsilon", cfg.options.epsilon, "exclusion radius around the point mass");
    sub->add_option("--tolerance", cfg.options.localization_tolerance,
                    "allowed |window mean - limit| for the origin probability")
        ->capture_default_str();
    sub->add_option("--out,-o", cfg.out_dir, "output directory")->capture_default_str();
    sub->add_option("--format", format, "csv, json or both")
        ->check(CLI::IsMember({"csv", "json", "both"}))
        ->capture_default_str();
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    exit_code = app.exit(e, out, err);
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  cfg.subcommand = app.get_subcommands().front()->get_name();
  if (quad_nodes) cfg.options.quadrature_nodes = *quad_nodes;
  cfg.format = format == "csv" ? OutputFormat::Csv : format == "json" ? OutputFormat::Json : OutputFormat::Both;
  return cfg;
}

void write_atomically(const std::filesystem::path& path, const std::string& content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    f << content;
    if (!f) throw std::runtime_error("failed writing " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CliConfig cfg;
  std::optional<WalkParams> params;
  std::optional<InitialCondition> init;
  try {
    int help_code = kExitPass;
    auto parsed = parse_args(args, out, err, help_code);
    if (!parsed) return help_code;
    cfg = std::move(*parsed);

    params.emplace(cfg.tau);
    cfg.alpha = parse_complex(cfg.alpha_text);
    cfg.beta = parse_complex(cfg.beta_text);
    init.emplace(InitialCondition::standard(cfg.alpha, cfg.beta));
    if (cfg.options.steps < 0) throw UsageError("--steps must be nonnegative");
    if (cfg.options.quadrature_nodes < 2) throw UsageError("--quad-nodes must be >= 2");
    if (cfg.options.grid_size != 0 && cfg.options.grid_size < 2 * cfg.options.steps + 1) {
      throw UsageError("--grid must be 0 or at least 2 * steps + 1");
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InvalidInput& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  ExperimentReport report;
  try {
    report = builders().at(cfg.subcommand)(*init, *params, cfg.options);
  } catch (const InvalidInput& e) {
    // Preconditions such as T >= 10 for the variance fit surface here.
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const NumericalFailure& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitToleranceFailure;
  }

  try {
    std::filesystem::create_directories(cfg.out_dir);
    if (cfg.format != OutputFormat::Json) {
      write_atomically(cfg.out_dir / (cfg.subcommand + ".csv"), to_csv(report));
    }
    if (cfg.format != OutputFormat::Csv) {
      write_atomically(cfg.out_dir / (cfg.subcommand + ".json"), to_json(report));
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitToleranceFailure;
  }

  for (const auto& v : report.verdicts) {
    out << (v.passed ? "PASS " : "FAIL ") << v.name << " measured=" << format_double(v.measured)
        << " tolerance=" << format_double(v.tolerance) << "\n";
  }
  for (const auto& [name, value] : report.results) out << name << " = " << format_double(value) << "\n";
  return report.all_passed() ? kExitPass : kExitToleranceFailure;
}

}  // namespace lqw::cli
