#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "config.hpp"
#include "opg/errors.hpp"
#include "report.hpp"

namespace {

using namespace opg;
using namespace opg::cli;

constexpr int kExitUsage = 2;      // config / validation problems
constexpr int kExitNumerical = 3;  // convergence / saturation failures

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ValidationError("config", "cannot open file '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_output(const std::string& out_path, const std::string& bytes) {
  if (out_path.empty()) {
    std::cout << bytes;
    std::cout.flush();
    return;
  }
  std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw ValidationError("out", "cannot open output file '" + out_path + "'");
  }
  out << bytes;
}

void print_warnings(const std::vector<ReportRow>& rows) {
  std::set<std::string> seen;
  for (const auto& row : rows) {
    for (const auto& warning : row.warnings) {
      if (seen.insert(warning).second) {
        std::cerr << "warning: " << warning << '\n';
      }
    }
  }
}

CoherencePolicy parse_policy(const std::string& name) {
  if (name == "max-rule") return CoherencePolicy::MaxRule;
  if (name == "raw-lambda") return CoherencePolicy::RawMeasurementWavelength;
  throw ValidationError("policy", "expected 'max-rule' or 'raw-lambda'");
}

struct Options {
  std::string config_path;
  std::string format = "csv";
  std::string out_path;
  std::string policy;
  std::uint64_t seed = 0;
  bool seed_set = false;
};

ScenarioConfig load_config(const Options& options) {
  ScenarioConfig config = parse_config(read_file(options.config_path));
  if (!options.policy.empty()) {
    config.policy = parse_policy(options.policy);
  }
  if (options.seed_set) {
    if (!config.mc) {
      throw ValidationError("mc", "--seed requires an [mc] block in the config");
    }
    config.mc->seed = options.seed;
  }
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pixel etendue, optical mode counting, and quantum-limited SNR"};
  app.require_subcommand(1);

  Options options;
  auto add_output_flags = [&](CLI::App* cmd) {
    cmd->add_option("--format", options.format, "output format: csv, json or md")
        ->default_val("csv");
    cmd->add_option("--out", options.out_path,
                    "write the report here instead of standard output");
  };
  auto add_scenario_flags = [&](CLI::App* cmd) {
    cmd->add_option("config", options.config_path, "scenario config file")->required();
    add_output_flags(cmd);
    cmd->add_option("--policy", options.policy,
                    "mode-count wavelength policy: max-rule or raw-lambda");
    auto* seed = cmd->add_option("--seed", options.seed, "Monte Carlo seed override");
    cmd->callback([&options, seed] { options.seed_set = seed->count() > 0; });
  };

  auto* run_cmd = app.add_subcommand("run", "evaluate one scenario");
  add_scenario_flags(run_cmd);
  auto* sweep_cmd = app.add_subcommand("sweep", "evaluate a parameter sweep");
  add_scenario_flags(sweep_cmd);
  auto* mc_cmd = app.add_subcommand(
      "mc", "evaluate one scenario with the Monte Carlo verifier (requires [mc])");
  add_scenario_flags(mc_cmd);
  auto* table1_cmd =
      app.add_subcommand("table1", "mode count versus wavelength at F = 2.27e-10");
  add_output_flags(table1_cmd);
  auto* constants_cmd = app.add_subcommand("constants", "print the physical constants");
  add_output_flags(constants_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& error) {
    return app.exit(error);
  } catch (const CLI::ParseError& error) {
    std::cerr << "error: " << error.what() << '\n';
    return kExitUsage;
  }

  try {
    const ReportFormat format = parse_format(options.format);
    std::string bytes;

    if (app.got_subcommand(table1_cmd)) {
      bytes = render_table(reproduce_table1(), format);
    } else if (app.got_subcommand(constants_cmd)) {
      bytes = render_table(constants_table(), format);
    } else {
      const ScenarioConfig config = load_config(options);
      std::vector<ReportRow> rows;
      if (app.got_subcommand(sweep_cmd)) {
        if (!config.sweep) {
          throw ValidationError("sweep", "missing [sweep] block in the config");
        }
        rows = run_sweep(config);
      } else {
        if (app.got_subcommand(mc_cmd) && !config.mc) {
          throw ValidationError("mc", "missing [mc] block in the config");
        }
        rows.push_back(run_scenario(config));
      }
      print_warnings(rows);
      bytes = render(rows, format);
    }

    write_output(options.out_path, bytes);
    return 0;
  } catch (const ValidationError& error) {
    std::cerr << "error: " << error.what() << '\n';
    return kExitUsage;
  } catch (const UsageError& error) {
    std::cerr << "error: " << error.what() << '\n';
    return kExitUsage;
  } catch (const ConvergenceError& error) {
    std::cerr << "error: " << error.what() << " (best estimate "
              << format_sig6(error.best_estimate()) << ", achieved relative tolerance "
              << format_sig6(error.achieved_rel_tol()) << ")\n";
    return kExitNumerical;
  } catch (const SaturationError& error) {
    std::cerr << "error: " << error.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& error) {
    std::cerr << "internal error: " << error.what() << '\n';
    return 1;
  }
}
