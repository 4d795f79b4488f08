#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "config.hpp"

namespace opg::cli {

struct McReport {
  std::string distribution;
  int n_modes = 0;
  std::int64_t trials = 0;
  std::uint64_t seed = 0;
  double empirical_mean = 0.0;
  double empirical_variance = 0.0;
  double empirical_snr = 0.0;
};

/// One fully evaluated scenario.  Column order is fixed (see the README
/// schema); the Monte Carlo columns are appended at the end when present and
/// never reorder the analytic ones.
struct ReportRow {
  double a_pix = 0.0;
  double f_number = 0.0;
  double lambda_meas = 0.0;
  double temperature = 0.0;
  double bandwidth = 0.0;
  double integration_time = 0.0;
  double eta_sys = 0.0;
  int n_pol = 1;
  std::string etendue_source;
  std::string coherence_policy;
  double f_reduced = 0.0;
  double f_full = 0.0;
  double lambda_pix = 0.0;
  std::string regime;
  double n_osc = 0.0;
  bool fractional_mode = false;
  double n_bar = 0.0;
  double n_modes_eff = 0.0;
  double n_ph = 0.0;
  double sigma_n = 0.0;
  double snr_fund = 0.0;
  std::optional<McReport> mc;

  /// Diagnostics for the error stream; never rendered into the report.
  std::vector<std::string> warnings;
};

enum class ReportFormat { Csv, Json, Markdown };

/// Accepts "csv", "json" or "md".
ReportFormat parse_format(const std::string& name);

/// Runs the full analytic chain (and the Monte Carlo verifier when the
/// config asks for it) for one scenario.
ReportRow run_scenario(const ScenarioConfig& config);

/// One row per sweep point, in axis order.  Requires config.sweep.
std::vector<ReportRow> run_sweep(const ScenarioConfig& config);

/// Generic rendered table; cells are JSON scalars so every output format can
/// type them faithfully.  float_precision is the significant-digit count for
/// text formats (-1 = full round-trip precision); JSON always keeps full
/// precision.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<nlohmann::ordered_json>> rows;
  int float_precision = 6;
};

/// The fixed reference table: mode count versus wavelength at
/// F = 2.27e-10 m^2 sr, raw-wavelength policy.
Table reproduce_table1();

/// Name/value/unit listing of the physical constants.
Table constants_table();

std::string render(const std::vector<ReportRow>& rows, ReportFormat format);
std::string render_table(const Table& table, ReportFormat format);

/// Locale-independent formatting: 6 significant digits for reports, full
/// round-trip precision for JSON.
std::string format_sig6(double value);

}  // namespace opg::cli
