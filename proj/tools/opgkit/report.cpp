#include "report.hpp"

#include <charconv>
#include <cmath>
#include <numbers>

#include "opg/coherence.hpp"
#include "opg/constants.hpp"
#include "opg/errors.hpp"
#include "opg/etendue.hpp"
#include "opg/photon_mc.hpp"
#include "opg/photon_statistics.hpp"
#include "opg/quadrature.hpp"

namespace opg::cli {

namespace {

using nlohmann::ordered_json;

std::string format_chars(double value, int precision) {
  char buffer[64];
  const auto result =
      precision < 0
          ? std::to_chars(buffer, buffer + sizeof(buffer), value)
          : std::to_chars(buffer, buffer + sizeof(buffer), value,
                          std::chars_format::general, precision);
  return std::string(buffer, result.ptr);
}

std::string csv_escape(const std::string& cell) {
  if (cell.find_first_of(",\"\n") == std::string::npos) return cell;
  std::string quoted = "\"";
  for (const char c : cell) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

// Text rendering of one cell for CSV/Markdown; JSON keeps the typed value.
std::string cell_text(const ordered_json& cell, int float_precision) {
  if (cell.is_null()) return "";
  if (cell.is_string()) return cell.get<std::string>();
  if (cell.is_boolean()) return cell.get<bool>() ? "true" : "false";
  if (cell.is_number_float()) return format_chars(cell.get<double>(), float_precision);
  return cell.dump();  // integers
}

EtendueResult compute_etendue(const ScenarioConfig& config,
                              const SensorGeometry& geometry) {
  switch (config.etendue_source) {
    case EtendueSourceKind::SensorForm:
      return reduced_sensor_factor(geometry.pixel_pitch(), geometry.f_number());
    case EtendueSourceKind::SceneForm:
      return reduced_scene_factor(meters(config.scene_form.pupil_diameter),
                                  radians(config.scene_form.ifov));
    case EtendueSourceKind::Paraxial:
      return paraxial_etendue(square_meters(config.paraxial.projected_area),
                              steradians(config.paraxial.solid_angle));
    case EtendueSourceKind::Quadrature:
      return quadrature_etendue(config.quadrature.patch(), config.quadrature.pupil(),
                                config.quadrature.spec());
  }
  throw UsageError("unreachable etendue source");
}

ModeDistribution resolve_distribution(const McParams& mc, double computed_n_bar) {
  if (mc.distribution == "coherent") return ModeDistribution::coherent(*mc.mean);
  if (mc.distribution == "fock") return ModeDistribution::fock(*mc.fock_n);
  return ModeDistribution::thermal(mc.n_bar.value_or(computed_n_bar));
}

int resolve_mode_count(const McParams& mc, double n_osc) {
  if (mc.n_modes) return *mc.n_modes;
  // Simulation needs an integer mode count: nearest integer, at least one.
  const double rounded = std::max(1.0, std::round(n_osc));
  if (rounded > 1e9) {
    throw ValidationError("mc.n_modes",
                          "geometric mode count too large to simulate; set "
                          "mc.n_modes explicitly");
  }
  return static_cast<int>(rounded);
}

const std::vector<std::string>& analytic_columns() {
  static const std::vector<std::string> columns = {
      "a_pix",        "f_number",    "lambda_meas",      "temperature",
      "bandwidth",    "integration_time", "eta_sys",     "n_pol",
      "etendue_source", "coherence_policy", "F_reduced", "F_full",
      "lambda_pix",   "regime",      "N_osc",            "fractional_mode",
      "n_bar",        "N_modes_eff", "N_ph",             "sigma_N",
      "SNR_fund",
  };
  return columns;
}

const std::vector<std::string>& mc_columns() {
  static const std::vector<std::string> columns = {
      "mc_distribution",   "mc_n_modes",           "mc_trials",
      "mc_seed",           "mc_empirical_mean",    "mc_empirical_variance",
      "mc_empirical_snr",
  };
  return columns;
}

std::vector<ordered_json> row_cells(const ReportRow& row) {
  std::vector<ordered_json> cells = {
      row.a_pix,        row.f_number,    row.lambda_meas,      row.temperature,
      row.bandwidth,    row.integration_time, row.eta_sys,     row.n_pol,
      row.etendue_source, row.coherence_policy, row.f_reduced, row.f_full,
      row.lambda_pix,   row.regime,      row.n_osc,            row.fractional_mode,
      row.n_bar,        row.n_modes_eff, row.n_ph,             row.sigma_n,
      row.snr_fund,
  };
  if (row.mc) {
    cells.emplace_back(row.mc->distribution);
    cells.emplace_back(row.mc->n_modes);
    cells.emplace_back(row.mc->trials);
    cells.emplace_back(row.mc->seed);
    cells.emplace_back(row.mc->empirical_mean);
    cells.emplace_back(row.mc->empirical_variance);
    cells.emplace_back(row.mc->empirical_snr);
  }
  return cells;
}

Table rows_to_table(const std::vector<ReportRow>& rows) {
  Table table;
  table.header = analytic_columns();
  const bool any_mc =
      std::any_of(rows.begin(), rows.end(), [](const auto& r) { return r.mc.has_value(); });
  if (any_mc) {
    for (const auto& column : mc_columns()) table.header.push_back(column);
  }
  for (const auto& row : rows) {
    auto cells = row_cells(row);
    cells.resize(table.header.size());  // rows without MC pad with nulls
    table.rows.push_back(std::move(cells));
  }
  return table;
}

}  // namespace

std::string format_sig6(double value) { return format_chars(value, 6); }

ReportFormat parse_format(const std::string& name) {
  if (name == "csv") return ReportFormat::Csv;
  if (name == "json") return ReportFormat::Json;
  if (name == "md") return ReportFormat::Markdown;
  throw ValidationError("format", "expected 'csv', 'json' or 'md'");
}

ReportRow run_scenario(const ScenarioConfig& config) {
  const SensorGeometry geometry = config.sensor.build();
  const RadiometricScenario scenario = config.scenario.build();

  const EtendueResult etendue = compute_etendue(config, geometry);
  const CoherenceScaleResult coherence =
      effective_coherence_scale(scenario.lambda_meas(), geometry);
  const OccupancyResult occupancy =
      bose_einstein_occupancy(scenario.lambda_meas(), scenario.temperature());
  const ModeBudget budget = effective_modes(
      mode_count(etendue, scenario.lambda_meas(), geometry, config.policy), scenario);
  const double n_ph = photon_number(budget, occupancy);
  const double sigma = shot_noise_sigma(n_ph);

  ReportRow row;
  row.a_pix = geometry.pixel_pitch().value();
  row.f_number = geometry.f_number();
  row.lambda_meas = scenario.lambda_meas().value();
  row.temperature = scenario.temperature().value();
  row.bandwidth = scenario.bandwidth().value();
  row.integration_time = scenario.integration_time().value();
  row.eta_sys = scenario.eta_sys();
  row.n_pol = scenario.n_pol();
  row.etendue_source = to_string(etendue.source);
  row.coherence_policy = to_string(config.policy);
  row.f_reduced = etendue.reduced.value();
  row.f_full = etendue.full.value();
  row.lambda_pix = coherence.lambda_pix.value();
  row.regime = to_string(coherence.regime);
  row.n_osc = budget.n_osc;
  row.fractional_mode = budget.n_osc < 1.0;
  row.n_bar = occupancy.n_bar;
  row.n_modes_eff = *budget.n_modes_eff;
  row.n_ph = n_ph;
  row.sigma_n = sigma;
  row.snr_fund = sigma;

  row.warnings = etendue.warnings;
  if (etendue.rel_error_estimate) {
    row.warnings.push_back("quadrature relative error estimate: " +
                           format_sig6(*etendue.rel_error_estimate));
  }
  if (occupancy.underflow) {
    row.warnings.push_back(
        "occupancy underflowed to zero (cold/short-wave limit); SNR is zero");
  }

  if (config.mc) {
    SamplingSpec spec;
    spec.distribution = resolve_distribution(*config.mc, occupancy.n_bar);
    spec.n_modes = resolve_mode_count(*config.mc, budget.n_osc);
    spec.trials = config.mc->trials;
    spec.seed = config.mc->seed;
    const TrialSummary summary = simulate_pixel(spec, config.mc->workers);

    McReport mc;
    mc.distribution = config.mc->distribution;
    mc.n_modes = spec.n_modes;
    mc.trials = spec.trials;
    mc.seed = spec.seed;
    mc.empirical_mean = summary.empirical_mean;
    mc.empirical_variance = summary.empirical_variance;
    mc.empirical_snr = summary.empirical_snr;
    row.mc = mc;
  }
  return row;
}

std::vector<ReportRow> run_sweep(const ScenarioConfig& config) {
  if (!config.sweep) {
    throw UsageError("run_sweep requires a [sweep] block");
  }
  const SweepParams& sweep = *config.sweep;

  std::vector<ReportRow> rows;
  rows.reserve(sweep.count);
  for (int i = 0; i < sweep.count; ++i) {
    double value = sweep.start;
    if (sweep.count > 1) {
      const double t = static_cast<double>(i) / (sweep.count - 1);
      value = sweep.log_scale
                  ? sweep.start * std::pow(sweep.stop / sweep.start, t)
                  : sweep.start + (sweep.stop - sweep.start) * t;
    }
    rows.push_back(run_scenario(apply_sweep_value(config, sweep.variable, value)));
  }
  return rows;
}

Table reproduce_table1() {
  constexpr double kReferenceEtendue = 2.27e-10;  // m^2 sr, full convention
  Table table;
  table.header = {"lambda", "lambda_sq", "N_osc"};
  for (const double lambda_um : {1.0, 3.0, 5.0, 10.0, 14.0}) {
    const double lambda = lambda_um * 1e-6;
    table.rows.push_back(
        {lambda, lambda * lambda, kReferenceEtendue / (lambda * lambda)});
  }
  return table;
}

Table constants_table() {
  Table table;
  table.header = {"name", "value", "unit"};
  table.float_precision = -1;  // defining constants are exact; print them whole
  table.rows.push_back({"h", kSI.h, "J s"});
  table.rows.push_back({"hbar", kSI.hbar, "J s"});
  table.rows.push_back({"c", kSI.c, "m s^-1"});
  table.rows.push_back({"k_B", kSI.k_B, "J K^-1"});
  return table;
}

std::string render_table(const Table& table, ReportFormat format) {
  if (table.rows.empty()) {
    throw UsageError("refusing to render an empty row set");
  }
  std::string out;
  switch (format) {
    case ReportFormat::Csv: {
      for (std::size_t i = 0; i < table.header.size(); ++i) {
        if (i) out += ',';
        out += csv_escape(table.header[i]);
      }
      out += '\n';
      for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
          if (i) out += ',';
          out += csv_escape(cell_text(row[i], table.float_precision));
        }
        out += '\n';
      }
      break;
    }
    case ReportFormat::Json: {
      ordered_json array = ordered_json::array();
      for (const auto& row : table.rows) {
        ordered_json object = ordered_json::object();
        for (std::size_t i = 0; i < table.header.size(); ++i) {
          object[table.header[i]] = row[i];
        }
        array.push_back(std::move(object));
      }
      out = array.dump(2);
      out += '\n';
      break;
    }
    case ReportFormat::Markdown: {
      out += '|';
      for (const auto& name : table.header) out += ' ' + name + " |";
      out += "\n|";
      for (std::size_t i = 0; i < table.header.size(); ++i) out += " --- |";
      out += '\n';
      for (const auto& row : table.rows) {
        out += '|';
        for (const auto& cell : row)
          out += ' ' + cell_text(cell, table.float_precision) + " |";
        out += '\n';
      }
      break;
    }
  }
  return out;
}

std::string render(const std::vector<ReportRow>& rows, ReportFormat format) {
  if (rows.empty()) {
    throw UsageError("refusing to render an empty row set");
  }
  return render_table(rows_to_table(rows), format);
}

}  // namespace opg::cli
