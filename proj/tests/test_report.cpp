#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cmath>
#include <string>

#include "opg/errors.hpp"
#include "opgkit/config.hpp"
#include "opgkit/report.hpp"

using namespace opg;
using namespace opg::cli;

namespace {

constexpr const char* kMinimalConfig = R"(
[sensor]
a_pix = 17e-6
f_number = 1.0

[scenario]
lambda_meas = 10e-6
temperature = 300
)";

ScenarioConfig minimal_config() { return parse_config(kMinimalConfig); }

int count_columns(const std::string& csv_line) {
  int count = 1;
  for (const char c : csv_line) {
    if (c == ',') ++count;
  }
  return count;
}

}  // namespace

TEST_CASE("minimal config parses with the normalized defaults") {
  const auto config = minimal_config();
  CHECK(config.sensor.a_pix == 17e-6);
  CHECK(config.sensor.f_number == 1.0);
  CHECK(config.scenario.eta_sys == 1.0);
  CHECK(config.scenario.n_pol == 1);
  CHECK(config.scenario.bandwidth == 1.0);
  CHECK(config.scenario.integration_time == 1.0);
  CHECK(config.policy == CoherencePolicy::MaxRule);
  CHECK(config.etendue_source == EtendueSourceKind::SensorForm);
  CHECK(!config.mc.has_value());
  CHECK(!config.sweep.has_value());
}

TEST_CASE("config errors carry the key path and line position") {
  SUBCASE("out-of-range value") {
    try {
      parse_config("[sensor]\na_pix = 17e-6\nf_number = -1\n"
                   "[scenario]\nlambda_meas = 10e-6\ntemperature = 300\n");
      FAIL("expected ValidationError");
    } catch (const ValidationError& error) {
      CHECK(error.field() == "sensor.f_number");
      CHECK(std::string(error.what()).find("line 3") != std::string::npos);
    }
  }
  SUBCASE("unknown key") {
    try {
      parse_config(std::string(kMinimalConfig) + "pixel_count = 640\n");
      FAIL("expected ValidationError");
    } catch (const ValidationError& error) {
      CHECK(error.field() == "scenario.pixel_count");
      CHECK(std::string(error.what()).find("line") != std::string::npos);
    }
  }
  SUBCASE("missing required key") {
    try {
      parse_config("[sensor]\na_pix = 17e-6\nf_number = 1\n"
                   "[scenario]\ntemperature = 300\n");
      FAIL("expected ValidationError");
    } catch (const ValidationError& error) {
      CHECK(error.field() == "scenario.lambda_meas");
    }
  }
  SUBCASE("malformed number") {
    CHECK_THROWS_WITH_AS(
        parse_config("[sensor]\na_pix = tiny\nf_number = 1\n"
                     "[scenario]\nlambda_meas = 10e-6\ntemperature = 300\n"),
        doctest::Contains("sensor.a_pix"), ValidationError);
  }
  SUBCASE("duplicate key") {
    CHECK_THROWS_WITH_AS(
        parse_config("[sensor]\na_pix = 17e-6\na_pix = 18e-6\nf_number = 1\n"
                     "[scenario]\nlambda_meas = 10e-6\ntemperature = 300\n"),
        doctest::Contains("duplicate"), ValidationError);
  }
  SUBCASE("unknown section") {
    CHECK_THROWS_WITH_AS(parse_config("[detector]\nx = 1\n"),
                         doctest::Contains("unknown section"), ValidationError);
  }
  SUBCASE("inconsistent redundant sensor fields") {
    try {
      parse_config("[sensor]\na_pix = 17e-6\nf_number = 2.0\n"
                   "focal_length = 17e-3\npupil_diameter = 17e-3\n"
                   "[scenario]\nlambda_meas = 10e-6\ntemperature = 300\n");
      FAIL("expected ValidationError");
    } catch (const ValidationError& error) {
      CHECK(error.field() == "sensor.f_number");
    }
  }
}

TEST_CASE("conflicting etendue blocks are rejected") {
  const std::string text = std::string(kMinimalConfig) +
                           "[etendue.sensor]\n[etendue.scene]\n"
                           "pupil_diameter = 17e-3\nifov = 1e-3\n";
  CHECK_THROWS_WITH_AS(parse_config(text), doctest::Contains("conflicting"),
                       ValidationError);
}

TEST_CASE("etendue source blocks select and parameterize the source") {
  SUBCASE("scene form") {
    const auto config = parse_config(std::string(kMinimalConfig) +
                                     "[etendue.scene]\npupil_diameter = 17e-3\n"
                                     "ifov = 1e-3\n");
    CHECK(config.etendue_source == EtendueSourceKind::SceneForm);
    CHECK(config.scene_form.pupil_diameter == 17e-3);
  }
  SUBCASE("paraxial form") {
    const auto config = parse_config(std::string(kMinimalConfig) +
                                     "[etendue.paraxial]\nprojected_area = 1e-6\n"
                                     "solid_angle = 7.854e-5\n");
    CHECK(config.etendue_source == EtendueSourceKind::Paraxial);
  }
  SUBCASE("quadrature block") {
    const auto config = parse_config(std::string(kMinimalConfig) +
                                     "[etendue.quadrature]\npatch_width = 1e-3\n"
                                     "patch_height = 1e-3\ndistance = 1.0\n"
                                     "pupil_diameter = 0.01\norder = 12\n");
    CHECK(config.etendue_source == EtendueSourceKind::Quadrature);
    CHECK(config.quadrature.order == 12);
    CHECK(config.quadrature.target_rel_tol == 1e-6);
  }
}

TEST_CASE("mc block validation") {
  const std::string base = std::string(kMinimalConfig);
  SUBCASE("thermal defaults") {
    const auto config = parse_config(base + "[mc]\ntrials = 1000\n");
    REQUIRE(config.mc.has_value());
    CHECK(config.mc->distribution == "thermal");
    CHECK(config.mc->seed == 1);
    CHECK(!config.mc->n_bar.has_value());
  }
  SUBCASE("coherent requires a mean") {
    CHECK_THROWS_WITH_AS(
        parse_config(base + "[mc]\ndistribution = coherent\ntrials = 10\n"),
        doctest::Contains("mc.mean"), ValidationError);
  }
  SUBCASE("fock requires n") {
    CHECK_THROWS_WITH_AS(parse_config(base + "[mc]\ndistribution = fock\ntrials = 10\n"),
                         doctest::Contains("mc.n"), ValidationError);
  }
  SUBCASE("cross-distribution keys are rejected") {
    CHECK_THROWS_AS(parse_config(base + "[mc]\ndistribution = thermal\nmean = 2\n"
                                        "trials = 10\n"),
                    ValidationError);
  }
  SUBCASE("trials are mandatory") {
    CHECK_THROWS_WITH_AS(parse_config(base + "[mc]\ndistribution = thermal\n"),
                         doctest::Contains("mc.trials"), ValidationError);
  }
}

TEST_CASE("sweep block validation") {
  const std::string base = std::string(kMinimalConfig);
  const auto config = parse_config(
      base + "[sweep]\nvariable = scenario.temperature\nstart = 200\nstop = 400\n"
             "count = 5\n");
  REQUIRE(config.sweep.has_value());
  CHECK(config.sweep->variable == "scenario.temperature");
  CHECK(!config.sweep->log_scale);

  CHECK_THROWS_WITH_AS(
      parse_config(base + "[sweep]\nvariable = scenario.radiance\nstart = 1\n"
                          "stop = 2\ncount = 2\n"),
      doctest::Contains("sweep.variable"), ValidationError);
  CHECK_THROWS_AS(
      parse_config(base + "[sweep]\nvariable = scenario.temperature\nstart = -1\n"
                          "stop = 2\ncount = 2\nscale = log\n"),
      ValidationError);
}

TEST_CASE("policy key and overrides") {
  // The policy key is global, so it must precede the first section.
  const auto config = parse_config("policy = raw-lambda\n" + std::string(kMinimalConfig));
  CHECK(config.policy == CoherencePolicy::RawMeasurementWavelength);
  CHECK_THROWS_WITH_AS(parse_config("policy = newest\n" + std::string(kMinimalConfig)),
                       doctest::Contains("policy"), ValidationError);
}

TEST_CASE("run_scenario reproduces the worked LWIR chain") {
  auto config = minimal_config();

  SUBCASE("raw-wavelength policy matches the reference numbers") {
    config.policy = CoherencePolicy::RawMeasurementWavelength;
    const auto row = run_scenario(config);
    CHECK(row.f_full == doctest::Approx(2.27e-10).epsilon(5e-3));
    CHECK(row.n_osc == doctest::Approx(2.27).epsilon(5e-3));
    CHECK(row.snr_fund == doctest::Approx(0.137522656732072).epsilon(1e-12));
    CHECK(row.regime == "geometry-limited");
    CHECK(!row.fractional_mode);
    CHECK(row.etendue_source == "sensor");
    CHECK(row.coherence_policy == "raw-lambda");
  }
  SUBCASE("max-rule policy uses the coherence scale and flags fractions") {
    const auto row = run_scenario(config);
    CHECK(row.lambda_pix == doctest::Approx(17e-6).epsilon(1e-12));
    CHECK(row.n_osc == doctest::Approx(0.785398163397448).epsilon(1e-12));
    CHECK(row.fractional_mode);
  }
  SUBCASE("cold limit yields a zero-SNR row instead of an error") {
    config.scenario.temperature = 1e-6;
    const auto row = run_scenario(config);
    CHECK(row.snr_fund == 0.0);
    CHECK(row.n_ph == 0.0);
    CHECK(!row.warnings.empty());
  }
}

TEST_CASE("run_scenario drives the Monte Carlo verifier when requested") {
  auto config = minimal_config();
  config.policy = CoherencePolicy::RawMeasurementWavelength;
  McParams mc;
  mc.trials = 20'000;
  mc.seed = 9;
  config.mc = mc;

  const auto row = run_scenario(config);
  REQUIRE(row.mc.has_value());
  CHECK(row.mc->distribution == "thermal");
  CHECK(row.mc->n_modes == 2);  // round(2.2698)
  CHECK(row.mc->trials == 20'000);
  CHECK(row.mc->seed == 9);
  // Mean of the aggregate thermal count ~ n_modes * n_bar.
  const double expected = 2.0 * row.n_bar;
  CHECK(std::abs(row.mc->empirical_mean - expected) <
        4.0 * std::sqrt(expected / 20'000.0));

  // Identical config (including seed) reproduces the row bit-for-bit.
  const auto row2 = run_scenario(config);
  CHECK(row2.mc->empirical_mean == row.mc->empirical_mean);
  CHECK(row2.mc->empirical_variance == row.mc->empirical_variance);
}

TEST_CASE("run_sweep walks the axis in order") {
  auto config = minimal_config();
  config.policy = CoherencePolicy::RawMeasurementWavelength;

  SUBCASE("wavelength sweep over the reference table values") {
    SweepParams sweep;
    sweep.variable = "scenario.lambda_meas";
    sweep.start = 1e-6;
    sweep.stop = 14e-6;
    sweep.count = 5;
    config.sweep = sweep;
    // Use explicit values instead of the linear grid for the table check.
    const double lambdas[] = {1e-6, 3e-6, 5e-6, 10e-6, 14e-6};
    const double expected[] = {227.0, 25.2, 9.08, 2.27, 1.16};
    for (int i = 0; i < 5; ++i) {
      const auto row =
          run_scenario(apply_sweep_value(config, "scenario.lambda_meas", lambdas[i]));
      CHECK(row.n_osc == doctest::Approx(expected[i]).epsilon(5e-3));
    }
  }
  SUBCASE("temperature sweep is strictly ascending in SNR") {
    SweepParams sweep;
    sweep.variable = "scenario.temperature";
    sweep.start = 150.0;
    sweep.stop = 450.0;
    sweep.count = 13;
    config.sweep = sweep;
    const auto rows = run_sweep(config);
    REQUIRE(rows.size() == 13);
    for (std::size_t i = 1; i < rows.size(); ++i) {
      CHECK(rows[i].snr_fund > rows[i - 1].snr_fund);
      CHECK(rows[i].temperature > rows[i - 1].temperature);
    }
  }
  SUBCASE("single-point sweep equals run_scenario") {
    SweepParams sweep;
    sweep.variable = "scenario.temperature";
    sweep.start = 300.0;
    sweep.stop = 999.0;  // ignored at count = 1
    sweep.count = 1;
    config.sweep = sweep;
    const auto rows = run_sweep(config);
    REQUIRE(rows.size() == 1);
    const auto direct = run_scenario(config);
    CHECK(rows[0].snr_fund == direct.snr_fund);
    CHECK(rows[0].f_full == direct.f_full);
  }
  SUBCASE("log spacing is geometric") {
    SweepParams sweep;
    sweep.variable = "scenario.temperature";
    sweep.start = 100.0;
    sweep.stop = 400.0;
    sweep.count = 3;
    sweep.log_scale = true;
    config.sweep = sweep;
    const auto rows = run_sweep(config);
    CHECK(rows[1].temperature == doctest::Approx(200.0).epsilon(1e-12));
  }
}

TEST_CASE("reference table values sit within 0.5% of the published roundings") {
  const auto table = reproduce_table1();
  REQUIRE(table.rows.size() == 5);
  const double expected[] = {227.0, 25.2, 9.08, 2.27, 1.16};
  const double lambdas[] = {1e-6, 3e-6, 5e-6, 10e-6, 14e-6};
  for (int i = 0; i < 5; ++i) {
    CHECK(table.rows[i][0].get<double>() == doctest::Approx(lambdas[i]).epsilon(1e-12));
    CHECK(table.rows[i][2].get<double>() == doctest::Approx(expected[i]).epsilon(5e-3));
  }
}

TEST_CASE("CSV rendering: fixed schema, one record per row") {
  auto config = minimal_config();
  const auto row = run_scenario(config);
  const std::string csv = render({row}, ReportFormat::Csv);

  // Exactly two LF-terminated lines.
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 2);
  const auto header = csv.substr(0, csv.find('\n'));
  const auto record = csv.substr(csv.find('\n') + 1);
  CHECK(count_columns(header) == 21);
  CHECK(count_columns(record.substr(0, record.size() - 1)) == 21);
  CHECK(header.rfind("a_pix,f_number,lambda_meas", 0) == 0);
  CHECK(csv.find('\r') == std::string::npos);

  // MC columns append without reordering the analytic ones.
  McParams mc;
  mc.trials = 100;
  config.mc = mc;
  const std::string with_mc = render({run_scenario(config)}, ReportFormat::Csv);
  const auto mc_header = with_mc.substr(0, with_mc.find('\n'));
  CHECK(count_columns(mc_header) == 28);
  CHECK(mc_header.rfind(header, 0) == 0);  // analytic prefix unchanged
}

TEST_CASE("JSON rendering round-trips numerically") {
  auto config = minimal_config();
  McParams mc;
  mc.trials = 1000;
  mc.seed = 3;
  config.mc = mc;
  const auto row = run_scenario(config);

  const std::string json_text = render({row}, ReportFormat::Json);
  const auto parsed = nlohmann::json::parse(json_text);
  REQUIRE(parsed.is_array());
  REQUIRE(parsed.size() == 1);
  const auto& object = parsed[0];

  CHECK(object.at("a_pix").get<double>() == row.a_pix);
  CHECK(object.at("F_full").get<double>() == row.f_full);
  CHECK(object.at("F_reduced").get<double>() == row.f_reduced);
  CHECK(object.at("n_bar").get<double>() == row.n_bar);
  CHECK(object.at("SNR_fund").get<double>() == row.snr_fund);
  CHECK(object.at("N_osc").get<double>() == row.n_osc);
  CHECK(object.at("regime").get<std::string>() == row.regime);
  CHECK(object.at("fractional_mode").get<bool>() == row.fractional_mode);
  CHECK(object.at("mc_empirical_mean").get<double>() == row.mc->empirical_mean);
  CHECK(object.at("mc_seed").get<std::uint64_t>() == row.mc->seed);
}

TEST_CASE("Markdown rendering emits a pipe table") {
  const auto row = run_scenario(minimal_config());
  const std::string md = render({row}, ReportFormat::Markdown);
  CHECK(md.rfind("| a_pix |", 0) == 0);
  CHECK(md.find("| --- |") != std::string::npos);
  CHECK(std::count(md.begin(), md.end(), '\n') == 3);
}

TEST_CASE("rendering an empty row set is a usage error") {
  CHECK_THROWS_AS(render({}, ReportFormat::Csv), UsageError);
}

TEST_CASE("six-significant-digit formatting is locale-independent") {
  CHECK(format_sig6(0.008332221053365347) == "0.00833222");
  CHECK(format_sig6(2.2698006922186256e-10) == "2.2698e-10");
  CHECK(format_sig6(227.0) == "227");
  CHECK(parse_format("csv") == ReportFormat::Csv);
  CHECK_THROWS_AS(parse_format("yaml"), ValidationError);
}
