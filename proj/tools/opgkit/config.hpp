#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "opg/photon_statistics.hpp"
#include "opg/quadrature.hpp"
#include "opg/scenario.hpp"
#include "opg/sensor_geometry.hpp"

namespace opg::cli {

/// Raw (SI-unit) sensor fields as read from the config file.
struct SensorParams {
  double a_pix = 0.0;
  double f_number = 0.0;
  std::optional<double> focal_length;
  std::optional<double> pupil_diameter;
  std::optional<double> ifov;

  SensorGeometry build() const;
};

struct ScenarioParams {
  double lambda_meas = 0.0;
  double temperature = 0.0;
  double bandwidth = 1.0;
  double integration_time = 1.0;
  double eta_sys = 1.0;
  int n_pol = 1;
  std::optional<double> radiance;

  RadiometricScenario build() const;
};

enum class EtendueSourceKind { SensorForm, SceneForm, Paraxial, Quadrature };

struct SceneFormParams {
  double pupil_diameter = 0.0;
  double ifov = 0.0;
};

struct ParaxialParams {
  double projected_area = 0.0;
  double solid_angle = 0.0;
};

struct QuadratureParams {
  std::string patch_shape = "rectangle";
  double patch_width = 0.0;
  double patch_height = 0.0;
  double patch_radius = 0.0;
  double distance = 0.0;
  double tilt = 0.0;
  double pupil_diameter = 0.0;
  double offset_x = 0.0;
  double offset_y = 0.0;
  std::string rule = "gauss-legendre";
  int order = 8;
  int n_area = 32;
  int n_angle = 32;
  double target_rel_tol = 1e-6;
  int max_refinements = 4;

  FootprintPatch patch() const;
  PupilDisc pupil() const;
  QuadratureSpec spec() const;
};

struct McParams {
  std::string distribution = "thermal";
  std::optional<double> n_bar;  ///< thermal override; default is the computed occupancy
  std::optional<double> mean;   ///< coherent
  std::optional<std::uint64_t> fock_n;
  std::optional<int> n_modes;   ///< default: round(N_osc), at least 1
  std::int64_t trials = 0;
  std::uint64_t seed = 1;
  int workers = 1;
};

struct SweepParams {
  std::string variable;
  double start = 0.0;
  double stop = 0.0;
  int count = 0;
  bool log_scale = false;
};

struct ScenarioConfig {
  SensorParams sensor;
  ScenarioParams scenario;
  EtendueSourceKind etendue_source = EtendueSourceKind::SensorForm;
  SceneFormParams scene_form;
  ParaxialParams paraxial;
  QuadratureParams quadrature;
  CoherencePolicy policy = CoherencePolicy::MaxRule;
  std::optional<McParams> mc;
  std::optional<SweepParams> sweep;
};

/// Parses and fully validates the INI-style config text (see the schema in
/// the README).  All values are base SI units; no unit suffixes.  Errors are
/// ValidationError with the dotted key path and, where it exists, the line
/// number.
ScenarioConfig parse_config(std::string_view text);

/// The sweepable scalar fields, as dotted key paths.
bool is_sweepable_variable(std::string_view name);

/// Returns a copy of `config` with the sweep variable set to `value`.
ScenarioConfig apply_sweep_value(const ScenarioConfig& config,
                                 std::string_view variable, double value);

}  // namespace opg::cli
