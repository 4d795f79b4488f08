#include "config.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <map>
#include <string>

#include "opg/errors.hpp"

namespace opg::cli {

namespace {

std::string at_line(int line) { return " (line " + std::to_string(line) + ")"; }

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

struct Entry {
  std::string value;
  int line = 0;
  bool consumed = false;
};

struct RawConfig {
  std::map<std::string, Entry> entries;
  std::map<std::string, int> sections;  // section name -> first line
};

constexpr std::array kKnownSections = {
    "sensor",          "scenario",          "etendue.sensor", "etendue.scene",
    "etendue.paraxial", "etendue.quadrature", "mc",             "sweep",
};

RawConfig tokenize(std::string_view text) {
  RawConfig raw;
  std::string section;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t newline = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, newline == std::string_view::npos ? text.size() - pos
                                                           : newline - pos);
    ++line_no;

    const std::size_t comment = line.find_first_of("#;");
    if (comment != std::string_view::npos) line = line.substr(0, comment);
    line = trim(line);

    if (!line.empty()) {
      if (line.front() == '[') {
        if (line.back() != ']') {
          throw ValidationError("config", "malformed section header" + at_line(line_no));
        }
        section = std::string(trim(line.substr(1, line.size() - 2)));
        if (section.empty()) {
          throw ValidationError("config", "empty section name" + at_line(line_no));
        }
        if (std::find(kKnownSections.begin(), kKnownSections.end(), section) ==
            kKnownSections.end()) {
          throw ValidationError(section, "unknown section" + at_line(line_no));
        }
        raw.sections.emplace(section, line_no);
      } else {
        const std::size_t eq = line.find('=');
        if (eq == std::string_view::npos) {
          throw ValidationError("config", "expected key = value" + at_line(line_no));
        }
        const std::string key{trim(line.substr(0, eq))};
        const std::string value{trim(line.substr(eq + 1))};
        if (key.empty()) {
          throw ValidationError("config", "empty key" + at_line(line_no));
        }
        const std::string full = section.empty() ? key : section + "." + key;
        if (value.empty()) {
          throw ValidationError(full, "empty value" + at_line(line_no));
        }
        const auto [it, inserted] = raw.entries.emplace(full, Entry{value, line_no});
        if (!inserted) {
          throw ValidationError(
              full, "duplicate key" + at_line(line_no) + "; first seen" +
                        at_line(it->second.line));
        }
      }
    }

    if (newline == std::string_view::npos) break;
    pos = newline + 1;
  }
  return raw;
}

class Reader {
 public:
  explicit Reader(RawConfig& raw) : raw_(raw) {}

  bool has_section(const std::string& name) const {
    return raw_.sections.count(name) != 0;
  }
  int section_line(const std::string& name) const {
    return raw_.sections.at(name);
  }

  std::optional<std::string> string(const std::string& key) {
    Entry* entry = find(key);
    if (!entry) return std::nullopt;
    return entry->value;
  }

  std::optional<double> number(const std::string& key) {
    Entry* entry = find(key);
    if (!entry) return std::nullopt;
    double value = 0.0;
    parse_into(key, *entry, value);
    return value;
  }

  double require_number(const std::string& key) {
    auto value = number(key);
    if (!value) throw ValidationError(key, "missing required key");
    return *value;
  }

  template <class Int>
  std::optional<Int> integer(const std::string& key) {
    Entry* entry = find(key);
    if (!entry) return std::nullopt;
    Int value = 0;
    parse_into(key, *entry, value);
    return value;
  }

  int line_of(const std::string& key) const {
    const auto it = raw_.entries.find(key);
    return it == raw_.entries.end() ? 0 : it->second.line;
  }

  // Any key nobody consumed is unknown.
  void finish() const {
    for (const auto& [key, entry] : raw_.entries) {
      if (!entry.consumed) {
        throw ValidationError(key, "unknown key" + at_line(entry.line));
      }
    }
  }

 private:
  Entry* find(const std::string& key) {
    const auto it = raw_.entries.find(key);
    if (it == raw_.entries.end()) return nullptr;
    it->second.consumed = true;
    return &it->second;
  }

  template <class Number>
  static void parse_into(const std::string& key, const Entry& entry, Number& value) {
    const char* first = entry.value.data();
    const char* last = first + entry.value.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last) {
      throw ValidationError(key, "not a valid number: '" + entry.value + "'" +
                                     at_line(entry.line));
    }
  }

  RawConfig& raw_;
};

void check(bool ok, const std::string& key, const std::string& message, int line) {
  if (!ok) throw ValidationError(key, message + at_line(line));
}

template <class Build>
auto rewrapped(const std::string& prefix, Build&& build) {
  try {
    return build();
  } catch (const ValidationError& error) {
    throw ValidationError(prefix + error.field(), error.message());
  }
}

}  // namespace

SensorGeometry SensorParams::build() const {
  return rewrapped("sensor.", [&] {
    std::optional<Length> f, d;
    std::optional<Angle> phi;
    if (focal_length) f = meters(*focal_length);
    if (pupil_diameter) d = meters(*pupil_diameter);
    if (ifov) phi = radians(*ifov);
    return SensorGeometry(meters(a_pix), f_number, f, d, phi);
  });
}

RadiometricScenario ScenarioParams::build() const {
  return rewrapped("scenario.", [&] {
    std::optional<Radiance> l;
    if (radiance) l = watts_per_square_meter_steradian(*radiance);
    return RadiometricScenario(meters(lambda_meas), kelvin(temperature),
                               hertz(bandwidth), seconds(integration_time), eta_sys,
                               n_pol, l);
  });
}

FootprintPatch QuadratureParams::patch() const {
  if (patch_shape == "disc") {
    return FootprintPatch::disc(meters(patch_radius), meters(distance), radians(tilt));
  }
  return FootprintPatch::rectangle(meters(patch_width), meters(patch_height),
                                   meters(distance), radians(tilt));
}

PupilDisc QuadratureParams::pupil() const {
  return PupilDisc{meters(pupil_diameter), meters(offset_x), meters(offset_y)};
}

QuadratureSpec QuadratureParams::spec() const {
  QuadratureSpec spec;
  spec.rule = rule == "midpoint" ? QuadratureSpec::Rule::MidpointGrid
                                 : QuadratureSpec::Rule::GaussLegendreTensor;
  spec.order = order;
  spec.n_area = n_area;
  spec.n_angle = n_angle;
  spec.target_rel_tol = target_rel_tol;
  spec.max_refinements = max_refinements;
  return spec;
}

bool is_sweepable_variable(std::string_view name) {
  constexpr std::array kSweepable = {
      "sensor.a_pix",          "sensor.f_number",    "scenario.lambda_meas",
      "scenario.temperature",  "scenario.bandwidth", "scenario.integration_time",
      "scenario.eta_sys",
  };
  return std::find(kSweepable.begin(), kSweepable.end(), name) != kSweepable.end();
}

ScenarioConfig apply_sweep_value(const ScenarioConfig& config,
                                 std::string_view variable, double value) {
  ScenarioConfig applied = config;
  if (variable == "sensor.a_pix") {
    applied.sensor.a_pix = value;
  } else if (variable == "sensor.f_number") {
    applied.sensor.f_number = value;
  } else if (variable == "scenario.lambda_meas") {
    applied.scenario.lambda_meas = value;
  } else if (variable == "scenario.temperature") {
    applied.scenario.temperature = value;
  } else if (variable == "scenario.bandwidth") {
    applied.scenario.bandwidth = value;
  } else if (variable == "scenario.integration_time") {
    applied.scenario.integration_time = value;
  } else if (variable == "scenario.eta_sys") {
    applied.scenario.eta_sys = value;
  } else {
    throw ValidationError("sweep.variable",
                          "unrecognized sweep variable '" + std::string(variable) + "'");
  }
  return applied;
}

ScenarioConfig parse_config(std::string_view text) {
  RawConfig raw = tokenize(text);
  Reader reader(raw);
  ScenarioConfig config;

  if (const auto policy = reader.string("policy")) {
    if (*policy == "max-rule") {
      config.policy = CoherencePolicy::MaxRule;
    } else if (*policy == "raw-lambda") {
      config.policy = CoherencePolicy::RawMeasurementWavelength;
    } else {
      throw ValidationError("policy", "expected 'max-rule' or 'raw-lambda'" +
                                          at_line(reader.line_of("policy")));
    }
  }

  // [sensor]
  config.sensor.a_pix = reader.require_number("sensor.a_pix");
  check(config.sensor.a_pix > 0.0, "sensor.a_pix", "must be positive",
        reader.line_of("sensor.a_pix"));
  config.sensor.f_number = reader.require_number("sensor.f_number");
  check(config.sensor.f_number > 0.0, "sensor.f_number", "must be positive",
        reader.line_of("sensor.f_number"));
  config.sensor.focal_length = reader.number("sensor.focal_length");
  config.sensor.pupil_diameter = reader.number("sensor.pupil_diameter");
  config.sensor.ifov = reader.number("sensor.ifov");

  // [scenario]
  config.scenario.lambda_meas = reader.require_number("scenario.lambda_meas");
  check(config.scenario.lambda_meas > 0.0, "scenario.lambda_meas", "must be positive",
        reader.line_of("scenario.lambda_meas"));
  config.scenario.temperature = reader.require_number("scenario.temperature");
  check(config.scenario.temperature > 0.0, "scenario.temperature", "must be positive",
        reader.line_of("scenario.temperature"));
  if (const auto v = reader.number("scenario.bandwidth")) {
    check(*v >= 0.0, "scenario.bandwidth", "must be non-negative",
          reader.line_of("scenario.bandwidth"));
    config.scenario.bandwidth = *v;
  }
  if (const auto v = reader.number("scenario.integration_time")) {
    check(*v >= 0.0, "scenario.integration_time", "must be non-negative",
          reader.line_of("scenario.integration_time"));
    config.scenario.integration_time = *v;
  }
  if (const auto v = reader.number("scenario.eta_sys")) {
    check(*v >= 0.0 && *v <= 1.0, "scenario.eta_sys", "must lie in [0, 1]",
          reader.line_of("scenario.eta_sys"));
    config.scenario.eta_sys = *v;
  }
  if (const auto v = reader.integer<int>("scenario.n_pol")) {
    check(*v == 1 || *v == 2, "scenario.n_pol", "must be 1 or 2",
          reader.line_of("scenario.n_pol"));
    config.scenario.n_pol = *v;
  }
  if (const auto v = reader.number("scenario.radiance")) {
    check(*v >= 0.0, "scenario.radiance", "must be non-negative",
          reader.line_of("scenario.radiance"));
    config.scenario.radiance = *v;
  }

  // Exactly one etendue block selects the source; none defaults to the
  // sensor-based closed form.
  {
    std::vector<std::string> present;
    for (const auto name : {"etendue.sensor", "etendue.scene", "etendue.paraxial",
                            "etendue.quadrature"}) {
      if (reader.has_section(name)) present.emplace_back(name);
    }
    if (present.size() > 1) {
      std::string blocks = present[0];
      for (std::size_t i = 1; i < present.size(); ++i) blocks += ", " + present[i];
      throw ValidationError("etendue", "conflicting source blocks: " + blocks);
    }
    if (present.empty() || present[0] == "etendue.sensor") {
      config.etendue_source = EtendueSourceKind::SensorForm;
    } else if (present[0] == "etendue.scene") {
      config.etendue_source = EtendueSourceKind::SceneForm;
      config.scene_form.pupil_diameter =
          reader.require_number("etendue.scene.pupil_diameter");
      check(config.scene_form.pupil_diameter > 0.0, "etendue.scene.pupil_diameter",
            "must be positive", reader.line_of("etendue.scene.pupil_diameter"));
      config.scene_form.ifov = reader.require_number("etendue.scene.ifov");
      check(config.scene_form.ifov > 0.0, "etendue.scene.ifov", "must be positive",
            reader.line_of("etendue.scene.ifov"));
    } else if (present[0] == "etendue.paraxial") {
      config.etendue_source = EtendueSourceKind::Paraxial;
      config.paraxial.projected_area =
          reader.require_number("etendue.paraxial.projected_area");
      check(config.paraxial.projected_area > 0.0, "etendue.paraxial.projected_area",
            "must be positive", reader.line_of("etendue.paraxial.projected_area"));
      config.paraxial.solid_angle =
          reader.require_number("etendue.paraxial.solid_angle");
      check(config.paraxial.solid_angle > 0.0, "etendue.paraxial.solid_angle",
            "must be positive", reader.line_of("etendue.paraxial.solid_angle"));
    } else {
      config.etendue_source = EtendueSourceKind::Quadrature;
      auto& q = config.quadrature;
      const std::string p = "etendue.quadrature.";
      if (const auto shape = reader.string(p + "patch_shape")) {
        check(*shape == "rectangle" || *shape == "disc", p + "patch_shape",
              "expected 'rectangle' or 'disc'", reader.line_of(p + "patch_shape"));
        q.patch_shape = *shape;
      }
      if (q.patch_shape == "rectangle") {
        q.patch_width = reader.require_number(p + "patch_width");
        q.patch_height = reader.require_number(p + "patch_height");
        check(q.patch_width > 0.0, p + "patch_width", "must be positive",
              reader.line_of(p + "patch_width"));
        check(q.patch_height > 0.0, p + "patch_height", "must be positive",
              reader.line_of(p + "patch_height"));
      } else {
        q.patch_radius = reader.require_number(p + "patch_radius");
        check(q.patch_radius > 0.0, p + "patch_radius", "must be positive",
              reader.line_of(p + "patch_radius"));
      }
      q.distance = reader.require_number(p + "distance");
      check(q.distance > 0.0, p + "distance", "must be positive",
            reader.line_of(p + "distance"));
      if (const auto v = reader.number(p + "tilt")) {
        check(*v >= 0.0 && *v < 1.5707963267948966, p + "tilt",
              "must lie in [0, pi/2)", reader.line_of(p + "tilt"));
        q.tilt = *v;
      }
      q.pupil_diameter = reader.require_number(p + "pupil_diameter");
      check(q.pupil_diameter > 0.0, p + "pupil_diameter", "must be positive",
            reader.line_of(p + "pupil_diameter"));
      if (const auto v = reader.number(p + "offset_x")) q.offset_x = *v;
      if (const auto v = reader.number(p + "offset_y")) q.offset_y = *v;
      if (const auto rule = reader.string(p + "rule")) {
        check(*rule == "gauss-legendre" || *rule == "midpoint", p + "rule",
              "expected 'gauss-legendre' or 'midpoint'", reader.line_of(p + "rule"));
        q.rule = *rule;
      }
      if (const auto v = reader.integer<int>(p + "order")) {
        check(*v >= 2, p + "order", "must be at least 2", reader.line_of(p + "order"));
        q.order = *v;
      }
      if (const auto v = reader.integer<int>(p + "n_area")) {
        check(*v >= 1, p + "n_area", "must be at least 1", reader.line_of(p + "n_area"));
        q.n_area = *v;
      }
      if (const auto v = reader.integer<int>(p + "n_angle")) {
        check(*v >= 1, p + "n_angle", "must be at least 1",
              reader.line_of(p + "n_angle"));
        q.n_angle = *v;
      }
      if (const auto v = reader.number(p + "target_rel_tol")) {
        check(*v > 0.0, p + "target_rel_tol", "must be positive",
              reader.line_of(p + "target_rel_tol"));
        q.target_rel_tol = *v;
      }
      if (const auto v = reader.integer<int>(p + "max_refinements")) {
        check(*v >= 1, p + "max_refinements", "must be at least 1",
              reader.line_of(p + "max_refinements"));
        q.max_refinements = *v;
      }
    }
  }

  // [mc]
  if (reader.has_section("mc")) {
    McParams mc;
    if (const auto d = reader.string("mc.distribution")) {
      check(*d == "thermal" || *d == "coherent" || *d == "fock", "mc.distribution",
            "expected 'thermal', 'coherent' or 'fock'",
            reader.line_of("mc.distribution"));
      mc.distribution = *d;
    }
    mc.n_bar = reader.number("mc.n_bar");
    mc.mean = reader.number("mc.mean");
    mc.fock_n = reader.integer<std::uint64_t>("mc.n");
    if (mc.distribution == "thermal") {
      check(!mc.mean && !mc.fock_n, "mc.distribution",
            "'mean'/'n' are only valid for coherent/fock sources",
            reader.section_line("mc"));
      if (mc.n_bar) {
        check(*mc.n_bar >= 0.0, "mc.n_bar", "must be non-negative",
              reader.line_of("mc.n_bar"));
      }
    } else if (mc.distribution == "coherent") {
      check(!mc.n_bar && !mc.fock_n, "mc.distribution",
            "'n_bar'/'n' are only valid for thermal/fock sources",
            reader.section_line("mc"));
      if (!mc.mean) throw ValidationError("mc.mean", "missing required key");
      check(*mc.mean >= 0.0, "mc.mean", "must be non-negative",
            reader.line_of("mc.mean"));
    } else {
      check(!mc.n_bar && !mc.mean, "mc.distribution",
            "'n_bar'/'mean' are only valid for thermal/coherent sources",
            reader.section_line("mc"));
      if (!mc.fock_n) throw ValidationError("mc.n", "missing required key");
    }
    if (const auto v = reader.integer<int>("mc.n_modes")) {
      check(*v >= 1, "mc.n_modes", "must be at least 1", reader.line_of("mc.n_modes"));
      mc.n_modes = *v;
    }
    const auto trials = reader.integer<std::int64_t>("mc.trials");
    if (!trials) throw ValidationError("mc.trials", "missing required key");
    check(*trials >= 1, "mc.trials", "must be at least 1", reader.line_of("mc.trials"));
    mc.trials = *trials;
    if (const auto v = reader.integer<std::uint64_t>("mc.seed")) mc.seed = *v;
    if (const auto v = reader.integer<int>("mc.workers")) {
      check(*v >= 1, "mc.workers", "must be at least 1", reader.line_of("mc.workers"));
      mc.workers = *v;
    }
    config.mc = mc;
  }

  // [sweep]
  if (reader.has_section("sweep")) {
    SweepParams sweep;
    const auto variable = reader.string("sweep.variable");
    if (!variable) throw ValidationError("sweep.variable", "missing required key");
    if (!is_sweepable_variable(*variable)) {
      throw ValidationError("sweep.variable",
                            "unrecognized sweep variable '" + *variable + "'" +
                                at_line(reader.line_of("sweep.variable")));
    }
    sweep.variable = *variable;
    sweep.start = reader.require_number("sweep.start");
    sweep.stop = reader.require_number("sweep.stop");
    const auto count = reader.integer<int>("sweep.count");
    if (!count) throw ValidationError("sweep.count", "missing required key");
    check(*count >= 1, "sweep.count", "must be at least 1", reader.line_of("sweep.count"));
    sweep.count = *count;
    if (const auto scale = reader.string("sweep.scale")) {
      check(*scale == "linear" || *scale == "log", "sweep.scale",
            "expected 'linear' or 'log'", reader.line_of("sweep.scale"));
      sweep.log_scale = *scale == "log";
    }
    if (sweep.log_scale) {
      check(sweep.start > 0.0 && sweep.stop > 0.0, "sweep.scale",
            "log spacing requires positive endpoints", reader.line_of("sweep.scale"));
    }
    config.sweep = sweep;
  }

  reader.finish();

  // Full cross-field validation through the domain constructors.
  config.sensor.build();
  config.scenario.build();
  return config;
}

}  // namespace opg::cli
