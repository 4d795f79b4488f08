#include "opg/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "opg/errors.hpp"

namespace opg {

namespace {

// Successive-refinement differences below ~1e3 ulps are roundoff noise, so
// reported error estimates (and requested tolerances) are floored here.
constexpr double kRelErrorFloor = 1e-13;

struct Vec3 {
  double x, y, z;
};

// Neumaier-compensated accumulator; deterministic for a fixed visit order.
struct CompensatedSum {
  double sum = 0.0;
  double correction = 0.0;

  void add(double v) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      correction += (sum - t) + v;
    } else {
      correction += (v - t) + sum;
    }
    sum = t;
  }

  double value() const { return sum + correction; }
};

struct Rule1D {
  std::vector<double> x;
  std::vector<double> w;
};

// Gauss-Legendre nodes/weights on [-1, 1], Newton iteration on P_n.
Rule1D gauss_legendre(int n) {
  Rule1D rule;
  rule.x.resize(n);
  rule.w.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double xi = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = xi;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1.0) * xi * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (xi * p1 - p0) / (xi * xi - 1.0);
      const double step = p1 / dp;
      xi -= step;
      if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(xi))) break;
    }
    rule.x[i] = xi;
    rule.w[i] = 2.0 / ((1.0 - xi * xi) * dp * dp);
    rule.x[n - 1 - i] = -xi;
    rule.w[n - 1 - i] = rule.w[i];
  }
  if (n % 2 == 1) rule.x[n / 2] = 0.0;
  return rule;
}

Rule1D midpoint(int n) {
  Rule1D rule;
  rule.x.resize(n);
  rule.w.resize(n);
  const double h = 2.0 / n;
  for (int i = 0; i < n; ++i) {
    rule.x[i] = -1.0 + (i + 0.5) * h;
    rule.w[i] = h;
  }
  return rule;
}

// Affine map of a [-1, 1] rule onto [a, b].
Rule1D mapped(const Rule1D& base, double a, double b) {
  Rule1D rule = base;
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  for (std::size_t i = 0; i < rule.x.size(); ++i) {
    rule.x[i] = mid + half * rule.x[i];
    rule.w[i] *= half;
  }
  return rule;
}

struct NodeSet {
  std::vector<Vec3> position;
  std::vector<double> weight;  // includes all Jacobians
};

struct PatchFrame {
  Vec3 normal;
  Vec3 e1;  // in-plane axis in the tilt plane
  Vec3 e2;  // in-plane axis along y
};

PatchFrame patch_frame(Angle tilt) {
  const double st = std::sin(tilt.value());
  const double ct = std::cos(tilt.value());
  return PatchFrame{{st, 0.0, ct}, {ct, 0.0, -st}, {0.0, 1.0, 0.0}};
}

Rule1D base_rule(QuadratureSpec::Rule rule, int n) {
  return rule == QuadratureSpec::Rule::GaussLegendreTensor ? gauss_legendre(n)
                                                           : midpoint(n);
}

// `level` doubles the node density per refinement.
NodeSet patch_nodes(const FootprintPatch& patch, const PatchFrame& frame,
                    const QuadratureSpec& spec, int level) {
  NodeSet nodes;
  const bool gl = spec.rule == QuadratureSpec::Rule::GaussLegendreTensor;
  const int n_lin = (gl ? spec.order : spec.n_area) << level;
  const int n_ang = (gl ? spec.order : spec.n_angle) << level;

  if (patch.shape == FootprintPatch::Shape::Rectangle) {
    const Rule1D u_rule =
        mapped(base_rule(spec.rule, n_lin), -0.5 * patch.width.value(),
               0.5 * patch.width.value());
    const Rule1D v_rule =
        mapped(base_rule(spec.rule, n_lin), -0.5 * patch.height.value(),
               0.5 * patch.height.value());
    for (std::size_t i = 0; i < u_rule.x.size(); ++i) {
      for (std::size_t j = 0; j < v_rule.x.size(); ++j) {
        const double u = u_rule.x[i];
        const double v = v_rule.x[j];
        nodes.position.push_back({u * frame.e1.x + v * frame.e2.x,
                                  u * frame.e1.y + v * frame.e2.y,
                                  u * frame.e1.z + v * frame.e2.z});
        nodes.weight.push_back(u_rule.w[i] * v_rule.w[j]);
      }
    }
  } else {
    const Rule1D r_rule =
        mapped(base_rule(spec.rule, n_lin), 0.0, patch.radius.value());
    const Rule1D a_rule =
        mapped(base_rule(spec.rule, n_ang), 0.0, 2.0 * std::numbers::pi);
    for (std::size_t i = 0; i < r_rule.x.size(); ++i) {
      for (std::size_t j = 0; j < a_rule.x.size(); ++j) {
        const double rho = r_rule.x[i];
        const double u = rho * std::cos(a_rule.x[j]);
        const double v = rho * std::sin(a_rule.x[j]);
        nodes.position.push_back({u * frame.e1.x + v * frame.e2.x,
                                  u * frame.e1.y + v * frame.e2.y,
                                  u * frame.e1.z + v * frame.e2.z});
        nodes.weight.push_back(r_rule.w[i] * a_rule.w[j] * rho);
      }
    }
  }
  return nodes;
}

NodeSet pupil_nodes(const PupilDisc& pupil, double distance,
                    const QuadratureSpec& spec, int level) {
  NodeSet nodes;
  const bool gl = spec.rule == QuadratureSpec::Rule::GaussLegendreTensor;
  const int n_rad = (gl ? spec.order : spec.n_area) << level;
  const int n_ang = (gl ? spec.order : spec.n_angle) << level;

  const Rule1D r_rule =
      mapped(base_rule(spec.rule, n_rad), 0.0, 0.5 * pupil.diameter.value());
  const Rule1D a_rule =
      mapped(base_rule(spec.rule, n_ang), 0.0, 2.0 * std::numbers::pi);
  for (std::size_t i = 0; i < r_rule.x.size(); ++i) {
    for (std::size_t j = 0; j < a_rule.x.size(); ++j) {
      const double rho = r_rule.x[i];
      nodes.position.push_back({pupil.offset_x.value() + rho * std::cos(a_rule.x[j]),
                                pupil.offset_y.value() + rho * std::sin(a_rule.x[j]),
                                distance});
      nodes.weight.push_back(r_rule.w[i] * a_rule.w[j] * rho);
    }
  }
  return nodes;
}

struct EvalOutcome {
  double value = 0.0;
  bool clamped = false;
};

// F = sum_r w_r sum_p w_p  (n.d)(d.z)/|d|^4  with d = p - r.  The factor
// (d.z/|d|) dA_p / |d|^2 is the exact solid-angle measure of the pupil
// element; (n.d/|d|) is the single cos(theta) of the defining integral.
EvalOutcome evaluate(const FootprintPatch& patch, const PupilDisc& pupil,
                     const QuadratureSpec& spec, int level) {
  const PatchFrame frame = patch_frame(patch.tilt);
  const NodeSet patch_set = patch_nodes(patch, frame, spec, level);
  const NodeSet pupil_set = pupil_nodes(pupil, patch.distance.value(), spec, level);

  EvalOutcome outcome;
  CompensatedSum outer;
  for (std::size_t i = 0; i < patch_set.position.size(); ++i) {
    const Vec3& r = patch_set.position[i];
    CompensatedSum inner;
    for (std::size_t j = 0; j < pupil_set.position.size(); ++j) {
      const Vec3& p = pupil_set.position[j];
      const double dx = p.x - r.x;
      const double dy = p.y - r.y;
      const double dz = p.z - r.z;
      const double s2 = dx * dx + dy * dy + dz * dz;
      double ndotd = frame.normal.x * dx + frame.normal.y * dy + frame.normal.z * dz;
      if (ndotd < 0.0) {
        ndotd = 0.0;
        outcome.clamped = true;
      }
      inner.add(pupil_set.weight[j] * ndotd * dz / (s2 * s2));
    }
    outer.add(patch_set.weight[i] * inner.value());
  }
  outcome.value = outer.value();
  return outcome;
}

void validate(const FootprintPatch& patch, const PupilDisc& pupil,
              const QuadratureSpec& spec) {
  if (!(patch.distance.value() > 0.0)) {
    throw ValidationError("patch.distance", "distance must be positive");
  }
  if (!(patch.tilt.value() >= 0.0 &&
        patch.tilt.value() < std::numbers::pi / 2.0)) {
    throw ValidationError("patch.tilt", "tilt must lie in [0, pi/2)");
  }
  double extent = 0.0;
  if (patch.shape == FootprintPatch::Shape::Rectangle) {
    if (!(patch.width.value() > 0.0) || !(patch.height.value() > 0.0)) {
      throw ValidationError("patch", "rectangle dimensions must be positive");
    }
    extent = 0.5 * patch.width.value();
  } else {
    if (!(patch.radius.value() > 0.0)) {
      throw ValidationError("patch", "disc radius must be positive");
    }
    extent = patch.radius.value();
  }
  if (!(pupil.diameter.value() > 0.0)) {
    throw ValidationError("pupil.diameter", "pupil diameter must be positive");
  }

  const double st = std::sin(patch.tilt.value());
  const double ct = std::cos(patch.tilt.value());
  // The tilted patch reaches z = extent*sin(tilt); it must stay strictly
  // below the pupil plane.
  if (!(extent * st < patch.distance.value())) {
    throw ValidationError("patch", "tilted patch reaches the pupil plane");
  }
  // Every pupil point must lie strictly above the patch plane n.p > 0.
  const double min_side = st * (pupil.offset_x.value() - 0.5 * pupil.diameter.value()) +
                          ct * patch.distance.value();
  if (!(min_side > 0.0)) {
    throw ValidationError("pupil", "pupil disc intersects the patch plane");
  }

  if (spec.rule == QuadratureSpec::Rule::GaussLegendreTensor && spec.order < 2) {
    throw ValidationError("spec.order", "Gauss-Legendre order must be at least 2");
  }
  if (spec.rule == QuadratureSpec::Rule::MidpointGrid &&
      (spec.n_area < 1 || spec.n_angle < 1)) {
    throw ValidationError("spec", "midpoint grid sizes must be at least 1");
  }
  if (!(spec.target_rel_tol > 0.0)) {
    throw ValidationError("spec.target_rel_tol", "tolerance must be positive");
  }
  if (spec.max_refinements < 1) {
    throw ValidationError("spec.max_refinements", "at least one refinement is required");
  }
}

}  // namespace

FootprintPatch FootprintPatch::rectangle(Length width, Length height,
                                         Length distance, Angle tilt) {
  FootprintPatch patch;
  patch.shape = Shape::Rectangle;
  patch.width = width;
  patch.height = height;
  patch.distance = distance;
  patch.tilt = tilt;
  return patch;
}

FootprintPatch FootprintPatch::disc(Length radius, Length distance, Angle tilt) {
  FootprintPatch patch;
  patch.shape = Shape::Disc;
  patch.radius = radius;
  patch.distance = distance;
  patch.tilt = tilt;
  return patch;
}

EtendueResult quadrature_etendue(const FootprintPatch& patch, const PupilDisc& pupil,
                                 const QuadratureSpec& spec) {
  validate(patch, pupil, spec);

  EvalOutcome prev = evaluate(patch, pupil, spec, 0);
  double best = prev.value;
  double achieved = 1.0;
  bool clamped = prev.clamped;
  for (int k = 1; k <= spec.max_refinements; ++k) {
    const EvalOutcome cur = evaluate(patch, pupil, spec, k);
    clamped = clamped || cur.clamped;
    const double scale = std::max(std::abs(cur.value), 1e-300);
    achieved = std::abs(cur.value - prev.value) / scale;
    best = cur.value;
    if (achieved <= spec.target_rel_tol) {
      EtendueResult result;
      result.reduced = square_meter_steradians(best / std::numbers::pi);
      result.full = square_meter_steradians(best);
      result.convention = Convention::FullPi;
      result.source = EtendueSource::Quadrature;
      // The floor keeps the published estimate honest: differences this
      // small are roundoff, not certified accuracy.
      result.rel_error_estimate = std::max(achieved, kRelErrorFloor);
      if (clamped) {
        result.warnings.push_back(
            "cos(theta) clamped to zero over part of the pupil; the patch "
            "back-faces some acceptance directions");
      }
      return result;
    }
    prev = cur;
  }
  throw ConvergenceError(
      "quadrature did not reach the target tolerance within the refinement budget",
      best, achieved);
}

}  // namespace opg
