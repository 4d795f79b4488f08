#include "opg/etendue.hpp"

#include <cmath>
#include <numbers>

#include "opg/errors.hpp"

namespace opg {

namespace {

// Half-angle beyond which the closed forms leave their paraxial comfort
// zone.  Produces a warning on the result, never an error.
constexpr double kParaxialHalfAngleLimit = 0.1;

EtendueResult from_reduced(double reduced, EtendueSource source) {
  EtendueResult result;
  result.reduced = square_meter_steradians(reduced);
  result.full = square_meter_steradians(std::numbers::pi * reduced);
  result.convention = Convention::ReducedTilde;
  result.source = source;
  return result;
}

EtendueResult from_full(double full, EtendueSource source) {
  EtendueResult result;
  result.reduced = square_meter_steradians(full / std::numbers::pi);
  result.full = square_meter_steradians(full);
  result.convention = Convention::FullPi;
  result.source = source;
  return result;
}

}  // namespace

std::string to_string(Convention convention) {
  return convention == Convention::ReducedTilde ? "reduced-tilde" : "full-pi";
}

std::string to_string(EtendueSource source) {
  switch (source) {
    case EtendueSource::ClosedFormScene:
      return "scene";
    case EtendueSource::ClosedFormSensor:
      return "sensor";
    case EtendueSource::Paraxial:
      return "paraxial";
    case EtendueSource::Quadrature:
      return "quadrature";
  }
  return "unknown";
}

EtendueResult reduced_scene_factor(Length pupil_diameter, Angle phi_ifov) {
  if (!(pupil_diameter.value() > 0.0)) {
    throw ValidationError("pupil_diameter", "pupil diameter must be positive");
  }
  if (!(phi_ifov.value() > 0.0)) {
    throw ValidationError("phi_ifov", "iFOV must be positive");
  }
  const double d = pupil_diameter.value();
  const double phi = phi_ifov.value();
  EtendueResult result = from_reduced(d * d * phi * phi / 4.0,
                                      EtendueSource::ClosedFormScene);
  if (phi > kParaxialHalfAngleLimit) {
    result.warnings.push_back(
        "phi_ifov exceeds 0.1 rad; the closed form assumes paraxial geometry");
  }
  return result;
}

EtendueResult reduced_sensor_factor(Length pixel_pitch, double f_number) {
  if (!(pixel_pitch.value() > 0.0)) {
    throw ValidationError("a_pix", "pixel pitch must be positive");
  }
  if (!(f_number > 0.0)) {
    throw ValidationError("f_number", "f-number must be positive");
  }
  const double ratio = pixel_pitch.value() / f_number;
  EtendueResult result =
      from_reduced(ratio * ratio / 4.0, EtendueSource::ClosedFormSensor);
  if (std::atan(0.5 / f_number) > kParaxialHalfAngleLimit) {
    result.warnings.push_back(
        "acceptance-cone half-angle atan(1/(2 f#)) exceeds 0.1 rad; the "
        "closed form assumes paraxial geometry");
  }
  return result;
}

Etendue full_etendue(Etendue reduced) {
  if (reduced.value() < 0.0) {
    throw ValidationError("reduced", "reduced etendue must be non-negative");
  }
  return std::numbers::pi * reduced;
}

EtendueResult paraxial_etendue(Area projected_footprint_area,
                               SolidAngle pixel_solid_angle) {
  if (!(projected_footprint_area.value() > 0.0)) {
    throw ValidationError("projected_footprint_area", "area must be positive");
  }
  if (!(pixel_solid_angle.value() > 0.0)) {
    throw ValidationError("pixel_solid_angle", "solid angle must be positive");
  }
  EtendueResult result =
      from_full(projected_footprint_area.value() * pixel_solid_angle.value(),
                EtendueSource::Paraxial);
  // Omega_proj = pi sin^2(u) inverts to the implied cone half-angle.
  const double sin2 = pixel_solid_angle.value() / std::numbers::pi;
  if (sin2 < 1.0 &&
      std::asin(std::sqrt(sin2)) > kParaxialHalfAngleLimit) {
    result.warnings.push_back(
        "pixel solid angle implies a half-angle above 0.1 rad; the paraxial "
        "product form degrades at wide cones");
  }
  return result;
}

Power pixel_flux(Radiance radiance, const EtendueResult& etendue) {
  if (radiance.value() < 0.0) {
    throw ValidationError("radiance", "radiance must be non-negative");
  }
  return radiance * etendue.full;
}

SolidAngle projected_solid_angle_of_disc(Length disc_radius, Length distance) {
  if (!(disc_radius.value() > 0.0)) {
    throw ValidationError("disc_radius", "disc radius must be positive");
  }
  if (!(distance.value() > 0.0)) {
    throw ValidationError("distance", "distance must be positive");
  }
  // pi sin^2(atan(r/R)) == pi r^2/(r^2 + R^2), evaluated in the stable form.
  const double r = disc_radius.value();
  const double d = distance.value();
  return steradians(std::numbers::pi * r * r / (r * r + d * d));
}

}  // namespace opg
