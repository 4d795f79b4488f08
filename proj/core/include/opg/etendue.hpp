#pragma once

#include <optional>
#include <string>
#include <vector>

#include "opg/quantities.hpp"

namespace opg {

/// Which value the producing formula computed natively: the reduced factor
/// (scene/sensor closed forms) or the genuine full etendue (paraxial
/// product, quadrature).
enum class Convention { ReducedTilde, FullPi };

enum class EtendueSource { ClosedFormScene, ClosedFormSensor, Paraxial, Quadrature };

std::string to_string(Convention convention);
std::string to_string(EtendueSource source);

/// Pixel-level optogeometric factor in both conventions.  `full` is always
/// pi times `reduced`; downstream consumers (mode count, flux, SNR) take
/// `full`, which is the value that reproduces the worked LWIR numbers.
struct EtendueResult {
  Etendue reduced;            ///< closed-form tilde value [m^2 sr]
  Etendue full;               ///< pi * reduced, the genuine etendue [m^2 sr]
  Convention convention;
  EtendueSource source;
  std::optional<double> rel_error_estimate;  ///< quadrature only
  std::vector<std::string> warnings;         ///< paraxial-validity notes
};

/// Scene-based closed form: reduced = D^2 phi^2 / 4.
/// Warns (does not fail) when phi exceeds 0.1 rad.
EtendueResult reduced_scene_factor(Length pupil_diameter, Angle phi_ifov);

/// Sensor-based closed form: reduced = (a_pix / f#)^2 / 4.
/// Warns when the acceptance-cone half-angle atan(1/(2 f#)) exceeds 0.1 rad.
EtendueResult reduced_sensor_factor(Length pixel_pitch, double f_number);

/// The pi relation between the two conventions.
Etendue full_etendue(Etendue reduced);

/// Paraxial product form: full = projected footprint area x pixel solid
/// angle.  The product is a genuine etendue; no pi rescaling is applied.
EtendueResult paraxial_etendue(Area projected_footprint_area,
                               SolidAngle pixel_solid_angle);

/// Radiant flux incident on one pixel: Phi = L * F (full convention).
Power pixel_flux(Radiance radiance, const EtendueResult& etendue);

/// Exact on-axis projected solid angle of a disc: pi sin^2(atan(r/R)).
/// Analytic oracle used to cross-check the quadrature path.
SolidAngle projected_solid_angle_of_disc(Length disc_radius, Length distance);

}  // namespace opg
