#pragma once

#include <optional>

#include "opg/quantities.hpp"

namespace opg {

/// Sensor-side description of the optical train.  Pixel pitch and f-number
/// are required; focal length, pupil diameter and iFOV are optional
/// redundant fields that real camera datasheets list anyway.  Redundant
/// fields are validated against f# = f/D and iFOV = a_pix/f instead of being
/// recomputed silently, so a contradictory config is rejected rather than
/// reinterpreted.
///
/// Immutable value object; safe to share between threads.
class SensorGeometry {
 public:
  SensorGeometry(Length pixel_pitch, double f_number,
                 std::optional<Length> focal_length = std::nullopt,
                 std::optional<Length> pupil_diameter = std::nullopt,
                 std::optional<Angle> ifov = std::nullopt);

  Length pixel_pitch() const { return pixel_pitch_; }
  double f_number() const { return f_number_; }
  const std::optional<Length>& focal_length() const { return focal_length_; }
  const std::optional<Length>& pupil_diameter() const { return pupil_diameter_; }
  const std::optional<Angle>& ifov() const { return ifov_; }

 private:
  Length pixel_pitch_;
  double f_number_;
  std::optional<Length> focal_length_;
  std::optional<Length> pupil_diameter_;
  std::optional<Angle> ifov_;
};

}  // namespace opg
