#include "opg/sensor_geometry.hpp"

#include <cmath>

#include "opg/errors.hpp"

namespace opg {

namespace {

// Relative consistency tolerances for the redundant fields.
constexpr double kFNumberRelTol = 1e-9;
constexpr double kIfovRelTol = 1e-6;

}  // namespace

SensorGeometry::SensorGeometry(Length pixel_pitch, double f_number,
                               std::optional<Length> focal_length,
                               std::optional<Length> pupil_diameter,
                               std::optional<Angle> ifov)
    : pixel_pitch_(pixel_pitch),
      f_number_(f_number),
      focal_length_(focal_length),
      pupil_diameter_(pupil_diameter),
      ifov_(ifov) {
  if (!(pixel_pitch_.value() > 0.0)) {
    throw ValidationError("a_pix", "pixel pitch must be positive");
  }
  if (!(f_number_ > 0.0)) {
    throw ValidationError("f_number", "f-number must be positive");
  }
  if (focal_length_ && !(focal_length_->value() > 0.0)) {
    throw ValidationError("focal_length", "focal length must be positive");
  }
  if (pupil_diameter_ && !(pupil_diameter_->value() > 0.0)) {
    throw ValidationError("pupil_diameter", "pupil diameter must be positive");
  }
  if (ifov_ && !(ifov_->value() > 0.0)) {
    throw ValidationError("ifov", "iFOV must be positive");
  }
  if (focal_length_ && pupil_diameter_) {
    const double implied = *focal_length_ / *pupil_diameter_;
    if (std::abs(implied - f_number_) > kFNumberRelTol * f_number_) {
      throw ValidationError(
          "f_number", "inconsistent with focal_length / pupil_diameter");
    }
  }
  if (ifov_ && focal_length_) {
    const double implied = pixel_pitch_ / *focal_length_;
    if (std::abs(implied - ifov_->value()) > kIfovRelTol * ifov_->value()) {
      throw ValidationError("ifov", "inconsistent with a_pix / focal_length");
    }
  }
}

}  // namespace opg
