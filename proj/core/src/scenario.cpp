#include "opg/scenario.hpp"

#include "opg/errors.hpp"

namespace opg {

RadiometricScenario::RadiometricScenario(Length lambda_meas, Temperature temperature,
                                         Frequency bandwidth, Duration integration_time,
                                         double eta_sys, int n_pol,
                                         std::optional<Radiance> radiance)
    : lambda_meas_(lambda_meas),
      temperature_(temperature),
      bandwidth_(bandwidth),
      integration_time_(integration_time),
      eta_sys_(eta_sys),
      n_pol_(n_pol),
      radiance_(radiance) {
  if (!(lambda_meas_.value() > 0.0)) {
    throw ValidationError("lambda_meas", "wavelength must be positive");
  }
  if (!(temperature_.value() > 0.0)) {
    throw ValidationError("temperature", "temperature must be positive");
  }
  if (bandwidth_.value() < 0.0) {
    throw ValidationError("bandwidth", "bandwidth must be non-negative");
  }
  if (integration_time_.value() < 0.0) {
    throw ValidationError("integration_time", "integration time must be non-negative");
  }
  if (!(eta_sys_ >= 0.0 && eta_sys_ <= 1.0)) {
    throw ValidationError("eta_sys", "system efficiency must lie in [0, 1]");
  }
  if (n_pol_ != 1 && n_pol_ != 2) {
    throw ValidationError("n_pol", "polarization count must be 1 or 2");
  }
  if (radiance_ && radiance_->value() < 0.0) {
    throw ValidationError("radiance", "radiance must be non-negative");
  }
}

}  // namespace opg
