#pragma once

#include <optional>

#include "opg/quantities.hpp"

namespace opg {

/// Everything the photon-statistics chain needs besides the geometry:
/// measurement wavelength, source temperature, bandwidth, integration time,
/// system efficiency, polarization count, and (optionally) scene radiance.
///
/// Bandwidth and integration time only ever enter the chain through their
/// product; both default to one so the normalized compact form falls out
/// unchanged when they are left unset.
class RadiometricScenario {
 public:
  RadiometricScenario(Length lambda_meas, Temperature temperature,
                      Frequency bandwidth = hertz(1.0),
                      Duration integration_time = seconds(1.0),
                      double eta_sys = 1.0, int n_pol = 1,
                      std::optional<Radiance> radiance = std::nullopt);

  Length lambda_meas() const { return lambda_meas_; }
  Temperature temperature() const { return temperature_; }
  Frequency bandwidth() const { return bandwidth_; }
  Duration integration_time() const { return integration_time_; }
  double eta_sys() const { return eta_sys_; }
  int n_pol() const { return n_pol_; }
  const std::optional<Radiance>& radiance() const { return radiance_; }

  /// The dimensionless bandwidth-time product.
  double dnu_tau() const { return bandwidth_.value() * integration_time_.value(); }

 private:
  Length lambda_meas_;
  Temperature temperature_;
  Frequency bandwidth_;
  Duration integration_time_;
  double eta_sys_;
  int n_pol_;
  std::optional<Radiance> radiance_;
};

}  // namespace opg
