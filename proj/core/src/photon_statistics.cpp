#include "opg/photon_statistics.hpp"

#include <cmath>
#include <numbers>

#include "opg/coherence.hpp"
#include "opg/constants.hpp"
#include "opg/errors.hpp"

namespace opg {

std::string to_string(CoherencePolicy policy) {
  return policy == CoherencePolicy::MaxRule ? "max-rule" : "raw-lambda";
}

OscillatorLevel oscillator_energy(int n, Length lambda_osc) {
  if (n < 0) {
    throw ValidationError("n", "quantum number must be non-negative");
  }
  if (!(lambda_osc.value() > 0.0)) {
    throw ValidationError("lambda_osc", "wavelength must be positive");
  }
  const double omega = 2.0 * std::numbers::pi * kSI.c / lambda_osc.value();
  return OscillatorLevel{n, lambda_osc, joules(kSI.hbar * omega * (n + 0.5))};
}

ModeBudget mode_count(const EtendueResult& etendue, Length lambda_meas,
                      const SensorGeometry& geometry, CoherencePolicy policy) {
  if (etendue.full.value() < 0.0) {
    throw ValidationError("etendue", "etendue must be non-negative");
  }
  Length lambda_used = lambda_meas;
  if (policy == CoherencePolicy::MaxRule) {
    lambda_used = effective_coherence_scale(lambda_meas, geometry).lambda_pix;
  } else if (!(lambda_meas.value() > 0.0)) {
    throw ValidationError("lambda_meas", "wavelength must be positive");
  }
  ModeBudget budget;
  budget.n_osc = etendue.full.value() / (lambda_used.value() * lambda_used.value());
  budget.coherence_policy = policy;
  budget.lambda_used = lambda_used;
  return budget;
}

OccupancyResult bose_einstein_occupancy(Length lambda_meas, Temperature temperature) {
  if (!(lambda_meas.value() > 0.0)) {
    throw ValidationError("lambda_meas", "wavelength must be positive");
  }
  if (!(temperature.value() > 0.0)) {
    throw ValidationError("temperature", "temperature must be positive");
  }
  OccupancyResult result;
  result.x = kPlanckTimesC / (lambda_meas.value() * kSI.k_B * temperature.value());
  result.n_bar = 1.0 / std::expm1(result.x);
  if (result.n_bar == 0.0) {
    result.underflow = true;  // exp(x) overflowed; occupancy below denormal range
  }
  return result;
}

ModeBudget effective_modes(const ModeBudget& budget, const RadiometricScenario& scenario) {
  ModeBudget updated = budget;
  updated.dnu_tau = scenario.dnu_tau();
  updated.n_modes_eff =
      scenario.eta_sys() * scenario.n_pol() * budget.n_osc * updated.dnu_tau;
  return updated;
}

double photon_number(const ModeBudget& budget, const OccupancyResult& occupancy) {
  if (!budget.n_modes_eff.has_value()) {
    throw UsageError("photon_number requires a budget with n_modes_eff populated "
                     "(run effective_modes first)");
  }
  return *budget.n_modes_eff * occupancy.n_bar;
}

double shot_noise_sigma(double n_ph) {
  if (n_ph < 0.0) {
    throw ValidationError("n_ph", "photon number must be non-negative");
  }
  return std::sqrt(n_ph);
}

PhotonStatisticsSummary snr_compact(const EtendueResult& etendue, Length lambda_pix,
                                    const OccupancyResult& occupancy) {
  if (!(lambda_pix.value() > 0.0)) {
    throw ValidationError("lambda_pix", "coherence scale must be positive");
  }
  if (etendue.full.value() < 0.0) {
    throw ValidationError("etendue", "etendue must be non-negative");
  }
  const double n_osc =
      etendue.full.value() / (lambda_pix.value() * lambda_pix.value());
  PhotonStatisticsSummary summary;
  summary.n_ph = n_osc * occupancy.n_bar;
  summary.sigma_n = std::sqrt(summary.n_ph);
  summary.snr_fund = summary.sigma_n;
  summary.fractional_mode_flag = n_osc < 1.0;
  return summary;
}

PhotonStatisticsSummary snr_scene(Length pupil_diameter, Angle phi_ifov,
                                  Length lambda_pix, const OccupancyResult& occupancy) {
  if (!(pupil_diameter.value() > 0.0)) {
    throw ValidationError("pupil_diameter", "pupil diameter must be positive");
  }
  if (phi_ifov.value() < 0.0) {
    throw ValidationError("phi_ifov", "iFOV must be non-negative");
  }
  if (!(lambda_pix.value() > 0.0)) {
    throw ValidationError("lambda_pix", "coherence scale must be positive");
  }
  const double d = pupil_diameter.value();
  const double phi = phi_ifov.value();
  const double lam = lambda_pix.value();

  PhotonStatisticsSummary summary;
  summary.snr_fund =
      0.5 * d * phi * std::sqrt(std::numbers::pi * occupancy.n_bar / (lam * lam));
  summary.sigma_n = summary.snr_fund;
  summary.n_ph = summary.snr_fund * summary.snr_fund;
  summary.fractional_mode_flag =
      std::numbers::pi * d * d * phi * phi / 4.0 / (lam * lam) < 1.0;
  if (phi == 0.0) {
    summary.warnings.push_back("phi_ifov is zero; degenerate geometry, SNR is zero");
  }
  return summary;
}

PhotonStatisticsSummary snr_sensor(Length pixel_pitch, double f_number,
                                   Length lambda_pix, const OccupancyResult& occupancy) {
  if (!(pixel_pitch.value() > 0.0)) {
    throw ValidationError("a_pix", "pixel pitch must be positive");
  }
  if (!(f_number > 0.0)) {
    throw ValidationError("f_number", "f-number must be positive");
  }
  if (!(lambda_pix.value() > 0.0)) {
    throw ValidationError("lambda_pix", "coherence scale must be positive");
  }
  const double a = pixel_pitch.value();
  const double lam = lambda_pix.value();

  PhotonStatisticsSummary summary;
  summary.snr_fund = a / (2.0 * f_number) *
                     std::sqrt(std::numbers::pi * occupancy.n_bar / (lam * lam));
  summary.sigma_n = summary.snr_fund;
  summary.n_ph = summary.snr_fund * summary.snr_fund;
  const double ratio = a / f_number;
  summary.fractional_mode_flag =
      std::numbers::pi * ratio * ratio / 4.0 / (lam * lam) < 1.0;
  return summary;
}

}  // namespace opg
