#pragma once

#include <optional>
#include <string>

#include "opg/etendue.hpp"
#include "opg/quantities.hpp"
#include "opg/scenario.hpp"
#include "opg/sensor_geometry.hpp"

namespace opg {

/// Which wavelength divides the etendue in the mode count.  The max-rule
/// coherence scale is the physically motivated choice; the raw measurement
/// wavelength reproduces the reference mode-count table.  Both are kept
/// because the closed forms in circulation use either.
enum class CoherencePolicy { MaxRule, RawMeasurementWavelength };

std::string to_string(CoherencePolicy policy);

/// Mode budget of one pixel.  `n_osc` is the geometric mode count
/// F / lambda_used^2, kept as a real number (a value below one means
/// fractional occupancy of a single phase-space cell, not zero modes).
/// `n_modes_eff` stays unset until effective_modes() applies the system
/// factors.
struct ModeBudget {
  double n_osc = 0.0;
  CoherencePolicy coherence_policy = CoherencePolicy::MaxRule;
  Length lambda_used;
  double dnu_tau = 1.0;
  std::optional<double> n_modes_eff;
};

/// Bose-Einstein occupancy n = 1/(exp(x) - 1) with x = hc/(lambda k_B T).
/// `underflow` is set (with n_bar == 0) when x is beyond representable
/// range; that is a valid cold/short-wave limit, not an error.
struct OccupancyResult {
  double n_bar = 0.0;
  double x = 0.0;
  bool underflow = false;
};

/// Shot-noise-limited photon statistics for one pixel.
struct PhotonStatisticsSummary {
  double n_ph = 0.0;
  double sigma_n = 0.0;
  double snr_fund = 0.0;
  bool fractional_mode_flag = false;  ///< geometric mode count below one
  std::vector<std::string> warnings;
};

/// One energy level of the mode oscillator at wavelength lambda_osc.
struct OscillatorLevel {
  int n = 0;
  Length lambda_osc;
  Energy energy;  ///< hbar (2 pi c / lambda)(n + 1/2)
};

OscillatorLevel oscillator_energy(int n, Length lambda_osc);

/// Geometric mode count of a pixel: full etendue / lambda_used^2, with
/// lambda_used selected by the policy (max-rule coherence scale, or the raw
/// measurement wavelength).  n_modes_eff is left unset.
ModeBudget mode_count(const EtendueResult& etendue, Length lambda_meas,
                      const SensorGeometry& geometry, CoherencePolicy policy);

/// Thermal occupancy per mode, evaluated through expm1 for stability at
/// small x.
OccupancyResult bose_einstein_occupancy(Length lambda_meas, Temperature temperature);

/// Applies system efficiency, polarization count and the bandwidth-time
/// product: n_modes_eff = eta_sys * N_pol * n_osc * (dnu tau).
ModeBudget effective_modes(const ModeBudget& budget, const RadiometricScenario& scenario);

/// N_ph = n_modes_eff * n_bar.  Throws UsageError if effective_modes() has
/// not run on the budget.
double photon_number(const ModeBudget& budget, const OccupancyResult& occupancy);

/// Shot-noise amplitude sqrt(N_ph).
double shot_noise_sigma(double n_ph);

/// Compact quantum-limited SNR: sqrt(F/lambda_pix^2 * n_bar).  Assumes the
/// normalized system factors (eta = N_pol = dnu*tau = 1).
PhotonStatisticsSummary snr_compact(const EtendueResult& etendue, Length lambda_pix,
                                    const OccupancyResult& occupancy);

/// Scene-based closed form: (D phi / 2) sqrt(pi n_bar / lambda_pix^2).
/// phi = 0 yields a zero-SNR summary with a degeneracy warning.
PhotonStatisticsSummary snr_scene(Length pupil_diameter, Angle phi_ifov,
                                  Length lambda_pix, const OccupancyResult& occupancy);

/// Sensor-based closed form: (a_pix / (2 f#)) sqrt(pi n_bar / lambda_pix^2).
PhotonStatisticsSummary snr_sensor(Length pixel_pitch, double f_number,
                                   Length lambda_pix, const OccupancyResult& occupancy);

}  // namespace opg
