#pragma once

#include <cstdint>
#include <string>

#include "opg/rng.hpp"

namespace opg {

/// Per-mode photon-count law.
///
///   Thermal(n_bar)  — single-mode Bose-Einstein count distribution, the
///                     geometric law P(n) = n_bar^n / (1 + n_bar)^(n+1)
///   Coherent(mean)  — Poisson(mean)
///   Fock(n)         — the constant n, zero variance
struct ModeDistribution {
  enum class Kind { Thermal, Coherent, Fock };

  static ModeDistribution thermal(double n_bar);
  static ModeDistribution coherent(double mean);
  static ModeDistribution fock(std::uint64_t n);

  Kind kind = Kind::Thermal;
  double mean_occupancy = 0.0;  ///< n_bar (thermal) or Poisson mean (coherent)
  std::uint64_t fock_n = 0;
};

std::string to_string(ModeDistribution::Kind kind);

/// A Monte Carlo run: `trials` snapshots of a pixel coupled to `n_modes`
/// independent modes, all drawing from the same per-mode law.
struct SamplingSpec {
  ModeDistribution distribution;
  int n_modes = 1;
  std::int64_t trials = 1;
  std::uint64_t seed = 1;
};

/// Empirical and theoretical moments of the per-trial photon count.
/// empirical_snr is mean/sqrt(variance) (infinite for a noiseless source
/// with positive mean, zero for an empty one).
struct TrialSummary {
  double empirical_mean = 0.0;
  double empirical_variance = 0.0;
  double empirical_snr = 0.0;
  double theory_mean = 0.0;
  double theory_variance = 0.0;
  double standard_error_mean = 0.0;
};

/// Draws one photon count from the per-mode law.  Thermal counts come from
/// inverse-CDF on a single uniform; coherent counts from an exact Poisson
/// sampler.
std::uint64_t sample_mode_occupation(const ModeDistribution& distribution,
                                     Xoshiro256pp& rng);

/// Runs the full Monte Carlo experiment.  Each trial uses its own RNG
/// stream derived from (seed, trial index) and the accumulators are exact
/// integers, so the summary is bit-identical for any worker count.
TrialSummary simulate_pixel(const SamplingSpec& spec, int n_workers = 1);

/// Fano-factor excess: empirical_variance / empirical_mean - 1.  Zero for
/// exact shot-noise statistics; converges to n_bar for thermal light and to
/// -1 for Fock states.  Throws UsageError when the empirical mean is zero.
double shot_limit_gap(const TrialSummary& summary);

}  // namespace opg
