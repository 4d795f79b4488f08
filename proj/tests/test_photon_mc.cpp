#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <limits>

#include "opg/errors.hpp"
#include "opg/photon_mc.hpp"
#include "opg/rng.hpp"

using namespace opg;

namespace {

// Per-trial cumulants of the aggregate count over n_modes modes; the inputs
// are the per-mode cumulants, which simply add for independent modes.
struct Cumulants {
  double k1, k2, k3, k4;
};

Cumulants thermal_cumulants(int modes, double n_bar) {
  const double m = modes;
  const double g = n_bar * (1.0 + n_bar);
  return {m * n_bar, m * g, m * g * (1.0 + 2.0 * n_bar),
          m * g * (1.0 + 6.0 * n_bar + 6.0 * n_bar * n_bar)};
}

// Delta-method standard error of the empirical Fano factor s^2/m.
double fano_standard_error(const Cumulants& k, double trials) {
  const double fano = k.k2 / k.k1;
  const double var = fano * fano *
                     ((k.k4 + 2.0 * k.k2 * k.k2) / (k.k2 * k.k2 * trials) +
                      k.k2 / (k.k1 * k.k1 * trials) -
                      2.0 * k.k3 / (k.k1 * k.k2 * trials));
  return std::sqrt(var);
}

SamplingSpec make_spec(ModeDistribution distribution, int modes,
                       std::int64_t trials, std::uint64_t seed) {
  SamplingSpec spec;
  spec.distribution = distribution;
  spec.n_modes = modes;
  spec.trials = trials;
  spec.seed = seed;
  return spec;
}

}  // namespace

TEST_CASE("Fock draws are the constant occupation") {
  Xoshiro256pp rng(123);
  for (int i = 0; i < 100; ++i) {
    CHECK(sample_mode_occupation(ModeDistribution::fock(3), rng) == 3);
  }
}

TEST_CASE("thermal vacuum never emits") {
  Xoshiro256pp rng(123);
  for (int i = 0; i < 100; ++i) {
    CHECK(sample_mode_occupation(ModeDistribution::thermal(0.0), rng) == 0);
  }
}

TEST_CASE("thermal draws follow the geometric law") {
  constexpr int kDraws = 1'000'000;
  constexpr double kNbar = 1.0;
  Xoshiro256pp rng(20240813);

  std::array<std::int64_t, 6> histogram{};
  for (int i = 0; i < kDraws; ++i) {
    const auto n = sample_mode_occupation(ModeDistribution::thermal(kNbar), rng);
    if (n < histogram.size()) ++histogram[n];
  }

  // P(n) = n_bar^n / (1+n_bar)^(n+1); at n_bar = 1 that is 2^-(n+1).
  for (std::size_t n = 0; n < histogram.size(); ++n) {
    const double p = std::pow(kNbar, double(n)) / std::pow(1.0 + kNbar, double(n) + 1.0);
    const double se = std::sqrt(p * (1.0 - p) / kDraws);
    const double observed = double(histogram[n]) / kDraws;
    CHECK(std::abs(observed - p) < 4.0 * se);
  }
  // The spec example: P(0) = 1/2 within 3 standard errors.
  const double p0 = double(histogram[0]) / kDraws;
  CHECK(std::abs(p0 - 0.5) < 3.0 * std::sqrt(0.25 / kDraws));
}

TEST_CASE("thermal moments match the multimode Bose-Einstein theory") {
  constexpr std::int64_t kTrials = 100'000;
  int case_index = 0;
  for (const double n_bar : {0.01, 0.1, 1.0}) {
    for (const int modes : {1, 3, 10}) {
      const auto spec = make_spec(ModeDistribution::thermal(n_bar), modes, kTrials,
                                  1000 + case_index++);
      const auto summary = simulate_pixel(spec);
      const auto k = thermal_cumulants(modes, n_bar);

      CHECK(summary.theory_mean == doctest::Approx(k.k1).epsilon(1e-12));
      CHECK(summary.theory_variance == doctest::Approx(k.k2).epsilon(1e-12));
      CHECK(std::abs(summary.empirical_mean - k.k1) <
            4.0 * std::sqrt(k.k2 / kTrials));
      const double var_se = std::sqrt((k.k4 + 2.0 * k.k2 * k.k2) / kTrials);
      CHECK(std::abs(summary.empirical_variance - k.k2) < 5.0 * var_se);
    }
  }
}

TEST_CASE("thermal Fano factor converges to 1 + n_bar") {
  constexpr std::int64_t kTrials = 100'000;
  for (const double n_bar : {0.01, 0.1, 1.0}) {
    const auto spec = make_spec(ModeDistribution::thermal(n_bar), 3, kTrials,
                                77 + static_cast<std::uint64_t>(1000 * n_bar));
    const auto summary = simulate_pixel(spec);
    const double fano = summary.empirical_variance / summary.empirical_mean;
    const double se = fano_standard_error(thermal_cumulants(3, n_bar), kTrials);
    CHECK(std::abs(fano - (1.0 + n_bar)) < 4.0 * se);
    CHECK(std::abs(shot_limit_gap(summary) - n_bar) < 4.0 * se);
  }
}

TEST_CASE("coherent statistics recover the shot-noise SNR sqrt(N)") {
  constexpr std::int64_t kTrials = 100'000;
  const auto spec = make_spec(ModeDistribution::coherent(100.0), 1, kTrials, 4242);
  const auto summary = simulate_pixel(spec);

  CHECK(summary.theory_mean == 100.0);
  CHECK(summary.theory_variance == 100.0);
  // Delta-method 3 SE bound for the SNR of Poisson(100) over 1e5 trials.
  CHECK(std::abs(summary.empirical_snr - 10.0) < 0.0672);
  // Fano gap: SE(s^2/m) = sqrt(2/T) for Poisson counts.
  CHECK(std::abs(shot_limit_gap(summary)) < 4.0 * std::sqrt(2.0 / kTrials));
}

TEST_CASE("large-mean Poisson sampling stays unbiased") {
  constexpr std::int64_t kTrials = 20'000;
  const auto spec = make_spec(ModeDistribution::coherent(1000.0), 1, kTrials, 99);
  const auto summary = simulate_pixel(spec);
  CHECK(std::abs(summary.empirical_mean - 1000.0) <
        4.0 * std::sqrt(1000.0 / kTrials));
  CHECK(std::abs(shot_limit_gap(summary)) < 4.0 * std::sqrt(2.0 / kTrials));
}

TEST_CASE("Fock pixels are exactly noiseless") {
  const auto spec = make_spec(ModeDistribution::fock(2), 3, 1000, 5);
  const auto summary = simulate_pixel(spec);
  CHECK(summary.empirical_mean == 6.0);
  CHECK(summary.empirical_variance == 0.0);
  CHECK(summary.empirical_snr == std::numeric_limits<double>::infinity());
  CHECK(summary.theory_variance == 0.0);
  CHECK(shot_limit_gap(summary) == -1.0);
}

TEST_CASE("shot-noise model is accurate at LWIR occupancies") {
  // n_bar = 0.01: the SNR/sqrt(mean) ratio must sit within 1% of unity.
  constexpr std::int64_t kTrials = 1'000'000;
  const auto spec = make_spec(ModeDistribution::thermal(0.01), 3, kTrials, 31415);
  const auto summary = simulate_pixel(spec);
  const double ratio = summary.empirical_snr / std::sqrt(summary.empirical_mean);
  CHECK(ratio > 0.99);
  CHECK(ratio < 1.01);
}

TEST_CASE("identical specs give bit-identical summaries") {
  const auto spec = make_spec(ModeDistribution::thermal(0.5), 4, 50'000, 2024);
  const auto a = simulate_pixel(spec);
  const auto b = simulate_pixel(spec);
  CHECK(a.empirical_mean == b.empirical_mean);
  CHECK(a.empirical_variance == b.empirical_variance);
  CHECK(a.empirical_snr == b.empirical_snr);
  CHECK(a.standard_error_mean == b.standard_error_mean);

  auto other = spec;
  other.seed = 2025;
  CHECK(simulate_pixel(other).empirical_mean != a.empirical_mean);
}

TEST_CASE("results do not depend on the worker count") {
  const auto spec = make_spec(ModeDistribution::thermal(0.3), 5, 40'000, 777);
  const auto serial = simulate_pixel(spec, 1);
  for (const int workers : {2, 3, 4, 7}) {
    const auto parallel = simulate_pixel(spec, workers);
    CHECK(parallel.empirical_mean == serial.empirical_mean);
    CHECK(parallel.empirical_variance == serial.empirical_variance);
    CHECK(parallel.empirical_snr == serial.empirical_snr);
  }
}

TEST_CASE("summary invariants and error paths") {
  const auto spec = make_spec(ModeDistribution::coherent(5.0), 2, 10'000, 11);
  const auto summary = simulate_pixel(spec);
  CHECK(summary.empirical_snr ==
        doctest::Approx(summary.empirical_mean / std::sqrt(summary.empirical_variance))
            .epsilon(1e-15));
  CHECK(summary.standard_error_mean ==
        doctest::Approx(std::sqrt(summary.empirical_variance / 10'000.0)).epsilon(1e-15));

  const auto empty = simulate_pixel(make_spec(ModeDistribution::thermal(0.0), 1, 100, 1));
  CHECK(empty.empirical_mean == 0.0);
  CHECK(empty.empirical_snr == 0.0);
  CHECK_THROWS_AS(shot_limit_gap(empty), UsageError);

  CHECK_THROWS_AS(simulate_pixel(make_spec(ModeDistribution::thermal(1.0), 0, 100, 1)),
                  ValidationError);
  CHECK_THROWS_AS(simulate_pixel(make_spec(ModeDistribution::thermal(1.0), 1, 0, 1)),
                  ValidationError);
  CHECK_THROWS_AS(ModeDistribution::thermal(-1.0), ValidationError);
  CHECK_THROWS_AS(ModeDistribution::coherent(-2.0), ValidationError);
}

TEST_CASE("counts beyond the accumulator range saturate loudly") {
  const auto spec = make_spec(ModeDistribution::fock(std::uint64_t{1} << 33), 1, 2, 1);
  CHECK_THROWS_AS(simulate_pixel(spec), SaturationError);
}
