#include "opg/photon_mc.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <exception>
#include <limits>
#include <thread>
#include <vector>

#include "opg/errors.hpp"

namespace opg {

namespace {

// Largest per-trial count whose square still fits in the accumulator.
constexpr std::uint64_t kMaxTrialCount = std::numeric_limits<std::uint32_t>::max();

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  const std::uint64_t sum = a + b;
  if (sum < a) {
    throw SaturationError("photon count accumulator overflow");
  }
  return sum;
}

// Single-mode Bose-Einstein counts follow the geometric law
// P(n) = n_bar^n / (1 + n_bar)^(n+1); inverse-CDF on one uniform draw.
std::uint64_t sample_thermal(double n_bar, Xoshiro256pp& rng) {
  if (n_bar <= 0.0) return 0;
  const double log_q = std::log(n_bar) - std::log1p(n_bar);
  const double u = rng.next_double();
  return static_cast<std::uint64_t>(std::floor(std::log1p(-u) / log_q));
}

// Exact Poisson counts: exponential inter-arrivals for small means,
// Hormann's PTRS transformed rejection for large ones.
std::uint64_t sample_poisson_small(double mean, Xoshiro256pp& rng) {
  double sum = 0.0;
  std::uint64_t n = 0;
  while (true) {
    sum += -std::log1p(-rng.next_double());
    if (sum > mean) return n;
    ++n;
  }
}

std::uint64_t sample_poisson_ptrs(double mean, Xoshiro256pp& rng) {
  const double slam = std::sqrt(mean);
  const double loglam = std::log(mean);
  const double b = 0.931 + 2.53 * slam;
  const double a = -0.059 + 0.02483 * b;
  const double invalpha = 1.1239 + 1.1328 / (b - 3.4);
  const double vr = 0.9277 - 3.6224 / (b - 2.0);
  while (true) {
    const double u = rng.next_double() - 0.5;
    double v = rng.next_double();
    const double us = 0.5 - std::abs(u);
    const double k = std::floor((2.0 * a / us + b) * u + mean + 0.43);
    if (us >= 0.07 && v <= vr) {
      return static_cast<std::uint64_t>(k);
    }
    if (k < 0.0 || (us < 0.013 && v > us)) {
      continue;
    }
    if (std::log(v) + std::log(invalpha) - std::log(a / (us * us) + b) <=
        k * loglam - mean - std::lgamma(k + 1.0)) {
      return static_cast<std::uint64_t>(k);
    }
  }
}

std::uint64_t sample_poisson(double mean, Xoshiro256pp& rng) {
  if (mean <= 0.0) return 0;
  return mean < 30.0 ? sample_poisson_small(mean, rng)
                     : sample_poisson_ptrs(mean, rng);
}

struct Accumulator {
  std::uint64_t count_sum = 0;
  std::uint64_t square_sum = 0;

  void add_trial(std::uint64_t count) {
    if (count > kMaxTrialCount) {
      throw SaturationError("per-trial photon count exceeds accumulator range");
    }
    count_sum = checked_add(count_sum, count);
    square_sum = checked_add(square_sum, count * count);
  }

  void merge(const Accumulator& other) {
    count_sum = checked_add(count_sum, other.count_sum);
    square_sum = checked_add(square_sum, other.square_sum);
  }
};

Accumulator run_trials(const SamplingSpec& spec, std::int64_t first,
                       std::int64_t last) {
  Accumulator acc;
  for (std::int64_t t = first; t < last; ++t) {
    // One stream per trial: the partition into workers cannot matter.
    Xoshiro256pp rng(spec.seed, static_cast<std::uint64_t>(t));
    std::uint64_t count = 0;
    for (int m = 0; m < spec.n_modes; ++m) {
      count = checked_add(count, sample_mode_occupation(spec.distribution, rng));
    }
    acc.add_trial(count);
  }
  return acc;
}

}  // namespace

ModeDistribution ModeDistribution::thermal(double n_bar) {
  if (n_bar < 0.0) {
    throw ValidationError("n_bar", "mean occupancy must be non-negative");
  }
  return ModeDistribution{Kind::Thermal, n_bar, 0};
}

ModeDistribution ModeDistribution::coherent(double mean) {
  if (mean < 0.0) {
    throw ValidationError("mean", "mean must be non-negative");
  }
  return ModeDistribution{Kind::Coherent, mean, 0};
}

ModeDistribution ModeDistribution::fock(std::uint64_t n) {
  return ModeDistribution{Kind::Fock, static_cast<double>(n), n};
}

std::string to_string(ModeDistribution::Kind kind) {
  switch (kind) {
    case ModeDistribution::Kind::Thermal:
      return "thermal";
    case ModeDistribution::Kind::Coherent:
      return "coherent";
    case ModeDistribution::Kind::Fock:
      return "fock";
  }
  return "unknown";
}

std::uint64_t sample_mode_occupation(const ModeDistribution& distribution,
                                     Xoshiro256pp& rng) {
  switch (distribution.kind) {
    case ModeDistribution::Kind::Thermal:
      return sample_thermal(distribution.mean_occupancy, rng);
    case ModeDistribution::Kind::Coherent:
      return sample_poisson(distribution.mean_occupancy, rng);
    case ModeDistribution::Kind::Fock:
      return distribution.fock_n;
  }
  return 0;
}

TrialSummary simulate_pixel(const SamplingSpec& spec, int n_workers) {
  if (spec.n_modes < 1) {
    throw ValidationError("n_modes", "mode count must be at least 1");
  }
  if (spec.trials < 1) {
    throw ValidationError("trials", "trial count must be at least 1");
  }
  if (spec.distribution.mean_occupancy < 0.0) {
    throw ValidationError("distribution", "mean parameter must be non-negative");
  }

  const int workers = static_cast<int>(
      std::clamp<std::int64_t>(n_workers, 1, spec.trials));
  std::vector<Accumulator> parts(workers);
  std::vector<std::exception_ptr> failures(workers);
  if (workers == 1) {
    parts[0] = run_trials(spec, 0, spec.trials);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::int64_t chunk = (spec.trials + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          const std::int64_t first = w * chunk;
          const std::int64_t last = std::min<std::int64_t>(first + chunk, spec.trials);
          parts[w] = run_trials(spec, first, last);
        } catch (...) {
          failures[w] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (const auto& failure : failures) {
      if (failure) std::rethrow_exception(failure);
    }
  }

  Accumulator total;
  for (const auto& part : parts) total.merge(part);

  const double trials = static_cast<double>(spec.trials);
  TrialSummary summary;
  summary.empirical_mean = static_cast<double>(total.count_sum) / trials;
  if (spec.trials > 1) {
    // Unbiased sample variance from the exact integer sums.
    const unsigned __int128 n = static_cast<unsigned __int128>(spec.trials);
    const unsigned __int128 s1 = total.count_sum;
    const unsigned __int128 s2 = total.square_sum;
    const unsigned __int128 numerator = n * s2 - s1 * s1;
    summary.empirical_variance =
        static_cast<double>(numerator) / (trials * (trials - 1.0));
  }
  if (summary.empirical_variance > 0.0) {
    summary.empirical_snr =
        summary.empirical_mean / std::sqrt(summary.empirical_variance);
  } else if (summary.empirical_mean > 0.0) {
    summary.empirical_snr = std::numeric_limits<double>::infinity();
  }
  summary.standard_error_mean = std::sqrt(summary.empirical_variance / trials);

  const double modes = static_cast<double>(spec.n_modes);
  const double p = spec.distribution.mean_occupancy;
  switch (spec.distribution.kind) {
    case ModeDistribution::Kind::Thermal:
      summary.theory_mean = modes * p;
      summary.theory_variance = modes * p * (1.0 + p);
      break;
    case ModeDistribution::Kind::Coherent:
      summary.theory_mean = modes * p;
      summary.theory_variance = modes * p;
      break;
    case ModeDistribution::Kind::Fock:
      summary.theory_mean = modes * static_cast<double>(spec.distribution.fock_n);
      summary.theory_variance = 0.0;
      break;
  }
  return summary;
}

double shot_limit_gap(const TrialSummary& summary) {
  if (summary.empirical_mean == 0.0) {
    throw UsageError("shot-limit gap is undefined for a zero empirical mean");
  }
  return summary.empirical_variance / summary.empirical_mean - 1.0;
}

}  // namespace opg
