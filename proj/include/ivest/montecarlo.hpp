#pragma once

// Seeded Monte Carlo success-rate experiments.
//
// Every experiment splits its n trials into fixed-size chunks. Chunk k draws
// from rng.substream(k) and the per-chunk counts are summed in chunk order,
// so a report depends only on (seed, stream id, chunk size, inputs) and never
// on the number of worker threads.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "ivest/interval.hpp"
#include "ivest/model.hpp"
#include "ivest/neyman.hpp"
#include "ivest/random.hpp"

namespace ivest::montecarlo {

struct ExperimentReport {
  std::uint64_t n_trials = 0;
  std::uint64_t n_success = 0;
  double rate = 0.0;
  double std_err = 0.0;  // binomial, normal approximation
  std::optional<double> analytic;

  static ExperimentReport from_counts(std::uint64_t n_trials, std::uint64_t n_success,
                                      std::optional<double> analytic = std::nullopt);

  friend bool operator==(const ExperimentReport&, const ExperimentReport&) = default;
};

struct RunOptions {
  MeasurementModel model{};
  unsigned workers = 1;
  std::uint64_t chunk_size = 1u << 16;
  std::uint64_t resample_cap = 1'000'000;  // redraws allowed per trial
};

/// Fixed measurand, fresh confidence interval per datum x_i ~ N(a0, u^2).
/// Requires a0 > 0 and n >= 1.
ExperimentReport run_fixed_measurand(Measurand a0, const QuantileConstraint& c, const BoundaryPolicy& policy,
                                     std::uint64_t n, const RandomStream& rng, const RunOptions& opts = {});

/// As run_fixed_measurand with AllowNegative, except that data giving a fully
/// negative interval are redrawn until hi > 0. Throws ResamplingCapExceeded
/// if a trial needs more than opts.resample_cap draws.
ExperimentReport run_fixed_measurand_rejecting_negative(Measurand a0, const QuantileConstraint& c,
                                                        std::uint64_t n, const RandomStream& rng,
                                                        const RunOptions& opts = {});

/// One credible interval from x0, tested against measurands sampled by the
/// shift construction a_i = a_seed + x0 - x_i with x_i ~ N(a_seed, u^2);
/// negative a_i are redrawn.
ExperimentReport run_fixed_result(double x0, const QuantileConstraint& c, Measurand a_seed, std::uint64_t n,
                                  const RandomStream& rng, const RunOptions& opts = {});

/// The shift sampler of run_fixed_result tested against the single Neyman
/// interval built from x0.
ExperimentReport run_fixed_result_neyman(double x0, const QuantileConstraint& c, const BoundaryPolicy& policy,
                                         Measurand a_seed, std::uint64_t n, const RandomStream& rng,
                                         const RunOptions& opts = {});

/// Fixed measurand, fresh credible interval per datum. Requires a0 > 0.
ExperimentReport run_willink(Measurand a0, const QuantileConstraint& c, std::uint64_t n, const RandomStream& rng,
                             const RunOptions& opts = {});

/// The accepted measurand values of the shift sampler, in chunk order. They
/// are distributed as the truncated-Gaussian posterior for x0.
std::vector<double> sample_fixed_result(double x0, Measurand a_seed, std::uint64_t n, const RandomStream& rng,
                                        const RunOptions& opts = {});

struct JointSample {
  double a;
  double x;
};

/// a_i uniform on [0, a_max], x_i ~ N(a_i, u^2). Requires a_max > 0.
std::vector<JointSample> sample_joint(std::uint64_t n, double a_max, const RandomStream& rng,
                                      const RunOptions& opts = {});

}  // namespace ivest::montecarlo
