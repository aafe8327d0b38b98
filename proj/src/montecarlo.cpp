#include "ivest/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <string>
#include <thread>

#include "ivest/bayes.hpp"
#include "ivest/errors.hpp"
#include "ivest/oracle.hpp"

namespace ivest::montecarlo {

ExperimentReport ExperimentReport::from_counts(std::uint64_t n_trials, std::uint64_t n_success,
                                               std::optional<double> analytic) {
  if (n_trials == 0 || n_success > n_trials) {
    throw InvalidArgument("report needs n_trials >= 1 and n_success <= n_trials");
  }
  ExperimentReport r;
  r.n_trials = n_trials;
  r.n_success = n_success;
  r.rate = static_cast<double>(n_success) / static_cast<double>(n_trials);
  r.std_err = std::sqrt(r.rate * (1.0 - r.rate) / static_cast<double>(n_trials));
  r.analytic = analytic;
  return r;
}

namespace {

struct Counts {
  std::uint64_t trials = 0;
  std::uint64_t success = 0;
};

void check_trials(std::uint64_t n) {
  if (n == 0) throw InvalidArgument("experiment needs at least one trial");
}

void check_positive(Measurand a0) {
  if (!(a0.value > 0.0 && std::isfinite(a0.value))) {
    throw InvalidArgument("measurand must be finite and positive, got " + std::to_string(a0.value));
  }
}

void check_options(const RunOptions& opts) {
  if (opts.chunk_size == 0) throw InvalidArgument("chunk size must be positive");
  if (opts.resample_cap == 0) throw InvalidArgument("resampling cap must be positive");
}

// Runs fn(chunk_index, stream, count) for every chunk on up to opts.workers
// threads. Results land in chunk order; the first failing chunk's exception
// is rethrown.
template <class Result, class Fn>
std::vector<Result> for_each_chunk(std::uint64_t n, const RandomStream& rng, const RunOptions& opts, Fn fn) {
  check_options(opts);
  const std::uint64_t chunks = (n + opts.chunk_size - 1) / opts.chunk_size;
  std::vector<Result> results(chunks);
  std::vector<std::exception_ptr> errors(chunks);
  std::atomic<std::uint64_t> next{0};

  auto worker = [&] {
    for (std::uint64_t k = next.fetch_add(1); k < chunks; k = next.fetch_add(1)) {
      const std::uint64_t begin = k * opts.chunk_size;
      const std::uint64_t count = std::min(opts.chunk_size, n - begin);
      try {
        RandomStream stream = rng.substream(k);
        results[k] = fn(stream, count);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };

  const auto threads = static_cast<std::uint64_t>(std::max(1u, opts.workers));
  if (threads <= 1 || chunks <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    const auto spawn = std::min(threads, chunks);
    pool.reserve(spawn);
    for (std::uint64_t i = 0; i < spawn; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

template <class Fn>
Counts count_chunks(std::uint64_t n, const RandomStream& rng, const RunOptions& opts, Fn fn) {
  Counts total;
  for (const Counts& c : for_each_chunk<Counts>(n, rng, opts, fn)) {
    total.trials += c.trials;
    total.success += c.success;
  }
  return total;
}

// Shift sampler: a_i = a_seed + x0 - x_i, x_i ~ N(a_seed, u^2), redrawn until
// a_i >= 0.
double draw_shifted(double x0, Measurand a_seed, RandomStream& stream, const RunOptions& opts) {
  for (std::uint64_t attempt = 0; attempt < opts.resample_cap; ++attempt) {
    const double a = a_seed.value + x0 - opts.model.draw(a_seed, stream);
    if (a >= 0.0) return a;
  }
  throw ResamplingCapExceeded("shift sampler exceeded " + std::to_string(opts.resample_cap) +
                              " draws for one trial");
}

ExperimentReport shift_sampler_experiment(double x0, const Interval& iv, Measurand a_seed, std::uint64_t n,
                                          const RandomStream& rng, const RunOptions& opts,
                                          std::optional<double> analytic) {
  check_trials(n);
  if (!std::isfinite(x0) || !std::isfinite(a_seed.value)) {
    throw InvalidArgument("measured value and seed measurand must be finite");
  }
  const Counts c = count_chunks(n, rng, opts, [&](RandomStream& stream, std::uint64_t count) {
    Counts local{count, 0};
    for (std::uint64_t i = 0; i < count; ++i) {
      if (iv.contains(draw_shifted(x0, a_seed, stream, opts))) ++local.success;
    }
    return local;
  });
  return ExperimentReport::from_counts(c.trials, c.success, analytic);
}

}  // namespace

ExperimentReport run_fixed_measurand(Measurand a0, const QuantileConstraint& c, const BoundaryPolicy& policy,
                                     std::uint64_t n, const RandomStream& rng, const RunOptions& opts) {
  check_positive(a0);
  check_trials(n);
  validate(policy);
  const Counts counts = count_chunks(n, rng, opts, [&](RandomStream& stream, std::uint64_t count) {
    Counts local{count, 0};
    for (std::uint64_t i = 0; i < count; ++i) {
      const double x = opts.model.draw(a0, stream);
      if (confidence_interval(x, c, policy, opts.model).contains(a0.value)) ++local.success;
    }
    return local;
  });
  const double analytic = oracle::neyman_success_given_a(a0, c, policy, opts.model).value();
  return ExperimentReport::from_counts(counts.trials, counts.success, analytic);
}

ExperimentReport run_fixed_measurand_rejecting_negative(Measurand a0, const QuantileConstraint& c,
                                                        std::uint64_t n, const RandomStream& rng,
                                                        const RunOptions& opts) {
  check_positive(a0);
  check_trials(n);
  const Counts counts = count_chunks(n, rng, opts, [&](RandomStream& stream, std::uint64_t count) {
    Counts local{count, 0};
    for (std::uint64_t i = 0; i < count; ++i) {
      std::uint64_t attempt = 0;
      for (;;) {
        if (attempt++ == opts.resample_cap) {
          throw ResamplingCapExceeded("negative-interval rejection exceeded " +
                                      std::to_string(opts.resample_cap) + " draws for one trial");
        }
        const Interval iv = confidence_interval(opts.model.draw(a0, stream), c, AllowNegative{}, opts.model);
        if (iv.hi() > 0.0) {
          if (iv.contains(a0.value)) ++local.success;
          break;
        }
      }
    }
    return local;
  });
  const double analytic = oracle::rejection_inflated_confidence(a0, c, {}, opts.model).value();
  return ExperimentReport::from_counts(counts.trials, counts.success, analytic);
}

ExperimentReport run_fixed_result(double x0, const QuantileConstraint& c, Measurand a_seed, std::uint64_t n,
                                  const RandomStream& rng, const RunOptions& opts) {
  const Interval iv = credible_interval(TruncatedGaussianPosterior(x0, opts.model.u()), c);
  return shift_sampler_experiment(x0, iv, a_seed, n, rng, opts, c.coverage());
}

ExperimentReport run_fixed_result_neyman(double x0, const QuantileConstraint& c, const BoundaryPolicy& policy,
                                         Measurand a_seed, std::uint64_t n, const RandomStream& rng,
                                         const RunOptions& opts) {
  const Interval iv = confidence_interval(x0, c, policy, opts.model);
  const double analytic = coverage_probability_given_x0(iv, x0, opts.model).value();
  return shift_sampler_experiment(x0, iv, a_seed, n, rng, opts, analytic);
}

ExperimentReport run_willink(Measurand a0, const QuantileConstraint& c, std::uint64_t n, const RandomStream& rng,
                             const RunOptions& opts) {
  check_positive(a0);
  check_trials(n);
  const Counts counts = count_chunks(n, rng, opts, [&](RandomStream& stream, std::uint64_t count) {
    Counts local{count, 0};
    for (std::uint64_t i = 0; i < count; ++i) {
      const double x = opts.model.draw(a0, stream);
      const Interval iv = credible_interval(TruncatedGaussianPosterior(x, opts.model.u()), c);
      if (iv.contains(a0.value)) ++local.success;
    }
    return local;
  });
  const double analytic = oracle::willink_success_given_a(a0, c, {}, opts.model).value();
  return ExperimentReport::from_counts(counts.trials, counts.success, analytic);
}

std::vector<double> sample_fixed_result(double x0, Measurand a_seed, std::uint64_t n, const RandomStream& rng,
                                        const RunOptions& opts) {
  check_trials(n);
  auto parts = for_each_chunk<std::vector<double>>(n, rng, opts, [&](RandomStream& stream, std::uint64_t count) {
    std::vector<double> local;
    local.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) local.push_back(draw_shifted(x0, a_seed, stream, opts));
    return local;
  });
  std::vector<double> out;
  out.reserve(n);
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

std::vector<JointSample> sample_joint(std::uint64_t n, double a_max, const RandomStream& rng,
                                      const RunOptions& opts) {
  check_trials(n);
  if (!(a_max > 0.0 && std::isfinite(a_max))) throw InvalidArgument("a_max must be finite and positive");
  auto parts =
      for_each_chunk<std::vector<JointSample>>(n, rng, opts, [&](RandomStream& stream, std::uint64_t count) {
        std::vector<JointSample> local;
        local.reserve(count);
        for (std::uint64_t i = 0; i < count; ++i) {
          const double a = a_max * stream.uniform_open();
          local.push_back({a, opts.model.draw(Measurand{a}, stream)});
        }
        return local;
      });
  std::vector<JointSample> out;
  out.reserve(n);
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

}  // namespace ivest::montecarlo
