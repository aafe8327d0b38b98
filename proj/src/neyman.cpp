#include "ivest/neyman.hpp"

#include <algorithm>
#include <cmath>
#include <type_traits>
#include <string>

#include "ivest/bayes.hpp"
#include "ivest/errors.hpp"
#include "ivest/numeric.hpp"

namespace ivest {

void validate(const BoundaryPolicy& policy) {
  if (const auto* ff = std::get_if<FlipFlop>(&policy)) {
    if (!std::isfinite(ff->threshold)) {
      throw InvalidArgument("flip-flop threshold must be finite");
    }
    if (!(ff->upper_tail > 0.0 && ff->upper_tail < 1.0)) {
      throw InvalidProbability("flip-flop upper tail " + std::to_string(ff->upper_tail) +
                               " outside (0, 1)");
    }
  }
}

Interval belt_bounds(Measurand a, const QuantileConstraint& c, const MeasurementModel& model) {
  return {a.value + model.u() * c.z_lo(), a.value + model.u() * c.z_hi()};
}

namespace {

Interval raw_interval(double x0, const QuantileConstraint& c, const MeasurementModel& model) {
  return {x0 - model.u() * c.z_hi(), x0 - model.u() * c.z_lo()};
}

// Solves F_x(x0 | a) = target for a, using whichever tail of the target is
// smaller for the residual.
double solve_measurand(double x0, const Probability& target, const MeasurementModel& model) {
  const bool use_upper = target.value() > 0.5;
  auto residual = [&](double a) {
    const Probability f = model.sampling_cdf(x0, Measurand{a});
    // Both branches increase with a.
    return use_upper ? f.complement() - target.complement() : target.value() - f.value();
  };
  numeric::BisectionOptions opts;
  opts.residual_tol = 1e-12;
  return numeric::bisect(residual, x0 - model.u(), x0 + model.u(), opts);
}

}  // namespace

Interval confidence_interval(double x0, const QuantileConstraint& c, const BoundaryPolicy& policy,
                             const MeasurementModel& model) {
  validate(policy);
  return std::visit(
      [&](const auto& p) -> Interval {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, AllowNegative>) {
          return raw_interval(x0, c, model);
        } else if constexpr (std::is_same_v<P, ClipToZero>) {
          return raw_interval(x0, c, model).clipped_to_nonnegative();
        } else {
          if (x0 / model.u() < p.threshold) {
            const double z = specfun::std_normal_quantile(Probability(p.upper_tail));
            const double hi = x0 - model.u() * z;
            return {0.0, std::max(hi, 0.0)};
          }
          return raw_interval(x0, c, model);
        }
      },
      policy);
}

Interval invert_belt_numerically(double x0, const QuantileConstraint& c, const MeasurementModel& model) {
  const double lo = solve_measurand(x0, c.q_hi(), model);
  const double hi = solve_measurand(x0, c.q_lo(), model);
  return {lo, hi};
}

Probability coverage_probability_given_x0(const Interval& iv, double x0, const MeasurementModel& model) {
  if (iv.hi() <= 0.0) return Probability(0.0);
  const TruncatedGaussianPosterior post(x0, model.u());
  const Probability upper = post.cdf(iv.hi());
  const Probability lower = post.cdf(std::max(iv.lo(), 0.0));
  const double mass = lower.complement() - upper.complement();
  return Probability(std::clamp(mass, 0.0, 1.0));
}

}  // namespace ivest
