#pragma once

#include <variant>

#include "ivest/interval.hpp"
#include "ivest/model.hpp"

namespace ivest {

// How the Neyman construction deals with the known positivity of the
// measurand.

/// Report the raw belt inversion, negative endpoints included.
struct AllowNegative {};

/// Intersect with [0, inf); a fully negative interval becomes [0, 0].
struct ClipToZero {};

/// Below `threshold` (in units of u) report the upper limit [0, hi] with
/// F_x(x0 | hi) = upper_tail; otherwise the raw two-sided interval.
struct FlipFlop {
  double threshold = 1.0;
  double upper_tail = 0.32;
};

using BoundaryPolicy = std::variant<AllowNegative, ClipToZero, FlipFlop>;

/// Throws InvalidArgument / InvalidProbability on a malformed FlipFlop.
void validate(const BoundaryPolicy& policy);

/// Acceptance region [x1(a), x2(a)] of the belt: F_x(x1|a) = q_lo and
/// F_x(x2|a) = q_hi.
Interval belt_bounds(Measurand a, const QuantileConstraint& c, const MeasurementModel& model = MeasurementModel{});

/// Neyman confidence interval for datum x0.
///
/// The raw interval [lo, hi] solves F_x(x0|lo) = q_hi and F_x(x0|hi) = q_lo,
/// which for the Gaussian is [x0 - u z(q_hi), x0 - u z(q_lo)]. The policy then
/// decides what happens near the physical boundary a = 0.
Interval confidence_interval(double x0, const QuantileConstraint& c,
                             const BoundaryPolicy& policy = AllowNegative{},
                             const MeasurementModel& model = MeasurementModel{});

/// The raw interval obtained by numerically inverting the belt: bisection on
/// a -> F_x(x0 | a), which is strictly decreasing. Used to check the closed
/// form; throws NumericError on non-convergence.
Interval invert_belt_numerically(double x0, const QuantileConstraint& c,
                                 const MeasurementModel& model = MeasurementModel{});

/// Posterior probability, given x0, that the measurand lies in `iv`:
/// F_a(hi|x0) - F_a(lo|x0) with the endpoints clamped at 0. A fully negative
/// interval has probability 0.
Probability coverage_probability_given_x0(const Interval& iv, double x0,
                                          const MeasurementModel& model = MeasurementModel{});

}  // namespace ivest
