#pragma once

// Analytic and quadrature values of every success rate the Monte Carlo
// experiments estimate. These are the ground truth the simulations are
// checked against, so nothing in here draws random numbers.

#include "ivest/interval.hpp"
#include "ivest/model.hpp"
#include "ivest/neyman.hpp"

namespace ivest::oracle {

struct QuadratureSpec {
  double abs_tol = 1e-9;
  double range_half_width = 8.0;  // in units of u around the integrand's centre
};

/// Throws InvalidArgument on non-positive tolerance or half width.
void validate(const QuadratureSpec& spec);

/// Prob(a in [lo, hi] | x0) for the allow-negative Neyman interval built from
/// x0, evaluated in closed form from the posterior CDF.
Probability neyman_success_given_x0(double x0, const QuantileConstraint& c,
                                    const MeasurementModel& model = MeasurementModel{});

/// Prob([lo, hi] contains a0 | a0) for the Neyman procedure under `policy`:
/// the Gaussian measure of the data whose interval contains a0. Requires
/// a0 > 0.
Probability neyman_success_given_a(Measurand a0, const QuantileConstraint& c, const BoundaryPolicy& policy,
                                   const MeasurementModel& model = MeasurementModel{});

/// Prob([a1, a2] contains a0 | a0) for credible intervals rebuilt from every
/// datum. Both endpoint functions a1(x), a2(x) increase with x, so the set of
/// data whose interval contains a0 is [x_lo, x_hi] with a2(x_lo) = a0 and
/// a1(x_hi) = a0; the crossings are found by bisection. Requires a0 > 0.
Probability willink_success_given_a(Measurand a0, const QuantileConstraint& c,
                                    const QuadratureSpec& spec = {},
                                    const MeasurementModel& model = MeasurementModel{});

/// Same quantity by adaptive Simpson quadrature of the containment indicator
/// over a0 +- range_half_width * u. Slower; kept as the cross-check.
Probability willink_success_given_a_indicator(Measurand a0, const QuantileConstraint& c,
                                              const QuadratureSpec& spec = {},
                                              const MeasurementModel& model = MeasurementModel{});

/// Success rate of allow-negative Neyman intervals when fully negative
/// intervals are discarded and the measurement repeated. Containment implies
/// hi >= a0 > 0, so the rate is coverage / Prob(hi > 0). Equal-tail
/// constraints use that closed form; others fall back to quadrature.
Probability rejection_inflated_confidence(Measurand a0, const QuantileConstraint& c,
                                          const QuadratureSpec& spec = {},
                                          const MeasurementModel& model = MeasurementModel{});

/// The quadrature route of rejection_inflated_confidence, for any constraint.
Probability rejection_inflated_confidence_quadrature(Measurand a0, const QuantileConstraint& c,
                                                     const QuadratureSpec& spec = {},
                                                     const MeasurementModel& model = MeasurementModel{});

/// Numerical integral of the truncated-Gaussian posterior density from 0 to
/// phi. Requires phi >= 0.
Probability posterior_cdf_quadrature(double x0, double phi, const QuadratureSpec& spec = {},
                                     const MeasurementModel& model = MeasurementModel{});

}  // namespace ivest::oracle
