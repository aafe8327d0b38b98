#include "ivest/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ivest/bayes.hpp"
#include "ivest/errors.hpp"
#include "ivest/numeric.hpp"

namespace ivest::oracle {
namespace {

void require_positive(Measurand a0) {
  if (!(a0.value > 0.0 && std::isfinite(a0.value))) {
    throw InvalidArgument("measurand must be finite and positive, got " + std::to_string(a0.value));
  }
}

// Gaussian measure of [lo, hi] under N(a0, u^2).
double gaussian_mass(double lo, double hi, Measurand a0, const MeasurementModel& model) {
  if (!(lo < hi)) return 0.0;
  const Probability plo = model.sampling_cdf(lo, a0);
  const Probability phi = model.sampling_cdf(hi, a0);
  // Difference of the smaller tails.
  if (plo.value() < 0.5) return phi.value() - plo.value();
  return plo.complement() - phi.complement();
}

numeric::SimpsonOptions indicator_options(const QuadratureSpec& spec) {
  numeric::SimpsonOptions opts;
  opts.abs_tol = spec.abs_tol;
  opts.initial_panels = 64;
  opts.max_depth = 48;
  opts.accept_at_max_depth = true;
  return opts;
}

// Smallest datum x whose credible interval has its q-endpoint at or above a0:
// solves F_a(a0 | x) = q. F_a(a0 | x) decreases as x grows.
double credible_crossing(Measurand a0, const Probability& q, const MeasurementModel& model) {
  const bool upper = q.value() > 0.5;
  auto residual = [&](double x) {
    const Probability f = TruncatedGaussianPosterior(x, model.u()).cdf(a0.value);
    return upper ? f.complement() - q.complement() : q.value() - f.value();
  };
  numeric::BisectionOptions opts;
  opts.residual_tol = 1e-12;
  return numeric::bisect(residual, a0.value - model.u(), a0.value + model.u(), opts);
}

}  // namespace

void validate(const QuadratureSpec& spec) {
  if (!(spec.abs_tol > 0.0) || !(spec.range_half_width > 0.0)) {
    throw InvalidArgument("quadrature tolerance and half width must be positive");
  }
}

Probability neyman_success_given_x0(double x0, const QuantileConstraint& c, const MeasurementModel& model) {
  return coverage_probability_given_x0(confidence_interval(x0, c, AllowNegative{}, model), x0, model);
}

Probability neyman_success_given_a(Measurand a0, const QuantileConstraint& c, const BoundaryPolicy& policy,
                                   const MeasurementModel& model) {
  require_positive(a0);
  validate(policy);
  const double u = model.u();
  // For a0 > 0 clipping never changes containment, so only flip-flop differs
  // from the raw belt [a0 + u z_lo, a0 + u z_hi].
  const double belt_lo = a0.value + u * c.z_lo();
  const double belt_hi = a0.value + u * c.z_hi();
  if (const auto* ff = std::get_if<FlipFlop>(&policy)) {
    const double cut = ff->threshold * u;
    const double z_tail = specfun::std_normal_quantile(Probability(ff->upper_tail));
    // Below the cut the interval is [0, x - u z_tail].
    const double upper_limit_part = gaussian_mass(a0.value + u * z_tail, cut, a0, model);
    const double two_sided_part = gaussian_mass(std::max(belt_lo, cut), belt_hi, a0, model);
    return Probability(std::clamp(upper_limit_part + two_sided_part, 0.0, 1.0));
  }
  return Probability(std::clamp(gaussian_mass(belt_lo, belt_hi, a0, model), 0.0, 1.0));
}

Probability willink_success_given_a(Measurand a0, const QuantileConstraint& c, const QuadratureSpec& spec,
                                    const MeasurementModel& model) {
  require_positive(a0);
  validate(spec);
  const double x_lo = credible_crossing(a0, c.q_hi(), model);
  const double x_hi = credible_crossing(a0, c.q_lo(), model);
  return Probability(std::clamp(gaussian_mass(x_lo, x_hi, a0, model), 0.0, 1.0));
}

Probability willink_success_given_a_indicator(Measurand a0, const QuantileConstraint& c,
                                              const QuadratureSpec& spec, const MeasurementModel& model) {
  require_positive(a0);
  validate(spec);
  auto integrand = [&](double x) {
    const Interval iv = credible_interval(TruncatedGaussianPosterior(x, model.u()), c);
    return iv.contains(a0.value) ? model.sampling_pdf(x, a0) : 0.0;
  };
  const double w = spec.range_half_width * model.u();
  const double mass =
      numeric::adaptive_simpson(integrand, a0.value - w, a0.value + w, indicator_options(spec));
  return Probability(std::clamp(mass, 0.0, 1.0));
}

Probability rejection_inflated_confidence(Measurand a0, const QuantileConstraint& c, const QuadratureSpec& spec,
                                          const MeasurementModel& model) {
  require_positive(a0);
  validate(spec);
  if (!c.is_equal_tail()) return rejection_inflated_confidence_quadrature(a0, c, spec, model);
  // Accepted data: hi = x - u z_lo > 0.
  const Probability accept = specfun::std_normal_cdf(a0.value / model.u() - c.z_lo());
  return Probability(std::clamp(c.coverage() / accept.value(), 0.0, 1.0));
}

Probability rejection_inflated_confidence_quadrature(Measurand a0, const QuantileConstraint& c,
                                                     const QuadratureSpec& spec, const MeasurementModel& model) {
  require_positive(a0);
  validate(spec);
  const double w = spec.range_half_width * model.u();
  const auto opts = indicator_options(spec);
  auto contained = [&](double x) {
    const Interval iv = confidence_interval(x, c, AllowNegative{}, model);
    return iv.hi() > 0.0 && iv.contains(a0.value) ? model.sampling_pdf(x, a0) : 0.0;
  };
  auto accepted = [&](double x) {
    return confidence_interval(x, c, AllowNegative{}, model).hi() > 0.0 ? model.sampling_pdf(x, a0) : 0.0;
  };
  const double num = numeric::adaptive_simpson(contained, a0.value - w, a0.value + w, opts);
  const double den = numeric::adaptive_simpson(accepted, a0.value - w, a0.value + w, opts);
  if (!(den > 0.0)) throw NumericError("acceptance probability vanished", den);
  return Probability(std::clamp(num / den, 0.0, 1.0));
}

Probability posterior_cdf_quadrature(double x0, double phi, const QuadratureSpec& spec,
                                     const MeasurementModel& model) {
  validate(spec);
  if (!(phi >= 0.0)) throw InvalidArgument("posterior CDF quadrature needs phi >= 0");
  const TruncatedGaussianPosterior post(x0, model.u());
  const double centre = std::max(x0, 0.0);
  const double w = spec.range_half_width * model.u();
  const double a = std::max(0.0, centre - w);
  const double b = std::min(phi, centre + w);
  if (!(a < b)) return Probability(0.0);
  numeric::SimpsonOptions opts;
  opts.abs_tol = spec.abs_tol;
  opts.initial_panels = 32;
  const double mass = numeric::adaptive_simpson([&](double s) { return post.pdf(s); }, a, b, opts);
  return Probability(std::clamp(mass, 0.0, 1.0));
}

}  // namespace ivest::oracle
