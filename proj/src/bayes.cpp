#include "ivest/bayes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ivest/errors.hpp"

namespace ivest {

using specfun::kInvSqrt2;
using specfun::kInvSqrt2Pi;

TruncatedGaussianPosterior::TruncatedGaussianPosterior(double x0, double u)
    : x0_(x0), u_(u), t0_(0.0), norm_(0.0), below_zero_(0.0), scale_(0.0) {
  if (!std::isfinite(x0)) throw InvalidArgument("measured value must be finite");
  if (!(std::isfinite(u) && u > 0.0)) throw InvalidArgument("u must be finite and positive");
  t0_ = x0_ / u_;
  if (t0_ >= 0.0) {
    const Probability norm = specfun::std_normal_cdf(t0_);
    norm_ = norm.value();
    below_zero_ = norm.complement();
  } else {
    scale_ = specfun::erfcx(-t0_ * kInvSqrt2);
    if (!std::isfinite(scale_)) {
      throw InvalidArgument("measured value " + std::to_string(x0) + " too far below zero");
    }
  }
}

Probability TruncatedGaussianPosterior::standardized_cdf(double s) const {
  if (!(s > 0.0)) return Probability(0.0);
  if (t0_ >= 0.0) {
    const Probability shifted = specfun::std_normal_cdf(s - t0_);
    const double lower = std::clamp((shifted.value() - below_zero_) / norm_, 0.0, 1.0);
    const double upper = std::clamp(shifted.complement() / norm_, 0.0, 1.0);
    return Probability::from_tails(lower, upper);
  }
  // Phi(t0 - s) / Phi(t0) = erfcx((s - t0)/sqrt2) / erfcx(-t0/sqrt2) * exp(-s (s - 2 t0) / 2)
  const double ratio = specfun::erfcx((s - t0_) * kInvSqrt2) / scale_;
  const double log_survival = std::log(ratio) - 0.5 * s * (s - 2.0 * t0_);
  return Probability::from_tails(std::clamp(-std::expm1(log_survival), 0.0, 1.0),
                                 std::clamp(std::exp(log_survival), 0.0, 1.0));
}

double TruncatedGaussianPosterior::standardized_pdf(double s) const {
  if (s < 0.0) return 0.0;
  if (t0_ >= 0.0) return specfun::std_normal_pdf(s - t0_) / norm_;
  return 2.0 * kInvSqrt2Pi / scale_ * std::exp(-0.5 * s * (s - 2.0 * t0_));
}

double TruncatedGaussianPosterior::pdf(double phi) const { return standardized_pdf(phi / u_) / u_; }

Probability TruncatedGaussianPosterior::cdf(double phi) const { return standardized_cdf(phi / u_); }

double TruncatedGaussianPosterior::quantile(Probability q) const {
  if (!q.is_interior()) {
    throw InvalidProbability("posterior quantile requires 0 < q < 1, got " + std::to_string(q.value()));
  }

  // Closed form: Phi(t0 - s) = (1 - q) Phi(t0), whose complement is
  // Phi(-t0) + q Phi(t0).
  double s = 0.0;
  const Probability norm = specfun::std_normal_cdf(t0_);
  const double target_lower = q.complement() * norm.value();
  if (target_lower > std::numeric_limits<double>::min()) {
    const double target_upper = norm.complement() + q.value() * norm.value();
    const double t = specfun::std_normal_quantile(Probability::from_tails(target_lower, target_upper));
    s = t0_ - t;
  } else {
    // Far below zero the posterior is close to an exponential of rate |t0|.
    s = -std::log1p(-q.value()) / -t0_;
  }

  // Newton polish on the smaller tail, safeguarded by a bracket.
  const bool upper_tail = q.value() > 0.5;
  auto residual = [&](double x) {
    const Probability f = standardized_cdf(x);
    return upper_tail ? q.complement() - f.complement() : f.value() - q.value();
  };
  double lo = 0.0;
  double hi = std::numeric_limits<double>::infinity();
  s = std::max(s, 0.0);
  double r = residual(s);
  for (int iter = 0; iter < 100; ++iter) {
    if (r < 0.0) lo = std::max(lo, s);
    if (r > 0.0) hi = std::min(hi, s);
    if (r == 0.0) break;
    const double dens = standardized_pdf(s);
    double next = dens > 0.0 ? s - r / dens : std::numeric_limits<double>::quiet_NaN();
    if (!(next > lo && next < hi)) next = std::isfinite(hi) ? 0.5 * (lo + hi) : 2.0 * s + 1.0;
    const double step = next - s;
    s = next;
    r = residual(s);
    if (std::abs(step) <= 1e-15 * std::max(1.0, s)) break;
  }
  if (!(std::abs(r) <= 1e-12)) {
    throw NumericError("posterior quantile did not converge", r);
  }
  return s * u_;
}

Interval credible_interval(const TruncatedGaussianPosterior& post, const QuantileConstraint& c) {
  return {post.quantile(c.q_lo()), post.quantile(c.q_hi())};
}

}  // namespace ivest
