#pragma once

#include "ivest/interval.hpp"
#include "ivest/specfun.hpp"

namespace ivest {

/// Post-data distribution of a positive measurand under a uniform prior on
/// [0, inf) after observing x0 ~ N(a, u^2):
///
///   P(phi | x0) = 2 N(phi; x0, u^2) H(phi) / erfc(-x0 / (sqrt(2) u))
///
/// The normaliser Phi(x0/u) underflows for x0/u below about -38, so for
/// negative x0 every quantity is evaluated through the scaled erfcx form;
/// the posterior is proper and usable for any finite x0.
class TruncatedGaussianPosterior {
 public:
  /// Throws InvalidArgument unless x0 is finite and u finite and positive.
  explicit TruncatedGaussianPosterior(double x0, double u = 1.0);

  double x0() const noexcept { return x0_; }
  double u() const noexcept { return u_; }

  /// 0 for phi < 0.
  double pdf(double phi) const;

  /// F_a(phi | x0); 0 for phi <= 0, both tails accurate.
  Probability cdf(double phi) const;

  /// phi >= 0 with cdf(phi) = q to 1e-12. Throws InvalidProbability unless
  /// 0 < q < 1.
  double quantile(Probability q) const;

 private:
  // Survival S(s) = Phi(t0 - s) / Phi(t0) and its complement, s = phi / u.
  Probability standardized_cdf(double s) const;
  double standardized_pdf(double s) const;

  double x0_;
  double u_;
  double t0_;       // x0 / u
  double norm_;        // Phi(t0) when t0 >= 0
  double below_zero_;  // Phi(-t0) when t0 >= 0
  double scale_;       // erfcx(-t0 / sqrt 2) when t0 < 0
};

/// [quantile(q_lo), quantile(q_hi)]. The lower end is strictly positive.
Interval credible_interval(const TruncatedGaussianPosterior& post, const QuantileConstraint& c);

}  // namespace ivest
