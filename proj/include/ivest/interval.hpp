#pragma once

#include "ivest/specfun.hpp"

namespace ivest {

/// Closed interval [lo, hi] on the measurand axis. lo == hi is allowed and
/// lo, hi may be negative or infinite.
class Interval {
 public:
  /// Throws InvalidArgument if lo > hi or either endpoint is NaN.
  Interval(double lo, double hi);

  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }
  double width() const noexcept { return hi_ - lo_; }

  bool contains(double a) const noexcept { return lo_ <= a && a <= hi_; }

  /// Entirely in the negative region (hi < 0).
  bool is_negative() const noexcept { return hi_ < 0.0; }

  Interval shifted(double c) const { return {lo_ + c, hi_ + c}; }

  /// Intersection with [0, inf); a fully negative interval collapses to [0, 0].
  Interval clipped_to_nonnegative() const;

  friend bool operator==(const Interval&, const Interval&) = default;

 private:
  double lo_;
  double hi_;
};

/// Tail probabilities (q_lo, q_hi) fixing an equal- or unequal-tail interval
/// with coverage q_hi - q_lo.
///
/// The standard scores z(q_lo), z(q_hi) are cached. The one-sigma constraint
/// stores z = -1, +1 exactly, which makes the Gaussian confidence interval
/// exactly [x0 - u, x0 + u].
class QuantileConstraint {
 public:
  /// Throws InvalidProbability unless 0 < q_lo < q_hi < 1.
  QuantileConstraint(Probability q_lo, Probability q_hi);
  QuantileConstraint(double q_lo, double q_hi);

  /// (Phi(z_lo), Phi(z_hi)) with the scores stored exactly.
  static QuantileConstraint from_scores(double z_lo, double z_hi);

  /// (Phi(-1), Phi(1)): coverage 0.682689...
  static QuantileConstraint one_sigma();

  /// The two-digit values (0.16, 0.84).
  static QuantileConstraint rounded();

  /// Keeps q_lo of `base` and sets q_hi = q_lo + level.
  static QuantileConstraint with_level(const QuantileConstraint& base, double level);

  const Probability& q_lo() const noexcept { return q_lo_; }
  const Probability& q_hi() const noexcept { return q_hi_; }
  double z_lo() const noexcept { return z_lo_; }
  double z_hi() const noexcept { return z_hi_; }

  double coverage() const noexcept;

  /// q_lo + q_hi == 1 to rounding.
  bool is_equal_tail() const noexcept;

 private:
  QuantileConstraint(Probability q_lo, Probability q_hi, double z_lo, double z_hi);

  Probability q_lo_;
  Probability q_hi_;
  double z_lo_;
  double z_hi_;
};

}  // namespace ivest
