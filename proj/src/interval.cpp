#include "ivest/interval.hpp"

#include <cmath>
#include <string>

#include "ivest/errors.hpp"

namespace ivest {

Interval::Interval(double lo, double hi) : lo_(lo), hi_(hi) {
  if (std::isnan(lo) || std::isnan(hi) || lo > hi) {
    throw InvalidArgument("invalid interval [" + std::to_string(lo) + ", " + std::to_string(hi) +
                          "]");
  }
}

Interval Interval::clipped_to_nonnegative() const {
  if (hi_ < 0.0) return {0.0, 0.0};
  return {lo_ < 0.0 ? 0.0 : lo_, hi_};
}

namespace {

void check_order(const Probability& lo, const Probability& hi) {
  if (!lo.is_interior() || !hi.is_interior() || !(lo.value() < hi.value() ||
                                                  lo.complement() > hi.complement())) {
    throw InvalidProbability("quantile constraint requires 0 < q_lo < q_hi < 1, got (" +
                             std::to_string(lo.value()) + ", " + std::to_string(hi.value()) + ")");
  }
}

}  // namespace

QuantileConstraint::QuantileConstraint(Probability q_lo, Probability q_hi, double z_lo, double z_hi)
    : q_lo_(q_lo), q_hi_(q_hi), z_lo_(z_lo), z_hi_(z_hi) {}

QuantileConstraint::QuantileConstraint(Probability q_lo, Probability q_hi)
    : q_lo_(q_lo), q_hi_(q_hi), z_lo_(0.0), z_hi_(0.0) {
  check_order(q_lo_, q_hi_);
  z_lo_ = specfun::std_normal_quantile(q_lo_);
  z_hi_ = specfun::std_normal_quantile(q_hi_);
}

QuantileConstraint::QuantileConstraint(double q_lo, double q_hi)
    : QuantileConstraint(Probability(q_lo), Probability(q_hi)) {}

QuantileConstraint QuantileConstraint::from_scores(double z_lo, double z_hi) {
  if (!(std::isfinite(z_lo) && std::isfinite(z_hi) && z_lo < z_hi)) {
    throw InvalidArgument("standard scores must be finite with z_lo < z_hi");
  }
  const Probability lo = specfun::std_normal_cdf(z_lo);
  const Probability hi = specfun::std_normal_cdf(z_hi);
  check_order(lo, hi);
  return {lo, hi, z_lo, z_hi};
}

QuantileConstraint QuantileConstraint::one_sigma() { return from_scores(-1.0, 1.0); }

QuantileConstraint QuantileConstraint::rounded() { return {0.16, 0.84}; }

QuantileConstraint QuantileConstraint::with_level(const QuantileConstraint& base, double level) {
  if (!(level > 0.0 && level < 1.0)) {
    throw InvalidProbability("confidence level " + std::to_string(level) + " outside (0, 1)");
  }
  // q_hi = q_lo + level; its complement is (1 - q_lo) - level.
  const double upper = base.q_lo().complement() - level;
  const double lower = base.q_lo().value() + level;
  if (!(upper > 0.0)) {
    throw InvalidProbability("q_lo + level must stay below 1");
  }
  const Probability q_hi = Probability::from_tails(lower, upper);
  check_order(base.q_lo(), q_hi);
  return {base.q_lo(), q_hi, base.z_lo(), specfun::std_normal_quantile(q_hi)};
}

double QuantileConstraint::coverage() const noexcept {
  // Subtract the smaller-magnitude pair to keep precision at both ends.
  return q_lo_.complement() - q_hi_.complement();
}

bool QuantileConstraint::is_equal_tail() const noexcept {
  return std::abs(q_lo_.value() - q_hi_.complement()) <= 4e-16;
}

}  // namespace ivest
