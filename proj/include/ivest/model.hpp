#pragma once

#include "ivest/random.hpp"
#include "ivest/specfun.hpp"

namespace ivest {

/// A measurand value. Positivity is not enforced here; the procedures that
/// need a > 0 check it themselves.
struct Measurand {
  double value = 0.0;

  constexpr explicit Measurand(double a) : value(a) {}
};

/// Gaussian measurement: the datum x is drawn from N(a, u^2).
class MeasurementModel {
 public:
  /// Throws InvalidArgument unless u is finite and positive.
  explicit MeasurementModel(double u = 1.0);

  double u() const noexcept { return u_; }

  double sampling_pdf(double x, Measurand a) const;

  /// F_x(x | a) = erfc((a - x) / (sqrt(2) u)) / 2.
  Probability sampling_cdf(double x, Measurand a) const;

  /// One variate x ~ N(a, u^2) by inverse-CDF transform of a uniform draw.
  double draw(Measurand a, RandomStream& rng) const;

 private:
  double u_;
};

}  // namespace ivest
