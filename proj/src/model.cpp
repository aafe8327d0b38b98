#include "ivest/model.hpp"

#include <cmath>
#include <string>

#include "ivest/errors.hpp"

namespace ivest {

MeasurementModel::MeasurementModel(double u) : u_(u) {
  if (!(std::isfinite(u) && u > 0.0)) {
    throw InvalidArgument("standard uncertainty must be finite and positive, got " +
                          std::to_string(u));
  }
}

double MeasurementModel::sampling_pdf(double x, Measurand a) const {
  return specfun::std_normal_pdf((x - a.value) / u_) / u_;
}

Probability MeasurementModel::sampling_cdf(double x, Measurand a) const {
  return specfun::std_normal_cdf((x - a.value) / u_);
}

double MeasurementModel::draw(Measurand a, RandomStream& rng) const {
  const double z = specfun::std_normal_quantile(Probability(rng.uniform_open()));
  return a.value + u_ * z;
}

}  // namespace ivest
