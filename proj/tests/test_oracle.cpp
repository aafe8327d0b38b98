#include <cmath>

#include "doctest.h"
#include "ivest/bayes.hpp"
#include "ivest/errors.hpp"
#include "ivest/oracle.hpp"
#include "ivest/random.hpp"

using namespace ivest;
using namespace ivest::oracle;

namespace {
const double kAlpha = 0.6826894921370858971704650912640758;
}

TEST_CASE("Neyman success given x0: frozen values") {
  const auto c = QuantileConstraint::one_sigma();
  const double expected[] = {0.0,
                             0.0,
                             0.0,
                             0.48578297932051875,
                             0.68268949213708590,
                             0.77055116825989912,
                             0.81142658265493979,
                             0.73156318079751123,
                             0.69858233237529054,
                             0.68695525436044769,
                             0.68361229903394995,
                             0.68284834251812682,
                             0.68271111444589367};
  for (int i = 0; i < 13; ++i) {
    const double x0 = -2.0 + 0.5 * i;
    CHECK(neyman_success_given_x0(x0, c).value() == doctest::Approx(expected[i]).epsilon(1e-12));
  }
  CHECK(neyman_success_given_x0(-2.0, c).value() == 0.0);
}

TEST_CASE("Willink success rate: frozen values") {
  const auto c = QuantileConstraint::one_sigma();
  const double expected[] = {0.0970740568242823, 0.589438470131065, 0.728854674660629, 0.779114656203404,
                             0.790350884782123,  0.781356914717345, 0.764604137611217, 0.746811166074110,
                             0.730886635022783,  0.717772181547947, 0.707511707707903, 0.699782614837735,
                             0.694145106212138,  0.690155650963846, 0.687416141111548, 0.685592205636457,
                             0.684416334244373,  0.683683367902647, 0.683242251747666, 0.682986272736240};
  for (int i = 0; i < 20; ++i) {
    const double a0 = 0.1 + 0.2 * i;
    CHECK(willink_success_given_a(Measurand{a0}, c).value() == doctest::Approx(expected[i]).epsilon(1e-9));
  }
  CHECK(std::fabs(willink_success_given_a(Measurand{4.0}, c).value() - kAlpha) < 0.002);
}

TEST_CASE("Willink crossing-point and indicator quadrature agree") {
  const auto c = QuantileConstraint::one_sigma();
  for (double a0 : {0.1, 0.5, 1.3, 3.1}) {
    const double a = willink_success_given_a(Measurand{a0}, c).value();
    const double b = willink_success_given_a_indicator(Measurand{a0}, c).value();
    CHECK(std::fabs(a - b) < 1e-7);
  }
}

TEST_CASE("Neyman success given a") {
  const auto c = QuantileConstraint::one_sigma();
  for (double a0 : {0.01, 0.5, 3.0}) {
    CHECK(neyman_success_given_a(Measurand{a0}, c, AllowNegative{}).value() == doctest::Approx(kAlpha).epsilon(1e-14));
    CHECK(neyman_success_given_a(Measurand{a0}, c, ClipToZero{}).value() == doctest::Approx(kAlpha).epsilon(1e-14));
  }
  // Flip-flop at a0 = 1.2: upper limits cover x in [0.7323, 1), two-sided
  // intervals cover [1, 2.2], so the rate is Phi(1) - Phi(z(0.32)).
  const double z = specfun::std_normal_quantile(Probability(0.32));
  const double expected = specfun::std_normal_cdf(1.0).value() - specfun::std_normal_cdf(z).value();
  CHECK(neyman_success_given_a(Measurand{1.2}, c, FlipFlop{}).value() == doctest::Approx(expected).epsilon(1e-13));
  CHECK_THROWS_AS(neyman_success_given_a(Measurand{0.0}, c, AllowNegative{}), InvalidArgument);
}

TEST_CASE("rejection-inflated confidence") {
  const auto c = QuantileConstraint::one_sigma();
  CHECK(rejection_inflated_confidence(Measurand{0.01}, c).value() == doctest::Approx(0.80911121386355506).epsilon(1e-13));
  CHECK(rejection_inflated_confidence(Measurand{0.2}, c).value() == doctest::Approx(0.77146128815375245).epsilon(1e-13));
  CHECK(rejection_inflated_confidence(Measurand{3.0}, c).value() == doctest::Approx(0.68271111444589367).epsilon(1e-13));
  for (double a0 : {0.01, 0.4, 1.7}) {
    CHECK(std::fabs(rejection_inflated_confidence(Measurand{a0}, c).value() -
                    rejection_inflated_confidence_quadrature(Measurand{a0}, c).value()) < 1e-7);
  }
  // Strictly decreasing towards alpha.
  double prev = 1.0;
  for (double a0 = 0.01; a0 < 4.0; a0 += 0.1) {
    const double r = rejection_inflated_confidence(Measurand{a0}, c).value();
    CHECK(r < prev);
    CHECK(r > kAlpha);
    prev = r;
  }
  // Unequal tails go through quadrature.
  const QuantileConstraint skew(0.1, 0.8);
  const double z_lo = skew.z_lo();
  const double closed = skew.coverage() / specfun::std_normal_cdf(0.5 - z_lo).value();
  CHECK(rejection_inflated_confidence(Measurand{0.5}, skew).value() == doctest::Approx(closed).epsilon(1e-7));
}

TEST_CASE("posterior CDF by quadrature matches the closed form") {
  RandomStream rng(8, 0);
  for (int i = 0; i < 100; ++i) {
    const double x0 = -3.0 + 7.0 * rng.uniform_open();
    const double phi = 5.0 * rng.uniform_open();
    const double closed = TruncatedGaussianPosterior(x0).cdf(phi).value();
    CHECK(std::fabs(posterior_cdf_quadrature(x0, phi).value() - closed) < 1e-9);
  }
}

TEST_CASE("quadrature spec validation") {
  CHECK_THROWS_AS(validate(QuadratureSpec{0.0, 8.0}), InvalidArgument);
  CHECK_THROWS_AS(validate(QuadratureSpec{1e-9, -1.0}), InvalidArgument);
  CHECK_THROWS_AS(posterior_cdf_quadrature(0.0, -1.0), InvalidArgument);
}
