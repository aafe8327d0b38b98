#include <cmath>

#include "doctest.h"
#include "ivest/errors.hpp"
#include "ivest/neyman.hpp"
#include "ivest/specfun.hpp"

using namespace ivest;

namespace {
const double kAlpha = 0.6826894921370858971704650912640758;
}

TEST_CASE("one-sigma constraint") {
  const auto c = QuantileConstraint::one_sigma();
  CHECK(c.z_lo() == -1.0);
  CHECK(c.z_hi() == 1.0);
  CHECK(c.q_lo().value() == doctest::Approx(0.1586552539314570514).epsilon(1e-15));
  CHECK(c.coverage() == doctest::Approx(kAlpha).epsilon(1e-15));
  CHECK(c.is_equal_tail());
  CHECK_FALSE(QuantileConstraint(0.1, 0.8).is_equal_tail());
  CHECK(QuantileConstraint::rounded().q_lo().value() == 0.16);
  CHECK(QuantileConstraint::rounded().q_hi().value() == 0.84);
  CHECK_THROWS_AS(QuantileConstraint(0.5, 0.5), InvalidProbability);
  CHECK_THROWS_AS(QuantileConstraint(0.0, 0.5), InvalidProbability);
  CHECK_THROWS_AS(QuantileConstraint(0.3, 1.0), InvalidProbability);
}

TEST_CASE("with_level keeps the lower quantile") {
  const auto base = QuantileConstraint::one_sigma();
  const auto c = QuantileConstraint::with_level(base, 0.5);
  CHECK(c.q_lo().value() == base.q_lo().value());
  CHECK(c.z_lo() == -1.0);
  CHECK(c.q_hi().value() == doctest::Approx(base.q_lo().value() + 0.5).epsilon(1e-15));
  CHECK_THROWS_AS(QuantileConstraint::with_level(base, 0.9), InvalidProbability);
}

TEST_CASE("confidence interval identities") {
  const auto c = QuantileConstraint::one_sigma();
  CHECK(confidence_interval(3.0, c) == Interval(2.0, 4.0));
  CHECK(confidence_interval(-2.0, c) == Interval(-3.0, -1.0));
  CHECK(confidence_interval(-2.0, c, ClipToZero{}) == Interval(0.0, 0.0));
  CHECK(confidence_interval(0.5, c, ClipToZero{}) == Interval(0.0, 1.5));
  const MeasurementModel m(2.0);
  CHECK(confidence_interval(3.0, c, AllowNegative{}, m) == Interval(1.0, 5.0));
}

TEST_CASE("clipping at x0 = 0 hides the stated level") {
  const auto base = QuantileConstraint::one_sigma();
  for (double level : {0.5 - base.q_lo().value(), 0.50, 0.68, 0.84}) {
    const Interval iv = confidence_interval(0.0, QuantileConstraint::with_level(base, level), ClipToZero{});
    CHECK(iv.lo() == 0.0);
    CHECK(iv.hi() == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("closed form matches numerical belt inversion") {
  for (const auto& c : {QuantileConstraint::one_sigma(), QuantileConstraint::rounded(), QuantileConstraint(0.05, 0.9)}) {
    for (double x0 = -3.0; x0 <= 5.0; x0 += 0.25) {
      const Interval a = confidence_interval(x0, c);
      const Interval b = invert_belt_numerically(x0, c);
      CHECK(std::fabs(a.lo() - b.lo()) < 1e-9);
      CHECK(std::fabs(a.hi() - b.hi()) < 1e-9);
    }
  }
}

TEST_CASE("belt inversion: x0 in belt(a) iff a in CI(x0)") {
  const auto c = QuantileConstraint::rounded();
  for (double a = 0.05; a < 4.0; a += 0.37) {
    const Interval belt = belt_bounds(Measurand{a}, c);
    for (double x0 = -3.0; x0 < 6.0; x0 += 0.173) {
      CHECK(belt.contains(x0) == confidence_interval(x0, c).contains(a));
    }
  }
}

TEST_CASE("endpoints increase with x0 and width is constant") {
  const auto c = QuantileConstraint::one_sigma();
  Interval prev = confidence_interval(-5.0, c);
  for (double x0 = -4.9; x0 <= 5.0; x0 += 0.1) {
    const Interval iv = confidence_interval(x0, c);
    CHECK(iv.lo() > prev.lo());
    CHECK(iv.hi() > prev.hi());
    CHECK(iv.width() == doctest::Approx(2.0).epsilon(1e-12));
    prev = iv;
  }
}

TEST_CASE("flip-flop switches to an upper limit below the threshold") {
  const auto c = QuantileConstraint::one_sigma();
  const FlipFlop ff{};
  const double z = specfun::std_normal_quantile(Probability(0.32));
  const Interval low = confidence_interval(0.5, c, ff);
  CHECK(low.lo() == 0.0);
  CHECK(low.hi() == doctest::Approx(0.5 - z).epsilon(1e-14));
  CHECK(confidence_interval(-3.0, c, ff) == Interval(0.0, 0.0));
  CHECK(confidence_interval(2.0, c, ff) == Interval(1.0, 3.0));
  CHECK_THROWS_AS(validate(FlipFlop{1.0, 0.0}), InvalidProbability);
  CHECK_THROWS_AS(validate(FlipFlop{std::nan(""), 0.3}), InvalidArgument);
}

TEST_CASE("coverage given x0") {
  const auto c = QuantileConstraint::one_sigma();
  CHECK(coverage_probability_given_x0(confidence_interval(-2.0, c), -2.0).value() == 0.0);
  CHECK(coverage_probability_given_x0(confidence_interval(3.0, c), 3.0).value() ==
        doctest::Approx(0.68361229903394995).epsilon(1e-13));
  CHECK(coverage_probability_given_x0(confidence_interval(0.0, c), 0.0).value() ==
        doctest::Approx(kAlpha).epsilon(1e-13));
  CHECK(coverage_probability_given_x0(Interval(0.0, 1e6), -40.0).value() == doctest::Approx(1.0));
}

TEST_CASE("interval validation") {
  CHECK_THROWS_AS(Interval(1.0, 0.0), InvalidArgument);
  CHECK_THROWS_AS(Interval(std::nan(""), 0.0), InvalidArgument);
  CHECK(Interval(-3.0, -1.0).is_negative());
  CHECK(Interval(-3.0, -1.0).clipped_to_nonnegative() == Interval(0.0, 0.0));
  CHECK(Interval(-1.0, 2.0).clipped_to_nonnegative() == Interval(0.0, 2.0));
  CHECK(Interval(0.0, 0.0).contains(0.0));
  CHECK(Interval(1.0, 2.0).shifted(0.5) == Interval(1.5, 2.5));
}
