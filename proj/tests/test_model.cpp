#include <cmath>
#include <limits>
#include <vector>

#include "doctest.h"
#include "ivest/errors.hpp"
#include "ivest/model.hpp"
#include "support/reference.hpp"

using namespace ivest;

TEST_CASE("sampling density") {
  const MeasurementModel unit;
  CHECK(unit.sampling_pdf(0.5, Measurand{0.5}) == doctest::Approx(0.3989422804014327).epsilon(1e-15));
  const MeasurementModel wide(2.5);
  CHECK(wide.sampling_pdf(1.0, Measurand{1.0}) ==
        doctest::Approx(1.0 / std::sqrt(2.0 * M_PI * 2.5 * 2.5)).epsilon(1e-15));
  CHECK(wide.sampling_pdf(1.0 + 2.5, Measurand{1.0}) / wide.sampling_pdf(1.0, Measurand{1.0}) ==
        doctest::Approx(std::exp(-0.5)).epsilon(1e-14));
}

TEST_CASE("sampling CDF: quantile points and shift invariance") {
  const MeasurementModel m(1.7);
  const Measurand a{0.4};
  CHECK(m.sampling_cdf(0.4, a).value() == 0.5);
  CHECK(m.sampling_cdf(0.4 + 1.7, a).value() == doctest::Approx(0.8413447460685429).epsilon(1e-14));
  CHECK(m.sampling_cdf(0.4 - 1.7, a).value() == doctest::Approx(0.15865525393145705).epsilon(1e-14));

  for (double c : {-3.0, 0.25, 5.0}) {
    for (double x = -4.0; x <= 4.0; x += 0.5) {
      CHECK(m.sampling_cdf(x + c, Measurand{a.value + c}).value() ==
            doctest::Approx(m.sampling_cdf(x, a).value()).epsilon(1e-12));
    }
  }
  // Strictly increasing; the upper tail carries the resolution above 0.
  double prev = -1.0;
  double prev_tail = 2.0;
  for (double x = -8.0; x <= 8.0; x += 0.01) {
    const Probability f = MeasurementModel{}.sampling_cdf(x, Measurand{0.0});
    CHECK(f.value() >= prev);
    CHECK(f.complement() <= prev_tail);
    if (x > 0.0) CHECK(f.complement() < prev_tail);
    if (x < 0.0) CHECK(f.value() > prev);
    prev = f.value();
    prev_tail = f.complement();
  }
  // Decreasing in the measurand.
  CHECK(m.sampling_cdf(1.0, Measurand{0.5}).value() > m.sampling_cdf(1.0, Measurand{0.6}).value());
}

TEST_CASE("draws: moments, determinism and distribution") {
  const MeasurementModel m;
  RandomStream rng(2024, 0);
  const int n = 1'000'000;
  double sum = 0.0;
  double sumsq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = m.draw(Measurand{2.0}, rng);
    sum += x;
    sumsq += x * x;
  }
  const double mean = sum / n;
  const double var = sumsq / n - mean * mean;
  CHECK(std::fabs(mean - 2.0) < 0.004);
  CHECK(std::fabs(var - 1.0) < 0.01);

  RandomStream a(77, 3);
  RandomStream b(77, 3);
  for (int i = 0; i < 1000; ++i) CHECK(m.draw(Measurand{0.0}, a) == m.draw(Measurand{0.0}, b));

  RandomStream ks_rng(99, 1);
  std::vector<double> sample(100'000);
  for (double& x : sample) x = m.draw(Measurand{0.7}, ks_rng);
  const double d =
      ref::ks_distance(sample, [](double x) { return static_cast<double>(ref::normal_cdf(x - 0.7)); });
  CHECK(d < ref::ks_critical(sample.size(), 0.001));
}

TEST_CASE("random streams") {
  RandomStream s(5, 0);
  for (int i = 0; i < 100000; ++i) {
    const double u = s.uniform_open();
    REQUIRE(u > 0.0);
    REQUIRE(u < 1.0);
    REQUIRE(1.0 - (1.0 - u) == u);
  }
  RandomStream base(5, 0);
  RandomStream c1 = base.substream(1);
  RandomStream c2 = base.substream(2);
  CHECK(c1.stream_id() != c2.stream_id());
  CHECK(c1.next_u64() != c2.next_u64());
  // Substreams depend on identity, not on how far the parent has advanced.
  RandomStream advanced(5, 0);
  advanced.next_u64();
  CHECK(advanced.substream(1).next_u64() == base.substream(1).next_u64());
}

TEST_CASE("model rejects non-positive uncertainty") {
  CHECK_THROWS_AS(MeasurementModel(0.0), InvalidArgument);
  CHECK_THROWS_AS(MeasurementModel(-1.0), InvalidArgument);
  CHECK_THROWS_AS(MeasurementModel(std::numeric_limits<double>::infinity()), InvalidArgument);
}
