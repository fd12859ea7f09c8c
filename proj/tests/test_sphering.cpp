#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sensorpress/errors.hpp"
#include "sensorpress/sphering.hpp"

#include "test_support.hpp"

using namespace sensorpress;

TEST_CASE("fit_sigma on a single (0, 2) vector gives sigma 1") {
  VectorXd v(2);
  v << 0.0, 2.0;
  const SpheringScale scale = fit_sigma({v});
  CHECK(scale.sigma == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("fit_sigma rejects a pool of constant vectors") {
  const VectorXd v = VectorXd::Constant(5, 3.7);
  CHECK_THROWS_AS(fit_sigma({v, v, v}), DataError);
}

TEST_CASE("fit_sigma rejects degenerate input shapes") {
  CHECK_THROWS_AS(fit_sigma({}), DataError);
  VectorXd one(1);
  one << 4.0;
  CHECK_THROWS_AS(fit_sigma({one}), DataError);
}

TEST_CASE("scaling the pool scales sigma") {
  Rng rng(11);
  VectorList pool;
  for (int i = 0; i < 6; ++i) pool.push_back(test_support::sensor_vector_d(9, rng));
  VectorList scaled = pool;
  for (VectorXd& v : scaled) v *= 2.5;
  CHECK(fit_sigma(scaled).sigma == doctest::Approx(2.5 * fit_sigma(pool).sigma).epsilon(1e-12));
}

TEST_CASE("normalize maps a constant vector to 0.5 everywhere") {
  const VectorXd x = VectorXd::Constant(7, 42.0);
  double mean = 0.0;
  const VectorXd d = normalize<double>(x, 2.0, mean);
  CHECK(mean == 42.0);
  for (Index i = 0; i < d.size(); ++i) CHECK(d[i] == 0.5);
}

TEST_CASE("normalize hits the clamp boundaries") {
  const double sigma = 1.5;
  VectorXd x(3);
  // mean is 10; entries sit at the mean and at +-3 sigma from it
  x << 10.0 + 3.0 * sigma, 10.0 - 3.0 * sigma, 10.0;
  double mean = 0.0;
  const VectorXd d = normalize<double>(x, sigma, mean);
  CHECK(mean == doctest::Approx(10.0).epsilon(1e-15));
  CHECK(d[0] == doctest::Approx(0.9).epsilon(1e-12));
  CHECK(d[1] == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(d[2] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("normalize truncates far outliers to the boundary") {
  VectorXd x(2);
  x << 0.0, 0.0;
  x[0] = 100.0;  // mean 50, entry at +10 sigma for sigma = 5
  double mean = 0.0;
  const VectorXd d = normalize<double>(x, 5.0, mean);
  CHECK(d[0] == doctest::Approx(0.9).epsilon(1e-12));
  CHECK(d[1] == doctest::Approx(0.1).epsilon(1e-12));
}

TEST_CASE("normalize output always lies in [0.1, 0.9]") {
  Rng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    VectorXd x(16);
    for (Index i = 0; i < x.size(); ++i) x[i] = rng.uniform(-1e4, 1e4);
    double mean = 0.0;
    const VectorXd d = normalize<double>(x, rng.uniform(0.1, 50.0), mean);
    for (Index i = 0; i < d.size(); ++i) {
      CHECK(d[i] >= 0.1);
      CHECK(d[i] <= 0.9);
    }
  }
}

TEST_CASE("denormalize inverts normalize within 8 ulps on the linear region") {
  Rng rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    VectorXd x = test_support::sensor_vector_d(12, rng);
    const double sigma = 9.0;  // spread is +-9, so nothing clamps
    double mean = 0.0;
    const VectorXd d = normalize<double>(x, sigma, mean);
    const VectorXd back = denormalize<double>(d, mean, sigma);
    for (Index i = 0; i < x.size(); ++i) {
      CHECK(test_support::ulps_between(x[i], back[i]) <= 8.0);
    }
  }
}

TEST_CASE("denormalize maps the boundaries back to mean +- 3 sigma") {
  const double sigma = 2.0;
  const double mean = 17.0;
  VectorXd d(3);
  d << 0.5, 0.9, 0.1;
  const VectorXd p = denormalize<double>(d, mean, sigma);
  CHECK(p[0] == doctest::Approx(mean).epsilon(1e-15));
  CHECK(p[1] == doctest::Approx(mean + 3.0 * sigma).epsilon(1e-12));
  CHECK(p[2] == doctest::Approx(mean - 3.0 * sigma).epsilon(1e-12));
}

TEST_CASE("normalize is affine away from the clamp") {
  Rng rng(31);
  const double sigma = 9.0;
  VectorXd x = test_support::sensor_vector_d(10, rng);
  double mean = 0.0;
  const VectorXd d = normalize<double>(x, sigma, mean);
  const double gain = 0.4 / (3.0 * sigma);
  for (Index i = 1; i < x.size(); ++i) {
    CHECK(d[i] - d[0] == doctest::Approx(gain * (x[i] - x[0])).epsilon(1e-10));
  }
}
