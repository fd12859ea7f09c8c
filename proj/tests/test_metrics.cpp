#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "sensorpress/errors.hpp"
#include "sensorpress/metrics.hpp"

#include "test_support.hpp"

using namespace sensorpress;

TEST_CASE("payload-only rate at L=720, K=20 reproduces the 97.22% savings") {
  const RateReport report = compression_ratio(32 * 20, 720, RateAccounting::payload_only);
  CHECK(report.bits_original == 32u * 720u);
  CHECK(report.cr_percent == doctest::Approx(100.0 * 640.0 / 23040.0).epsilon(1e-12));
  CHECK(report.savings_percent == doctest::Approx(97.2222222222).epsilon(1e-6));
}

TEST_CASE("full-frame rate of the 186-byte empty-residual frame") {
  const RateReport report = compression_ratio(186 * 8, 720, RateAccounting::full_frame);
  CHECK(report.cr_percent == doctest::Approx(100.0 * 1488.0 / 23040.0).epsilon(1e-12));
  CHECK(report.savings_percent == doctest::Approx(100.0 * (1.0 - 1488.0 / 23040.0)).epsilon(1e-12));
}

TEST_CASE("equal transmitted and original bits give CR 100") {
  const RateReport report = compression_ratio(32 * 50, 50, RateAccounting::full_frame);
  CHECK(report.cr_percent == doctest::Approx(100.0));
  CHECK(report.savings_percent == doctest::Approx(0.0));
}

TEST_CASE("rmse basics") {
  VectorXd x(2), y(2);
  x << 0.0, 0.0;
  y << 1.0, 1.0;
  CHECK(rmse(x, x) == 0.0);
  CHECK(rmse(x, y) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(rmse(x, VectorXd::Zero(3)), std::invalid_argument);
}

TEST_CASE("rmse matches a scalar-loop oracle on random pairs") {
  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    VectorXd x = test_support::sensor_vector_d(17, rng);
    VectorXd y = test_support::sensor_vector_d(17, rng);
    double acc = 0.0;
    for (Index i = 0; i < x.size(); ++i) acc += (x[i] - y[i]) * (x[i] - y[i]);
    const double expected = std::sqrt(acc / static_cast<double>(x.size()));
    CHECK(rmse(x, y) == doctest::Approx(expected).epsilon(1e-13));
  }
}

TEST_CASE("r_squared basics") {
  Rng rng(6);
  VectorXd x = test_support::sensor_vector_d(9, rng);
  CHECK(r_squared(x, x) == doctest::Approx(1.0).epsilon(1e-15));
  const VectorXd mean_vec = VectorXd::Constant(x.size(), x.mean());
  CHECK(r_squared(x, mean_vec) == doctest::Approx(0.0).epsilon(1e-10));
  CHECK_THROWS_AS(r_squared(VectorXd::Constant(4, 2.0), VectorXd::Zero(4)), DataError);
}

TEST_CASE("r_squared can go negative for poor reconstructions") {
  VectorXd x(4), bad(4);
  x << 1.0, 2.0, 3.0, 4.0;
  bad << 40.0, -12.0, 9.0, 0.5;
  CHECK(r_squared(x, bad) < 0.0);
}

TEST_CASE("r_squared matches a scalar-loop oracle") {
  Rng rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    VectorXd x = test_support::sensor_vector_d(13, rng);
    VectorXd y = test_support::sensor_vector_d(13, rng);
    double mean = 0.0;
    for (Index i = 0; i < x.size(); ++i) mean += x[i];
    mean /= static_cast<double>(x.size());
    double num = 0.0, den = 0.0;
    for (Index i = 0; i < x.size(); ++i) {
      num += (x[i] - y[i]) * (x[i] - y[i]);
      den += (x[i] - mean) * (x[i] - mean);
    }
    CHECK(r_squared(x, y) == doctest::Approx(1.0 - num / den).epsilon(1e-12));
  }
}

TEST_CASE("r_squared is invariant under a common affine map") {
  Rng rng(9);
  VectorXd x = test_support::sensor_vector_d(15, rng);
  VectorXd y = test_support::sensor_vector_d(15, rng);
  const double base = r_squared(x, y);
  for (double c : {2.0, -0.5, 10.0}) {
    for (double b : {0.0, 3.0, -100.0}) {
      const VectorXd xs = (c * x).array() + b;
      const VectorXd ys = (c * y).array() + b;
      CHECK(r_squared(xs, ys) == doctest::Approx(base).epsilon(1e-9));
    }
  }
}

TEST_CASE("rmse is zero exactly when the vectors are equal") {
  Rng rng(10);
  VectorXd x = test_support::sensor_vector_d(8, rng);
  VectorXd y = x;
  y[3] += 1e-9;
  CHECK(rmse(x, x) == 0.0);
  CHECK(rmse(x, y) > 0.0);
}
