#pragma once

// Shared generators for the test suites. Data is drawn in a physical sensor
// regime (readings clustered well away from zero, spread small against the
// mean) matching the dynamic-range data model the library targets.

#include <cmath>

#include "sensorpress/autoencoder.hpp"
#include "sensorpress/rng.hpp"
#include "sensorpress/types.hpp"

namespace test_support {

using namespace sensorpress;

// Temperature-like readings around 70 units with a +-9 spread.
inline VectorXf sensor_vector_f(Index length, Rng& rng) {
  VectorXf x(length);
  for (Index i = 0; i < length; ++i) {
    x[i] = static_cast<float>(rng.uniform(61.0, 79.0));
  }
  return x;
}

inline VectorXd sensor_vector_d(Index length, Rng& rng) {
  VectorXd x(length);
  for (Index i = 0; i < length; ++i) {
    x[i] = rng.uniform(61.0, 79.0);
  }
  return x;
}

inline AutoencoderParams<double> random_params_d(Index length, Index hidden, Rng& rng,
                                                 double weight_range = 0.5) {
  AutoencoderParams<double> p;
  p.w_enc.resize(hidden, length);
  p.b_enc.resize(hidden);
  p.w_dec.resize(length, hidden);
  p.b_dec.resize(length);
  for (Index j = 0; j < length; ++j)
    for (Index k = 0; k < hidden; ++k) p.w_enc(k, j) = rng.uniform(-weight_range, weight_range);
  for (Index k = 0; k < hidden; ++k) p.b_enc[k] = rng.uniform(-weight_range, weight_range);
  for (Index j = 0; j < length; ++j)
    for (Index k = 0; k < hidden; ++k) p.w_dec(j, k) = rng.uniform(-weight_range, weight_range);
  for (Index j = 0; j < length; ++j) p.b_dec[j] = rng.uniform(-weight_range, weight_range);
  p.sigma = rng.uniform(3.0, 6.0);
  return p;
}

inline AutoencoderParams<float> random_params_f(Index length, Index hidden, Rng& rng,
                                                double weight_range = 0.5) {
  return random_params_d(length, hidden, rng, weight_range).cast<float>();
}

// Distance between doubles measured in units in the last place of `a`.
inline double ulps_between(double a, double b) {
  const double next = std::nextafter(std::abs(a), std::numeric_limits<double>::infinity());
  const double ulp = next - std::abs(a);
  return ulp > 0.0 ? std::abs(a - b) / ulp : 0.0;
}

}  // namespace test_support
