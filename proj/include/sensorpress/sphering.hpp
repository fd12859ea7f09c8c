#pragma once

#include <cmath>

#include "sensorpress/errors.hpp"
#include "sensorpress/types.hpp"

namespace sensorpress {

// Global normalization scale: the population standard deviation of the
// per-vector-centered entries pooled over the whole training set. Fitted once,
// constant afterwards.
struct SpheringScale {
  double sigma = 0.0;
};

// Left-to-right accumulation; every consumer of this mean (in particular the
// compression data path) relies on the summation order being fixed.
template <class Scalar>
Scalar vector_mean(const VecX<Scalar>& x) {
  Scalar acc = Scalar(0);
  for (Index i = 0; i < x.size(); ++i) acc += x[i];
  return acc / Scalar(x.size());
}

SpheringScale fit_sigma(const VectorList& training_vectors);

// Maps x into [0.1, 0.9]: center on the vector mean, truncate at three sigma,
// rescale. Returns the normalized vector through `d`; the mean is the caller's
// to keep (it travels with the compressed frame).
template <class Scalar>
void normalize_about(const VecX<Scalar>& x, Scalar mean, Scalar sigma, VecX<Scalar>& d) {
  const Scalar bound = Scalar(3) * sigma;
  const Scalar gain = Scalar(0.4) / bound;
  d.resize(x.size());
  for (Index i = 0; i < x.size(); ++i) {
    Scalar c = x[i] - mean;
    if (c > bound) c = bound;
    if (c < -bound) c = -bound;
    d[i] = Scalar(0.5) + gain * c;
  }
}

template <class Scalar>
VecX<Scalar> normalize(const VecX<Scalar>& x, Scalar sigma, Scalar& mean_out) {
  mean_out = vector_mean(x);
  VecX<Scalar> d;
  normalize_about(x, mean_out, sigma, d);
  return d;
}

// Inverse affine map; exact (up to rounding) on entries that were not
// truncated.
template <class Scalar>
VecX<Scalar> denormalize(const VecX<Scalar>& d_hat, Scalar mean, Scalar sigma) {
  const Scalar gain = Scalar(3) * sigma / Scalar(0.4);
  VecX<Scalar> p(d_hat.size());
  for (Index i = 0; i < d_hat.size(); ++i) {
    p[i] = gain * (d_hat[i] - Scalar(0.5)) + mean;
  }
  return p;
}

}  // namespace sensorpress
