#include "sensorpress/sphering.hpp"

namespace sensorpress {

SpheringScale fit_sigma(const VectorList& training_vectors) {
  if (training_vectors.empty()) {
    throw DataError("fit_sigma: empty training pool");
  }
  std::size_t count = 0;
  double sum_sq = 0.0;
  for (const VectorXd& x : training_vectors) {
    if (x.size() < 2) {
      throw DataError("fit_sigma: vectors must have at least 2 entries");
    }
    const double m = x.mean();
    sum_sq += (x.array() - m).square().sum();
    count += static_cast<std::size_t>(x.size());
  }
  const double variance = sum_sq / static_cast<double>(count);
  if (!(variance > 0.0)) {
    throw DataError("fit_sigma: zero pooled variance, data is constant");
  }
  return SpheringScale{std::sqrt(variance)};
}

}  // namespace sensorpress
