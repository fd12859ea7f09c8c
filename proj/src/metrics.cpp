#include "sensorpress/metrics.hpp"

#include <cmath>
#include <stdexcept>

#include "sensorpress/errors.hpp"

namespace sensorpress {

const char* accounting_name(RateAccounting mode) {
  return mode == RateAccounting::full_frame ? "full_frame" : "payload_only";
}

RateReport compression_ratio(std::size_t transmitted_bits, Index length, RateAccounting mode) {
  if (length <= 0) {
    throw std::invalid_argument("compression_ratio: vector length must be positive");
  }
  RateReport report;
  report.accounting = mode;
  report.bits_original = 32 * static_cast<std::size_t>(length);
  report.bits_transmitted = transmitted_bits;
  report.cr_percent = 100.0 * static_cast<double>(transmitted_bits) /
                      static_cast<double>(report.bits_original);
  report.savings_percent = 100.0 - report.cr_percent;
  return report;
}

double rmse(const VectorXd& x, const VectorXd& x_hat) {
  if (x.size() != x_hat.size()) {
    throw std::invalid_argument("rmse: length mismatch");
  }
  return std::sqrt((x - x_hat).squaredNorm() / static_cast<double>(x.size()));
}

double r_squared(const VectorXd& x, const VectorXd& x_hat) {
  if (x.size() != x_hat.size()) {
    throw std::invalid_argument("r_squared: length mismatch");
  }
  const double mean = x.mean();
  const double denom = (x.array() - mean).square().sum();
  if (denom == 0.0) {
    throw DataError("r_squared: x is constant, variance denominator is zero");
  }
  return 1.0 - (x - x_hat).squaredNorm() / denom;
}

FidelityReport fidelity(const VectorXd& x, const VectorXd& x_hat) {
  return FidelityReport{rmse(x, x_hat), r_squared(x, x_hat)};
}

}  // namespace sensorpress
