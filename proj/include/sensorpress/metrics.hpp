#pragma once

#include <cstddef>

#include "sensorpress/types.hpp"

namespace sensorpress {

enum class RateAccounting {
  full_frame,    // every serialized bit of the frame
  payload_only,  // the code vector y alone (32 * K bits)
};

const char* accounting_name(RateAccounting mode);

struct RateReport {
  std::size_t bits_original = 0;
  std::size_t bits_transmitted = 0;
  double cr_percent = 0.0;
  double savings_percent = 0.0;  // 100 - cr_percent
  RateAccounting accounting = RateAccounting::full_frame;
};

// Original size is 32 bits per reading. The caller supplies the transmitted
// bit count appropriate for the accounting mode.
RateReport compression_ratio(std::size_t transmitted_bits, Index length, RateAccounting mode);

struct FidelityReport {
  double rmse = 0.0;
  double r_squared = 0.0;
};

double rmse(const VectorXd& x, const VectorXd& x_hat);
double r_squared(const VectorXd& x, const VectorXd& x_hat);
FidelityReport fidelity(const VectorXd& x, const VectorXd& x_hat);

}  // namespace sensorpress
