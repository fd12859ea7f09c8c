#include "sensorpress/energy.hpp"

#include <stdexcept>

namespace sensorpress {

double e_clk(const RadioModel& model) {
  if (!(model.f_clk > 0.0)) {
    throw std::invalid_argument("e_clk: clock rate must be positive");
  }
  return model.v_cc * model.i_mcu / model.f_clk;
}

double s_bit(const RadioModel& model) {
  if (!(model.data_rate > 0.0)) {
    throw std::invalid_argument("s_bit: data rate must be positive");
  }
  return model.v_cc * (model.i_tx + model.i_rx) / model.data_rate;
}

std::uint64_t cycles_compress(Index length, Index code_size, const CpuCostTable& t) {
  if (length < 0 || code_size < 0) {
    throw std::invalid_argument("cycles_compress: sizes must be non-negative");
  }
  const auto l = static_cast<std::uint64_t>(length);
  const auto k = static_cast<std::uint64_t>(code_size);
  const std::uint64_t normalization = (t.add + t.div + t.sub + 2 * t.cmp) * l;
  const std::uint64_t affine = (t.mul * l + 2 * t.add * l) * k;
  const std::uint64_t activation = (t.add + t.div + t.exp) * k;
  return normalization + affine + activation;
}

double energy_compressed(Index length, Index code_size, int hops, const RadioModel& model,
                         const CpuCostTable& table) {
  if (hops < 1) {
    throw std::invalid_argument("energy_compressed: hops must be at least 1");
  }
  const double cpu = e_clk(model) * static_cast<double>(cycles_compress(length, code_size, table));
  const double radio = 32.0 * static_cast<double>(code_size) * s_bit(model) * hops;
  return cpu + radio;
}

double energy_raw(Index length, int hops, const RadioModel& model) {
  if (hops < 1) {
    throw std::invalid_argument("energy_raw: hops must be at least 1");
  }
  return 32.0 * static_cast<double>(length) * s_bit(model) * hops;
}

std::vector<EnergySavingsRow> savings_report(Index length, Index code_size,
                                             const std::vector<int>& hops_list,
                                             const RadioModel& model, const CpuCostTable& table) {
  std::vector<EnergySavingsRow> rows;
  rows.reserve(hops_list.size());
  for (int hops : hops_list) {
    EnergySavingsRow row;
    row.hops = hops;
    row.e_raw = energy_raw(length, hops, model);
    row.e_compressed = energy_compressed(length, code_size, hops, model, table);
    row.ratio = row.e_raw / row.e_compressed;
    row.worthwhile = row.e_compressed < row.e_raw;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace sensorpress
