#pragma once

#include <cstdint>
#include <vector>

#include "sensorpress/types.hpp"

namespace sensorpress {

// Per-operation CPU cycle costs of the MSP430-class micro-controller
// (floating point, no hardware multiplier).
struct CpuCostTable {
  std::uint64_t add = 184;
  std::uint64_t sub = 177;
  std::uint64_t mul = 395;
  std::uint64_t div = 405;
  std::uint64_t cmp = 37;
  std::uint64_t exp = 52000;
};

// Radio and MCU electrical constants (9XTend transceiver, MSP430 MCU).
struct RadioModel {
  double v_cc = 3.3;       // volts
  double i_tx = 0.600;     // amps
  double i_rx = 0.080;     // amps
  double data_rate = 9600; // bits/s
  double i_mcu = 0.00185;  // amps
  double f_clk = 3.3e6;    // Hz
};

// Energy per CPU clock cycle: V_CC * I_MCU / F_CLK. 1.85 nJ with defaults.
double e_clk(const RadioModel& model);

// Energy to transmit one bit and receive it at the next hop:
// V_CC * (I_TX + I_RX) / data_rate. 233.75 uJ with defaults.
double s_bit(const RadioModel& model);

// Clock cycles to compress an L-vector into a K-code: the sphering pass, the
// encoder affine map, and K sigmoid evaluations.
std::uint64_t cycles_compress(Index length, Index code_size, const CpuCostTable& table = {});

// Per-frame energy with compression: CPU once at the source plus K floats over
// each hop (s_bit already pays both ends of a hop).
double energy_compressed(Index length, Index code_size, int hops, const RadioModel& model = {},
                         const CpuCostTable& table = {});

// Per-frame energy for raw transmission of L floats over the given hops.
double energy_raw(Index length, int hops, const RadioModel& model = {});

struct EnergySavingsRow {
  int hops = 0;
  double e_raw = 0.0;
  double e_compressed = 0.0;
  double ratio = 0.0;        // e_raw / e_compressed
  bool worthwhile = false;   // compression actually saves energy
};

std::vector<EnergySavingsRow> savings_report(Index length, Index code_size,
                                             const std::vector<int>& hops_list,
                                             const RadioModel& model = {},
                                             const CpuCostTable& table = {});

}  // namespace sensorpress
