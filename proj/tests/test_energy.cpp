#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "sensorpress/energy.hpp"

using namespace sensorpress;

TEST_CASE("e_clk with defaults is exactly 1.85 nJ") {
  CHECK(e_clk(RadioModel{}) == 1.85e-9);
}

TEST_CASE("e_clk scales inversely with the clock and linearly with current") {
  RadioModel m;
  m.f_clk *= 2.0;
  CHECK(e_clk(m) == doctest::Approx(0.5 * 1.85e-9).epsilon(1e-12));
  m = RadioModel{};
  m.i_mcu = 0.0;
  CHECK(e_clk(m) == 0.0);
  m.f_clk = 0.0;
  CHECK_THROWS_AS(e_clk(m), std::invalid_argument);
}

TEST_CASE("s_bit with defaults is 233.75 uJ within 0.01%") {
  const double s = s_bit(RadioModel{});
  CHECK(std::abs(s - 233.75e-6) / 233.75e-6 <= 1e-4);
}

TEST_CASE("s_bit with the receive current off is 206.25 uJ") {
  RadioModel m;
  m.i_rx = 0.0;
  CHECK(s_bit(m) == doctest::Approx(206.25e-6).epsilon(1e-12));
}

TEST_CASE("doubling the data rate halves s_bit") {
  RadioModel m;
  m.data_rate *= 2.0;
  CHECK(s_bit(m) == doctest::Approx(0.5 * s_bit(RadioModel{})).epsilon(1e-12));
}

TEST_CASE("compression cycle counts at the pinned sizes") {
  CHECK(cycles_compress(1, 0) == 840u);
  CHECK(cycles_compress(90, 32) == 3955888u);
  CHECK(cycles_compress(0, 0) == 0u);
}

TEST_CASE("cycle count is bilinear with cross coefficient 763") {
  const auto c = [](Index l, Index k) {
    return static_cast<long long>(cycles_compress(l, k));
  };
  // affine in L for fixed K and in K for fixed L
  CHECK(c(20, 7) - c(10, 7) == c(30, 7) - c(20, 7));
  CHECK(c(15, 8) - c(15, 4) == c(15, 12) - c(15, 8));
  // second mixed difference equals the multiply-accumulate coefficient
  CHECK(c(11, 6) - c(10, 6) - c(11, 5) + c(10, 5) == 763);
}

TEST_CASE("energy_compressed at (90, 32, 5 hops) is about 1.204 J") {
  const double e = energy_compressed(90, 32, 5);
  CHECK(e == doctest::Approx(1.2041184).epsilon(1e-6));
}

TEST_CASE("consecutive hop counts differ by exactly one radio term") {
  const double e1 = energy_compressed(90, 32, 1);
  const double e2 = energy_compressed(90, 32, 2);
  CHECK(e2 - e1 == doctest::Approx(32.0 * 32.0 * s_bit(RadioModel{})).epsilon(1e-12));
}

TEST_CASE("zero CPU table and K = L reduces to raw energy") {
  CpuCostTable zero{0, 0, 0, 0, 0, 0};
  CHECK(energy_compressed(90, 90, 3, RadioModel{}, zero) ==
        doctest::Approx(energy_raw(90, 3)).epsilon(1e-15));
}

TEST_CASE("energy_raw basics") {
  CHECK(energy_raw(90, 1) == doctest::Approx(2880.0 * 233.75e-6).epsilon(1e-12));
  CHECK(energy_raw(90, 4) == doctest::Approx(4.0 * energy_raw(90, 1)).epsilon(1e-12));
  CHECK(energy_raw(0, 2) == 0.0);
  CHECK_THROWS_AS(energy_raw(10, 0), std::invalid_argument);
}

TEST_CASE("savings at (90, 32, 5 hops) land in the reported 2.8x band") {
  const auto rows = savings_report(90, 32, {5});
  REQUIRE(rows.size() == 1u);
  CHECK(rows[0].ratio >= 2.74);
  CHECK(rows[0].ratio <= 2.86);
  CHECK(rows[0].worthwhile);
}

TEST_CASE("savings ratio is non-decreasing in the hop count") {
  std::vector<int> hops;
  for (int h = 1; h <= 20; ++h) hops.push_back(h);
  const auto rows = savings_report(90, 32, hops);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(rows[i].ratio >= rows[i - 1].ratio - 1e-12);
  }
}

TEST_CASE("uneconomic compression is flagged") {
  // K = L: same radio bill as raw plus a non-zero CPU bill.
  const auto rows = savings_report(90, 90, {1});
  REQUIRE(rows.size() == 1u);
  CHECK_FALSE(rows[0].worthwhile);
  CHECK(rows[0].e_compressed > rows[0].e_raw);
}

TEST_CASE("with CPU cost removed the energy ratio equals the code ratio") {
  // The L*K CPU term grows faster than the radio term, so the pure radio
  // limit only holds with the CPU bill at zero; checked at both sizes.
  CpuCostTable zero{0, 0, 0, 0, 0, 0};
  for (Index length : {Index{1000}, Index{1000000}}) {
    const Index code = length / 4;
    const double ratio = energy_compressed(length, code, 2, RadioModel{}, zero) /
                         energy_raw(length, 2);
    CHECK(ratio == doctest::Approx(0.25).epsilon(1e-12));
  }
}
