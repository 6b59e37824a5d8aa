#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "flightlab/format.hpp"
#include "flightlab/stats.hpp"

using namespace flightlab;

TEST_CASE("one-sample KS distance") {
  CHECK(std::abs(stats::ks_statistic({0.5}, [](double x) { return x; }) - 0.5) < 1e-15);
  CHECK(std::abs(stats::ks_statistic({0.25, 0.75}, [](double x) { return x; }) - 0.25) < 1e-15);
  CHECK(std::abs(stats::ks_critical_1pct(10000) - 0.0163) < 1e-15);
}

TEST_CASE("two-sample KS distance") {
  CHECK(stats::ks_two_sample({1.0, 2.0, 3.0}, {1.0, 2.0, 3.0}) == 0.0);
  CHECK(std::abs(stats::ks_two_sample({1.0, 2.0}, {3.0, 4.0}) - 1.0) < 1e-15);
  CHECK(std::abs(stats::ks_two_sample({1.0, 3.0}, {2.0, 4.0}) - 0.5) < 1e-15);
  CHECK(std::abs(stats::ks_two_sample_critical_1pct(100, 100) - 1.63 * std::sqrt(0.02)) < 1e-15);
}

TEST_CASE("summary") {
  const auto s = stats::summarize({1.0, 2.0, 3.0, 4.0});
  CHECK(s.n == 4);
  CHECK(s.mean == 2.5);
  CHECK(std::abs(s.variance - 5.0 / 3.0) < 1e-15);
  CHECK(std::abs(s.std_error - std::sqrt(5.0 / 12.0)) < 1e-15);
}

TEST_CASE("tabulated CDF") {
  const stats::TabulatedCdf cdf([](double x) { return std::sin(x); }, 0.0, std::numbers::pi, 64);
  CHECK(std::abs(cdf.total() - 2.0) < 1e-13);
  for (double x = 0.0; x <= std::numbers::pi; x += 0.1) CHECK(std::abs(cdf(x) - (1.0 - std::cos(x))) < 1e-13);
  CHECK(cdf(-1.0) == 0.0);
  CHECK(std::abs(cdf(10.0) - 2.0) < 1e-13);
}

TEST_CASE("histogram and binned L1") {
  const auto h = stats::histogram({0.1, 0.2, 0.6, 0.9, 1.5}, 0.0, 1.0, 2);
  CHECK(h.counts.size() == 2);
  CHECK(h.counts[0] == 2);
  CHECK(h.counts[1] == 2);
  CHECK(h.total == 5);
  CHECK(h.bin_width() == 0.5);
  CHECK(h.edge(1) == 0.5);
  const double l1 = stats::binned_l1(h, [](double x) { return x; });
  CHECK(std::abs(l1 - 2.0 * std::abs(0.4 - 0.5)) < 1e-15);
}

TEST_CASE("real formatting round-trips") {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 0.0}) {
    CHECK(std::stod(format_real(v)) == v);
  }
  CHECK(format_real(0.5) == "0.5");
}
