#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "flightlab/densities.hpp"
#include "flightlab/random.hpp"
#include "flightlab/samplers.hpp"
#include "flightlab/specfun.hpp"
#include "flightlab/stats.hpp"

using namespace flightlab;

namespace {
constexpr std::size_t kN = 100000;

bool within_sigmas(double observed, double expected, double sigma, double k = 3.0) {
  return std::abs(observed - expected) <= k * sigma;
}

double binomial_sigma(double p, std::size_t n) { return std::sqrt(p * (1.0 - p) / static_cast<double>(n)); }

void check_support(const SampleBatch& b) {
  const double ct = b.c * b.t;
  for (std::size_t i = 0; i < b.size(); ++i) {
    double r2 = 0.0;
    for (int j = 0; j < b.dims; ++j) r2 += b.at(i, j) * b.at(i, j);
    const double r = std::sqrt(r2);
    if (b.boundary[i]) {
      REQUIRE(std::abs(r - ct) <= 1e-12 * ct);
    } else {
      REQUIRE(r < ct);
    }
  }
}
}  // namespace

TEST_CASE("exact line sampler") {
  const auto epd1 = sample_exact_1d(Law1D::epd(1.0, 1.0, 2.0), kN, 11);
  check_support(epd1);
  CHECK(epd1.boundary_fraction() == 0.0);
  const double ks = stats::ks_statistic(epd1.coordinate(0), [](double x) { return (x + 2.0) / 4.0; });
  CHECK(ks < stats::ks_critical_1pct(kN));

  const auto arc = sample_exact_1d(Law1D::epd(0.5, 1.0, 1.0), kN, 12);
  std::vector<double> sq;
  for (double x : arc.coordinate(0)) sq.push_back(x * x);
  const auto s = stats::summarize(sq);
  CHECK(within_sigmas(s.mean, 0.5, s.std_error));

  const auto ce = sample_exact_1d(Law1D::conditional_even(2, 1.0, 1.0), 20000, 13);
  const double ks_ce = stats::ks_statistic(ce.coordinate(0), [](double x) {
    return specfun::reg_inc_beta(2.0, 2.0, std::clamp((x + 1.0) / 2.0, 0.0, 1.0));
  });
  CHECK(ks_ce < stats::ks_critical_1pct(20000));
  CHECK_THROWS_AS(sample_exact_1d(Law1D::tanh(1.0, 1.0, 1.0), 10, 1), std::invalid_argument);
}

TEST_CASE("trajectory sampler atoms") {
  const auto cl = sample_telegraph_path(RateModel::constant(0.7), 1.0, 2.0, 1e-4, kN, 21);
  check_support(cl);
  const double p = std::exp(-1.4);
  CHECK(within_sigmas(cl.boundary_fraction(), p, binomial_sigma(p, kN)));

  const auto th = sample_telegraph_path(RateModel::tanh(1.0), 1.0, 3.0, 1e-4, kN, 22);
  check_support(th);
  const double pt = 1.0 / std::cosh(3.0);
  CHECK(within_sigmas(th.boundary_fraction(), pt, binomial_sigma(pt, kN)));

  const auto co = sample_telegraph_path(RateModel::coth(1.0), 1.0, 1.0, 1e-4, 20000, 23);
  check_support(co);
  CHECK(co.boundary_fraction() < 1e-3);
  CHECK_THROWS_AS(sample_telegraph_path(RateModel::epd(1.0), 1.0, 1.0, 0.0, 10, 1), std::domain_error);
  CHECK_THROWS_AS(sample_telegraph_path(RateModel::epd(1.0), 1.0, 1.0, 1.0, 10, 1), std::domain_error);
}

TEST_CASE("d-dimensional sampler") {
  const auto b = sample_epd_dd(1.0, 2, 1.0, 1.0, kN, 31);
  check_support(b);
  std::vector<double> r2;
  for (double r : b.norms()) r2.push_back(r * r);
  CHECK(stats::ks_statistic(r2, [](double x) { return x; }) < stats::ks_critical_1pct(kN));

  const auto d1 = sample_epd_dd(0.7, 1, 1.0, 1.0, kN, 32);
  const auto e1 = sample_exact_1d(Law1D::epd(0.7, 1.0, 1.0), kN, 33);
  CHECK(stats::ks_two_sample(d1.coordinate(0), e1.coordinate(0)) < stats::ks_two_sample_critical_1pct(kN, kN));

  const auto d3 = sample_epd_dd(1.5, 3, 1.0, 1.0, 20000, 34);
  const stats::TabulatedCdf cdf([](double x) { return density_marginal_radial(1.5, 3, 1, x, 1.0, 1.0); }, -1.0,
                                1.0);
  CHECK(stats::ks_statistic(d3.coordinate(0), [&](double x) { return cdf(x); }) <
        stats::ks_critical_1pct(20000));
}

TEST_CASE("parity-conditioned counts") {
  const auto even = sample_parity_counts(Parity::Even, 3.0, kN, 41);
  std::size_t zeros = 0;
  std::vector<double> as_real;
  for (int k : even) {
    CHECK(k % 2 == 0);
    zeros += k == 0;
    as_real.push_back(k);
  }
  const double p0 = 1.0 / std::cosh(3.0);
  CHECK(within_sigmas(static_cast<double>(zeros) / kN, p0, binomial_sigma(p0, kN)));
  const auto s = stats::summarize(as_real);
  CHECK(within_sigmas(s.mean, 3.0 * std::tanh(3.0), s.std_error));

  for (int k : sample_parity_counts(Parity::Odd, 0.2, 5000, 42)) CHECK(k % 2 == 1);
  Rng rng(3);
  CHECK(parity_conditioned_count(Parity::Odd, 50.0, rng) % 2 == 1);
}

TEST_CASE("planar flights") {
  const auto two = sample_planar_flight(CountSource::fixed(2), 1.0, 1.0, kN, 51);
  check_support(two);
  std::vector<double> r2;
  for (double r : two.norms()) r2.push_back(r * r);
  CHECK(stats::ks_statistic(r2, [](double x) { return x; }) < stats::ks_critical_1pct(kN));

  const auto even = sample_planar_flight(CountSource::parity_poisson(Parity::Even, 1.0), 1.0, 3.0, kN, 52);
  check_support(even);
  const double pb = 1.0 / std::cosh(3.0);
  CHECK(within_sigmas(even.boundary_fraction(), pb, binomial_sigma(pb, kN)));

  const auto odd = sample_planar_flight(CountSource::parity_poisson(Parity::Odd, 1.0), 1.0, 3.0, 20000, 53);
  check_support(odd);
  CHECK(odd.boundary_fraction() == 0.0);

  CHECK_THROWS(sample_planar_flight(CountSource::fixed(0), 1.0, 2.0, 100, 54));
}

TEST_CASE("four-direction motion") {
  const auto b = sample_four_directions(RateModel::constant(1.0), 1.0, 3.0, 1e-4, kN, 61);
  REQUIRE(b.dims == 2);
  std::vector<double> x, y;
  for (std::size_t i = 0; i < b.size(); ++i) {
    CHECK(std::abs(b.at(i, 0)) + std::abs(b.at(i, 1)) <= 3.0 * (1.0 + 1e-12));
    x.push_back(b.at(i, 0));
    y.push_back(b.at(i, 1));
  }
  const double p = std::exp(-3.0);
  CHECK(within_sigmas(b.boundary_fraction(), p, binomial_sigma(p, kN)));
  const auto sx = stats::summarize(x), sy = stats::summarize(y);
  double cov = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) cov += (x[i] - sx.mean) * (y[i] - sy.mean);
  cov /= static_cast<double>(x.size() - 1);
  const double corr = cov / std::sqrt(sx.variance * sy.variance);
  CHECK(within_sigmas(corr, 0.0, 1.0 / std::sqrt(static_cast<double>(kN))));

  // x + y is the sum of two independent telegraphs (speed c/2, rate lambda/2)
  const auto u = sample_telegraph_path(RateModel::constant(0.5), 0.5, 3.0, 1e-4, kN, 62);
  const auto v = sample_telegraph_path(RateModel::constant(0.5), 0.5, 3.0, 1e-4, kN, 63);
  std::vector<double> diag, ref;
  for (std::size_t i = 0; i < b.size(); ++i) {
    diag.push_back(b.at(i, 0) + b.at(i, 1));
    ref.push_back(u.at(i, 0) + v.at(i, 0));
  }
  CHECK(stats::ks_two_sample(diag, ref) < stats::ks_two_sample_critical_1pct(kN, kN));
}

TEST_CASE("projected flights and leg speeds") {
  const auto proj = sample_projected_flight(2, 3, 1.0, 1.0, kN, 71);
  const auto flat = sample_planar_flight(CountSource::fixed(3), 1.0, 1.0, kN, 72);
  CHECK(proj.dims == 2);
  CHECK(stats::ks_two_sample(proj.norms(), flat.norms()) < stats::ks_two_sample_critical_1pct(kN, kN));

  for (int d : {2, 3, 5}) {
    const auto s = stats::summarize(sample_leg_speeds(d, 1.5, kN, 73));
    CAPTURE(d);
    if (d == 2) {
      CHECK(std::abs(s.mean - 1.5) < 1e-12);
    } else {
      CHECK(within_sigmas(s.mean, mean_speed(d, 1.5), s.std_error));
    }
  }

  const auto p3 = sample_projected_flight(3, 2, 1.0, 1.0, 20000, 74, 1, 2.0);
  check_support(p3);
  const double g = PlanarConditional::proj_x(3, 2).shape();
  const double ks = stats::ks_statistic(p3.norms(), [g](double r) { return 1.0 - std::pow(1.0 - r * r, g); });
  CHECK(ks < stats::ks_critical_1pct(20000));
}

TEST_CASE("time-unit distance") {
  const auto u1 = sample_ufrak(1.0, 2.0, kN, 81);
  for (double u : u1) {
    CHECK(u > 0.0);
    CHECK(u < 2.0);
  }
  CHECK(stats::ks_statistic(u1, [](double u) { return u / 2.0; }) < stats::ks_critical_1pct(kN));
  const auto s = stats::summarize(sample_ufrak(0.5, 1.0, kN, 82));
  CHECK(within_sigmas(s.mean, 2.0 / std::numbers::pi, s.std_error));
}

TEST_CASE("batches do not depend on the thread count") {
  const std::size_t n = 3 * kSampleChunk + 17;
  const auto a1 = sample_telegraph_path(RateModel::epd(0.5), 1.0, 1.0, 1e-3, n, 91, 1);
  const auto a3 = sample_telegraph_path(RateModel::epd(0.5), 1.0, 1.0, 1e-3, n, 91, 3);
  CHECK(a1.positions == a3.positions);
  CHECK(a1.boundary == a3.boundary);
  const auto b1 = sample_planar_flight(CountSource::parity_poisson(Parity::Even, 1.0), 1.0, 3.0, n, 92, 1);
  const auto b4 = sample_planar_flight(CountSource::parity_poisson(Parity::Even, 1.0), 1.0, 3.0, n, 92, 4);
  CHECK(b1.positions == b4.positions);
  CHECK(sample_leg_speeds(3, 1.0, n, 93, 1) == sample_leg_speeds(3, 1.0, n, 93, 2));
  CHECK(sample_parity_counts(Parity::Odd, 2.0, n, 94, 1) == sample_parity_counts(Parity::Odd, 2.0, n, 94, 5));
  const auto c1 = sample_epd_dd(1.2, 3, 1.0, 1.0, n, 95, 1);
  const auto c2 = sample_epd_dd(1.2, 3, 1.0, 1.0, n, 95, 2);
  CHECK(c1.positions == c2.positions);
}

TEST_CASE("same seed, same batch; different seed, different batch") {
  const auto a = sample_four_directions(RateModel::tanh(1.0), 1.0, 2.0, 1e-4, 1000, 5);
  const auto b = sample_four_directions(RateModel::tanh(1.0), 1.0, 2.0, 1e-4, 1000, 5);
  const auto c = sample_four_directions(RateModel::tanh(1.0), 1.0, 2.0, 1e-4, 1000, 6);
  CHECK(a.positions == b.positions);
  CHECK(a.positions != c.positions);
  CHECK(a.seed == 5);
  CHECK_FALSE(a.descriptor.empty());
}
