#include <cmath>
#include <numbers>
#include <stdexcept>

#include "doctest.h"
#include "flightlab/samplers.hpp"
#include "flightlab/specfun.hpp"
#include "flightlab/stats.hpp"
#include "flightlab/transmute.hpp"

using namespace flightlab;
using namespace flightlab::transmute;

TEST_CASE("d'Alembert examples") {
  const auto w1 = dalembert(make_datum("x"), Datum::zero(), 1.7);
  const auto w2 = dalembert(make_datum("poly2"), Datum::zero(), 1.7);
  const auto w3 = dalembert(Datum::zero(), make_datum("cosine"), 1.0);
  Datum cos_no_anti = make_datum("cosine");
  cos_no_anti.antiderivative = nullptr;
  const auto w4 = dalembert(Datum::zero(), cos_no_anti, 1.0);
  for (double x : {-1.3, 0.0, 0.4, 2.0}) {
    for (double t : {0.0, 0.3, 1.1}) {
      CHECK(std::abs(w1(x, t) - x) < 1e-14);
      CHECK(std::abs(w2(x, t) - (x * x + 1.7 * 1.7 * t * t)) < 1e-13);
      CHECK(std::abs(w3(x, t) - std::cos(x) * std::sin(t)) < 1e-14);
      CHECK(std::abs(w4(x, t) - std::cos(x) * std::sin(t)) < 1e-13);
    }
  }
}

TEST_CASE("Duhamel examples") {
  const auto one = duhamel(make_forcing("one"), 1.3);
  const auto x = duhamel(make_forcing("x"), 1.3);
  const auto zero = duhamel(Forcing{}, 1.3);
  for (double px : {-0.5, 0.0, 1.2}) {
    for (double t : {0.0, 0.4, 1.5}) {
      CHECK(std::abs(one(px, t) - t * t / 2.0) < 1e-13);
      CHECK(std::abs(x(px, t) - px * t * t / 2.0) < 1e-13);
      CHECK(zero(px, t) == 0.0);
    }
  }
}

TEST_CASE("named data and forcings") {
  CHECK_THROWS_AS(make_datum("sawtooth"), std::invalid_argument);
  CHECK_THROWS_AS(make_forcing("sawtooth"), std::invalid_argument);
  CHECK(std::abs(make_datum("gaussian", 2.0).f(2.0) - std::exp(-1.0)) < 1e-15);
  CHECK(make_datum("poly4").f(2.0) == 16.0);
  CHECK(make_forcing("xt").F(2.0, 3.0) == 6.0);
  CHECK_FALSE(datum_names().empty());
  CHECK_FALSE(forcing_names().empty());
}

TEST_CASE("transmutation examples") {
  for (double a : {0.5, 1.0, 1.5, 3.0}) {
    const auto v1 = ek_transmute(dalembert(make_datum("x"), Datum::zero(), 1.0), a);
    const auto v2 = ek_transmute(dalembert(make_datum("poly2"), Datum::zero(), 1.4), a);
    const auto v3 = ek_transmute(duhamel(make_forcing("one"), 1.0), a);
    for (double x : {-1.0, 0.3}) {
      for (double t : {0.2, 1.0, 2.0}) {
        CAPTURE(a);
        CHECK(std::abs(v1(x, t) - x) < 1e-13);
        CHECK(std::abs(v2(x, t) - (x * x + 1.96 * t * t / (2.0 * a + 1.0))) < 1e-12);
        CHECK(std::abs(v3(x, t) - t * t / (2.0 * (2.0 * a + 1.0))) < 1e-13);
      }
    }
  }
  CHECK_THROWS_AS(ek_transmute(dalembert(make_datum("x"), Datum::zero(), 1.0), 0.0), std::domain_error);
}

TEST_CASE("transformed forcing examples") {
  for (double a : {0.5, 1.5, 2.0}) {
    const auto one = transformed_forcing(make_forcing("one"), a);
    const auto t = transformed_forcing(make_forcing("t"), a);
    const auto zero = transformed_forcing(Forcing{}, a);
    for (double tt : {0.5, 2.0}) {
      CHECK(std::abs(one(0.3, tt) - 1.0) < 1e-14);
      CHECK(std::abs(t(0.3, tt) - tt / (a * specfun::beta(a, 0.5))) < 1e-13);
      CHECK(zero(0.3, tt) == 0.0);
    }
  }
}

TEST_CASE("quadrature doubling check") {
  for (const char* name : {"gaussian", "cosine", "poly4"}) {
    const auto w = dalembert(make_datum(name), Datum::zero(), 1.0);
    for (double a : {0.5, 1.5, 3.0}) {
      CAPTURE(name);
      CHECK(ek_doubling_gap(w, a, 0.3, 1.0) <= 1e-9);
    }
  }
}

TEST_CASE("initial velocity of the transmuted solution") {
  CHECK(std::abs(initial_velocity_factor(0.5) - 2.0 / std::numbers::pi) < 1e-15);
  CHECK(std::abs(initial_velocity_factor(1.0) - 0.5) < 1e-15);
  const double h = 1e-4;
  for (const char* name : {"cosine", "gaussian"}) {
    const auto g = make_datum(name);
    for (double a : {0.5, 1.5, 2.5}) {
      const auto v = ek_transmute(dalembert(Datum::zero(), g, 1.0), a);
      for (double x : {-0.8, 0.0, 0.5}) {
        CAPTURE(name);
        CAPTURE(a);
        CHECK(v(x, 0.0) == 0.0);
        CHECK(std::abs(v(x, h) / h - initial_velocity_factor(a) * g.f(x)) <= 1e-4);
      }
    }
  }
}

TEST_CASE("symmetric Beta CDF") {
  CHECK(symmetric_beta_cdf(1.3, -1.0) == 0.0);
  CHECK(symmetric_beta_cdf(1.3, 1.0) == 1.0);
  CHECK(std::abs(symmetric_beta_cdf(2.0, 0.0) - 0.5) < 1e-15);
  CHECK(std::abs(symmetric_beta_cdf(1.0, 0.2) - 0.6) < 1e-14);
  for (double z : {-0.7, -0.1, 0.4}) {
    CHECK(std::abs(1.0 - symmetric_beta_cdf(1.7, z) - symmetric_beta_cdf(1.7, -z)) < 1e-14);
  }
}

TEST_CASE("CDF representation of the velocity solution") {
  for (double a : {0.5, 1.5, 3.0}) {
    const auto g = make_datum("cosine");
    const auto v = ek_transmute(dalembert(Datum::zero(), g, 1.2), a);
    const auto alt = velocity_cdf_representation(g, a, 1.2);
    for (double x : {-1.0, 0.0, 0.7}) {
      for (double t : {0.3, 1.0, 2.0}) {
        CAPTURE(a);
        CHECK(std::abs(v(x, t) - alt(x, t)) <= 1e-8);
      }
    }
  }
}

TEST_CASE("Monte Carlo representation with the random time") {
  for (double a : {0.5, 2.0}) {
    const double t = 1.5, x = 0.2;
    const auto w = duhamel(make_forcing("one"), 1.0);
    std::vector<double> vals;
    for (double u : sample_ufrak(a, t, 100000, 2024)) vals.push_back(w(x, u));
    const auto s = stats::summarize(vals);
    const double v = ek_transmute(w, a)(x, t);
    CAPTURE(a);
    CHECK(std::abs(s.mean - v) <= 3.0 * s.std_error);
  }
}
