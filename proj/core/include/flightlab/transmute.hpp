#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

// Wave-equation solutions and their Erdelyi-Kober transmutation into
// solutions of the Euler-Poisson-Darboux equation
//   v_tt + (2 alpha / t) v_t = c^2 v_xx (+ forcing).

namespace flightlab::transmute {

/// A function of (x, t).
struct ScalarField1D {
  std::function<double(double, double)> eval;
  std::string smoothness_tag = "smooth";

  double operator()(double x, double t) const { return eval(x, t); }
};

/// Initial datum f(x) with an optional closed-form antiderivative.
struct Datum {
  std::string name = "zero";
  std::function<double(double)> f = [](double) { return 0.0; };
  std::function<double(double)> antiderivative;  // may be empty

  static Datum zero() { return {}; }
};

/// Forcing F(x, t).
struct Forcing {
  std::string name = "zero";
  std::function<double(double, double)> F = [](double, double) { return 0.0; };
};

/// Named data: gaussian exp(-(x/s)^2), cosine cos(x/s), poly2 x^2, poly4 x^4,
/// one, x. `scale` is s (ignored by the polynomial data).
/// Throws std::invalid_argument for unknown names.
Datum make_datum(std::string_view name, double scale = 1.0);

/// Named forcings: one, x, xt, t, or any datum name (time independent).
Forcing make_forcing(std::string_view name, double scale = 1.0);

std::vector<std::string> datum_names();
std::vector<std::string> forcing_names();

/// w = [f(x+ct) + f(x-ct)]/2 + (1/2c) int_{x-ct}^{x+ct} g. The g-integral uses
/// the antiderivative when one is given, otherwise a fixed `nodes`-point
/// Gauss-Legendre rule on [x-ct, x+ct], so w is smooth in (x, t).
ScalarField1D dalembert(const Datum& f, const Datum& g, double c, int nodes = 64);

/// Solution of w_tt = c^2 w_xx + F with zero Cauchy data:
///   w = (1/2c) int_0^t ds int_{x-c(t-s)}^{x+c(t-s)} F(y, s) dy,
/// evaluated with a fixed nodes x nodes Gauss-Legendre product rule.
ScalarField1D duhamel(const Forcing& F, double c, int nodes = 32);

/// v(x, t) = 2/B(alpha, 1/2) int_0^1 (1 - u^2)^{alpha-1} w(x, ut) du.
/// Gauss-Jacobi in u with weight (1-u)^{alpha-1}; the smooth factor
/// (1+u)^{alpha-1} is folded into the weights, which are normalized to sum 1.
ScalarField1D ek_transmute(const ScalarField1D& w, double alpha, int nodes = 64);

/// The same weighted average applied to a forcing: the right-hand side of the
/// forced EPD equation solved by ek_transmute(duhamel(F)).
ScalarField1D transformed_forcing(const Forcing& F, double alpha, int nodes = 64);

/// |v_64 - v_128| at (x, t): the doubling check of the transmutation rule.
double ek_doubling_gap(const ScalarField1D& w, double alpha, double x, double t);

/// Gamma(alpha + 1/2) / (sqrt(pi) Gamma(alpha + 1)): the initial velocity of
/// ek_transmute(dalembert(0, g)) relative to g.
double initial_velocity_factor(double alpha);

/// F(z) = (1/B(alpha,1/2)) int_{-1}^z (1-u^2)^{alpha-1} du = I_{(z+1)/2}(alpha, alpha).
double symmetric_beta_cdf(double alpha, double z);

/// Alternative form of ek_transmute(dalembert(0, g)):
///   (1/c) int_{x-ct}^{x+ct} g(y) F(-|y - x| / ct) dy,
/// integrated by tanh-sinh on each half.
ScalarField1D velocity_cdf_representation(const Datum& g, double alpha, double c);

}  // namespace flightlab::transmute
