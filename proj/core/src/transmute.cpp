#include "flightlab/transmute.hpp"

#include <cmath>
#include <memory>
#include <numbers>
#include <stdexcept>
#include <string>

#include "flightlab/quadrature.hpp"
#include "flightlab/specfun.hpp"

namespace flightlab::transmute {
namespace {

void require_alpha(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw std::domain_error("transmutation: alpha must be positive");
  }
}

void require_speed(double c) {
  if (!(c > 0.0) || !std::isfinite(c)) throw std::domain_error("transmutation: c must be positive");
}

// Nodes u_i in [0, 1] and normalized weights for the kernel (1 - u^2)^{alpha-1}.
struct KernelRule {
  std::vector<double> u;
  std::vector<double> w;
};

std::shared_ptr<const KernelRule> kernel_rule(double alpha, int nodes) {
  const auto base = quadrature::cached_gauss_jacobi(nodes, alpha - 1.0, 0.0);
  auto rule = std::make_shared<KernelRule>();
  rule->u.resize(base->nodes.size());
  rule->w.resize(base->nodes.size());
  double total = 0.0;
  for (std::size_t i = 0; i < base->nodes.size(); ++i) {
    const double u = 0.5 * (1.0 + base->nodes[i]);
    rule->u[i] = u;
    rule->w[i] = base->weights[i] * std::pow(1.0 + u, alpha - 1.0);
    total += rule->w[i];
  }
  for (double& w : rule->w) w /= total;
  return rule;
}

}  // namespace

Datum make_datum(std::string_view name, double scale) {
  if (!(scale > 0.0)) throw std::invalid_argument("datum scale must be positive");
  const double s = scale;
  Datum d;
  d.name = std::string(name);
  if (name == "gaussian") {
    d.f = [s](double x) { return std::exp(-(x / s) * (x / s)); };
    d.antiderivative = [s](double x) {
      return 0.5 * std::sqrt(std::numbers::pi) * s * std::erf(x / s);
    };
  } else if (name == "cosine") {
    d.f = [s](double x) { return std::cos(x / s); };
    d.antiderivative = [s](double x) { return s * std::sin(x / s); };
  } else if (name == "poly2") {
    d.f = [](double x) { return x * x; };
    d.antiderivative = [](double x) { return x * x * x / 3.0; };
  } else if (name == "poly4") {
    d.f = [](double x) { return x * x * x * x; };
    d.antiderivative = [](double x) { return x * x * x * x * x / 5.0; };
  } else if (name == "one") {
    d.f = [](double) { return 1.0; };
    d.antiderivative = [](double x) { return x; };
  } else if (name == "x") {
    d.f = [](double x) { return x; };
    d.antiderivative = [](double x) { return 0.5 * x * x; };
  } else if (name == "zero") {
    d.antiderivative = [](double) { return 0.0; };
  } else {
    throw std::invalid_argument("unknown datum '" + std::string(name) + "'");
  }
  return d;
}

Forcing make_forcing(std::string_view name, double scale) {
  Forcing F;
  F.name = std::string(name);
  if (name == "xt") {
    F.F = [](double x, double t) { return x * t; };
  } else if (name == "t") {
    F.F = [](double, double t) { return t; };
  } else {
    const Datum d = make_datum(name, scale);
    F.F = [f = d.f](double x, double) { return f(x); };
  }
  return F;
}

std::vector<std::string> datum_names() {
  return {"gaussian", "cosine", "poly2", "poly4", "one", "x", "zero"};
}

std::vector<std::string> forcing_names() {
  return {"one", "x", "xt", "t", "gaussian", "cosine", "poly2", "poly4", "zero"};
}

ScalarField1D dalembert(const Datum& f, const Datum& g, double c, int nodes) {
  require_speed(c);
  if (g.antiderivative) {
    return {[f = f.f, G = g.antiderivative, c](double x, double t) {
              const double a = x - c * t;
              const double b = x + c * t;
              return 0.5 * (f(a) + f(b)) + (G(b) - G(a)) / (2.0 * c);
            },
            "dalembert"};
  }
  auto rule = quadrature::cached_gauss_jacobi(nodes, 0.0, 0.0);
  return {[f = f.f, gf = g.f, c, rule](double x, double t) {
            const double a = x - c * t;
            const double b = x + c * t;
            double s = 0.0;
            for (std::size_t i = 0; i < rule->nodes.size(); ++i) {
              s += rule->weights[i] * gf(x + c * t * rule->nodes[i]);
            }
            // (1/2c) * ct * int_{-1}^{1} g(x + ct eta) d eta
            return 0.5 * (f(a) + f(b)) + 0.5 * t * s;
          },
          "dalembert"};
}

ScalarField1D duhamel(const Forcing& F, double c, int nodes) {
  require_speed(c);
  auto rule = quadrature::cached_gauss_jacobi(nodes, 0.0, 0.0);
  return {[F = F.F, c, rule](double x, double t) {
            if (t == 0.0) return 0.0;
            // s = t (1 + sigma)/2, y = x + c (t - s) eta:
            // w = (1/2) int_0^t (t - s) int_{-1}^{1} F(x + c(t-s) eta, s) d eta ds
            double total = 0.0;
            const auto& n = rule->nodes;
            const auto& w = rule->weights;
            for (std::size_t i = 0; i < n.size(); ++i) {
              const double s = 0.5 * t * (1.0 + n[i]);
              const double span = t - s;
              double inner = 0.0;
              for (std::size_t j = 0; j < n.size(); ++j) inner += w[j] * F(x + c * span * n[j], s);
              total += w[i] * span * inner;
            }
            return 0.5 * 0.5 * t * total;
          },
          "duhamel"};
}

ScalarField1D ek_transmute(const ScalarField1D& w, double alpha, int nodes) {
  require_alpha(alpha);
  auto rule = kernel_rule(alpha, nodes);
  return {[w = w.eval, rule](double x, double t) {
            double s = 0.0;
            for (std::size_t i = 0; i < rule->u.size(); ++i) s += rule->w[i] * w(x, rule->u[i] * t);
            return s;
          },
          "ek(" + w.smoothness_tag + ")"};
}

ScalarField1D transformed_forcing(const Forcing& F, double alpha, int nodes) {
  return ek_transmute({F.F, F.name}, alpha, nodes);
}

double ek_doubling_gap(const ScalarField1D& w, double alpha, double x, double t) {
  return std::fabs(ek_transmute(w, alpha, 64)(x, t) - ek_transmute(w, alpha, 128)(x, t));
}

double initial_velocity_factor(double alpha) {
  require_alpha(alpha);
  return std::exp(specfun::ln_gamma(alpha + 0.5) - 0.5 * std::log(std::numbers::pi) -
                  specfun::ln_gamma(alpha + 1.0));
}

double symmetric_beta_cdf(double alpha, double z) {
  require_alpha(alpha);
  if (z <= -1.0) return 0.0;
  if (z >= 1.0) return 1.0;
  return specfun::reg_inc_beta(alpha, alpha, 0.5 * (1.0 + z));
}

ScalarField1D velocity_cdf_representation(const Datum& g, double alpha, double c) {
  require_alpha(alpha);
  require_speed(c);
  return {[g = g.f, alpha, c](double x, double t) {
            if (t == 0.0) return 0.0;
            const double ct = c * t;
            // Symmetric halves: y = x -+ ct s, s in (0, 1).
            auto half = [&](double sign) {
              return quadrature::tanh_sinh(
                  [&](double s) { return g(x + sign * ct * s) * symmetric_beta_cdf(alpha, -s); },
                  0.0, 1.0, 1e-13);
            };
            return t * (half(-1.0) + half(1.0));
          },
          "cdf-representation"};
}

}  // namespace flightlab::transmute
