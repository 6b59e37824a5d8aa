#include "flightlab/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <Eigen/Eigenvalues>

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

#include "flightlab/specfun.hpp"

namespace flightlab::quadrature {

Rule gauss_jacobi(int n, double a, double b) {
  if (n < 1) throw std::invalid_argument("gauss_jacobi: need n >= 1");
  if (!(a > -1.0) || !(b > -1.0)) {
    throw std::domain_error("gauss_jacobi: exponents must exceed -1");
  }
  const double ab = a + b;
  Eigen::VectorXd diag(n);
  Eigen::VectorXd sub(std::max(n - 1, 1));
  diag(0) = (b - a) / (ab + 2.0);
  for (int k = 1; k < n; ++k) {
    const double kk = k;
    const double s = 2.0 * kk + ab;
    diag(k) = (b * b - a * a) / (s * (s + 2.0));
    double beta = 0.0;
    if (k == 1) {
      beta = 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
    } else {
      beta = 4.0 * kk * (kk + a) * (kk + b) * (kk + ab) /
             (s * s * (s + 1.0) * (s - 1.0));
    }
    sub(k - 1) = std::sqrt(beta);
  }
  const double mu0 = std::exp((ab + 1.0) * std::log(2.0) +
                              specfun::ln_gamma(a + 1.0) +
                              specfun::ln_gamma(b + 1.0) -
                              specfun::ln_gamma(ab + 2.0));
  Rule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  if (n == 1) {
    rule.nodes[0] = diag(0);
    rule.weights[0] = mu0;
    return rule;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub.head(n - 1), Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("gauss_jacobi: eigen decomposition failed");
  }
  for (int i = 0; i < n; ++i) {
    rule.nodes[i] = solver.eigenvalues()(i);
    const double v = solver.eigenvectors()(0, i);
    rule.weights[i] = mu0 * v * v;
  }
  return rule;
}

std::shared_ptr<const Rule> cached_gauss_jacobi(int n, double a, double b) {
  static std::mutex mutex;
  static std::map<std::tuple<int, double, double>, std::shared_ptr<const Rule>>
      cache;
  const auto key = std::make_tuple(n, a, b);
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  auto rule = std::make_shared<const Rule>(gauss_jacobi(n, a, b));
  std::lock_guard lock(mutex);
  return cache.emplace(key, std::move(rule)).first->second;
}

double jacobi_weighted(const std::function<double(double)>& g, double lo,
                       double hi, double a, double b, int n) {
  const auto rule = cached_gauss_jacobi(n, a, b);
  const double half = 0.5 * (hi - lo);
  // (hi - x)^a (x - lo)^b = half^(a+b) (1 - s)^a (1 + s)^b, dx = half ds
  const double scale = std::pow(half, a + b + 1.0);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule->nodes.size(); ++i) {
    const double x = lo + half * (1.0 + rule->nodes[i]);
    sum += rule->weights[i] * g(x);
  }
  return scale * sum;
}

double adaptive(const std::function<double(double)>& f, double lo, double hi,
                double tol) {
  if (lo == hi) return 0.0;
  double error = 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
      f, lo, hi, 30, tol, &error);
}

double tanh_sinh(const std::function<double(double)>& f, double lo, double hi,
                 double tol) {
  if (lo == hi) return 0.0;
  static thread_local boost::math::quadrature::tanh_sinh<double> integrator;
  return integrator.integrate(f, lo, hi, tol);
}

}  // namespace flightlab::quadrature
