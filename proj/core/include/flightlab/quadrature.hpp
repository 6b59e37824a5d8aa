#pragma once

#include <functional>
#include <memory>
#include <vector>

namespace flightlab::quadrature {

/// Nodes and weights of a fixed rule on [-1, 1].
struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss-Jacobi rule for the weight (1 - x)^a (1 + x)^b on [-1, 1], a, b > -1.
/// Built by Golub-Welsch from the Jacobi three-term recurrence.
Rule gauss_jacobi(int n, double a, double b);

/// Shared, memoized Gauss-Jacobi rule (thread-safe).
std::shared_ptr<const Rule> cached_gauss_jacobi(int n, double a, double b);

/// Integral of g over [lo, hi] against (hi - x)^a (x - lo)^b, using an n-node
/// Gauss-Jacobi rule. g should be smooth on the closed interval.
double jacobi_weighted(const std::function<double(double)>& g, double lo,
                       double hi, double a, double b, int n = 64);

/// Adaptive Gauss-Kronrod (7/15) integration to the requested tolerance.
double adaptive(const std::function<double(double)>& f, double lo, double hi,
                double tol = 1e-10);

/// Double-exponential (tanh-sinh) integration; tolerates integrable endpoint
/// singularities.
double tanh_sinh(const std::function<double(double)>& f, double lo, double hi,
                 double tol = 1e-10);

}  // namespace flightlab::quadrature
