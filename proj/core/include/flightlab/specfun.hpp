#pragma once

// Special functions used by the closed-form laws: log-gamma, Beta, the
// regularized incomplete Beta function, modified Bessel I0/I1 and Bessel J of
// real nonnegative order. Everything here is self-contained (no libm beyond
// exp/log/sqrt) and pure.

namespace flightlab::specfun {

/// Value together with an absolute error estimate.
struct EvalResult {
  double value = 0.0;
  double abs_err_estimate = 0.0;
};

/// ln Gamma(x) for x > 0. Throws std::domain_error for x <= 0.
double ln_gamma(double x);

/// Gamma(x) for 0 < x <= 171.
double gamma(double x);

/// B(a, b) = exp(lnG(a) + lnG(b) - lnG(a+b)); symmetric in its arguments.
double beta(double a, double b);

/// Regularized incomplete Beta I_z(a, b) for z in [0, 1].
double reg_inc_beta(double a, double b, double z);
EvalResult reg_inc_beta_eval(double a, double b, double z);

/// Modified Bessel function of the first kind, order 0 or 1, for x >= 0.
/// Power series below x = 15, Hankel asymptotic expansion above. Throws
/// std::overflow_error once the result is no longer representable.
double bessel_i(int order, double x);

/// I1(x) / x with the removable singularity at 0 handled (limit 1/2).
double bessel_i1_over_x(double x);

/// Bessel J_nu(x) for nu >= 0, 0 <= x <= 30, from the ascending series.
/// Throws std::domain_error outside that domain.
double bessel_j(double order, double x);
EvalResult bessel_j_eval(double order, double x);

/// The ascending series of J_nu truncated after `terms` terms (used to
/// check that the adaptive truncation has converged).
double bessel_j_series(double order, double x, int terms);

/// Normalized Bessel function Lambda_nu(x) = Gamma(nu+1) (2/x)^nu J_nu(x),
/// i.e. the series sum_k (-x^2/4)^k / (k! (nu+1)_k). Equals 1 at x = 0.
/// Same domain as bessel_j.
double bessel_j_normalized(double order, double x);

/// Largest argument accepted by the J series.
inline constexpr double kBesselJMaxArgument = 30.0;

}  // namespace flightlab::specfun
