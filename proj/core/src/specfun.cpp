#include "flightlab/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace flightlab::specfun {
namespace {

// zeta(k) for k = 2..31, for the Taylor series of ln Gamma about 1 and 2.
constexpr std::array<double, 30> kZeta = {
    1.6449340668482264365, 1.2020569031595942854, 1.0823232337111381915,
    1.0369277551433699263, 1.0173430619844491397, 1.0083492773819228268,
    1.0040773561979443394, 1.0020083928260822144, 1.0009945751278180853,
    1.0004941886041194646, 1.0002460865533080483, 1.0001227133475784891,
    1.0000612481350587048, 1.0000305882363070205, 1.0000152822594086519,
    1.0000076371976378998, 1.0000038172932649998, 1.0000019082127165539,
    1.0000009539620338728, 1.0000004769329867878, 1.0000002384505027277,
    1.0000001192199259653, 1.0000000596081890513, 1.0000000298035035147,
    1.0000000149015548284, 1.0000000074507117898, 1.0000000037253340248,
    1.0000000018626597235, 1.0000000009313274324, 1.0000000004656629065};

constexpr double kEulerGamma = 0.57721566490153286061;

// ln Gamma(1 + e) for |e| <= 0.25.
double ln_gamma_1p(double e) {
  double sum = 0.0;
  double power = -e;  // (-e)^k
  for (std::size_t i = 0; i < kZeta.size(); ++i) {
    power *= -e;
    const double k = static_cast<double>(i + 2);
    sum += kZeta[i] * power / k;
  }
  return -kEulerGamma * e + sum;
}

// Lanczos approximation (g = 671/128, 14 terms).
double ln_gamma_lanczos(double xx) {
  static constexpr std::array<double, 14> cof = {
      57.1562356658629235,     -59.5979603554754912,
      14.1360979747417471,     -0.491913816097620199,
      .339946499848118887e-4,  .465236289270485756e-4,
      -.983744753048795646e-4, .158088703224912494e-3,
      -.210264441724104883e-3, .217439618115212643e-3,
      -.164318106536763890e-3, .844182239838527433e-4,
      -.261908384015814087e-4, .368991826595316234e-5};
  double x = xx;
  double y = xx;
  double tmp = x + 5.24218750000000000;
  tmp = (x + 0.5) * std::log(tmp) - tmp;
  double ser = 0.999999999999997092;
  for (double c : cof) ser += c / ++y;
  return tmp + std::log(2.5066282746310005 * ser / x);
}

// Double-double arithmetic for the alternating J series, where cancellation
// between terms of size ~exp(x) would otherwise destroy the result.
struct DD {
  double hi = 0.0;
  double lo = 0.0;
};

DD two_sum(double a, double b) {
  const double s = a + b;
  const double bb = s - a;
  const double e = (a - (s - bb)) + (b - bb);
  return {s, e};
}

DD quick_two_sum(double a, double b) {
  const double s = a + b;
  return {s, b - (s - a)};
}

DD dd_add(DD a, DD b) {
  DD s = two_sum(a.hi, b.hi);
  DD t = two_sum(a.lo, b.lo);
  s.lo += t.hi;
  s = quick_two_sum(s.hi, s.lo);
  s.lo += t.lo;
  return quick_two_sum(s.hi, s.lo);
}

DD dd_mul(DD a, DD b) {
  const double p = a.hi * b.hi;
  const double e = std::fma(a.hi, b.hi, -p);
  return quick_two_sum(p, e + (a.hi * b.lo + a.lo * b.hi));
}

DD dd_div(DD a, DD b) {
  const double q1 = a.hi / b.hi;
  DD r = dd_add(a, dd_mul(b, DD{-q1, 0.0}));
  const double q2 = r.hi / b.hi;
  r = dd_add(r, dd_mul(b, DD{-q2, 0.0}));
  const double q3 = r.hi / b.hi;
  DD q = quick_two_sum(q1, q2);
  return dd_add(q, DD{q3, 0.0});
}

void check_j_domain(double order, double x) {
  if (!(order >= 0.0) || !(x >= 0.0)) {
    throw std::domain_error("bessel_j: order and argument must be >= 0");
  }
  if (x > kBesselJMaxArgument) {
    throw std::domain_error("bessel_j: argument " + std::to_string(x) +
                            " beyond the series domain (x <= 30)");
  }
}

struct SeriesSum {
  double value = 0.0;
  double max_term = 0.0;
  double last_term = 0.0;
  int terms = 0;
};

// sum_{k < max_terms} (-x^2/4)^k / (k! (nu+1)_k); with adaptive = true the
// loop stops once the terms are negligible against the largest one.
SeriesSum normalized_j_series(double order, double x, int max_terms,
                              bool adaptive) {
  const DD q = dd_mul(DD{x, 0.0}, DD{-0.25 * x, 0.0});
  DD term{1.0, 0.0};
  DD sum{0.0, 0.0};
  SeriesSum out;
  for (int k = 0; k < max_terms; ++k) {
    sum = dd_add(sum, term);
    const double mag = std::abs(term.hi);
    out.max_term = std::max(out.max_term, mag);
    out.last_term = mag;
    out.terms = k + 1;
    const double kk = static_cast<double>(k + 1);
    if (adaptive && kk > 0.5 * x &&
        mag <= 1e-34 * std::max(1.0, out.max_term)) {
      break;
    }
    const DD denom = dd_mul(DD{kk, 0.0}, two_sum(kk, order));
    term = dd_div(dd_mul(term, q), denom);
  }
  out.value = sum.hi + sum.lo;
  return out;
}

}  // namespace

double ln_gamma(double x) {
  if (!(x > 0.0)) {
    throw std::domain_error("ln_gamma: argument must be positive");
  }
  if (x == 1.0 || x == 2.0) return 0.0;
  if (std::abs(x - 1.0) <= 0.25) return ln_gamma_1p(x - 1.0);
  if (std::abs(x - 2.0) <= 0.25) {
    const double e = x - 2.0;
    return ln_gamma_1p(e) + std::log1p(e);
  }
  return ln_gamma_lanczos(x);
}

double gamma(double x) {
  if (x > 171.6) throw std::overflow_error("gamma: argument too large");
  return std::exp(ln_gamma(x));
}

double beta(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw std::domain_error("beta: arguments must be positive");
  }
  return std::exp(ln_gamma(a) + ln_gamma(b) - ln_gamma(a + b));
}

namespace {

// Modified Lentz evaluation of the continued fraction for I_z(a, b).
double betacf(double a, double b, double x, int& iterations) {
  constexpr double fpmin = std::numeric_limits<double>::min() / 1e-16;
  constexpr double eps = 1e-16;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < fpmin) d = fpmin;
  d = 1.0 / d;
  double h = d;
  int m = 1;
  for (; m < 20000; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < fpmin) d = fpmin;
    c = 1.0 + aa / c;
    if (std::abs(c) < fpmin) c = fpmin;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < fpmin) d = fpmin;
    c = 1.0 + aa / c;
    if (std::abs(c) < fpmin) c = fpmin;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) <= eps) break;
  }
  iterations = m;
  return h;
}

}  // namespace

EvalResult reg_inc_beta_eval(double a, double b, double z) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw std::domain_error("reg_inc_beta: a and b must be positive");
  }
  if (!(z >= 0.0 && z <= 1.0)) {
    throw std::domain_error("reg_inc_beta: z must lie in [0, 1]");
  }
  if (z == 0.0) return {0.0, 0.0};
  if (z == 1.0) return {1.0, 0.0};
  const double log_front = ln_gamma(a + b) - ln_gamma(a) - ln_gamma(b) +
                           a * std::log(z) + b * std::log1p(-z);
  const double front = std::exp(log_front);
  int iterations = 0;
  double value = 0.0;
  if (z < (a + 1.0) / (a + b + 2.0)) {
    value = front * betacf(a, b, z, iterations) / a;
  } else {
    value = 1.0 - front * betacf(b, a, 1.0 - z, iterations) / b;
  }
  value = std::min(1.0, std::max(0.0, value));
  const double err = 4e-16 * (1.0 + std::abs(log_front)) +
                     1e-16 * static_cast<double>(iterations);
  return {value, err};
}

double reg_inc_beta(double a, double b, double z) {
  return reg_inc_beta_eval(a, b, z).value;
}

namespace {

constexpr double kBesselISwitch = 15.0;

double bessel_i_series(int order, double x) {
  const double h = 0.5 * x;
  const double q = h * h;
  double term = order == 0 ? 1.0 : h;
  double sum = term;
  for (int k = 1; k < 500; ++k) {
    term *= q / (static_cast<double>(k) * static_cast<double>(k + order));
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  return sum;
}

// Hankel expansion I_nu(x) ~ e^x / sqrt(2 pi x) sum_k (-1)^k a_k(nu) / x^k.
double bessel_i_asymptotic(int order, double x) {
  const double mu = 4.0 * order * order;
  double term = 1.0;
  double sum = 1.0;
  double prev = 1.0;
  for (int k = 1; k < 200; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= -(mu - odd * odd) / (8.0 * k * x);
    if (std::abs(term) > std::abs(prev)) break;  // asymptotic series diverges
    sum += term;
    prev = term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  const double log_scale = x - 0.5 * std::log(2.0 * std::numbers::pi * x);
  const double scale = std::exp(log_scale);
  if (!std::isfinite(scale)) {
    throw std::overflow_error("bessel_i: result overflows for x = " +
                              std::to_string(x));
  }
  return scale * sum;
}

}  // namespace

double bessel_i(int order, double x) {
  if (order != 0 && order != 1) {
    throw std::domain_error("bessel_i: only orders 0 and 1 are provided");
  }
  if (!(x >= 0.0)) throw std::domain_error("bessel_i: argument must be >= 0");
  if (x <= kBesselISwitch) return bessel_i_series(order, x);
  return bessel_i_asymptotic(order, x);
}

double bessel_i1_over_x(double x) {
  if (!(x >= 0.0)) {
    throw std::domain_error("bessel_i1_over_x: argument must be >= 0");
  }
  if (x <= kBesselISwitch) {
    const double q = 0.25 * x * x;
    double term = 0.5;
    double sum = term;
    for (int k = 1; k < 500; ++k) {
      term *= q / (static_cast<double>(k) * static_cast<double>(k + 1));
      sum += term;
      if (term < 1e-17 * sum) break;
    }
    return sum;
  }
  return bessel_i_asymptotic(1, x) / x;
}

double bessel_j_normalized(double order, double x) {
  check_j_domain(order, x);
  return normalized_j_series(order, x, 400, true).value;
}

EvalResult bessel_j_eval(double order, double x) {
  check_j_domain(order, x);
  if (x == 0.0) return {order == 0.0 ? 1.0 : 0.0, 0.0};
  const SeriesSum s = normalized_j_series(order, x, 400, true);
  const double prefactor =
      std::exp(order * std::log(0.5 * x) - ln_gamma(order + 1.0));
  const double value = prefactor * s.value;
  const double err = prefactor * (s.last_term + 1e-31 * s.max_term) +
                     4e-15 * std::abs(value);
  return {value, err};
}

double bessel_j(double order, double x) { return bessel_j_eval(order, x).value; }

double bessel_j_series(double order, double x, int terms) {
  check_j_domain(order, x);
  if (x == 0.0) return order == 0.0 ? 1.0 : 0.0;
  const SeriesSum s = normalized_j_series(order, x, terms, false);
  return std::exp(order * std::log(0.5 * x) - ln_gamma(order + 1.0)) * s.value;
}

}  // namespace flightlab::specfun
