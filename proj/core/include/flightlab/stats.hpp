#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace flightlab::stats {

/// One-sample Kolmogorov-Smirnov distance sup |F_n - F| against a continuous CDF.
double ks_statistic(std::vector<double> sample, const std::function<double(double)>& cdf);

/// Two-sample Kolmogorov-Smirnov distance.
double ks_two_sample(std::vector<double> a, std::vector<double> b);

/// Asymptotic 1% critical values: 1.63/sqrt(n) and 1.63 sqrt((n+m)/(nm)).
double ks_critical_1pct(std::size_t n);
double ks_two_sample_critical_1pct(std::size_t n, std::size_t m);

struct Summary {
  std::size_t n = 0;
  double mean = 0.0;
  double variance = 0.0;  // unbiased
  double std_error = 0.0;
};

Summary summarize(const std::vector<double>& x);

/// CDF of a density on [lo, hi], cumulated over `cells` equal cells with an
/// 8-point Gauss-Legendre rule per cell. Evaluation inside a cell integrates
/// the partial cell with the same rule. Intended for densities that are smooth
/// on the closed interval.
class TabulatedCdf {
 public:
  TabulatedCdf(std::function<double(double)> density, double lo, double hi, int cells = 1024);

  double operator()(double x) const;
  /// Integral of the density over [lo, hi].
  double total() const { return cumulative_.back(); }

 private:
  double integrate(double a, double b) const;

  std::function<double(double)> density_;
  double lo_;
  double hi_;
  double width_;
  std::vector<double> cumulative_;
};

struct Histogram {
  double lo = 0.0;
  double hi = 1.0;
  std::vector<std::size_t> counts;
  std::size_t total = 0;  // including samples outside [lo, hi]

  double bin_width() const { return (hi - lo) / static_cast<double>(counts.size()); }
  double edge(std::size_t i) const { return lo + bin_width() * static_cast<double>(i); }
};

Histogram histogram(const std::vector<double>& x, double lo, double hi, std::size_t bins);

/// sum_i |count_i / total - (F(b_{i+1}) - F(b_i))| over the histogram bins.
double binned_l1(const Histogram& h, const std::function<double(double)>& cdf);

}  // namespace flightlab::stats
