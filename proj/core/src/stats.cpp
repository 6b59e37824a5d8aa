#include "flightlab/stats.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace flightlab::stats {
namespace {

// 8-point Gauss-Legendre on [-1, 1].
constexpr std::array<double, 4> kGlNodes = {0.1834346424956498, 0.5255324099163290,
                                            0.7966664774136267, 0.9602898564975363};
constexpr std::array<double, 4> kGlWeights = {0.3626837833783620, 0.3137066458778873,
                                              0.2223810344533745, 0.1012285362903763};

}  // namespace

double ks_statistic(std::vector<double> sample, const std::function<double(double)>& cdf) {
  if (sample.empty()) throw std::invalid_argument("ks_statistic: empty sample");
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double f = cdf(sample[i]);
    d = std::max({d, (static_cast<double>(i) + 1.0) / n - f, f - static_cast<double>(i) / n});
  }
  return d;
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("ks_two_sample: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double v = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == v) ++i;
    while (j < b.size() && b[j] == v) ++j;
    d = std::max(d, std::fabs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

double ks_critical_1pct(std::size_t n) { return 1.63 / std::sqrt(static_cast<double>(n)); }

double ks_two_sample_critical_1pct(std::size_t n, std::size_t m) {
  const double a = static_cast<double>(n);
  const double b = static_cast<double>(m);
  return 1.63 * std::sqrt((a + b) / (a * b));
}

Summary summarize(const std::vector<double>& x) {
  Summary s;
  s.n = x.size();
  if (x.empty()) return s;
  double mean = 0.0;
  double m2 = 0.0;
  std::size_t k = 0;
  for (double v : x) {
    ++k;
    const double delta = v - mean;
    mean += delta / static_cast<double>(k);
    m2 += delta * (v - mean);
  }
  s.mean = mean;
  s.variance = x.size() > 1 ? m2 / static_cast<double>(x.size() - 1) : 0.0;
  s.std_error = std::sqrt(s.variance / static_cast<double>(x.size()));
  return s;
}

TabulatedCdf::TabulatedCdf(std::function<double(double)> density, double lo, double hi,
                           int cells)
    : density_(std::move(density)), lo_(lo), hi_(hi) {
  if (!(hi > lo) || cells < 1) throw std::invalid_argument("TabulatedCdf: bad interval");
  width_ = (hi - lo) / cells;
  cumulative_.resize(cells + 1);
  cumulative_[0] = 0.0;
  for (int i = 0; i < cells; ++i) {
    const double a = lo + width_ * i;
    cumulative_[i + 1] = cumulative_[i] + integrate(a, a + width_);
  }
}

double TabulatedCdf::integrate(double a, double b) const {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double s = 0.0;
  for (std::size_t k = 0; k < kGlNodes.size(); ++k) {
    s += kGlWeights[k] * (density_(mid - half * kGlNodes[k]) + density_(mid + half * kGlNodes[k]));
  }
  return s * half;
}

double TabulatedCdf::operator()(double x) const {
  if (x <= lo_) return 0.0;
  if (x >= hi_) return total();
  const auto cells = static_cast<int>(cumulative_.size()) - 1;
  const int i = std::min(cells - 1, static_cast<int>((x - lo_) / width_));
  const double a = lo_ + width_ * i;
  return cumulative_[i] + integrate(a, x);
}

Histogram histogram(const std::vector<double>& x, double lo, double hi, std::size_t bins) {
  if (!(hi > lo) || bins == 0) throw std::invalid_argument("histogram: bad range");
  Histogram h;
  h.lo = lo;
  h.hi = hi;
  h.counts.assign(bins, 0);
  h.total = x.size();
  const double w = (hi - lo) / static_cast<double>(bins);
  for (double v : x) {
    if (v < lo || v > hi) continue;
    auto i = static_cast<std::size_t>((v - lo) / w);
    if (i >= bins) i = bins - 1;
    ++h.counts[i];
  }
  return h;
}

double binned_l1(const Histogram& h, const std::function<double(double)>& cdf) {
  if (h.total == 0) throw std::invalid_argument("binned_l1: empty histogram");
  double l1 = 0.0;
  double prev = cdf(h.lo);
  for (std::size_t i = 0; i < h.counts.size(); ++i) {
    const double next = cdf(h.edge(i + 1));
    l1 += std::fabs(static_cast<double>(h.counts[i]) / static_cast<double>(h.total) - (next - prev));
    prev = next;
  }
  return l1;
}

}  // namespace flightlab::stats
