#include "flightlab/samplers.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "flightlab/random.hpp"
#include "flightlab/specfun.hpp"

namespace flightlab {
namespace {

using std::numbers::pi;

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::domain_error(msg);
}

void require_cone(double c, double t) {
  require(c > 0.0 && std::isfinite(c), "sampler: speed c must be positive");
  require(t > 0.0 && std::isfinite(t), "sampler: time t must be positive");
}

// Runs fill(rng, begin, end) over fixed chunks of [0, n).
template <class Fill>
void for_each_chunk(std::size_t n, std::uint64_t seed, unsigned threads, Fill&& fill) {
  const std::size_t chunks = (n + kSampleChunk - 1) / kSampleChunk;
  auto run = [&](std::size_t k) {
    Rng rng(derive_seed(seed, k));
    fill(rng, k * kSampleChunk, std::min(n, (k + 1) * kSampleChunk));
  };
  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(std::max(1u, threads), chunks));
  if (workers <= 1) {
    for (std::size_t k = 0; k < chunks; ++k) run(k);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t k = next.fetch_add(1);
        if (k >= chunks) return;
        try {
          run(k);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
          next = chunks;
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

SampleBatch make_batch(int dims, std::size_t n, std::uint64_t seed, double c, double t,
                       std::string descriptor) {
  SampleBatch b;
  b.dims = dims;
  b.positions.assign(n * dims, 0.0);
  b.boundary.assign(n, 0);
  b.seed = seed;
  b.c = c;
  b.t = t;
  b.descriptor = std::move(descriptor);
  return b;
}

// Uniform direction on the unit sphere of R^d.
void random_direction(Rng& rng, int d, double* out) {
  for (;;) {
    double s = 0.0;
    for (int j = 0; j < d; ++j) {
      out[j] = rng.normal();
      s += out[j] * out[j];
    }
    if (s > 0.0) {
      const double inv = 1.0 / std::sqrt(s);
      for (int j = 0; j < d; ++j) out[j] *= inv;
      return;
    }
  }
}

// Leg durations summing to t: spacings of k uniform order statistics, or
// Dirichlet(shape) weights.
void leg_durations(Rng& rng, int legs, double t, double shape, std::vector<double>& out) {
  out.resize(legs);
  if (shape == 1.0) {
    std::vector<double>& s = out;
    for (int j = 0; j + 1 < legs; ++j) s[j] = rng.uniform() * t;
    std::sort(s.begin(), s.begin() + (legs - 1));
    double prev = 0.0;
    for (int j = 0; j + 1 < legs; ++j) {
      const double cur = s[j];
      s[j] = cur - prev;
      prev = cur;
    }
    s[legs - 1] = t - prev;
    return;
  }
  double total = 0.0;
  for (int j = 0; j < legs; ++j) {
    out[j] = rng.gamma(shape);
    total += out[j];
  }
  for (int j = 0; j < legs; ++j) out[j] = out[j] / total * t;
}

double epd_position(Rng& rng, double a, double ct) {
  for (;;) {
    const double x = ct * (2.0 * rng.beta(a, a) - 1.0);
    if (std::fabs(x) < ct) return x;
  }
}

}  // namespace

std::vector<double> SampleBatch::coordinate(int j) const {
  std::vector<double> out(size());
  for (std::size_t i = 0; i < size(); ++i) out[i] = at(i, j);
  return out;
}

std::vector<double> SampleBatch::norms() const {
  std::vector<double> out(size());
  for (std::size_t i = 0; i < size(); ++i) {
    double s = 0.0;
    for (int j = 0; j < dims; ++j) s += at(i, j) * at(i, j);
    out[i] = std::sqrt(s);
  }
  return out;
}

double SampleBatch::boundary_fraction() const {
  if (boundary.empty()) return 0.0;
  std::size_t k = 0;
  for (auto b : boundary) k += b;
  return static_cast<double>(k) / static_cast<double>(boundary.size());
}

SampleBatch sample_exact_1d(const Law1D& law, std::size_t n, std::uint64_t seed,
                            unsigned threads) {
  law.validate();
  if (law.kind != LawKind::EPD && law.kind != LawKind::ConditionalEven) {
    throw std::invalid_argument("sample_exact_1d: no exact sampler for " + law.name());
  }
  const double ct = law.c * law.t;
  const double a = law.param;
  SampleBatch b = make_batch(1, n, seed, law.c, law.t, "exact:" + law.name());
  for_each_chunk(n, seed, threads, [&](Rng& rng, std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) b.positions[i] = epd_position(rng, a, ct);
  });
  return b;
}

SampleBatch sample_telegraph_path(const RateModel& model, double c, double t,
                                  double t0_fraction, std::size_t n, std::uint64_t seed,
                                  unsigned threads) {
  require_cone(c, t);
  require(t0_fraction > 0.0 && t0_fraction < 1.0,
          "sample_telegraph_path: t0_fraction must lie in (0, 1)");
  const bool divergent = model.divergent_at_origin();
  const double t0 = divergent ? t0_fraction * t : 0.0;
  SampleBatch b = make_batch(1, n, seed, c, t, "telegraph:" + model.name());
  for_each_chunk(n, seed, threads, [&](Rng& rng, std::size_t lo, std::size_t hi) {
    std::vector<double> events;
    for (std::size_t i = lo; i < hi; ++i) {
      double dir = rng.uniform() < 0.5 ? 1.0 : -1.0;
      sample_event_times(model, t0, t, rng, events);
      if (events.empty() && !divergent) {
        b.positions[i] = dir * c * t;
        b.boundary[i] = 1;
        continue;
      }
      double x = 0.0;
      double s = t0;
      for (double e : events) {
        x += dir * c * (e - s);
        dir = -dir;
        s = e;
      }
      b.positions[i] = x + dir * c * (t - s);
    }
  });
  return b;
}

SampleBatch sample_epd_dd(double gamma, int d, double c, double t, std::size_t n,
                          std::uint64_t seed, unsigned threads) {
  RadialLawDD{gamma, d, c, t}.validate();
  const double ct = c * t;
  SampleBatch b = make_batch(d, n, seed, c, t,
                             "epd_dd:gamma=" + std::to_string(gamma) + ",d=" + std::to_string(d));
  for_each_chunk(n, seed, threads, [&](Rng& rng, std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      double* x = &b.positions[i * d];
      double r;
      do {
        r = ct * std::sqrt(rng.beta(0.5 * d, gamma));
      } while (!(r < ct));
      random_direction(rng, d, x);
      for (int j = 0; j < d; ++j) x[j] *= r;
    }
  });
  return b;
}

int parity_conditioned_count(Parity parity, double theta, Rng& rng) {
  require(theta > 0.0 && std::isfinite(theta), "parity_conditioned_count: theta must be positive");
  // log of the normalizer cosh(theta) or sinh(theta)
  const double log_norm = parity == Parity::Even
                              ? theta + std::log1p(std::exp(-2.0 * theta)) - std::numbers::ln2
                              : theta + std::log(-std::expm1(-2.0 * theta)) - std::numbers::ln2;
  const double u = rng.uniform();
  const double log_theta = std::log(theta);
  int k = parity == Parity::Even ? 0 : 1;
  double cdf = 0.0;
  for (;;) {
    const double p = std::exp(k * log_theta - specfun::ln_gamma(k + 1.0) - log_norm);
    cdf += p;
    if (u < cdf) return k;
    // Rounding may leave the total a hair below 1; stop once terms are spent.
    if (k > theta && p < 1e-300) return k;
    k += 2;
  }
}

std::vector<int> sample_parity_counts(Parity parity, double theta, std::size_t n,
                                      std::uint64_t seed, unsigned threads) {
  std::vector<int> out(n);
  for_each_chunk(n, seed, threads, [&](Rng& rng, std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) out[i] = parity_conditioned_count(parity, theta, rng);
  });
  return out;
}

SampleBatch sample_planar_flight(const CountSource& count, double c, double t, std::size_t n,
                                 std::uint64_t seed, unsigned threads, double dirichlet_shape) {
  require_cone(c, t);
  require(dirichlet_shape > 0.0, "sample_planar_flight: Dirichlet shape must be positive");
  if (count.kind == CountSource::Kind::Fixed) {
    require(count.changes >= 1, "sample_planar_flight: need at least one change");
  } else {
    require(count.lambda > 0.0, "sample_planar_flight: lambda must be positive");
  }
  std::string desc = count.kind == CountSource::Kind::Fixed
                         ? "planar:fixed=" + std::to_string(count.changes)
                         : std::string("planar:") +
                               (count.parity == Parity::Odd ? "odd" : "even") +
                               ",lambda=" + std::to_string(count.lambda);
  SampleBatch b = make_batch(2, n, seed, c, t, std::move(desc));
  const double theta = count.lambda * t;
  for_each_chunk(n, seed, threads, [&](Rng& rng, std::size_t lo, std::size_t hi) {
    std::vector<double> legs;
    for (std::size_t i = lo; i < hi; ++i) {
      const int k = count.kind == CountSource::Kind::Fixed
                        ? count.changes
                        : parity_conditioned_count(count.parity, theta, rng);
      double* x = &b.positions[2 * i];
      if (k == 0) {
        const double phi = 2.0 * pi * rng.uniform();
        x[0] = c * t * std::cos(phi);
        x[1] = c * t * std::sin(phi);
        b.boundary[i] = 1;
        continue;
      }
      leg_durations(rng, k + 1, t, dirichlet_shape, legs);
      for (double tau : legs) {
        const double phi = 2.0 * pi * rng.uniform();
        x[0] += c * tau * std::cos(phi);
        x[1] += c * tau * std::sin(phi);
      }
    }
  });
  return b;
}

SampleBatch sample_four_directions(const RateModel& model, double c, double t,
                                   double t0_fraction, std::size_t n, std::uint64_t seed,
                                   unsigned threads) {
  require_cone(c, t);
  require(t0_fraction > 0.0 && t0_fraction < 1.0,
          "sample_four_directions: t0_fraction must lie in (0, 1)");
  const bool divergent = model.divergent_at_origin();
  const double t0 = divergent ? t0_fraction * t : 0.0;
  const double h = 0.5 * c;
  SampleBatch b = make_batch(2, n, seed, c, t, "four_directions:" + model.name());
  for_each_chunk(n, seed, threads, [&](Rng& rng, std::size_t lo, std::size_t hi) {
    std::vector<double> events;
    for (std::size_t i = lo; i < hi; ++i) {
      const std::uint64_t bits = rng.next_u64();
      double sx = (bits & 1u) ? 1.0 : -1.0;
      double sy = (bits & 2u) ? 1.0 : -1.0;
      sample_event_times(model, t0, t, rng, events);
      double* x = &b.positions[2 * i];
      double s = t0;
      for (double e : events) {
        x[0] += sx * h * (e - s);
        x[1] += sy * h * (e - s);
        if (rng.uniform() < 0.5) {
          sx = -sx;
        } else {
          sy = -sy;
        }
        s = e;
      }
      x[0] += sx * h * (t - s);
      x[1] += sy * h * (t - s);
      if (events.empty() && !divergent) b.boundary[i] = 1;
    }
  });
  return b;
}

SampleBatch sample_projected_flight(int d, int n_changes, double c, double t, std::size_t n,
                                    std::uint64_t seed, unsigned threads,
                                    double dirichlet_shape) {
  require_cone(c, t);
  require(d >= 2, "sample_projected_flight: need d >= 2");
  require(n_changes >= 0, "sample_projected_flight: need n_changes >= 0");
  require(dirichlet_shape > 0.0, "sample_projected_flight: Dirichlet shape must be positive");
  SampleBatch b = make_batch(
      2, n, seed, c, t,
      "projected:d=" + std::to_string(d) + ",changes=" + std::to_string(n_changes));
  for_each_chunk(n, seed, threads, [&](Rng& rng, std::size_t lo, std::size_t hi) {
    std::vector<double> legs;
    std::vector<double> u(d);
    for (std::size_t i = lo; i < hi; ++i) {
      leg_durations(rng, n_changes + 1, t, dirichlet_shape, legs);
      double* x = &b.positions[2 * i];
      for (double tau : legs) {
        random_direction(rng, d, u.data());
        x[0] += c * tau * u[0];
        x[1] += c * tau * u[1];
      }
      if (d == 2 && n_changes == 0) b.boundary[i] = 1;
    }
  });
  return b;
}

std::vector<double> sample_leg_speeds(int d, double c, std::size_t n, std::uint64_t seed,
                                      unsigned threads) {
  require(d >= 2, "sample_leg_speeds: need d >= 2");
  require(c > 0.0, "sample_leg_speeds: speed c must be positive");
  std::vector<double> out(n);
  for_each_chunk(n, seed, threads, [&](Rng& rng, std::size_t lo, std::size_t hi) {
    std::vector<double> u(d);
    for (std::size_t i = lo; i < hi; ++i) {
      random_direction(rng, d, u.data());
      out[i] = c * std::sqrt(u[0] * u[0] + u[1] * u[1]);
    }
  });
  return out;
}

std::vector<double> sample_ufrak(double alpha, double t, std::size_t n, std::uint64_t seed,
                                 unsigned threads) {
  const SampleBatch b = sample_exact_1d(Law1D::epd(alpha, 1.0, t), n, seed, threads);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = std::fabs(b.positions[i]);
  return out;
}

}  // namespace flightlab
