#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "flightlab/densities.hpp"
#include "flightlab/rates.hpp"

namespace flightlab {

class Rng;

/// Final positions of n simulated motions.
struct SampleBatch {
  int dims = 1;
  std::vector<double> positions;      // row-major, size() * dims
  std::vector<std::uint8_t> boundary;  // 1 when the sample sits on the light cone
  std::uint64_t seed = 0;
  double c = 1.0;
  double t = 1.0;
  std::string descriptor;

  std::size_t size() const { return boundary.size(); }
  double at(std::size_t i, int j) const { return positions[i * dims + j]; }
  std::vector<double> coordinate(int j) const;
  std::vector<double> norms() const;
  double boundary_fraction() const;
};

/// Samples are produced in fixed chunks of this many, each chunk drawing from
/// Rng(derive_seed(seed, chunk_index)). The worker count only changes which
/// thread computes a chunk, never its contents.
inline constexpr std::size_t kSampleChunk = 4096;

/// EPD law via x = ct(2V - 1), V ~ Beta(alpha, alpha); ConditionalEven(k)
/// via V ~ Beta(k, k). Other kinds throw std::invalid_argument.
SampleBatch sample_exact_1d(const Law1D& law, std::size_t n, std::uint64_t seed,
                            unsigned threads = 1);

/// Telegraph trajectory with direction switches at the events of `model`.
/// Divergent-rate models start at t0 = t0_fraction * t from the origin with a
/// fresh symmetric direction; other models start at 0 and the fraction is
/// only range-checked.
SampleBatch sample_telegraph_path(const RateModel& model, double c, double t,
                                  double t0_fraction, std::size_t n, std::uint64_t seed,
                                  unsigned threads = 1);

/// d-dimensional EPD flight: r = ct sqrt(S), S ~ Beta(d/2, gamma), uniform
/// direction from a normalized Gaussian vector.
SampleBatch sample_epd_dd(double gamma, int d, double c, double t, std::size_t n,
                          std::uint64_t seed, unsigned threads = 1);

/// Poisson count with mean theta conditioned to be even (Even) or odd (Odd),
/// by an inverse-CDF walk over the series.
int parity_conditioned_count(Parity parity, double theta, Rng& rng);
std::vector<int> sample_parity_counts(Parity parity, double theta, std::size_t n,
                                      std::uint64_t seed, unsigned threads = 1);

/// Source of the number of direction changes of a planar flight.
struct CountSource {
  enum class Kind { Fixed, ParityPoisson };
  Kind kind = Kind::Fixed;
  int changes = 1;             // Fixed
  Parity parity = Parity::Odd;  // ParityPoisson
  double lambda = 1.0;          // ParityPoisson, theta = lambda t

  static CountSource fixed(int n) { return {Kind::Fixed, n, Parity::Odd, 0.0}; }
  static CountSource parity_poisson(Parity p, double lambda) {
    return {Kind::ParityPoisson, 0, p, lambda};
  }
};

/// Isotropic planar flight. Leg durations are the spacings of the change
/// times: uniform order statistics for dirichlet_shape == 1, otherwise
/// Dirichlet(shape, ..., shape) scaled by t. A zero count gives a boundary
/// sample at distance ct.
SampleBatch sample_planar_flight(const CountSource& count, double c, double t, std::size_t n,
                                 std::uint64_t seed, unsigned threads = 1,
                                 double dirichlet_shape = 1.0);

/// Four-direction planar motion: velocity (+-c/2, +-c/2), each event switches
/// to one of the two orthogonal polarities with probability 1/2.
SampleBatch sample_four_directions(const RateModel& model, double c, double t,
                                   double t0_fraction, std::size_t n, std::uint64_t seed,
                                   unsigned threads = 1);

/// Planar shadow (first two coordinates) of a d-dimensional flight with
/// n_changes direction changes and uniform directions on the sphere.
SampleBatch sample_projected_flight(int d, int n_changes, double c, double t, std::size_t n,
                                    std::uint64_t seed, unsigned threads = 1,
                                    double dirichlet_shape = 1.0);

/// Planar speed c sqrt(u1^2 + u2^2) of one leg of a d-dimensional flight with
/// uniform direction u.
std::vector<double> sample_leg_speeds(int d, double c, std::size_t n, std::uint64_t seed,
                                      unsigned threads = 1);

/// Distance from the start in time units, |X| / c with X from the EPD law.
std::vector<double> sample_ufrak(double alpha, double t, std::size_t n, std::uint64_t seed,
                                 unsigned threads = 1);

}  // namespace flightlab
