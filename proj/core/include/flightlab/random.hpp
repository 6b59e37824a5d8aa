#pragma once

#include <cstdint>
#include <random>

namespace flightlab {

/// splitmix64 finalizer.
std::uint64_t splitmix64(std::uint64_t x);

/// Seed of stream `stream` under master seed `seed`:
///   splitmix64(splitmix64(seed) ^ splitmix64(stream + 0x632BE59BD9B4E019)).
/// Batches use one stream per fixed-size chunk, so results never depend on the
/// number of worker threads.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

/// Random variates with bit-reproducible transforms on top of mt19937_64.
/// (The std:: distributions are implementation-defined, so they are not used.)
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Uniform on (0, 1).
  double uniform_open();
  double exponential();
  /// Standard normal (Marsaglia polar method).
  double normal();
  /// Gamma(shape, 1) by Marsaglia-Tsang; shape < 1 via the u^(1/shape) boost.
  double gamma(double shape);
  double beta(double a, double b);

 private:
  std::mt19937_64 engine_;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace flightlab
