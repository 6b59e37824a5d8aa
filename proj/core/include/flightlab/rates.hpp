#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace flightlab {

enum class RateKind { Constant, EPD, Coth, Tanh, SquareHazard };

/// Rate lambda(t) of an inhomogeneous Poisson process.
///
///   Constant      lambda
///   EPD           alpha / t
///   Coth          lambda coth(lambda t)
///   Tanh          lambda tanh(lambda t)
///   SquareHazard  2 lambda^2 t   (cumulative hazard (lambda t)^2)
///
/// EPD and Coth diverge at the origin, so their hazard from 0 is infinite.
class RateModel {
 public:
  static RateModel constant(double lambda);
  static RateModel epd(double alpha);
  static RateModel coth(double lambda);
  static RateModel tanh(double lambda);
  static RateModel square_hazard(double lambda);

  RateKind kind() const { return kind_; }
  /// lambda, or alpha for the EPD kind.
  double parameter() const { return parameter_; }
  bool divergent_at_origin() const {
    return kind_ == RateKind::EPD || kind_ == RateKind::Coth;
  }

  double rate(double t) const;
  double rate_derivative(double t) const;
  double rate_second_derivative(double t) const;

  /// Integral of the rate over [t1, t2].
  double cumulative_hazard(double t1, double t2) const;

  /// The t >= s with cumulative_hazard(s, t) = e (closed form for every kind).
  double invert_hazard(double s, double e) const;

  std::string name() const;

  friend bool operator==(const RateModel&, const RateModel&) = default;

 private:
  RateModel(RateKind kind, double parameter);

  RateKind kind_;
  double parameter_;
};

/// Parses "constant:1", "epd:0.5", "coth:1", "tanh:2", "square:1".
RateModel parse_rate(std::string_view spec);

/// Event times of the driving process on (t0, T].
struct EventTimes {
  std::vector<double> times;
  double t0 = 0.0;
  double T = 0.0;
  std::uint64_t seed = 0;
};

/// Generates event times by iterated inversion of the cumulative hazard:
/// from the current time s the next event is at invert_hazard(s, E) with E a
/// standard exponential. Divergent models need t0 > 0.
EventTimes sample_event_times(const RateModel& model, double t0, double T,
                              std::uint64_t seed);

class Rng;

/// Same as above, drawing from a caller-owned generator and appending into
/// `out` (cleared first). Used by the trajectory samplers.
void sample_event_times(const RateModel& model, double t0, double T, Rng& rng,
                        std::vector<double>& out);

}  // namespace flightlab
