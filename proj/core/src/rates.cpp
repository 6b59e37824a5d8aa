#include "flightlab/rates.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "flightlab/random.hpp"

namespace flightlab {
namespace {

// log sinh(z), z > 0, without overflow.
double log_sinh(double z) { return z + std::log(-std::expm1(-2.0 * z)) - std::numbers::ln2; }

// log cosh(z), z >= 0, without overflow.
double log_cosh(double z) { return z + std::log1p(std::exp(-2.0 * z)) - std::numbers::ln2; }

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw std::domain_error(std::string("rate model: ") + what + " must be positive");
  }
}

}  // namespace

RateModel::RateModel(RateKind kind, double parameter) : kind_(kind), parameter_(parameter) {
  require_positive(parameter, kind == RateKind::EPD ? "alpha" : "lambda");
}

RateModel RateModel::constant(double lambda) { return {RateKind::Constant, lambda}; }
RateModel RateModel::epd(double alpha) { return {RateKind::EPD, alpha}; }
RateModel RateModel::coth(double lambda) { return {RateKind::Coth, lambda}; }
RateModel RateModel::tanh(double lambda) { return {RateKind::Tanh, lambda}; }
RateModel RateModel::square_hazard(double lambda) { return {RateKind::SquareHazard, lambda}; }

double RateModel::rate(double t) const {
  if (!(t >= 0.0)) throw std::domain_error("rate: t must be >= 0");
  const double l = parameter_;
  switch (kind_) {
    case RateKind::Constant:
      return l;
    case RateKind::EPD:
      if (t == 0.0) throw std::domain_error("rate: EPD rate diverges at t = 0");
      return l / t;
    case RateKind::Coth:
      if (t == 0.0) throw std::domain_error("rate: coth rate diverges at t = 0");
      return l / std::tanh(l * t);
    case RateKind::Tanh:
      return l * std::tanh(l * t);
    case RateKind::SquareHazard:
      return 2.0 * l * l * t;
  }
  return 0.0;
}

double RateModel::rate_derivative(double t) const {
  if (!(t >= 0.0)) throw std::domain_error("rate_derivative: t must be >= 0");
  const double l = parameter_;
  switch (kind_) {
    case RateKind::Constant:
      return 0.0;
    case RateKind::EPD:
      if (t == 0.0) throw std::domain_error("rate_derivative: diverges at t = 0");
      return -l / (t * t);
    case RateKind::Coth: {
      if (t == 0.0) throw std::domain_error("rate_derivative: diverges at t = 0");
      const double csch = 1.0 / std::sinh(l * t);
      return -l * l * csch * csch;
    }
    case RateKind::Tanh: {
      const double sech = 1.0 / std::cosh(l * t);
      return l * l * sech * sech;
    }
    case RateKind::SquareHazard:
      return 2.0 * l * l;
  }
  return 0.0;
}

double RateModel::rate_second_derivative(double t) const {
  if (!(t >= 0.0)) throw std::domain_error("rate_second_derivative: t must be >= 0");
  const double l = parameter_;
  switch (kind_) {
    case RateKind::Constant:
    case RateKind::SquareHazard:
      return 0.0;
    case RateKind::EPD:
      if (t == 0.0) throw std::domain_error("rate_second_derivative: diverges at t = 0");
      return 2.0 * l / (t * t * t);
    case RateKind::Coth: {
      if (t == 0.0) throw std::domain_error("rate_second_derivative: diverges at t = 0");
      const double csch = 1.0 / std::sinh(l * t);
      return 2.0 * l * l * l * csch * csch / std::tanh(l * t);
    }
    case RateKind::Tanh: {
      const double sech = 1.0 / std::cosh(l * t);
      return -2.0 * l * l * l * sech * sech * std::tanh(l * t);
    }
  }
  return 0.0;
}

double RateModel::cumulative_hazard(double t1, double t2) const {
  if (!(t1 >= 0.0) || !(t2 >= t1)) {
    throw std::domain_error("cumulative_hazard: need 0 <= t1 <= t2");
  }
  const double l = parameter_;
  if (t1 == 0.0 && divergent_at_origin()) {
    throw std::domain_error("cumulative_hazard: hazard from t = 0 is infinite for " + name());
  }
  switch (kind_) {
    case RateKind::Constant:
      return l * (t2 - t1);
    case RateKind::EPD:
      return l * std::log(t2 / t1);
    case RateKind::Coth:
      return log_sinh(l * t2) - log_sinh(l * t1);
    case RateKind::Tanh:
      return log_cosh(l * t2) - log_cosh(l * t1);
    case RateKind::SquareHazard:
      return l * l * (t2 - t1) * (t2 + t1);
  }
  return 0.0;
}

double RateModel::invert_hazard(double s, double e) const {
  if (!(s >= 0.0) || !(e >= 0.0)) throw std::domain_error("invert_hazard: need s, e >= 0");
  const double l = parameter_;
  switch (kind_) {
    case RateKind::Constant:
      return s + e / l;
    case RateKind::EPD:
      if (s == 0.0) throw std::domain_error("invert_hazard: EPD needs s > 0");
      return s * std::exp(e / l);
    case RateKind::Coth: {
      if (s == 0.0) throw std::domain_error("invert_hazard: coth needs s > 0");
      // sinh(l t) = sinh(l s) e^e, solved in log space.
      const double target = log_sinh(l * s) + e;
      const double lt = target < 0.0
                            ? std::asinh(std::exp(target))
                            : target + std::log1p(std::sqrt(1.0 + std::exp(-2.0 * target)));
      return std::max(s, lt / l);
    }
    case RateKind::Tanh: {
      // cosh(l t) = cosh(l s) e^e
      const double target = log_cosh(l * s) + e;
      const double lt = target + std::log1p(std::sqrt(-std::expm1(-2.0 * target)));
      return std::max(s, lt / l);
    }
    case RateKind::SquareHazard:
      return std::sqrt(s * s + e / (l * l));
  }
  return s;
}

std::string RateModel::name() const {
  const std::string p = std::to_string(parameter_);
  switch (kind_) {
    case RateKind::Constant:
      return "constant(lambda=" + p + ")";
    case RateKind::EPD:
      return "epd(alpha=" + p + ")";
    case RateKind::Coth:
      return "coth(lambda=" + p + ")";
    case RateKind::Tanh:
      return "tanh(lambda=" + p + ")";
    case RateKind::SquareHazard:
      return "square(lambda=" + p + ")";
  }
  return "unknown";
}

RateModel parse_rate(std::string_view spec) {
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos) {
    throw std::invalid_argument("rate must look like kind:value, got '" +
                                std::string(spec) + "'");
  }
  const std::string kind(spec.substr(0, colon));
  const std::string value(spec.substr(colon + 1));
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != value.size() || value.empty()) {
    throw std::invalid_argument("rate has a malformed value: '" + value + "'");
  }
  if (kind == "constant") return RateModel::constant(v);
  if (kind == "epd") return RateModel::epd(v);
  if (kind == "coth") return RateModel::coth(v);
  if (kind == "tanh") return RateModel::tanh(v);
  if (kind == "square" || kind == "square_hazard") return RateModel::square_hazard(v);
  throw std::invalid_argument("unknown rate kind '" + kind + "'");
}

void sample_event_times(const RateModel& model, double t0, double T, Rng& rng,
                        std::vector<double>& out) {
  out.clear();
  if (!(t0 >= 0.0) || !(T > t0)) {
    throw std::domain_error("sample_event_times: need 0 <= t0 < T");
  }
  if (t0 == 0.0 && model.divergent_at_origin()) {
    throw std::domain_error("sample_event_times: " + model.name() + " needs t0 > 0");
  }
  double s = t0;
  for (;;) {
    const double next = model.invert_hazard(s, rng.exponential());
    if (!(next <= T)) break;
    if (next > s) out.push_back(next);
    s = next;
  }
}

EventTimes sample_event_times(const RateModel& model, double t0, double T,
                              std::uint64_t seed) {
  Rng rng(seed);
  EventTimes ev;
  ev.t0 = t0;
  ev.T = T;
  ev.seed = seed;
  sample_event_times(model, t0, T, rng, ev.times);
  return ev;
}

}  // namespace flightlab
