#include "flightlab/pdecheck.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "flightlab/densities.hpp"
#include "flightlab/specfun.hpp"
#include "flightlab/transmute.hpp"

namespace flightlab {
namespace {

// Grid shrunk by `radius` nodes at both ends of every axis.
GridField interior(const GridField& p, std::size_t radius) {
  std::vector<Axis> axes = p.axes();
  for (auto& a : axes) {
    if (a.count < 2 * radius + 1) {
      throw std::invalid_argument("residual: grid too small for the stencil");
    }
    a.min = a.at(radius);
    a.count -= 2 * radius;
  }
  return GridField(std::move(axes));
}

// Applies op(p, i, j) over the interior of a (space, time) grid.
template <class Op>
GridField apply_2d(const GridField& p, std::size_t radius, Op op) {
  if (p.rank() != 2) throw std::invalid_argument("residual: expected a (space, time) grid");
  GridField r = interior(p, radius);
  const std::size_t nx = r.axis(0).count;
  const std::size_t nt = r.axis(1).count;
  for (std::size_t i = 0; i < nx; ++i) {
    for (std::size_t j = 0; j < nt; ++j) r.at(i, j) = op(i + radius, j + radius);
  }
  return r;
}

struct Derivs2 {
  double v, t, tt, x, xx;
};

Derivs2 derivs(const GridField& p, std::size_t i, std::size_t j) {
  const double hx = p.axis(0).step;
  const double ht = p.axis(1).step;
  const double c0 = p.at(i, j);
  const double tp = p.at(i, j + 1), tm = p.at(i, j - 1);
  const double xp = p.at(i + 1, j), xm = p.at(i - 1, j);
  return {c0, (tp - tm) / (2.0 * ht), (tp - 2.0 * c0 + tm) / (ht * ht), (xp - xm) / (2.0 * hx),
          (xp - 2.0 * c0 + xm) / (hx * hx)};
}

// d_rr + ((m - 1)/r) d_r, with the r = 0 limit m d_rr.
double radial_laplacian(const Derivs2& d, double r, int m) {
  if (m == 1) return d.xx;
  if (r == 0.0) return m * d.xx;
  return d.xx + (m - 1) / r * d.x;
}

double riccati_check(const RateModel& model) {
  const double l = model.parameter();
  const double k = l * l;
  for (int i = 1; i <= 100; ++i) {
    const double t = 0.05 * i;
    const double lt = model.rate(t);
    const double err = std::fabs(model.rate_derivative(t) + lt * lt - k);
    if (err > 1e-10 * std::max(1.0, k)) {
      throw std::logic_error("riccati_constant: identity fails for " + model.name());
    }
  }
  return k;
}

}  // namespace

GridField residual_telegraph_1d(const GridField& p, const RateModel& model, double c,
                                LaplacianMode mode) {
  const int m = mode == LaplacianMode::Line ? 1 : 2;
  return apply_2d(p, 1, [&](std::size_t i, std::size_t j) {
    const Derivs2 d = derivs(p, i, j);
    const double t = p.axis(1).at(j);
    const double r = p.axis(0).at(i);
    return d.tt + 2.0 * model.rate(t) * d.t - c * c * radial_laplacian(d, r, m);
  });
}

GridField residual_epd(const GridField& p, double damping, int space_dim, double c,
                       const std::function<double(double, double)>& source) {
  if (space_dim < 1) throw std::invalid_argument("residual_epd: space_dim must be >= 1");
  return apply_2d(p, 1, [&](std::size_t i, std::size_t j) {
    const Derivs2 d = derivs(p, i, j);
    const double t = p.axis(1).at(j);
    const double x = p.axis(0).at(i);
    if (t == 0.0) throw std::domain_error("residual_epd: grid touches t = 0");
    double r = d.tt + damping / t * d.t - c * c * radial_laplacian(d, x, space_dim);
    if (source) r -= source(x, t);
    return r;
  });
}

GridField residual_epd_dd(const GridField& p, double gamma, int d, double c) {
  return residual_epd(p, d + 2.0 * gamma - 1.0, d, c);
}

GridField residual_epd_marginal(const GridField& p, double gamma, int d, int m, double c) {
  if (m < 1 || m > d) throw std::domain_error("residual_epd_marginal: need 1 <= m <= d");
  return residual_epd(p, d + 2.0 * gamma - 1.0, m, c);
}

GridField residual_klein_gordon(const GridField& v, double kappa2, double c) {
  return apply_2d(v, 1, [&](std::size_t i, std::size_t j) {
    const Derivs2 d = derivs(v, i, j);
    return d.tt - kappa2 * d.v - c * c * d.xx;
  });
}

std::optional<double> riccati_constant(const RateModel& model) {
  switch (model.kind()) {
    case RateKind::Coth:
    case RateKind::Tanh:
      return riccati_check(model);
    case RateKind::Constant:
      return model.parameter() * model.parameter();
    default:
      return std::nullopt;
  }
}

FourthOrderCoefficients fourth_order_coefficients(const RateModel& model, double t, double c,
                                                  Frame frame) {
  const double l = model.rate(t);
  const double l1 = model.rate_derivative(t);
  const double l2 = model.rate_second_derivative(t);
  const double c2 = c * c;
  FourthOrderCoefficients k;
  k.a3 = -4.0 * l;
  k.a2_const = -5.0 * l * l - 4.0 * l1;
  k.a2_lap = c2 / 2.0;
  k.a1_const = -5.0 * l * l1 - 2.0 * l * l * l - l2;
  k.a1_lap = l * c2;
  k.a0_mixed = -c2 * c2 / 16.0;
  k.a0_lap = c2 / 2.0 * (l * l + l1);
  k.frame = frame;
  if (frame == Frame::Rotated) {
    // Lap = 2 (d_uu + d_vv) and (d_xx - d_yy)^2 = 16 d_uu d_vv.
    k.a2_lap *= 2.0;
    k.a1_lap *= 2.0;
    k.a0_lap *= 2.0;
    k.a0_mixed *= 16.0;
  }
  return k;
}

GridField residual_fourth_order(const GridField& p, const RateModel& model, double c,
                                Frame frame) {
  if (p.rank() != 3) throw std::invalid_argument("residual_fourth_order: expected an (x, y, t) grid");
  GridField r = interior(p, 2);
  const double hx = p.axis(0).step;
  const double hy = p.axis(1).step;
  const double ht = p.axis(2).step;
  const std::size_t sx = p.stride(0);
  const std::size_t sy = p.stride(1);
  const auto& v = p.values();

  // second differences along an axis with stride s and step h
  auto d2 = [&](std::size_t n, std::size_t s, double h) {
    return (v[n + s] - 2.0 * v[n] + v[n - s]) / (h * h);
  };
  auto d1 = [&](std::size_t n, std::size_t s, double h) { return (v[n + s] - v[n - s]) / (2.0 * h); };
  auto d4 = [&](std::size_t n, std::size_t s, double h) {
    return (v[n + 2 * s] - 4.0 * v[n + s] + 6.0 * v[n] - 4.0 * v[n - s] + v[n - 2 * s]) /
           (h * h * h * h);
  };
  auto d3 = [&](std::size_t n, std::size_t s, double h) {
    return (v[n + 2 * s] - 2.0 * v[n + s] + 2.0 * v[n - s] - v[n - 2 * s]) / (2.0 * h * h * h);
  };
  // mixed d_aa d_bb via the product of 3-point stencils
  auto d22 = [&](std::size_t n, std::size_t sa, double ha, std::size_t sb, double hb) {
    return (d2(n + sb, sa, ha) - 2.0 * d2(n, sa, ha) + d2(n - sb, sa, ha)) / (hb * hb);
  };
  auto d21 = [&](std::size_t n, std::size_t sa, double ha, std::size_t sb, double hb) {
    return (d2(n + sb, sa, ha) - d2(n - sb, sa, ha)) / (2.0 * hb);
  };

  const std::size_t st = 1;
  for (std::size_t i = 0; i < r.axis(0).count; ++i) {
    for (std::size_t j = 0; j < r.axis(1).count; ++j) {
      for (std::size_t k = 0; k < r.axis(2).count; ++k) {
        const std::size_t n = (i + 2) * sx + (j + 2) * sy + (k + 2);
        const double t = p.axis(2).at(k + 2);
        const FourthOrderCoefficients a = fourth_order_coefficients(model, t, c, frame);
        const double lap = d2(n, sx, hx) + d2(n, sy, hy);
        const double lap_tt = d22(n, sx, hx, st, ht) + d22(n, sy, hy, st, ht);
        const double lap_t = d21(n, sx, hx, st, ht) + d21(n, sy, hy, st, ht);
        const double mixed = frame == Frame::Original
                                 ? d4(n, sx, hx) - 2.0 * d22(n, sx, hx, sy, hy) + d4(n, sy, hy)
                                 : d22(n, sx, hx, sy, hy);
        const double rhs = a.a3 * d3(n, st, ht) + a.a2_const * d2(n, st, ht) + a.a2_lap * lap_tt +
                           a.a1_const * d1(n, st, ht) + a.a1_lap * lap_t + a.a0_mixed * mixed +
                           a.a0_lap * lap;
        r.at(i, j, k) = d4(n, st, ht) - rhs;
      }
    }
  }
  return r;
}

ResidualNorms residual_norms(const GridField& r,
                             const std::function<bool(std::span<const double>)>& mask) {
  ResidualNorms out;
  double sum2 = 0.0;
  for (std::size_t n = 0; n < r.size(); ++n) {
    if (mask) {
      const auto x = r.coordinates(n);
      if (!mask(x)) continue;
    }
    const double v = std::fabs(r[n]);
    out.max_norm = std::max(out.max_norm, v);
    sum2 += v * v;
    ++out.count;
  }
  if (out.count > 0) out.l2_norm = std::sqrt(sum2 / static_cast<double>(out.count));
  return out;
}

double ConvergenceStudy::observed_order() const {
  return levels.size() < 2 ? 0.0 : levels.back().order;
}

bool ConvergenceStudy::monotone() const {
  for (std::size_t i = 1; i < levels.size(); ++i) {
    if (!(levels[i].norms.max_norm < levels[i - 1].norms.max_norm)) return false;
  }
  return true;
}

bool ConvergenceStudy::at_rounding_level(double floor) const {
  if (levels.empty()) return false;
  for (const auto& l : levels) {
    if (!(l.norms.max_norm <= floor)) return false;
  }
  return true;
}

bool ConvergenceStudy::passes(double min_order, double floor) const {
  if (at_rounding_level(floor)) return true;
  return levels.size() >= 2 && monotone() && observed_order() >= min_order;
}

ConvergenceStudy run_convergence(const std::function<ResidualNorms(double)>& level,
                                 const std::vector<double>& steps) {
  ConvergenceStudy s;
  for (double h : steps) {
    ConvergenceLevel l;
    l.h = h;
    l.norms = level(h);
    if (!s.levels.empty()) {
      const auto& prev = s.levels.back();
      l.order = std::log(prev.norms.max_norm / l.norms.max_norm) / std::log(prev.h / h);
    }
    s.levels.push_back(l);
  }
  return s;
}

// ------------------------------------------------------------------ suites

namespace {

using Field = std::function<double(double, double)>;
using Residual = std::function<GridField(const GridField&)>;

enum class Domain { Cone, ConeRadial, Box };

// One refinement level: tabulate the field on a grid aligned to multiples of
// h, evaluate the residual, and take norms over t >= 0.2 T and either the
// cone interior (radially also r >= 0.1 cT) or the box |x| <= half_width.
// A cone node counts only when a stencil of the coarsest step g stays within
// 0.9 c t, i.e. |x| + g <= 0.9 c (t - g), so every level uses the same region.
ResidualNorms suite_level(double h, double g, const SuiteParams& P, Domain dom, double half_width,
                          const Field& field, const Residual& residual) {
  const double T = P.T;
  const double t_lo = 0.2 * T;
  const auto steps_to = [h](double v) { return static_cast<std::size_t>(std::llround(v / h)); };
  Axis space;
  double reach = dom == Domain::Box ? half_width : P.c * T;
  if (dom == Domain::ConeRadial) {
    space = {0.0, h, steps_to(reach) + 2};
  } else {
    const std::size_t k = steps_to(reach) + 1;
    space = {-static_cast<double>(k) * h, h, 2 * k + 1};
  }
  const std::size_t j0 = steps_to(t_lo) - 1;
  const Axis time{static_cast<double>(j0) * h, h, steps_to(T) - j0 + 2};
  const GridField p =
      GridField::tabulate({space, time}, [&](std::span<const double> x) { return field(x[0], x[1]); });
  const GridField r = residual(p);
  const double tol = 1e-9 * h;
  return residual_norms(r, [&](std::span<const double> x) {
    const double s = x[0];
    const double t = x[1];
    if (t < t_lo - tol || t > T + tol) return false;
    if (dom == Domain::Box) return std::fabs(s) <= half_width + tol;
    if (std::fabs(s) + g > 0.9 * P.c * (t - g) + tol) return false;
    if (dom == Domain::ConeRadial && s < 0.1 * P.c * T - tol) return false;
    return true;
  });
}

}  // namespace

std::vector<std::string> suite_names() {
  return {"epd-1d",         "telegraph-coth", "telegraph-tanh",  "telegraph-classical",
          "epd-radial",     "epd-marginal",   "planar-odd",      "planar-even",
          "klein-gordon",   "transmute",      "transmute-forced", "transmute-velocity"};
}

ConvergenceStudy run_suite(std::string_view name, const SuiteParams& P) {
  const double c = P.c;
  Field field;
  Residual residual;
  Domain dom = Domain::Cone;
  double half_width = 1.0;

  if (name == "epd-1d") {
    field = [=](double x, double t) { return density_1d(Law1D::epd(P.alpha, c, t), x); };
    residual = [=](const GridField& g) { return residual_epd(g, 2.0 * P.alpha, 1, c); };
  } else if (name == "telegraph-coth" || name == "telegraph-tanh" ||
             name == "telegraph-classical") {
    RateModel model = RateModel::constant(P.lambda);
    if (name == "telegraph-coth") {
      model = RateModel::coth(P.lambda);
      field = [=](double x, double t) { return density_1d(Law1D::coth(P.lambda, c, t), x); };
    } else if (name == "telegraph-tanh") {
      model = RateModel::tanh(P.lambda);
      field = [=](double x, double t) { return density_1d(Law1D::tanh(P.lambda, c, t), x); };
    } else {
      field = [=](double x, double t) { return density_1d(Law1D::classical(P.lambda, c, t), x); };
    }
    residual = [=](const GridField& g) { return residual_telegraph_1d(g, model, c); };
  } else if (name == "epd-radial") {
    dom = P.d == 1 ? Domain::Cone : Domain::ConeRadial;
    const RadialLawDD law0{P.gamma, P.d, c, 1.0};
    law0.validate();
    field = [=](double r, double t) {
      return density_epd_dd_radial(RadialLawDD{P.gamma, P.d, c, t}, r);
    };
    residual = [=](const GridField& g) { return residual_epd_dd(g, P.gamma, P.d, c); };
  } else if (name == "epd-marginal") {
    dom = P.m == 1 ? Domain::Cone : Domain::ConeRadial;
    field = [=](double r, double t) { return density_marginal_radial(P.gamma, P.d, P.m, r, c, t); };
    residual = [=](const GridField& g) { return residual_epd_marginal(g, P.gamma, P.d, P.m, c); };
  } else if (name == "planar-odd" || name == "planar-even") {
    dom = Domain::ConeRadial;
    const bool odd = name == "planar-odd";
    const Parity parity = odd ? Parity::Odd : Parity::Even;
    const RateModel model = odd ? RateModel::coth(P.lambda) : RateModel::tanh(P.lambda);
    field = [=](double r, double t) { return density_planar_parity(parity, P.lambda, c, t, r); };
    residual = [=](const GridField& g) {
      return residual_telegraph_1d(g, model, c, LaplacianMode::PlanarRadial);
    };
  } else if (name == "klein-gordon") {
    const double kappa2 = *riccati_constant(RateModel::coth(P.lambda));
    field = [=](double x, double t) {
      const double ct = c * t;
      const double ax = std::fabs(x);
      if (!(ax < ct)) return 0.0;
      return specfun::bessel_i(0, P.lambda / c * std::sqrt((ct - ax) * (ct + ax)));
    };
    residual = [=](const GridField& g) { return residual_klein_gordon(g, kappa2, c); };
  } else if (name == "transmute") {
    dom = Domain::Box;
    const auto v = transmute::ek_transmute(
        transmute::dalembert(transmute::make_datum(P.datum), transmute::Datum::zero(), c),
        P.alpha);
    field = v.eval;
    residual = [=](const GridField& g) { return residual_epd(g, 2.0 * P.alpha, 1, c); };
  } else if (name == "transmute-forced") {
    dom = Domain::Box;
    half_width = 0.5;
    const auto F = transmute::make_forcing(P.datum);
    const auto v = transmute::ek_transmute(transmute::duhamel(F, c, 16), P.alpha);
    const auto src = transmute::transformed_forcing(F, P.alpha);
    field = v.eval;
    residual = [=](const GridField& g) { return residual_epd(g, 2.0 * P.alpha, 1, c, src.eval); };
  } else if (name == "transmute-velocity") {
    dom = Domain::Box;
    const auto g = transmute::make_datum(P.datum);
    const auto v = transmute::ek_transmute(transmute::dalembert(transmute::Datum::zero(), g, c),
                                           P.alpha);
    const double b = specfun::beta(P.alpha, 0.5);
    field = v.eval;
    residual = [=](const GridField& grid) {
      return residual_epd(grid, 2.0 * P.alpha, 1, c,
                          [=](double x, double t) { return 2.0 * g.f(x) / (t * b); });
    };
  } else {
    throw std::invalid_argument("unknown verification suite '" + std::string(name) + "'");
  }

  if (P.steps.empty()) throw std::invalid_argument("run_suite: no grid steps");
  const double coarsest = *std::max_element(P.steps.begin(), P.steps.end());
  return run_convergence(
      [&](double h) { return suite_level(h, coarsest, P, dom, half_width, field, residual); },
      P.steps);
}

}  // namespace flightlab
