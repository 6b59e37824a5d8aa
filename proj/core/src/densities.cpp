#include "flightlab/densities.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "flightlab/quadrature.hpp"
#include "flightlab/specfun.hpp"

namespace flightlab {
namespace {

using std::numbers::pi;

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::domain_error(msg);
}

void require_cone(double c, double t) {
  require(c > 0.0 && std::isfinite(c), "speed c must be positive");
  require(t > 0.0 && std::isfinite(t), "time t must be positive");
}

// 1 - (r/R)^2 computed as a product so that it is exact in sign and symmetric.
double one_minus_sq(double r, double R) {
  const double u = std::fabs(r) / R;
  return (1.0 - u) * (1.0 + u);
}

double norm(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

// Gamma(g + d/2) / (pi^{d/2} Gamma(g)) (ct)^{-d} (1 - r^2/(ct)^2)^{g-1}, r < ct.
double epd_radial(double g, double d, double ct, double r) {
  if (!(std::fabs(r) < ct)) return 0.0;
  const double lc = specfun::ln_gamma(g + 0.5 * d) - specfun::ln_gamma(g) -
                    0.5 * d * std::log(pi) - d * std::log(ct);
  const double q = one_minus_sq(r, ct);
  return std::exp(lc) * std::pow(q, g - 1.0);
}

// Surface area of the unit sphere in R^d (2 for d = 1).
double sphere_area(int d) {
  return 2.0 * std::exp(0.5 * d * std::log(pi) - specfun::ln_gamma(0.5 * d));
}

// Integral over the ball of radius R of a radial density p(r) that behaves
// like (1 - r^2/R^2)^a at the rim. With s = r^2/R^2 the measure becomes
// (S/2) R^d s^{d/2-1} ds and the rim factor is taken into the Jacobi weight.
template <class F>
double radial_mass(int d, double R, double a, F p, int nodes) {
  const double scale = 0.5 * sphere_area(d) * std::pow(R, d);
  auto g = [&](double s) {
    const double r = R * std::sqrt(s);
    const double rim = 1.0 - s;
    const double v = p(r);
    if (a == 0.0) return scale * v;
    return scale * v / std::pow(rim, a);
  };
  return quadrature::jacobi_weighted(g, 0.0, 1.0, a, 0.5 * d - 1.0, nodes);
}

}  // namespace

// ---------------------------------------------------------------- Law1D

void Law1D::validate() const {
  require_cone(c, t);
  switch (kind) {
    case LawKind::EPD:
      require(param > 0.0 && std::isfinite(param), "EPD law: alpha must be positive");
      break;
    case LawKind::TanhLaw:
    case LawKind::CothLaw:
    case LawKind::Classical:
      require(param > 0.0 && std::isfinite(param), "law: lambda must be positive");
      break;
    case LawKind::ConditionalEven:
      require(param >= 1.0 && param == std::floor(param) && param < 1e6,
              "conditional law: k must be a positive integer");
      break;
  }
}

std::string Law1D::name() const {
  const std::string p = std::to_string(param);
  switch (kind) {
    case LawKind::EPD: return "epd(alpha=" + p + ")";
    case LawKind::TanhLaw: return "tanh(lambda=" + p + ")";
    case LawKind::CothLaw: return "coth(lambda=" + p + ")";
    case LawKind::Classical: return "classical(lambda=" + p + ")";
    case LawKind::ConditionalEven: return "conditional_even(k=" + p + ")";
  }
  return "unknown";
}

double density_1d(const Law1D& law, double x) {
  law.validate();
  const double ct = law.c * law.t;
  const double ax = std::fabs(x);
  if (!(ax < ct)) return 0.0;
  const double l = law.param;
  const double rho = std::sqrt((ct - ax) * (ct + ax));
  const double z = l * rho / law.c;
  switch (law.kind) {
    case LawKind::EPD:
      return epd_radial(l, 1.0, ct, ax);
    case LawKind::TanhLaw:
      // (lambda t / (2 cosh lambda t)) I1(z) / rho, with I1(z)/rho = (lambda/c) I1(z)/z
      return l * law.t / (2.0 * std::cosh(l * law.t)) * (l / law.c) *
             specfun::bessel_i1_over_x(z);
    case LawKind::CothLaw:
      return l * specfun::bessel_i(0, z) / (2.0 * law.c * std::sinh(l * law.t));
    case LawKind::Classical:
      return std::exp(-l * law.t) * l / (2.0 * law.c) *
             (specfun::bessel_i(0, z) + l * law.t * specfun::bessel_i1_over_x(z));
    case LawKind::ConditionalEven: {
      const int k = static_cast<int>(l);
      const double lc = specfun::ln_gamma(2.0 * k + 1.0) - specfun::ln_gamma(k + 1.0) -
                        specfun::ln_gamma(k);
      const double q = one_minus_sq(ax, ct) / 4.0;
      return std::exp(lc) / (4.0 * ct) * std::pow(q, k - 1);
    }
  }
  return 0.0;
}

double atom_mass_1d(const Law1D& law) {
  law.validate();
  switch (law.kind) {
    case LawKind::TanhLaw:
      return 1.0 / (2.0 * std::cosh(law.param * law.t));
    case LawKind::Classical:
      return std::exp(-law.param * law.t) / 2.0;
    default:
      return 0.0;
  }
}

double boundary_exponent_1d(const Law1D& law) {
  switch (law.kind) {
    case LawKind::EPD: return law.param - 1.0;
    case LawKind::ConditionalEven: return law.param - 1.0;
    default: return 0.0;
  }
}

double continuous_mass_1d(const Law1D& law, int nodes) {
  law.validate();
  const double ct = law.c * law.t;
  const double e = boundary_exponent_1d(law);
  // x = ct (2v - 1): dx = 2ct dv and c^2t^2 - x^2 = 4 c^2t^2 v (1 - v).
  auto g = [&](double v) {
    const double x = ct * (2.0 * v - 1.0);
    const double f = density_1d(law, x) * 2.0 * ct;
    if (e == 0.0) return f;
    return f / std::pow(v * (1.0 - v), e);
  };
  return quadrature::jacobi_weighted(g, 0.0, 1.0, e, e, nodes);
}

// ---------------------------------------------------------------- d-dim EPD

void RadialLawDD::validate() const {
  require(gamma > 0.0 && std::isfinite(gamma), "radial law: gamma must be positive");
  require(d >= 1, "radial law: dimension must be >= 1");
  require_cone(c, t);
}

double density_epd_dd_radial(const RadialLawDD& law, double r) {
  law.validate();
  return epd_radial(law.gamma, law.d, law.c * law.t, std::fabs(r));
}

double density_epd_dd(const RadialLawDD& law, std::span<const double> x) {
  require(static_cast<int>(x.size()) == law.d, "density_epd_dd: point has wrong dimension");
  return density_epd_dd_radial(law, norm(x));
}

double ball_mass_epd_dd(const RadialLawDD& law, int nodes) {
  law.validate();
  return radial_mass(law.d, law.c * law.t, law.gamma - 1.0,
                     [&](double r) { return density_epd_dd_radial(law, r); }, nodes);
}

double density_marginal_radial(double gamma, int d, int m, double r, double c, double t) {
  require(m >= 1 && m <= d, "density_marginal: need 1 <= m <= d");
  const RadialLawDD projected{gamma + 0.5 * (d - m), m, c, t};
  return density_epd_dd_radial(projected, r);
}

double density_marginal(double gamma, int d, int m, std::span<const double> x_m, double c,
                        double t) {
  require(m >= 1 && m <= d, "density_marginal: need 1 <= m <= d");
  require(static_cast<int>(x_m.size()) == m, "density_marginal: point has wrong dimension");
  return density_marginal_radial(gamma, d, m, norm(x_m), c, t);
}

// ---------------------------------------------------------------- 3D flight

double density_flight3d_radial(double lambda, double c, double t, double r) {
  require_cone(c, t);
  require(lambda > 0.0, "flight3d: lambda must be positive");
  const double ct = c * t;
  r = std::fabs(r);
  if (!(r < ct)) return 0.0;
  const double rho = std::sqrt((ct - r) * (ct + r));
  const double k = lambda / c;
  // (lambda/2c)^2 / (pi sinh lambda t) * I1(k rho) / rho
  return 0.25 * k * k / (pi * std::sinh(lambda * t)) * k *
         specfun::bessel_i1_over_x(k * rho);
}

double density_flight3d(double lambda, double c, double t, std::span<const double> x) {
  require(x.size() == 3, "density_flight3d: point must be three-dimensional");
  return density_flight3d_radial(lambda, c, t, norm(x));
}

double sphere_mass(double lambda, double t) {
  require(lambda > 0.0 && t >= 0.0, "sphere_mass: need lambda > 0, t >= 0");
  const double z = lambda * t;
  if (z < 1e-4) return z * z / 6.0;  // 1 - z/sinh z = z^2/6 - 7 z^4/360 + ...
  return 1.0 - z / std::sinh(z);
}

double sphere_atom_mass(double lambda, double t) { return 1.0 - sphere_mass(lambda, t); }

double ball_mass_flight3d(double lambda, double c, double t, int nodes) {
  return radial_mass(3, c * t, 0.0,
                     [&](double r) { return density_flight3d_radial(lambda, c, t, r); },
                     nodes);
}

// ---------------------------------------------------------------- planar

void PlanarConditional::validate() const {
  switch (kind) {
    case PlanarKind::UniformN:
      require(n >= 1, "UniformN: need n >= 1");
      break;
    case PlanarKind::ProjX:
      require(d >= 2 && n >= 0, "ProjX: need d >= 2, n >= 0");
      break;
    case PlanarKind::ProjY:
      require(d >= 3 && n >= 0, "ProjY: need d >= 3, n >= 0");
      break;
  }
}

double PlanarConditional::shape() const {
  switch (kind) {
    case PlanarKind::UniformN:
      return 0.5 * n;
    case PlanarKind::ProjX:
      return 0.5 * (n + 1) * (d - 1) - 0.5;
    case PlanarKind::ProjY:
      return (n + 1) * (0.5 * d - 1.0);
  }
  return 0.0;
}

namespace {

// g / (pi (ct)^2) (1 - r^2/(ct)^2)^{g-1}, the disc profile shared by all
// conditional planar laws; g = 0 is the degenerate all-on-circle case.
double disc_profile(double g, double r, double ct) {
  if (!(r < ct) || g == 0.0) return 0.0;
  return g / (pi * ct * ct) * std::pow(one_minus_sq(r, ct), g - 1.0);
}

}  // namespace

double density_planar_conditional(const PlanarConditional& law, double r, double c, double t) {
  law.validate();
  require_cone(c, t);
  return disc_profile(law.shape(), std::fabs(r), c * t);
}

double density_planar_unconditional(PlanarKind kind, int d, const RateModel& model, double r,
                                    double c, double t) {
  require(kind != PlanarKind::UniformN, "unconditional planar law: kind must be ProjX or ProjY");
  require_cone(c, t);
  if (model.divergent_at_origin()) {
    throw std::domain_error("unconditional planar law: Lambda(t) is infinite for " +
                            model.name());
  }
  const double big_lambda = model.cumulative_hazard(0.0, t);
  const double ct = c * t;
  r = std::fabs(r);
  if (!(r < ct)) return 0.0;
  const PlanarConditional first{kind, d, 0};
  first.validate();
  const double q = one_minus_sq(r, ct);
  const double step = PlanarConditional{kind, d, 1}.shape() - first.shape();

  double sum = 0.0;
  const double log_l = big_lambda > 0.0 ? std::log(big_lambda) : 0.0;
  for (int n = 0; n < 100000; ++n) {
    const PlanarConditional cond{kind, d, n};
    const double g = cond.shape();
    double weight;
    if (big_lambda == 0.0) {
      weight = n == 0 ? 1.0 : 0.0;
    } else {
      weight = std::exp(-big_lambda + n * log_l - specfun::ln_gamma(n + 1.0));
    }
    const double term = weight * disc_profile(g, r, ct);
    sum += term;
    if (big_lambda == 0.0) break;
    if (g == 0.0) continue;
    // Later term ratios are bounded by this one, so the tail is geometric.
    const double ratio = big_lambda / (n + 1.0) * ((g + step) / g) * std::pow(q, step);
    if (ratio < 1.0 && term * ratio / (1.0 - ratio) <= 1e-13 * sum) break;
  }
  return sum;
}

double density_planar_projx3_square(double lambda, double r, double c, double t) {
  require_cone(c, t);
  const double ct = c * t;
  r = std::fabs(r);
  if (!(r < ct)) return 0.0;
  const double rho = std::sqrt((ct - r) * (ct + r));
  const double k = lambda / c;
  return (0.5 + k * k * rho * rho) * std::exp(-k * k * r * r) / (pi * ct * rho);
}

double density_planar_parity(Parity parity, double lambda, double c, double t, double r) {
  require_cone(c, t);
  require(lambda > 0.0, "parity law: lambda must be positive");
  const double ct = c * t;
  r = std::fabs(r);
  if (!(r < ct)) return 0.0;
  const double rho = std::sqrt((ct - r) * (ct + r));
  const double z = lambda * rho / c;
  const double lt = lambda * t;
  const double pre = lambda / (2.0 * pi * c);
  if (parity == Parity::Odd) {
    return pre * std::cosh(z) / (std::sinh(lt) * rho);
  }
  // sinh(z)/rho stays finite as rho -> 0
  const double sz = z < 1e-8 ? lambda / c : std::sinh(z) / rho;
  return pre * sz / std::cosh(lt);
}

double parity_boundary_mass(Parity parity, double lambda, double t) {
  require(lambda > 0.0 && t >= 0.0, "parity_boundary_mass: need lambda > 0, t >= 0");
  return parity == Parity::Odd ? 0.0 : 1.0 / std::cosh(lambda * t);
}

double disc_mass_parity(Parity parity, double lambda, double c, double t, int nodes) {
  const double a = parity == Parity::Odd ? -0.5 : 0.0;
  return radial_mass(2, c * t, a,
                     [&](double r) { return density_planar_parity(parity, lambda, c, t, r); },
                     nodes);
}

// ---------------------------------------------------------------- summaries

double charfn_flight(double gamma, int d, double c, double t, double k) {
  RadialLawDD{gamma, d, c, t}.validate();
  const double nu = gamma + 0.5 * d - 1.0;
  require(nu >= 0.0, "charfn_flight: need gamma + d/2 - 1 >= 0");
  const double x = c * t * std::fabs(k);
  if (x > specfun::kBesselJMaxArgument) {
    throw std::domain_error("charfn_flight: ctk exceeds the supported range");
  }
  return specfun::bessel_j_normalized(nu, x);
}

double moment_2k(double alpha, double c, double t, int k) {
  require(alpha > 0.0, "moment_2k: alpha must be positive");
  require(k >= 0, "moment_2k: k must be nonnegative");
  require_cone(c, t);
  if (k == 0) return 1.0;
  const double lg = specfun::ln_gamma(alpha + 0.5) + specfun::ln_gamma(k + 0.5) -
                    0.5 * std::log(pi) - specfun::ln_gamma(alpha + k + 0.5);
  return std::pow(c * t, 2 * k) * std::exp(lg);
}

double mean_speed(int d, double c) {
  require(d >= 2, "mean_speed: need d >= 2");
  return c * std::exp(specfun::ln_gamma(0.5 * d) + specfun::ln_gamma(1.5) -
                      specfun::ln_gamma(0.5 * (d + 1)));
}

}  // namespace flightlab
