#pragma once

#include <span>
#include <string>

#include "flightlab/rates.hpp"

// Closed-form laws of finite-velocity random motions. Every density here is
// the absolutely continuous part only; mass sitting on the light cone (|x| =
// ct, or the sphere ||x|| = ct) is reported separately and the continuous
// density is 0 at and beyond the cone.

namespace flightlab {

enum class LawKind {
  EPD,              // rate alpha/t: (ct)^(1-2a) / B(a,1/2) (c^2t^2 - x^2)^(a-1)
  TanhLaw,          // rate lambda tanh(lambda t), atoms 1/(2 cosh lambda t)
  CothLaw,          // rate lambda coth(lambda t), no atoms
  Classical,        // constant rate lambda, atoms e^{-lambda t}/2
  ConditionalEven,  // classical telegraph given N(t) = 2k
};

/// One-dimensional position law on (-ct, ct) plus optional atoms at +-ct.
struct Law1D {
  LawKind kind = LawKind::EPD;
  double param = 1.0;  // alpha, lambda, or k depending on kind
  double c = 1.0;
  double t = 1.0;

  static Law1D epd(double alpha, double c, double t) { return {LawKind::EPD, alpha, c, t}; }
  static Law1D tanh(double lambda, double c, double t) { return {LawKind::TanhLaw, lambda, c, t}; }
  static Law1D coth(double lambda, double c, double t) { return {LawKind::CothLaw, lambda, c, t}; }
  static Law1D classical(double lambda, double c, double t) {
    return {LawKind::Classical, lambda, c, t};
  }
  static Law1D conditional_even(int k, double c, double t) {
    return {LawKind::ConditionalEven, static_cast<double>(k), c, t};
  }

  /// Throws std::domain_error on invalid parameters.
  void validate() const;
  double half_width() const { return c * t; }
  std::string name() const;
};

double density_1d(const Law1D& law, double x);

/// Mass of the atom at each endpoint +-ct.
double atom_mass_1d(const Law1D& law);

/// Integral of the continuous part, by Gauss-Jacobi quadrature in the Beta
/// coordinate x = ct(2v - 1) with the law's own boundary exponent as weight.
double continuous_mass_1d(const Law1D& law, int nodes = 64);

/// Exponent e such that the continuous density behaves like (c^2t^2 - x^2)^e
/// near the cone (0 for laws that are smooth up to the cone).
double boundary_exponent_1d(const Law1D& law);

/// Fundamental solution of the d-dimensional EPD equation, supported on the
/// ball of radius ct:
///   Gamma(g + d/2) / (pi^{d/2} Gamma(g)) (ct)^{-(d-2+2g)} (c^2t^2 - |x|^2)^{g-1}.
struct RadialLawDD {
  double gamma = 1.0;
  int d = 1;
  double c = 1.0;
  double t = 1.0;

  void validate() const;
};

double density_epd_dd(const RadialLawDD& law, std::span<const double> x);
/// Same density evaluated at any point of norm r.
double density_epd_dd_radial(const RadialLawDD& law, double r);
/// Integral of the density over the ball, by radial Gauss-Jacobi quadrature.
double ball_mass_epd_dd(const RadialLawDD& law, int nodes = 64);

/// Law of the projection of the d-dimensional EPD flight onto its first m
/// coordinates.
double density_marginal(double gamma, int d, int m, std::span<const double> x_m,
                        double c, double t);
double density_marginal_radial(double gamma, int d, int m, double r, double c, double t);

/// Three-dimensional random flight with Dirichlet displacements and rate
/// lambda coth(lambda t); continuous part inside the ball.
double density_flight3d(double lambda, double c, double t, std::span<const double> x);
double density_flight3d_radial(double lambda, double c, double t, double r);
/// 1 - lambda t / sinh(lambda t), the quantity quoted as the sphere mass of
/// this flight. It equals the integral of density_flight3d over the open ball;
/// the mass actually sitting on ||x|| = ct is lambda t / sinh(lambda t), see
/// sphere_atom_mass.
double sphere_mass(double lambda, double t);
/// lambda t / sinh(lambda t) (1 at t = 0).
double sphere_atom_mass(double lambda, double t);
double ball_mass_flight3d(double lambda, double c, double t, int nodes = 64);

enum class PlanarKind { UniformN, ProjX, ProjY };

/// Conditional planar laws given the number of direction changes:
///   UniformN(n): the isotropic planar flight after n changes;
///   ProjX(d, n) / ProjY(d, n): shadows on the plane of d-dimensional flights.
struct PlanarConditional {
  PlanarKind kind = PlanarKind::UniformN;
  int d = 2;
  int n = 1;

  static PlanarConditional uniform(int n) { return {PlanarKind::UniformN, 2, n}; }
  static PlanarConditional proj_x(int d, int n) { return {PlanarKind::ProjX, d, n}; }
  static PlanarConditional proj_y(int d, int n) { return {PlanarKind::ProjY, d, n}; }

  void validate() const;
  /// The law is the disc EPD profile with this shape parameter.
  double shape() const;
};

double density_planar_conditional(const PlanarConditional& law, double r, double c, double t);

/// Poisson mixture over n of the ProjX / ProjY conditional laws, with
/// Lambda(t) taken from the rate model. Divergent models are rejected.
double density_planar_unconditional(PlanarKind kind, int d, const RateModel& model,
                                    double r, double c, double t);
/// Closed form of the ProjX, d = 3 mixture when Lambda(t) = (lambda t)^2.
double density_planar_projx3_square(double lambda, double r, double c, double t);

enum class Parity { Odd, Even };

/// Isotropic planar flight whose direction changes happen only when the
/// Poisson count is odd (Odd) or even (Even).
double density_planar_parity(Parity parity, double lambda, double c, double t, double r);
/// Mass on the circle ||x|| = ct (0 for Odd, 1/cosh(lambda t) for Even).
double parity_boundary_mass(Parity parity, double lambda, double t);
double disc_mass_parity(Parity parity, double lambda, double c, double t, int nodes = 64);

/// Characteristic function of the EPD flight at frequency norm k:
///   2^nu Gamma(nu + 1) J_nu(ctk) / (ctk)^nu,  nu = gamma + d/2 - 1.
double charfn_flight(double gamma, int d, double c, double t, double k);

/// E X^{2k} for the one-dimensional EPD law:
///   (ct)^{2k} Gamma(a + 1/2) Gamma(k + 1/2) / (sqrt(pi) Gamma(a + k + 1/2)).
double moment_2k(double alpha, double c, double t, int k);

/// Mean speed of the planar shadow of a d-dimensional flight:
///   c Gamma(d/2) Gamma(3/2) / Gamma((d + 1)/2).
double mean_speed(int d, double c);

}  // namespace flightlab
