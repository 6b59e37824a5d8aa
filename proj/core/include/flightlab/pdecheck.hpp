#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "flightlab/grid.hpp"
#include "flightlab/rates.hpp"

// Finite-difference residuals of the governing equations. Every operator
// takes a field sampled on a regular grid (space axes first, time last) and
// returns the residual on the interior nodes, i.e. on the grid shrunk by the
// stencil radius along each axis.

namespace flightlab {

/// How the space axis of a (space, time) grid is read.
enum class LaplacianMode {
  Line,          // d^2/dx^2
  PlanarRadial,  // d^2/dr^2 + (1/r) d/dr
};

/// p_tt + 2 lambda(t) p_t - c^2 Lap p.
GridField residual_telegraph_1d(const GridField& p, const RateModel& model, double c,
                                LaplacianMode mode = LaplacianMode::Line);

/// p_tt + (k/t) p_t - c^2 (p_rr + ((m - 1)/r) p_r) - source(r, t), with
/// k = damping numerator and m = space dimension. For m = 1 the space axis
/// may cover negative coordinates.
GridField residual_epd(const GridField& p, double damping, int space_dim, double c,
                       const std::function<double(double, double)>& source = {});

/// EPD equation of the d-dimensional flight law (coefficient (d + 2 gamma - 1)/t),
/// on a radially sampled grid (or a line grid for d = 1).
GridField residual_epd_dd(const GridField& p, double gamma, int d, double c);

/// Marginal of the d-dimensional law on R^m: same coefficient, m-dimensional
/// radial Laplacian.
GridField residual_epd_marginal(const GridField& p, double gamma, int d, int m, double c);

/// Klein-Gordon form v_tt - kappa2 v - c^2 v_xx.
GridField residual_klein_gordon(const GridField& v, double kappa2, double c);

/// lambda^2 for the Riccati rates (lambda' + lambda^2 is constant), after
/// checking the identity on a grid of t values to 1e-10; nullopt for other
/// kinds except Constant, which returns lambda^2.
std::optional<double> riccati_constant(const RateModel& model);

enum class Frame {
  Original,  // x, y
  Rotated,   // u = y + x, v = y - x
};

/// Coefficients of the fourth-order equation
///   p_tttt = a3 p_ttt + (a2_const + a2_lap Lap) p_tt + (a1_const + a1_lap Lap) p_t
///            + a0_mixed M p + a0_lap Lap p,
/// where M = (d_xx - d_yy)^2 in the original frame and d_uu d_vv in the rotated one.
struct FourthOrderCoefficients {
  double a3 = 0.0;
  double a2_const = 0.0;
  double a2_lap = 0.0;
  double a1_const = 0.0;
  double a1_lap = 0.0;
  double a0_mixed = 0.0;
  double a0_lap = 0.0;
  Frame frame = Frame::Original;

  friend bool operator==(const FourthOrderCoefficients&, const FourthOrderCoefficients&) = default;
};

FourthOrderCoefficients fourth_order_coefficients(const RateModel& model, double t, double c,
                                                  Frame frame = Frame::Original);

/// Residual of the fourth-order equation on an (x, y, t) grid (or (u, v, t) in
/// the rotated frame); stencils reach two nodes in every direction.
GridField residual_fourth_order(const GridField& p, const RateModel& model, double c,
                                Frame frame = Frame::Original);

struct ResidualNorms {
  double max_norm = 0.0;
  double l2_norm = 0.0;  // root mean square over the masked nodes
  std::size_t count = 0;
};

/// Norms over the nodes whose coordinates pass `mask` (all nodes if empty).
ResidualNorms residual_norms(const GridField& r,
                             const std::function<bool(std::span<const double>)>& mask = {});

struct ConvergenceLevel {
  double h = 0.0;
  ResidualNorms norms;
  double order = 0.0;  // log2 of the max-norm ratio to the previous level; 0 for the first
};

struct ConvergenceStudy {
  std::vector<ConvergenceLevel> levels;

  /// Order between the last two levels.
  double observed_order() const;
  bool monotone() const;
  /// Every level's max norm is at or below `floor` (the stencil is exact for
  /// the field, so only rounding is left).
  bool at_rounding_level(double floor) const;
  bool passes(double min_order = 1.8, double floor = 1e-8) const;
};

/// Evaluates `level(h)` for each step and fills in the orders.
ConvergenceStudy run_convergence(const std::function<ResidualNorms(double)>& level,
                                 const std::vector<double>& steps);

/// Parameters shared by the named verification suites.
struct SuiteParams {
  double alpha = 1.5;
  double lambda = 1.0;
  double gamma = 2.0;
  int d = 3;
  int m = 1;
  double c = 1.0;
  double T = 1.0;
  std::string datum = "gaussian";
  std::vector<double> steps = {0.02, 0.01, 0.005};
};

/// Names accepted by run_suite.
std::vector<std::string> suite_names();

/// Convergence study of a named (field, equation) pair: epd-1d, telegraph-coth,
/// telegraph-tanh, epd-radial, epd-marginal, planar-odd, planar-even,
/// klein-gordon, transmute (datum), transmute-forced (datum = one|x|xt),
/// transmute-velocity (datum = cosine|gaussian).
ConvergenceStudy run_suite(std::string_view name, const SuiteParams& params);

}  // namespace flightlab
