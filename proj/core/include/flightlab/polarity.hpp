#pragma once

#include <functional>
#include <vector>

#include "flightlab/grid.hpp"
#include "flightlab/rates.hpp"

// Direct solver for the four-polarity transport system: densities f_ab of the
// planar motion with velocity (a c/2, b c/2), a, b in {+, -}, exchanging mass
// with the two orthogonal polarities at rate lambda(t)/2 each.

namespace flightlab {

struct PolarityOptions {
  int cells = 401;                 // odd; square grid of cells x cells
  double cfl = 1.0;                // (c/2) dt / dx, must lie in (0, 1]
  double bump_sigma_cells = 2.0;   // width of the initial Gaussian bump
  double t_start_fraction = 1e-4;  // start time / T for divergent rates
};

struct PolarityResult {
  // Aggregates p = sum f, w, z, u on the cell centers at time T (axes x, y).
  GridField p, w, z, u;
  // The four polarity densities, ordered (++, +-, -+, --).
  std::vector<GridField> f;
  // Initial total density (the bump).
  GridField initial;
  double dx = 0.0;
  double dt = 0.0;
  int steps = 0;
  double t_start = 0.0;
  double T = 0.0;
  // Total mass of p after each step (index 0: initial).
  std::vector<double> mass_history;
};

/// Upwind finite-volume transport per polarity with Strang-split exchange
/// (Heun half steps). The grid spacing follows from T, the CFL number and
/// the number of steps, chosen so that the bump stays 8 sigma clear of the
/// edge. Throws std::domain_error on a CFL violation.
PolarityResult solve_polarity_system(const RateModel& model, double c, double T,
                                     const PolarityOptions& options = {});

/// Same scheme for an arbitrary nonnegative rate function (0 allowed),
/// integrated over [t_start, T].
PolarityResult solve_polarity_system(const std::function<double(double)>& rate, double c,
                                     double T, double t_start,
                                     const PolarityOptions& options = {});

/// Mass on each anti-diagonal i + j of a square cell grid (size 2n - 1),
/// i.e. the marginal along x + y sampled at spacing dx.
std::vector<double> diagonal_masses(const GridField& density, double dx);

/// Mass on each column i (marginal of the first coordinate).
std::vector<double> row_masses(const GridField& density, double dx);

/// Cell masses (spacing dx, centered on multiples of dx, offsets -half..half)
/// of the law of one telegraph process with constant rate at time T,
/// including its two atoms (split linearly between neighbouring cells when
/// they fall off the lattice).
std::vector<double> telegraph_cell_masses(double lambda, double c, double T, double dx, int half);

/// Discrete convolution of two centered mass vectors (result is centered).
std::vector<double> convolve_centered(const std::vector<double>& a, const std::vector<double>& b);

/// Reference marginals for constant lambda, built from the closed-form
/// telegraph law with speed c/2 and rate lambda/2 and smeared by the solver's
/// own initial bump: along x + y the law of the sum of two independent copies,
/// along x a single copy. Sized like diagonal_masses / row_masses.
std::vector<double> reference_diagonal_masses(const PolarityResult& result, double lambda, double c);
std::vector<double> reference_row_masses(const PolarityResult& result, double lambda, double c);

/// sum |a_i - b_i|.
double l1_distance(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace flightlab
