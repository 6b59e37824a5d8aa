#include "flightlab/polarity.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "flightlab/densities.hpp"

namespace flightlab {
namespace {

// Velocity signs of the polarities (++, +-, -+, --).
constexpr std::array<int, 4> kSx = {1, 1, -1, -1};
constexpr std::array<int, 4> kSy = {1, -1, 1, -1};

// Orthogonal partners: flip exactly one sign.
constexpr std::array<std::array<int, 2>, 4> kPartners = {{{1, 2}, {0, 3}, {0, 3}, {1, 2}}};

// First-order upwind step along one axis with Courant number nu in (0, 1];
// nu = 1 is an exact one-cell shift. Mass leaving the grid is dropped.
void upwind(std::vector<double>& v, std::vector<double>& tmp, int n, bool along_x, int sign,
            double nu) {
  tmp.assign(v.size(), 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const int k = i * n + j;
      int ui = i, uj = j;
      if (along_x) {
        ui -= sign;
      } else {
        uj -= sign;
      }
      const double up = (ui >= 0 && ui < n && uj >= 0 && uj < n) ? v[ui * n + uj] : 0.0;
      tmp[k] = v[k] - nu * (v[k] - up);
    }
  }
  v.swap(tmp);
}

// df_a/dt = (rate/2) (f_b + f_c - 2 f_a) over all cells.
void exchange_rhs(const std::array<std::vector<double>, 4>& f, double rate,
                  std::array<std::vector<double>, 4>& out) {
  const double h = 0.5 * rate;
  for (int a = 0; a < 4; ++a) {
    const auto& fa = f[a];
    const auto& fb = f[kPartners[a][0]];
    const auto& fc = f[kPartners[a][1]];
    auto& o = out[a];
    o.resize(fa.size());
    for (std::size_t k = 0; k < fa.size(); ++k) o[k] = h * (fb[k] + fc[k] - 2.0 * fa[k]);
  }
}

// Heun step of length tau from time t.
void exchange(std::array<std::vector<double>, 4>& f, const std::function<double(double)>& rate,
              double t, double tau,
              std::array<std::vector<double>, 4>& k1, std::array<std::vector<double>, 4>& k2,
              std::array<std::vector<double>, 4>& tmp) {
  exchange_rhs(f, rate(t), k1);
  for (int a = 0; a < 4; ++a) {
    tmp[a].resize(f[a].size());
    for (std::size_t k = 0; k < f[a].size(); ++k) tmp[a][k] = f[a][k] + tau * k1[a][k];
  }
  exchange_rhs(tmp, rate(t + tau), k2);
  for (int a = 0; a < 4; ++a) {
    for (std::size_t k = 0; k < f[a].size(); ++k) f[a][k] += 0.5 * tau * (k1[a][k] + k2[a][k]);
  }
}

double kahan_sum(const std::vector<double>& v) {
  double s = 0.0, comp = 0.0;
  for (double x : v) {
    const double y = x - comp;
    const double t = s + y;
    comp = (t - s) - y;
    s = t;
  }
  return s;
}

}  // namespace

PolarityResult solve_polarity_system(const RateModel& model, double c, double T,
                                     const PolarityOptions& opt) {
  const double t_start = model.divergent_at_origin() ? opt.t_start_fraction * T : 0.0;
  return solve_polarity_system([&model](double t) { return model.rate(t); }, c, T, t_start, opt);
}

PolarityResult solve_polarity_system(const std::function<double(double)>& rate, double c,
                                     double T, double t_start, const PolarityOptions& opt) {
  if (!(c > 0.0) || !(T > 0.0)) throw std::domain_error("polarity solver: need c, T > 0");
  if (!(t_start >= 0.0) || !(t_start < T)) {
    throw std::domain_error("polarity solver: need 0 <= t_start < T");
  }
  if (opt.cells < 21 || opt.cells % 2 == 0) {
    throw std::invalid_argument("polarity solver: cells must be odd and >= 21");
  }
  if (!(opt.cfl > 0.0) || opt.cfl > 1.0) {
    throw std::domain_error("polarity solver: CFL number (c/2) dt/dx must lie in (0, 1]");
  }
  if (!(opt.bump_sigma_cells > 0.0)) throw std::invalid_argument("polarity solver: bad bump width");

  const int n = opt.cells;
  const int half = n / 2;
  // Cells travelled by a bump along each axis: steps * cfl. Below CFL 1 the
  // upwind step adds travel * (1 - cfl) cells^2 of variance, so the margin
  // keeps 8 standard deviations of the smeared bump inside the grid.
  const double var0 = opt.bump_sigma_cells * opt.bump_sigma_cells;
  int margin = static_cast<int>(std::ceil(8.0 * opt.bump_sigma_cells));
  while (margin < half &&
         margin < 8.0 * std::sqrt(var0 + (half - margin) * (1.0 - opt.cfl))) {
    ++margin;
  }
  const int travel = half - margin;
  if (travel < 1) throw std::invalid_argument("polarity solver: grid too small for the bump");
  const int steps = std::max(1, static_cast<int>(std::floor(travel / opt.cfl)));

  PolarityResult res;
  res.T = T;
  res.t_start = t_start;
  res.steps = steps;
  res.dt = (T - res.t_start) / steps;
  res.dx = 0.5 * c * res.dt / opt.cfl;
  const double nu = 0.5 * c * res.dt / res.dx;

  const Axis axis{-half * res.dx, res.dx, static_cast<std::size_t>(n)};
  const double s2 = 2.0 * opt.bump_sigma_cells * opt.bump_sigma_cells;
  GridField bump({axis, axis});
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double di = i - half, dj = j - half;
      bump.at(i, j) = std::exp(-(di * di + dj * dj) / s2);
    }
  }
  const double norm = kahan_sum(bump.values()) * res.dx * res.dx;
  for (double& v : bump.values()) v /= norm;
  res.initial = bump;

  std::array<std::vector<double>, 4> f;
  for (auto& fa : f) {
    fa = bump.values();
    for (double& v : fa) v *= 0.25;
  }
  std::array<std::vector<double>, 4> k1, k2, tmp;
  std::vector<double> scratch;
  const double cell = res.dx * res.dx;
  auto total_mass = [&] {
    double m = 0.0;
    for (const auto& fa : f) m += kahan_sum(fa);
    return m * cell;
  };
  res.mass_history.push_back(total_mass());

  double t = res.t_start;
  for (int s = 0; s < steps; ++s) {
    exchange(f, rate, t, 0.5 * res.dt, k1, k2, tmp);
    for (int a = 0; a < 4; ++a) {
      upwind(f[a], scratch, n, true, kSx[a], nu);
      upwind(f[a], scratch, n, false, kSy[a], nu);
    }
    exchange(f, rate, t + 0.5 * res.dt, 0.5 * res.dt, k1, k2, tmp);
    t = res.t_start + (s + 1) * res.dt;
    res.mass_history.push_back(total_mass());
  }

  res.p = GridField({axis, axis});
  res.w = GridField({axis, axis});
  res.z = GridField({axis, axis});
  res.u = GridField({axis, axis});
  for (std::size_t k = 0; k < res.p.size(); ++k) {
    const double pp = f[0][k], pm = f[1][k], mp = f[2][k], mm = f[3][k];
    res.p[k] = pp + mm + mp + pm;
    res.w[k] = pp + pm - mp - mm;
    res.z[k] = pp - pm + mp - mm;
    res.u[k] = pp - pm - mp + mm;
  }
  for (int a = 0; a < 4; ++a) {
    GridField g({axis, axis});
    g.values() = std::move(f[a]);
    res.f.push_back(std::move(g));
  }
  return res;
}

std::vector<double> diagonal_masses(const GridField& density, double dx) {
  const std::size_t n = density.axis(0).count;
  std::vector<double> out(2 * n - 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out[i + j] += density.at(i, j) * dx * dx;
  }
  return out;
}

std::vector<double> row_masses(const GridField& density, double dx) {
  const std::size_t n = density.axis(0).count;
  std::vector<double> out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out[i] += density.at(i, j) * dx * dx;
  }
  return out;
}

std::vector<double> telegraph_cell_masses(double lambda, double c, double T, double dx, int half) {
  std::vector<double> m(2 * half + 1, 0.0);
  const Law1D law = Law1D::classical(lambda, c, T);
  // 4-point Gauss-Legendre per cell
  static constexpr std::array<double, 2> gn = {0.3399810435848563, 0.8611363115940526};
  static constexpr std::array<double, 2> gw = {0.6521451548625461, 0.3478548451374538};
  // The continuous part is smooth on [-cT, cT] and zero outside, so each
  // cell is integrated over its intersection with that interval only.
  const double ct = c * T;
  for (int k = -half; k <= half; ++k) {
    const double a = std::max(k * dx - 0.5 * dx, -ct);
    const double b = std::min(k * dx + 0.5 * dx, ct);
    if (!(b > a)) continue;
    const double mid = 0.5 * (a + b), w = b - a;
    double s = 0.0;
    for (int q = 0; q < 2; ++q) {
      s += gw[q] * (density_1d(law, mid - 0.5 * w * gn[q]) + density_1d(law, mid + 0.5 * w * gn[q]));
    }
    m[k + half] = 0.5 * w * s;
  }
  const double atom = atom_mass_1d(law);
  for (double sign : {-1.0, 1.0}) {
    const double pos = sign * c * T / dx;
    const double lo = std::floor(pos);
    const double frac = pos - lo;
    const int i0 = static_cast<int>(lo) + half;
    if (i0 >= 0 && i0 < static_cast<int>(m.size())) m[i0] += atom * (1.0 - frac);
    if (frac > 0.0 && i0 + 1 >= 0 && i0 + 1 < static_cast<int>(m.size())) m[i0 + 1] += atom * frac;
  }
  return m;
}

std::vector<double> convolve_centered(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() % 2 == 0 || b.size() % 2 == 0) {
    throw std::invalid_argument("convolve_centered: vectors must have odd length");
  }
  std::vector<double> out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0.0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

namespace {

// Crop or zero-pad a centered vector to length 2 * half + 1.
std::vector<double> recenter(const std::vector<double>& v, int half) {
  std::vector<double> out(2 * half + 1, 0.0);
  const int vh = static_cast<int>(v.size()) / 2;
  for (int k = -half; k <= half; ++k) {
    const int src = k + vh;
    if (src >= 0 && src < static_cast<int>(v.size())) out[k + half] = v[src];
  }
  return out;
}

}  // namespace

std::vector<double> reference_diagonal_masses(const PolarityResult& r, double lambda, double c) {
  const int n = static_cast<int>(r.p.axis(0).count);
  const int half = n - 1;  // diagonal offsets run over -(n-1)..(n-1)
  const double T = r.T - r.t_start;
  const auto one = telegraph_cell_masses(0.5 * lambda, 0.5 * c, T, r.dx, half);
  const auto sum = convolve_centered(one, one);
  const auto bump = diagonal_masses(r.initial, r.dx);
  return recenter(convolve_centered(recenter(sum, half), bump), half);
}

std::vector<double> reference_row_masses(const PolarityResult& r, double lambda, double c) {
  const int n = static_cast<int>(r.p.axis(0).count);
  const int half = n / 2;
  const double T = r.T - r.t_start;
  const auto one = telegraph_cell_masses(0.5 * lambda, 0.5 * c, T, r.dx, half);
  const auto bump = row_masses(r.initial, r.dx);
  return recenter(convolve_centered(one, bump), half);
}

double l1_distance(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("l1_distance: size mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::fabs(a[i] - b[i]);
  return s;
}

}  // namespace flightlab
