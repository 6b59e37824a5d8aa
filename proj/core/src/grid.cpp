#include "flightlab/grid.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

#include "flightlab/format.hpp"

namespace flightlab {

GridField::GridField(std::vector<Axis> axes, double fill) : axes_(std::move(axes)) {
  if (axes_.empty()) throw std::invalid_argument("GridField: need at least one axis");
  strides_.assign(axes_.size(), 1);
  std::size_t total = 1;
  for (std::size_t k = axes_.size(); k-- > 0;) {
    if (axes_[k].count == 0 || !(axes_[k].step > 0.0)) {
      throw std::invalid_argument("GridField: axes need positive step and count");
    }
    strides_[k] = total;
    total *= axes_[k].count;
  }
  values_.assign(total, fill);
}

GridField GridField::tabulate(std::vector<Axis> axes,
                              const std::function<double(std::span<const double>)>& f) {
  GridField g(std::move(axes));
  std::vector<double> x(g.rank());
  for (std::size_t n = 0; n < g.size(); ++n) {
    std::size_t rest = n;
    for (std::size_t k = 0; k < g.rank(); ++k) {
      x[k] = g.axes_[k].at(rest / g.strides_[k]);
      rest %= g.strides_[k];
    }
    g.values_[n] = f(x);
  }
  return g;
}

std::vector<std::size_t> GridField::unflatten(std::size_t flat) const {
  std::vector<std::size_t> idx(rank());
  for (std::size_t k = 0; k < rank(); ++k) {
    idx[k] = flat / strides_[k];
    flat %= strides_[k];
  }
  return idx;
}

std::vector<double> GridField::coordinates(std::size_t flat) const {
  const auto idx = unflatten(flat);
  std::vector<double> x(rank());
  for (std::size_t k = 0; k < rank(); ++k) x[k] = axes_[k].at(idx[k]);
  return x;
}

bool GridField::all_finite() const {
  for (double v : values_) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

void GridField::write_csv(std::ostream& os, const std::vector<std::string>& axis_names) const {
  if (axis_names.size() != rank()) throw std::invalid_argument("write_csv: need one name per axis");
  for (const auto& n : axis_names) os << n << ',';
  os << "value\n";
  for (std::size_t n = 0; n < size(); ++n) {
    for (double x : coordinates(n)) os << format_real(x) << ',';
    os << format_real(values_[n]) << '\n';
  }
}

}  // namespace flightlab
