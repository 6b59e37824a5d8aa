#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace flightlab {

/// Uniform axis: count nodes at min, min + step, ...
struct Axis {
  double min = 0.0;
  double step = 1.0;
  std::size_t count = 1;

  double at(std::size_t i) const { return min + step * static_cast<double>(i); }
  double max() const { return at(count - 1); }
};

/// Dense values on a regular grid, row-major with the last axis fastest.
/// By convention space axes come first and time (if any) last.
class GridField {
 public:
  GridField() = default;
  explicit GridField(std::vector<Axis> axes, double fill = 0.0);

  /// Fills every node with f(coordinates).
  static GridField tabulate(std::vector<Axis> axes,
                            const std::function<double(std::span<const double>)>& f);

  std::size_t rank() const { return axes_.size(); }
  const Axis& axis(std::size_t k) const { return axes_[k]; }
  const std::vector<Axis>& axes() const { return axes_; }
  std::size_t size() const { return values_.size(); }
  std::size_t stride(std::size_t k) const { return strides_[k]; }

  std::vector<double>& values() { return values_; }
  const std::vector<double>& values() const { return values_; }

  double& operator[](std::size_t flat) { return values_[flat]; }
  double operator[](std::size_t flat) const { return values_[flat]; }
  double& at(std::size_t i, std::size_t j) { return values_[i * strides_[0] + j]; }
  double at(std::size_t i, std::size_t j) const { return values_[i * strides_[0] + j]; }
  double& at(std::size_t i, std::size_t j, std::size_t k) {
    return values_[i * strides_[0] + j * strides_[1] + k];
  }
  double at(std::size_t i, std::size_t j, std::size_t k) const {
    return values_[i * strides_[0] + j * strides_[1] + k];
  }

  /// Multi-index of a flat position.
  std::vector<std::size_t> unflatten(std::size_t flat) const;
  /// Coordinates of a flat position.
  std::vector<double> coordinates(std::size_t flat) const;

  bool all_finite() const;

  /// Flat CSV: one column per axis coordinate, then `value`.
  void write_csv(std::ostream& os, const std::vector<std::string>& axis_names) const;

 private:
  std::vector<Axis> axes_;
  std::vector<std::size_t> strides_;
  std::vector<double> values_;
};

}  // namespace flightlab
