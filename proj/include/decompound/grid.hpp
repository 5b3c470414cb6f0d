#pragma once

#include <cstddef>
#include <vector>

namespace decompound {

//! Symmetric uniform frequency grid u_k = k*h, k = -K..K.
//!
//! Zero is always a grid point and the half width is snapped to K*h.
class FrequencyGrid {
public:
  //! Build a grid covering [-half_width, half_width]; the stored half width
  //! is rounded to the nearest multiple of step (at least one step).
  FrequencyGrid(double half_width, double step);

  double step() const { return step_; }
  double half_width() const { return half_count_ * step_; }
  int half_count() const { return half_count_; }
  std::size_t size() const { return 2 * static_cast<std::size_t>(half_count_) + 1; }

  //! Grid point for a linear index in [0, size()).
  double point(std::size_t i) const {
    return (static_cast<int>(i) - half_count_) * step_;
  }
  std::size_t zero_index() const { return static_cast<std::size_t>(half_count_); }

  //! Index of the mirrored point -u for index i.
  std::size_t mirror(std::size_t i) const { return size() - 1 - i; }

  bool operator==(const FrequencyGrid& other) const = default;

  //! Grid step rule used throughout: h = min(0.01, m/1000).
  static double default_step(double half_width);
  static FrequencyGrid with_default_step(double half_width) {
    return FrequencyGrid(half_width, default_step(half_width));
  }

private:
  double step_;
  int half_count_;
};

//! Uniform x-grid helper: {start, start+step, ..., start+(count-1)*step}.
std::vector<double> uniform_grid(double start, double step, std::size_t count);

//! Uniform grid spanning [lo, hi] with the given step (hi included when it
//! falls on the lattice).
std::vector<double> uniform_grid_range(double lo, double hi, double step);

} // namespace decompound
