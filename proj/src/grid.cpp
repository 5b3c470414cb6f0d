#include "decompound/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace decompound {

FrequencyGrid::FrequencyGrid(double half_width, double step) : step_(step) {
  if (!(step > 0.0)) throw std::invalid_argument("frequency grid step must be positive");
  if (!(half_width > 0.0)) throw std::invalid_argument("frequency grid half width must be positive");
  half_count_ = std::max(1, static_cast<int>(std::lround(half_width / step)));
}

double FrequencyGrid::default_step(double half_width) {
  return std::min(0.01, half_width / 1000.0);
}

std::vector<double> uniform_grid(double start, double step, std::size_t count) {
  if (!(step > 0.0)) throw std::invalid_argument("grid step must be positive");
  if (count == 0) throw std::invalid_argument("grid must be nonempty");
  std::vector<double> g(count);
  for (std::size_t i = 0; i < count; ++i) g[i] = start + static_cast<double>(i) * step;
  return g;
}

std::vector<double> uniform_grid_range(double lo, double hi, double step) {
  if (!(hi > lo)) throw std::invalid_argument("grid range must be nonempty");
  const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
  return uniform_grid(lo, step, count);
}

} // namespace decompound
