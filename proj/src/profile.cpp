#include "decompound/profile.hpp"

#include <cmath>
#include <stdexcept>

namespace decompound {

namespace {

void require_finite(const std::vector<Complex>& values) {
  for (const auto& v : values)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw std::invalid_argument("profile values must be finite");
}

bool hermitian_exact(const FrequencyGrid& grid, const std::vector<Complex>& values) {
  const std::size_t n = values.size();
  for (std::size_t i = 0; i <= grid.zero_index(); ++i) {
    const Complex& a = values[i];
    const Complex& b = values[n - 1 - i];
    if (a.real() != b.real() || a.imag() != -b.imag()) return false;
  }
  return true;
}

template <typename P>
P restrict_profile(const P& p, double half_width) {
  const double h = p.grid.step();
  int keep = static_cast<int>(std::floor(half_width / h + 1e-9));
  keep = std::min(keep, p.grid.half_count());
  if (keep < 1) keep = 1;
  FrequencyGrid sub(keep * h, h);
  const std::size_t lo = p.grid.zero_index() - static_cast<std::size_t>(keep);
  std::vector<Complex> vals(p.values.begin() + lo,
                            p.values.begin() + lo + 2 * keep + 1);
  P out = p;
  out.grid = sub;
  out.values = std::move(vals);
  return out;
}

} // namespace

ComplexProfile::ComplexProfile(FrequencyGrid g, std::vector<Complex> v, bool herm)
  : grid(g), values(std::move(v)), hermitian(herm) {
  if (values.size() != grid.size())
    throw std::invalid_argument("profile length does not match its grid");
  require_finite(values);
}

bool ComplexProfile::check_hermitian_exact() const { return hermitian_exact(grid, values); }

ComplexProfile ComplexProfile::restricted(double half_width) const {
  return restrict_profile(*this, half_width);
}

MellinProfile::MellinProfile(FrequencyGrid g, std::vector<Complex> v, double line, bool herm)
  : grid(g), values(std::move(v)), c(line), hermitian(herm) {
  if (values.size() != grid.size())
    throw std::invalid_argument("profile length does not match its grid");
  require_finite(values);
}

bool MellinProfile::check_hermitian_exact() const { return hermitian_exact(grid, values); }

MellinProfile MellinProfile::restricted(double half_width) const {
  return restrict_profile(*this, half_width);
}

} // namespace decompound
