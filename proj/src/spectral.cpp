#include "decompound/spectral.hpp"

#include <cmath>

#include "decompound/errors.hpp"

namespace decompound {

namespace detail {

namespace {

// Half-grid chunk length; each chunk restarts the phase recurrence from an
// exact sincos so rounding drift stays ~1e-13.
constexpr int kChunk = 2048;

constexpr double kDenominatorFloor = 1e-300;

} // namespace

void weighted_exponential_sums(std::span<const double> points,
                               std::span<const double> weights,
                               const FrequencyGrid& grid, bool with_derivative,
                               std::vector<Complex>& sums,
                               std::vector<Complex>& derivative_sums) {
  if (points.empty()) throw NumericError("empirical transform of empty data");
  const bool weighted = !weights.empty();
  if (weighted && weights.size() != points.size())
    throw NumericError("weights must align with data");

  const std::size_t n = points.size();
  const int half = grid.half_count();
  const double h = grid.step();

  // positive half-grid accumulators, k = 0..half
  std::vector<Complex> acc0(static_cast<std::size_t>(half) + 1, Complex(0.0, 0.0));
  std::vector<Complex> acc1;
  if (with_derivative) acc1.assign(static_cast<std::size_t>(half) + 1, Complex(0.0, 0.0));

  for (int k_start = 0; k_start <= half; k_start += kChunk) {
    const int k_end = std::min(half, k_start + kChunk - 1);
    for (std::size_t j = 0; j < n; ++j) {
      const double y = points[j];
      const double w = weighted ? weights[j] : 1.0;
      const double u0 = k_start * h;
      double pre = w * std::cos(u0 * y);
      double pim = w * std::sin(u0 * y);
      const double bre = std::cos(h * y);
      const double bim = std::sin(h * y);
      const double yw = y;
      for (int k = k_start; k <= k_end; ++k) {
        acc0[k] += Complex(pre, pim);
        if (with_derivative) acc1[k] += Complex(-yw * pim, yw * pre);
        const double nre = pre * bre - pim * bim;
        pim = pre * bim + pim * bre;
        pre = nre;
      }
    }
  }

  const double inv_n = 1.0 / static_cast<double>(n);
  const std::size_t total = grid.size();
  const std::size_t zero = grid.zero_index();
  sums.assign(total, Complex(0.0, 0.0));
  if (with_derivative) derivative_sums.assign(total, Complex(0.0, 0.0));
  for (int k = 0; k <= half; ++k) {
    const Complex v0 = acc0[k] * inv_n;
    sums[zero + k] = v0;
    sums[zero - k] = std::conj(v0);
    if (with_derivative) {
      const Complex v1 = acc1[k] * inv_n;
      derivative_sums[zero + k] = v1;
      derivative_sums[zero - k] = -std::conj(v1);
    }
  }
}

std::vector<Complex> quotient_log(const FrequencyGrid& grid,
                                  const std::vector<Complex>& values,
                                  const std::vector<Complex>& derivatives) {
  const std::size_t total = grid.size();
  const std::size_t zero = grid.zero_index();
  const double h = grid.step();

  auto quotient = [&](std::size_t i) -> Complex {
    Complex denom = values[i];
    const double mod = std::abs(denom);
    if (mod < kDenominatorFloor)
      denom = (mod == 0.0) ? Complex(kDenominatorFloor, 0.0)
                           : denom * (kDenominatorFloor / mod);
    return derivatives[i] / denom;
  };

  std::vector<Complex> out(total, Complex(0.0, 0.0));
  Complex prev_q = quotient(zero);
  Complex acc(0.0, 0.0);
  for (std::size_t i = zero + 1; i < total; ++i) {
    const Complex q = quotient(i);
    acc += (0.5 * h) * (prev_q + q);
    out[i] = acc;
    prev_q = q;
  }
  prev_q = quotient(zero);
  acc = Complex(0.0, 0.0);
  for (std::size_t i = zero; i-- > 0;) {
    const Complex q = quotient(i);
    acc -= (0.5 * h) * (prev_q + q);
    out[i] = acc;
    prev_q = q;
  }
  return out;
}

} // namespace detail

ComplexProfile empirical_cf(std::span<const double> data, const FrequencyGrid& grid) {
  std::vector<Complex> sums, unused;
  detail::weighted_exponential_sums(data, {}, grid, false, sums, unused);
  return ComplexProfile(grid, std::move(sums), true);
}

ComplexProfile empirical_cf_derivative(std::span<const double> data,
                                       const FrequencyGrid& grid) {
  std::vector<Complex> sums, deriv;
  detail::weighted_exponential_sums(data, {}, grid, true, sums, deriv);
  return ComplexProfile(grid, std::move(deriv), false);
}

CfPair empirical_cf_pair(std::span<const double> data, const FrequencyGrid& grid) {
  std::vector<Complex> sums, deriv;
  detail::weighted_exponential_sums(data, {}, grid, true, sums, deriv);
  return CfPair{ComplexProfile(grid, std::move(sums), true),
                ComplexProfile(grid, std::move(deriv), false)};
}

ComplexProfile distinguished_log(const ComplexProfile& cf,
                                 const ComplexProfile& cf_derivative) {
  if (!(cf.grid == cf_derivative.grid))
    throw NumericError("distinguished log needs matching grids");
  const Complex at_zero = cf.values[cf.grid.zero_index()];
  if (std::abs(at_zero - Complex(1.0, 0.0)) > 1e-9)
    throw NumericError("distinguished log requires value 1 at frequency 0");
  auto values = detail::quotient_log(cf.grid, cf.values, cf_derivative.values);
  ComplexProfile out(cf.grid, std::move(values), false);
  out.hermitian = out.check_hermitian_exact();
  return out;
}

ComplexProfile tabulate_analytic_cf(const Law& law, const FrequencyGrid& grid) {
  const std::size_t zero = grid.zero_index();
  std::vector<Complex> values(grid.size());
  for (std::size_t k = zero; k < grid.size(); ++k) {
    const Complex v = law.analytic_cf(grid.point(k));
    values[k] = v;
    values[grid.size() - 1 - k] = std::conj(v);
  }
  return ComplexProfile(grid, std::move(values), true);
}

} // namespace decompound
