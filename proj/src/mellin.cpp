#include "decompound/mellin.hpp"

#include <algorithm>
#include <cmath>

#include "decompound/errors.hpp"
#include "decompound/spectral.hpp"

namespace decompound {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kModulusBound = 4.0; // explosion guard on the estimated transform

struct LogData {
  std::vector<double> logs;    // ln Z_k
  std::vector<double> weights; // Z_k^{c-1}, empty when c == 1
};

LogData log_data(std::span<const double> increments, double c) {
  if (increments.empty()) throw NumericError("mellin transform of empty data");
  LogData out;
  out.logs.resize(increments.size());
  for (std::size_t i = 0; i < increments.size(); ++i) {
    if (!(increments[i] > 0.0))
      throw NumericError("mellin increments must be strictly positive");
    out.logs[i] = std::log(increments[i]);
  }
  if (c != 1.0) {
    out.weights.resize(increments.size());
    for (std::size_t i = 0; i < increments.size(); ++i)
      out.weights[i] = std::pow(increments[i], c - 1.0);
  }
  return out;
}

} // namespace

void MellinConfig::validate() const {
  if (!(lambda > 0.0)) throw NumericError("lambda must be positive");
  if (!(delta > 0.0)) throw NumericError("delta must be positive");
  if (!(kappa > 0.0)) throw NumericError("kappa must be positive");
  if (!(alpha > 0.0 && alpha < 1.0)) throw NumericError("alpha must lie in (0,1)");
  for (double x : x_grid)
    if (!(x > 0.0)) throw NumericError("mellin x grid must be strictly positive");
}

MellinProfile empirical_mellin(std::span<const double> increments, double c,
                               const FrequencyGrid& grid) {
  const LogData d = log_data(increments, c);
  std::vector<Complex> sums, unused;
  detail::weighted_exponential_sums(d.logs, d.weights, grid, false, sums, unused);
  return MellinProfile(grid, std::move(sums), c, true);
}

MellinProfile empirical_mellin_derivative(std::span<const double> increments, double c,
                                          const FrequencyGrid& grid) {
  const LogData d = log_data(increments, c);
  std::vector<Complex> sums, deriv;
  detail::weighted_exponential_sums(d.logs, d.weights, grid, true, sums, deriv);
  return MellinProfile(grid, std::move(deriv), c, false);
}

MellinPair empirical_mellin_pair(std::span<const double> increments, double c,
                                 const FrequencyGrid& grid) {
  const LogData d = log_data(increments, c);
  std::vector<Complex> sums, deriv;
  detail::weighted_exponential_sums(d.logs, d.weights, grid, true, sums, deriv);
  return MellinPair{MellinProfile(grid, std::move(sums), c, true),
                    MellinProfile(grid, std::move(deriv), c, false)};
}

MellinProfile mellin_distinguished_log(const MellinProfile& transform,
                                       const MellinProfile& derivative) {
  if (!(transform.grid == derivative.grid))
    throw NumericError("distinguished log needs matching grids");
  if (transform.c != derivative.c)
    throw NumericError("distinguished log needs matching mellin lines");
  const Complex at_zero = transform.values[transform.grid.zero_index()];
  if (std::abs(at_zero - Complex(1.0, 0.0)) > 1e-9)
    throw NumericError("distinguished log requires value 1 at t = 0");
  auto values = detail::quotient_log(transform.grid, transform.values, derivative.values);
  MellinProfile out(transform.grid, std::move(values), transform.c, false);
  out.hermitian = out.check_hermitian_exact();
  return out;
}

MellinEstimate estimate_jump_mellin(std::span<const double> increments,
                                    const MellinConfig& cfg, const FrequencyGrid& grid) {
  cfg.validate();
  const MellinPair pair = empirical_mellin_pair(increments, cfg.c, grid);
  MellinProfile log_mellin = mellin_distinguished_log(pair.transform, pair.derivative);

  const double inv_ld = 1.0 / (cfg.lambda * cfg.delta);
  std::vector<Complex> values(grid.size());
  std::vector<std::uint8_t> truncated(grid.size(), 0);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Complex v = 1.0 + inv_ld * log_mellin.values[i];
    if (std::abs(v) > kModulusBound) {
      values[i] = Complex(0.0, 0.0);
      truncated[i] = 1;
    } else {
      values[i] = v;
    }
  }
  MellinProfile profile(grid, std::move(values), cfg.c, false);
  profile.hermitian = profile.check_hermitian_exact();
  return MellinEstimate{std::move(profile), std::move(log_mellin), std::move(truncated)};
}

DensityEstimate invert_mellin(const MellinProfile& profile,
                              const std::vector<double>& x_grid) {
  for (double x : x_grid)
    if (!(x > 0.0)) throw NumericError("mellin inversion needs strictly positive x");

  const FrequencyGrid& grid = profile.grid;
  const double h = grid.step();
  const std::size_t total = profile.size();

  DensityEstimate out;
  out.x = x_grid;
  out.values.resize(x_grid.size());
  double max_real = 0.0, max_imag = 0.0;
  constexpr int chunk = 2048;
  for (std::size_t xi = 0; xi < x_grid.size(); ++xi) {
    const double y = std::log(x_grid[xi]);
    const double bre = std::cos(-h * y);
    const double bim = std::sin(-h * y);
    Complex acc(0.0, 0.0);
    for (std::size_t start = 0; start < total; start += chunk) {
      const std::size_t end = std::min(total, start + static_cast<std::size_t>(chunk));
      const double t0 = -grid.half_width() + static_cast<double>(start) * h;
      double pre = std::cos(-t0 * y);
      double pim = std::sin(-t0 * y);
      for (std::size_t k = start; k < end; ++k) {
        acc += profile.values[k] * Complex(pre, pim);
        const double nre = pre * bre - pim * bim;
        pim = pre * bim + pim * bre;
        pre = nre;
      }
    }
    const double hw = grid.half_width();
    acc -= 0.5 * (profile.values.front() * Complex(std::cos(hw * y), std::sin(hw * y)) +
                  profile.values.back() * Complex(std::cos(hw * y), -std::sin(hw * y)));
    const Complex value = acc * (h / kTwoPi) * std::pow(x_grid[xi], -profile.c);
    out.values[xi] = value.real();
    max_real = std::max(max_real, std::abs(value.real()));
    max_imag = std::max(max_imag, std::abs(value.imag()));
  }
  if (max_imag > 1e-8 * (1.0 + max_real))
    throw NumericError("mellin inversion produced a non-negligible imaginary residue");
  return out;
}

double mellin_kappa(const MellinConfig& cfg, std::size_t n) {
  const double nd = static_cast<double>(n) * cfg.delta;
  const double log_term = std::sqrt(std::max(0.0, std::log(nd)));
  if (cfg.threshold_form == MellinThresholdForm::Additive)
    return std::exp(2.0 * cfg.delta) + cfg.kappa * log_term;
  return std::exp(2.0 * cfg.delta + cfg.kappa) * log_term;
}

double mellin_threshold(const MellinConfig& cfg, std::size_t n) {
  return mellin_kappa(cfg, n) / std::sqrt(static_cast<double>(n) * cfg.delta);
}

MellinProfile threshold_mellin(const MellinProfile& profile, std::size_t n,
                               const MellinConfig& cfg) {
  const double level = mellin_threshold(cfg, n);
  MellinProfile out = profile;
  for (auto& v : out.values)
    if (std::abs(v) < level) v = Complex(0.0, 0.0);
  out.hermitian = profile.hermitian;
  return out;
}

double adaptive_cutoff_mellin_cap(const MellinConfig& cfg, std::size_t n) {
  return std::pow(static_cast<double>(n) * cfg.delta, cfg.alpha);
}

double adaptive_cutoff_mellin(const MellinProfile& profile, std::size_t n,
                              const MellinConfig& cfg) {
  const MellinProfile barred = threshold_mellin(profile, n, cfg);
  const double cap = adaptive_cutoff_mellin_cap(cfg, n);
  const std::size_t zero = barred.grid.zero_index();
  double selected = 0.0;
  for (std::size_t i = barred.size(); i-- > zero + 1;) {
    if (barred.values[i] != Complex(0.0, 0.0)) {
      selected = barred.grid.point(i);
      break;
    }
  }
  return std::min(selected, cap);
}

DensityEstimate weighted_target(const Law& jump, double m,
                                const std::vector<double>& x_grid) {
  if (!jump.has_density())
    throw UnsupportedError("weighted target needs a law with a density");
  const FrequencyGrid grid = FrequencyGrid::with_default_step(m);
  return invert_mellin(tabulate_analytic_mellin(jump, 1.0, grid), x_grid);
}

MellinProfile tabulate_analytic_mellin(const Law& law, double c,
                                       const FrequencyGrid& grid) {
  std::vector<Complex> values(grid.size());
  const std::size_t zero = grid.zero_index();
  for (std::size_t k = zero; k < grid.size(); ++k) {
    const Complex v = law.analytic_mellin(c, grid.point(k));
    values[k] = v;
    values[grid.size() - 1 - k] = std::conj(v);
  }
  return MellinProfile(grid, std::move(values), c, true);
}

MellinEstimateResult run_mellin_estimate(std::span<const double> increments,
                                         const MellinConfig& cfg, bool adaptive,
                                         double freq_step) {
  cfg.validate();
  const std::size_t n = increments.size();
  const double half_width = adaptive ? adaptive_cutoff_mellin_cap(cfg, n) : cfg.m;
  const double step = freq_step > 0.0 ? freq_step : FrequencyGrid::default_step(half_width);
  const FrequencyGrid grid(half_width, step);

  MellinEstimate est = estimate_jump_mellin(increments, cfg, grid);
  if (!adaptive) {
    DensityEstimate density = invert_mellin(est.profile, cfg.x_grid);
    return MellinEstimateResult{std::move(density), cfg.m, std::move(est)};
  }
  const MellinProfile barred = threshold_mellin(est.profile, n, cfg);
  const double m_hat = adaptive_cutoff_mellin(est.profile, n, cfg);
  DensityEstimate density;
  if (m_hat > 0.0) {
    density = invert_mellin(barred.restricted(m_hat), cfg.x_grid);
  } else {
    density.x = cfg.x_grid;
    density.values.assign(cfg.x_grid.size(), 0.0);
  }
  return MellinEstimateResult{std::move(density), m_hat, std::move(est)};
}

} // namespace decompound
