#include "decompound/fourier.hpp"

#include <algorithm>
#include <cmath>

#include "decompound/errors.hpp"
#include "decompound/spectral.hpp"

namespace decompound {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr int kChunk = 2048;

//! Truncate a distinguished log: zero wherever |log| exceeds the bound.
void truncate_log(ComplexProfile& log_profile, double bound,
                  std::vector<std::uint8_t>& flags) {
  flags.assign(log_profile.size(), 0);
  for (std::size_t i = 0; i < log_profile.size(); ++i) {
    if (std::abs(log_profile.values[i]) > bound) {
      log_profile.values[i] = Complex(0.0, 0.0);
      flags[i] = 1;
    }
  }
}

//! Complex trapezoid of value(u) e^{-iux} over the grid, for every x.
//! Phase recurrence restarts from exact sincos every kChunk steps.
std::vector<Complex> inverse_transform(const FrequencyGrid& grid,
                                       const std::vector<Complex>& values,
                                       const std::vector<double>& x_grid) {
  const std::size_t total = values.size();
  const double h = grid.step();
  const double u_min = -grid.half_width();
  std::vector<Complex> out(x_grid.size());
  for (std::size_t xi = 0; xi < x_grid.size(); ++xi) {
    const double x = x_grid[xi];
    const double bre = std::cos(-h * x);
    const double bim = std::sin(-h * x);
    Complex acc(0.0, 0.0);
    for (std::size_t start = 0; start < total; start += kChunk) {
      const std::size_t end = std::min(total, start + kChunk);
      const double u0 = u_min + static_cast<double>(start) * h;
      double pre = std::cos(-u0 * x);
      double pim = std::sin(-u0 * x);
      for (std::size_t k = start; k < end; ++k) {
        acc += values[k] * Complex(pre, pim);
        const double nre = pre * bre - pim * bim;
        pim = pre * bim + pim * bre;
        pre = nre;
      }
    }
    // trapezoid end-point halves
    acc -= 0.5 * (values.front() * Complex(std::cos(-u_min * x), std::sin(-u_min * x)) +
                  values.back() *
                      Complex(std::cos(grid.half_width() * x), std::sin(-grid.half_width() * x)));
    out[xi] = acc * (h / kTwoPi);
  }
  return out;
}

DensityEstimate take_real_with_residue_check(const FrequencyGrid& grid,
                                             const std::vector<Complex>& values,
                                             const std::vector<double>& x_grid) {
  const std::vector<Complex> complex_density = inverse_transform(grid, values, x_grid);
  double max_real = 0.0, max_imag = 0.0;
  for (const auto& v : complex_density) {
    max_real = std::max(max_real, std::abs(v.real()));
    max_imag = std::max(max_imag, std::abs(v.imag()));
  }
  if (max_imag > 1e-8 * (1.0 + max_real))
    throw NumericError("inversion produced a non-negligible imaginary residue");
  DensityEstimate out;
  out.x = x_grid;
  out.values.resize(complex_density.size());
  for (std::size_t i = 0; i < complex_density.size(); ++i)
    out.values[i] = complex_density[i].real();
  return out;
}

} // namespace

void FourierConfig::validate() const {
  if (!(t1 > 0.0)) throw NumericError("t1 must be positive");
  if (!(t2 > t1)) throw NumericError("t2 must exceed t1");
  if (!(kappa > 0.0)) throw NumericError("kappa must be positive");
  if (!(alpha > 0.0 && alpha < 1.0)) throw NumericError("alpha must lie in (0,1)");
}

JumpCfEstimate estimate_jump_cf(std::span<const double> panel_t1,
                                std::span<const double> panel_t2,
                                const FourierConfig& cfg, const FrequencyGrid& grid) {
  cfg.validate();
  if (panel_t1.size() != panel_t2.size())
    throw NumericError("panel columns have mismatched channel counts");
  if (panel_t1.size() < 2) throw NumericError("need at least two channels");

  const std::size_t channels = panel_t1.size();
  const double log_bound = std::log(static_cast<double>(channels));

  const CfPair pair1 = empirical_cf_pair(panel_t1, grid);
  const CfPair pair2 = empirical_cf_pair(panel_t2, grid);
  ComplexProfile log1 = distinguished_log(pair1.cf, pair1.derivative);
  ComplexProfile log2 = distinguished_log(pair2.cf, pair2.derivative);

  JumpCfEstimate out{ComplexProfile(grid, std::vector<Complex>(grid.size()), false),
                     log1, log2, {}, {}, channels};
  truncate_log(out.log_t1, log_bound, out.truncated_t1);
  truncate_log(out.log_t2, log_bound, out.truncated_t2);

  const double inv_dt = 1.0 / (cfg.t2 - cfg.t1);
  for (std::size_t i = 0; i < grid.size(); ++i)
    out.profile.values[i] =
        1.0 + inv_dt * (out.log_t2.values[i] - out.log_t1.values[i]);
  out.profile.hermitian = out.profile.check_hermitian_exact();
  return out;
}

DensityEstimate invert_to_density(const ComplexProfile& profile,
                                  const std::vector<double>& x_grid) {
  if (!profile.hermitian)
    throw NumericError("fourier inversion requires a hermitian profile");
  return take_real_with_residue_check(profile.grid, profile.values, x_grid);
}

DensityEstimate truncated_target_density(const Law& jump, double m,
                                         const std::vector<double>& x_grid) {
  const FrequencyGrid grid = FrequencyGrid::with_default_step(m);
  const ComplexProfile profile = tabulate_analytic_cf(jump, grid);
  return invert_to_density(profile, x_grid);
}

double fourier_kappa(const FourierConfig& cfg, std::size_t channels) {
  const double dt = cfg.t2 - cfg.t1;
  const double log_term =
      std::sqrt(std::max(0.0, std::log(static_cast<double>(channels) * dt * dt)));
  const double lead = (cfg.kappa_form == FourierKappaForm::Definition)
                          ? 2.0 * std::exp(2.0 * cfg.t2)
                          : 2.0 * std::sqrt(2.0) * std::exp(2.0 * cfg.t2);
  return lead + cfg.kappa * log_term;
}

double fourier_threshold(const FourierConfig& cfg, std::size_t channels) {
  return fourier_kappa(cfg, channels) /
         (std::sqrt(static_cast<double>(channels)) * (cfg.t2 - cfg.t1));
}

ComplexProfile threshold_cf(const ComplexProfile& profile, std::size_t channels,
                            const FourierConfig& cfg) {
  const double level = fourier_threshold(cfg, channels);
  ComplexProfile out = profile;
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double u = out.grid.point(i);
    if (std::abs(out.values[i]) / std::sqrt(1.0 + u * u) < level)
      out.values[i] = Complex(0.0, 0.0);
  }
  out.hermitian = profile.hermitian; // |.| and the weight are even in u
  return out;
}

double adaptive_cutoff_cap(const FourierConfig& cfg, std::size_t channels) {
  const double dt = cfg.t2 - cfg.t1;
  return std::pow(static_cast<double>(channels) * dt * dt, cfg.alpha);
}

double adaptive_cutoff(const ComplexProfile& thresholded, std::size_t channels,
                       const FourierConfig& cfg) {
  const double cap = adaptive_cutoff_cap(cfg, channels);
  const FrequencyGrid& grid = thresholded.grid;
  const std::size_t zero = grid.zero_index();
  auto alive = [&](std::size_t i) { return thresholded.values[i] != Complex(0.0, 0.0); };

  double selected = 0.0;
  if (cfg.scan == CutoffScan::LastAbove) {
    for (std::size_t i = thresholded.size(); i-- > zero + 1;) {
      if (alive(i)) {
        selected = grid.point(i);
        break;
      }
    }
  } else {
    for (std::size_t i = zero + 1; i < thresholded.size(); ++i) {
      if (!alive(i)) break;
      selected = grid.point(i);
    }
  }
  return std::min(selected, cap);
}

FourierEstimate run_fourier_estimate(std::span<const double> panel_t1,
                                     std::span<const double> panel_t2,
                                     const FourierConfig& cfg, bool adaptive,
                                     double freq_step) {
  cfg.validate();
  const std::size_t channels = panel_t1.size();
  const double half_width = adaptive ? adaptive_cutoff_cap(cfg, channels) : cfg.m;
  const double step = freq_step > 0.0 ? freq_step : FrequencyGrid::default_step(half_width);
  const FrequencyGrid grid(half_width, step);

  JumpCfEstimate cf = estimate_jump_cf(panel_t1, panel_t2, cfg, grid);
  if (!adaptive) {
    FourierEstimate out{invert_to_density(cf.profile, cfg.x_grid), cfg.m, std::move(cf),
                        ComplexProfile(grid, std::vector<Complex>(grid.size()), true)};
    return out;
  }

  ComplexProfile thresholded = threshold_cf(cf.profile, channels, cfg);
  const double m_hat = adaptive_cutoff(thresholded, channels, cfg);
  DensityEstimate density;
  if (m_hat > 0.0) {
    density = invert_to_density(thresholded.restricted(m_hat), cfg.x_grid);
  } else {
    density.x = cfg.x_grid;
    density.values.assign(cfg.x_grid.size(), 0.0);
  }
  return FourierEstimate{std::move(density), m_hat, std::move(cf), std::move(thresholded)};
}

} // namespace decompound
