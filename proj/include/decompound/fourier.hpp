#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "decompound/law.hpp"
#include "decompound/profile.hpp"

namespace decompound {

//! Which display of the adaptive constant kappa_{J,t1,t2} to use.
enum class FourierKappaForm : std::uint8_t {
  Definition, // 2 e^{2 t2} + kappa sqrt(ln(J (t2-t1)^2))
  Proof,      // 2 sqrt(2) e^{2 t2} + kappa sqrt(ln(J (t2-t1)^2))
};

//! Direction of the cutoff scan over the thresholded transform.
//!
//! LastAbove returns the largest grid point that survived thresholding.
//! FirstBelow walks up from 0 and stops at the first zeroed point; beyond the
//! frequency where the empirical transform degenerates into pure noise its
//! modulus no longer decays, so LastAbove latches onto noise and FirstBelow
//! is the default.
enum class CutoffScan : std::uint8_t { FirstBelow, LastAbove };

struct FourierConfig {
  double t1 = 0.5;
  double t2 = 1.0;
  double m = 1.0; // spectral cutoff for fixed-m estimation
  double kappa = 1.0;
  double alpha = 0.5;
  std::vector<double> x_grid;
  FourierKappaForm kappa_form = FourierKappaForm::Definition;
  CutoffScan scan = CutoffScan::FirstBelow;

  void validate() const;
};

//! Two-time jump characteristic function estimate.
struct JumpCfEstimate {
  ComplexProfile profile;      // phi_tilde, hermitian
  ComplexProfile log_t1;       // truncated distinguished log at t1
  ComplexProfile log_t2;       // truncated distinguished log at t2
  std::vector<std::uint8_t> truncated_t1; // 1 where |log| > ln J forced to 0
  std::vector<std::uint8_t> truncated_t2;
  std::size_t channels = 0;
};

//! phi_tilde(u) = 1 + [log phi_hat_{Z_t2} - log phi_hat_{Z_t1}] / (t2 - t1),
//! each distinguished log zeroed where its modulus exceeds ln(J).
JumpCfEstimate estimate_jump_cf(std::span<const double> panel_t1,
                                std::span<const double> panel_t2,
                                const FourierConfig& cfg, const FrequencyGrid& grid);

//! (1/2pi) int_{-m}^{m} e^{-iux} profile(u) du by trapezoid quadrature.
//! The imaginary residue must stay below 1e-8 * (1 + max |real|); the raw
//! inversion is kept, values may be negative.
DensityEstimate invert_to_density(const ComplexProfile& profile,
                                  const std::vector<double>& x_grid);

//! Oracle f_m: truncated inversion of the law's analytic characteristic
//! function (bias measurements).
DensityEstimate truncated_target_density(const Law& jump, double m,
                                         const std::vector<double>& x_grid);

//! kappa_{J,t1,t2} under the configured form.
double fourier_kappa(const FourierConfig& cfg, std::size_t channels);

//! Threshold level kappa_{J,t1,t2} / (sqrt(J) (t2 - t1)).
double fourier_threshold(const FourierConfig& cfg, std::size_t channels);

//! Zero the profile wherever |phi(u)| / sqrt(1 + u^2) falls below the
//! threshold level.
ComplexProfile threshold_cf(const ComplexProfile& profile, std::size_t channels,
                            const FourierConfig& cfg);

//! Data-driven cutoff from a thresholded profile: the surviving frequency
//! under cfg.scan, capped at (J (t2-t1)^2)^alpha; 0 when nothing survives.
double adaptive_cutoff(const ComplexProfile& thresholded, std::size_t channels,
                       const FourierConfig& cfg);

//! Cap (J (t2-t1)^2)^alpha of the adaptive cutoff.
double adaptive_cutoff_cap(const FourierConfig& cfg, std::size_t channels);

//! Full estimation pass over one simulated panel: fixed-m or adaptive.
struct FourierEstimate {
  DensityEstimate density;
  double m_used = 0.0;    // cfg.m, or the selected m_hat when adaptive
  JumpCfEstimate cf;      // estimate on the working grid
  ComplexProfile thresholded; // post-threshold profile (adaptive runs)
};
FourierEstimate run_fourier_estimate(std::span<const double> panel_t1,
                                     std::span<const double> panel_t2,
                                     const FourierConfig& cfg, bool adaptive,
                                     double freq_step = 0.0);

} // namespace decompound
