#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "decompound/law.hpp"
#include "decompound/profile.hpp"

namespace decompound {

//! Which display of the adaptive constant kappa_{n,Delta} to use.
enum class MellinThresholdForm : std::uint8_t {
  Additive,    // e^{2 Delta} + kappa sqrt(log(n Delta))
  Exponential, // e^{2 Delta + kappa} sqrt(log(n Delta))
};

struct MellinConfig {
  double c = 1.0;
  double lambda = 1.0;
  double delta = 1.0;
  double m = 20.0; // cutoff for fixed-m estimation
  double kappa = 1.0;
  double alpha = 0.5;
  std::vector<double> x_grid; // strictly positive
  MellinThresholdForm threshold_form = MellinThresholdForm::Additive;

  void validate() const;
};

//! Empirical Mellin transform (1/n) sum Z_k^{c-1+it} on the t grid.
MellinProfile empirical_mellin(std::span<const double> increments, double c,
                               const FrequencyGrid& grid);

//! (1/n) sum i ln(Z_k) Z_k^{c-1+it}.
MellinProfile empirical_mellin_derivative(std::span<const double> increments, double c,
                                          const FrequencyGrid& grid);

struct MellinPair {
  MellinProfile transform;
  MellinProfile derivative;
};
MellinPair empirical_mellin_pair(std::span<const double> increments, double c,
                                 const FrequencyGrid& grid);

//! Distinguished logarithm of a Mellin profile (quotient integral from 0).
MellinProfile mellin_distinguished_log(const MellinProfile& transform,
                                       const MellinProfile& derivative);

//! Estimated jump Mellin transform with its explosion guard:
//! M_hat(t) = 1 + log M_hat[Delta](t) / (lambda Delta), zeroed where the
//! modulus exceeds 4.
struct MellinEstimate {
  MellinProfile profile;    // M_tilde, truncated at modulus 4
  MellinProfile log_mellin; // distinguished log of the increment transform
  std::vector<std::uint8_t> truncated; // 1 where |M_hat| > 4 forced to 0
};
MellinEstimate estimate_jump_mellin(std::span<const double> increments,
                                    const MellinConfig& cfg, const FrequencyGrid& grid);

//! (1/2pi) int_{-m}^{m} x^{-c-it} profile(t) dt on a strictly positive grid.
DensityEstimate invert_mellin(const MellinProfile& profile,
                              const std::vector<double>& x_grid);

//! kappa_{n,Delta} under the configured form.
double mellin_kappa(const MellinConfig& cfg, std::size_t n);

//! Threshold level kappa_{n,Delta} / sqrt(n Delta).
double mellin_threshold(const MellinConfig& cfg, std::size_t n);

//! Zero the profile wherever |M(t)| falls below the threshold level.
MellinProfile threshold_mellin(const MellinProfile& profile, std::size_t n,
                               const MellinConfig& cfg);

//! Largest grid point surviving the threshold, capped at (n Delta)^alpha;
//! 0 when the surviving set is empty.
double adaptive_cutoff_mellin(const MellinProfile& profile, std::size_t n,
                              const MellinConfig& cfg);

double adaptive_cutoff_mellin_cap(const MellinConfig& cfg, std::size_t n);

//! Oracle f_m: truncated Mellin inversion of the law's analytic transform.
DensityEstimate weighted_target(const Law& jump, double m,
                                const std::vector<double>& x_grid);

//! Tabulate a law's analytic Mellin transform on the line c.
MellinProfile tabulate_analytic_mellin(const Law& law, double c,
                                       const FrequencyGrid& grid);

//! Full estimation pass over one increment sample: fixed-m or adaptive.
struct MellinEstimateResult {
  DensityEstimate density;
  double m_used = 0.0;
  MellinEstimate estimate;
};
MellinEstimateResult run_mellin_estimate(std::span<const double> increments,
                                         const MellinConfig& cfg, bool adaptive,
                                         double freq_step = 0.0);

} // namespace decompound
