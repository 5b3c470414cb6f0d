#pragma once

#include <functional>
#include <string>
#include <vector>

#include "decompound/fourier.hpp"
#include "decompound/law.hpp"
#include "decompound/mellin.hpp"
#include "decompound/profile.hpp"
#include "decompound/rng.hpp"
#include "decompound/simulate.hpp"

namespace decompound {

//! Integrated squared difference (trapezoid on the shared x grid).
double l2_distance(const DensityEstimate& est, const DensityEstimate& truth);

//! Integrated squared difference with weight x^{2c-1} (positive grids).
double weighted_l2_distance(const DensityEstimate& est, const DensityEstimate& truth,
                            double c);

using LossFunction =
    std::function<double(const DensityEstimate&, const DensityEstimate&)>;

struct MiseResult {
  double mean = 0.0;
  double std_error = 0.0;
};

//! Monte-Carlo risk of an estimator closure over fresh data.
//!
//! Replicate r runs on rng.substream(r); losses are reduced in replicate
//! order whatever the thread count, so results are bit-identical between
//! serial and parallel runs.
MiseResult mise_monte_carlo(const std::function<DensityEstimate(RngStream&)>& pipeline,
                            const DensityEstimate& truth, int replicates,
                            const RngStream& rng, const LossFunction& loss = l2_distance,
                            int threads = 1);

struct RiskReport {
  std::string parameter;
  std::vector<double> values;
  std::vector<double> mise;
  std::vector<double> std_error;
  int replicates = 0;
  std::string config_echo;
};

//! Additive-model simulation study configuration.
struct FourierSetting {
  Law jump;
  Law noise;
  std::size_t channels = 10000;
  FourierConfig cfg;
  bool adaptive = false;
  double freq_step = 0.0;
};

//! Simulate one panel at {t1, t2} and estimate the jump density.
DensityEstimate run_fourier_pipeline(const FourierSetting& setting, RngStream& rng);
DensityEstimate fourier_truth(const FourierSetting& setting);

//! MISE as a function of the spectral cutoff m; replicates share seeds
//! across m values (common random numbers).
RiskReport sweep_cutoff(const FourierSetting& setting, const std::vector<double>& m_values,
                        int replicates, const RngStream& rng, int threads = 1);

//! MISE as a function of the later observation time t2.
RiskReport sweep_t2(const FourierSetting& setting, const std::vector<double>& t2_values,
                    int replicates, const RngStream& rng, int threads = 1);

//! MISE as a function of the channel count J.
RiskReport sweep_channels(const FourierSetting& setting,
                          const std::vector<double>& channel_values, int replicates,
                          const RngStream& rng, int threads = 1);

//! Multiplicative-model simulation study configuration.
struct MellinSetting {
  Law jump;
  std::size_t n = 5000;
  MellinConfig cfg;
  bool adaptive = false;
  double freq_step = 0.0;
};

DensityEstimate run_mellin_pipeline(const MellinSetting& setting, RngStream& rng);
DensityEstimate mellin_truth(const MellinSetting& setting);

//! Weighted MISE as a function of the increment count n.
RiskReport sweep_sample_size(const MellinSetting& setting,
                             const std::vector<double>& n_values, int replicates,
                             const RngStream& rng, int threads = 1);

//! Weighted MISE as a function of the Mellin cutoff m (common random numbers).
RiskReport sweep_cutoff_mellin(const MellinSetting& setting,
                               const std::vector<double>& m_values, int replicates,
                               const RngStream& rng, int threads = 1);

// --- theoretical rates -------------------------------------------------

struct RegularityClass {
  enum class Kind {
    OrdinarySmoothTarget, // S(beta, L)
    OrdinarySmoothNoise,  // (1+u^2)^a envelope, a > 1/2
    SuperSmoothTarget,    // A_{c,s}(L)
    SuperSmoothNoise,     // exp(b |u|^s) envelope
  };
  Kind kind;
  double exponent; // beta / a / c / b
  double s = 0.0;  // order for the super smooth kinds

  static RegularityClass ordinary_target(double beta);
  static RegularityClass ordinary_noise(double a);
  static RegularityClass super_target(double c, double s);
  static RegularityClass super_noise(double b, double s);
};

struct RateExpression {
  enum class Kind { PowerOfJ, PowerOfLogJ } kind;
  double exponent;    // power of J (or of log J / scale)
  double scale = 1.0; // divisor inside the log
  std::string text;
};

struct RatePair {
  RateExpression cutoff;
  RateExpression risk;
};

//! Optimal cutoff rule and risk rate for a (target, noise) regularity pair.
RatePair theoretical_rate(const RegularityClass& target, const RegularityClass& noise);

} // namespace decompound
