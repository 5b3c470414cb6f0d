#include "decompound/risk.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "decompound/errors.hpp"

namespace decompound {

namespace {

void require_same_grid(const DensityEstimate& a, const DensityEstimate& b) {
  if (a.x.size() != b.x.size()) throw NumericError("density estimates live on different grids");
  for (std::size_t i = 0; i < a.x.size(); ++i)
    if (std::abs(a.x[i] - b.x[i]) > 1e-12)
      throw NumericError("density estimates live on different grids");
}

double trapezoid_weighted_sq(const DensityEstimate& a, const DensityEstimate& b,
                             double weight_power) {
  require_same_grid(a, b);
  const std::size_t n = a.x.size();
  if (n < 2) throw NumericError("grid too short for quadrature");
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = a.values[i] - b.values[i];
    double term = d * d;
    if (weight_power != 0.0) term *= std::pow(a.x[i], weight_power);
    const double w = (i == 0 || i == n - 1) ? 0.5 : 1.0;
    acc += w * term;
  }
  return acc * (a.x[1] - a.x[0]);
}

std::string law_pair_echo(const FourierSetting& s) {
  std::string echo = "jump=" + s.jump.to_string() + " noise=" + s.noise.to_string() +
                     " J=" + std::to_string(s.channels) + " t1=" + std::to_string(s.cfg.t1) +
                     " t2=" + std::to_string(s.cfg.t2);
  if (!s.jump.has_finite_second_moment())
    echo += " [infinite-variance jumps: moment-based checks not applicable]";
  return echo;
}

} // namespace

double l2_distance(const DensityEstimate& est, const DensityEstimate& truth) {
  return trapezoid_weighted_sq(est, truth, 0.0);
}

double weighted_l2_distance(const DensityEstimate& est, const DensityEstimate& truth,
                            double c) {
  require_same_grid(est, truth);
  for (double x : est.x)
    if (!(x > 0.0)) throw NumericError("weighted norm needs a strictly positive grid");
  return trapezoid_weighted_sq(est, truth, 2.0 * c - 1.0);
}

MiseResult mise_monte_carlo(const std::function<DensityEstimate(RngStream&)>& pipeline,
                            const DensityEstimate& truth, int replicates,
                            const RngStream& rng, const LossFunction& loss, int threads) {
  if (replicates < 2) throw NumericError("need at least two replicates");
  std::vector<double> losses(static_cast<std::size_t>(replicates));

  auto run_replicate = [&](int r) {
    RngStream stream = rng.substream(static_cast<std::uint64_t>(r));
    const DensityEstimate estimate = pipeline(stream);
    losses[static_cast<std::size_t>(r)] = loss(estimate, truth);
  };

  threads = std::max(1, threads);
  if (threads == 1) {
    for (int r = 0; r < replicates; ++r) run_replicate(r);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int w = 0; w < threads; ++w) {
      pool.emplace_back([&, w]() {
        for (int r = w; r < replicates; r += threads) run_replicate(r);
      });
    }
    for (auto& t : pool) t.join();
  }

  // fixed-order reduction: identical bits however the losses were produced
  double mean = 0.0;
  for (double v : losses) mean += v;
  mean /= static_cast<double>(replicates);
  double ss = 0.0;
  for (double v : losses) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / static_cast<double>(replicates - 1));
  return MiseResult{mean, sd / std::sqrt(static_cast<double>(replicates))};
}

DensityEstimate run_fourier_pipeline(const FourierSetting& setting, RngStream& rng) {
  const std::vector<double> times{setting.cfg.t1, setting.cfg.t2};
  const Panel panel = sample_panel(setting.jump, setting.noise, setting.channels, times, rng);
  const FourierEstimate est =
      run_fourier_estimate(panel.column(0), panel.column(1), setting.cfg,
                           setting.adaptive, setting.freq_step);
  return est.density;
}

DensityEstimate fourier_truth(const FourierSetting& setting) {
  DensityEstimate truth;
  truth.x = setting.cfg.x_grid;
  truth.values.resize(truth.x.size());
  for (std::size_t i = 0; i < truth.x.size(); ++i)
    truth.values[i] = setting.jump.analytic_density(truth.x[i]);
  return truth;
}

RiskReport sweep_cutoff(const FourierSetting& setting, const std::vector<double>& m_values,
                        int replicates, const RngStream& rng, int threads) {
  if (m_values.empty()) throw NumericError("empty sweep");
  const DensityEstimate truth = fourier_truth(setting);
  RiskReport report{"m", m_values, {}, {}, replicates, law_pair_echo(setting)};
  for (double m : m_values) {
    FourierSetting local = setting;
    local.cfg.m = m;
    local.adaptive = false;
    const MiseResult r = mise_monte_carlo(
        [&local](RngStream& stream) { return run_fourier_pipeline(local, stream); }, truth,
        replicates, rng, l2_distance, threads);
    report.mise.push_back(r.mean);
    report.std_error.push_back(r.std_error);
  }
  return report;
}

RiskReport sweep_t2(const FourierSetting& setting, const std::vector<double>& t2_values,
                    int replicates, const RngStream& rng, int threads) {
  if (t2_values.empty()) throw NumericError("empty sweep");
  for (double t2 : t2_values)
    if (!(t2 > setting.cfg.t1)) throw NumericError("every t2 must exceed t1");
  const DensityEstimate truth = fourier_truth(setting);
  RiskReport report{"t2", t2_values, {}, {}, replicates, law_pair_echo(setting)};
  for (double t2 : t2_values) {
    FourierSetting local = setting;
    local.cfg.t2 = t2;
    const MiseResult r = mise_monte_carlo(
        [&local](RngStream& stream) { return run_fourier_pipeline(local, stream); }, truth,
        replicates, rng, l2_distance, threads);
    report.mise.push_back(r.mean);
    report.std_error.push_back(r.std_error);
  }
  return report;
}

RiskReport sweep_channels(const FourierSetting& setting,
                          const std::vector<double>& channel_values, int replicates,
                          const RngStream& rng, int threads) {
  if (channel_values.empty()) throw NumericError("empty sweep");
  const DensityEstimate truth = fourier_truth(setting);
  RiskReport report{"J", channel_values, {}, {}, replicates, law_pair_echo(setting)};
  for (double jv : channel_values) {
    FourierSetting local = setting;
    local.channels = static_cast<std::size_t>(jv);
    if (local.channels < 2) throw NumericError("J must be at least 2");
    const MiseResult r = mise_monte_carlo(
        [&local](RngStream& stream) { return run_fourier_pipeline(local, stream); }, truth,
        replicates, rng, l2_distance, threads);
    report.mise.push_back(r.mean);
    report.std_error.push_back(r.std_error);
  }
  return report;
}

DensityEstimate run_mellin_pipeline(const MellinSetting& setting, RngStream& rng) {
  const IncrementSample sample =
      sample_increments(setting.jump, setting.cfg.lambda, setting.cfg.delta, setting.n, rng);
  const MellinEstimateResult est =
      run_mellin_estimate(sample.increments, setting.cfg, setting.adaptive, setting.freq_step);
  return est.density;
}

DensityEstimate mellin_truth(const MellinSetting& setting) {
  DensityEstimate truth;
  truth.x = setting.cfg.x_grid;
  truth.values.resize(truth.x.size());
  for (std::size_t i = 0; i < truth.x.size(); ++i)
    truth.values[i] = setting.jump.analytic_density(truth.x[i]);
  return truth;
}

RiskReport sweep_sample_size(const MellinSetting& setting,
                             const std::vector<double>& n_values, int replicates,
                             const RngStream& rng, int threads) {
  if (n_values.empty()) throw NumericError("empty sweep");
  const DensityEstimate truth = mellin_truth(setting);
  const double c = setting.cfg.c;
  const LossFunction loss = [c](const DensityEstimate& a, const DensityEstimate& b) {
    return weighted_l2_distance(a, b, c);
  };
  RiskReport report{"n", n_values, {}, {}, replicates,
                    "jump=" + setting.jump.to_string()};
  for (double nv : n_values) {
    MellinSetting local = setting;
    local.n = static_cast<std::size_t>(nv);
    if (local.n < 2) throw NumericError("n must be at least 2");
    const MiseResult r = mise_monte_carlo(
        [&local](RngStream& stream) { return run_mellin_pipeline(local, stream); }, truth,
        replicates, rng, loss, threads);
    report.mise.push_back(r.mean);
    report.std_error.push_back(r.std_error);
  }
  return report;
}

RiskReport sweep_cutoff_mellin(const MellinSetting& setting,
                               const std::vector<double>& m_values, int replicates,
                               const RngStream& rng, int threads) {
  if (m_values.empty()) throw NumericError("empty sweep");
  const DensityEstimate truth = mellin_truth(setting);
  const double c = setting.cfg.c;
  const LossFunction loss = [c](const DensityEstimate& a, const DensityEstimate& b) {
    return weighted_l2_distance(a, b, c);
  };
  RiskReport report{"m", m_values, {}, {}, replicates,
                    "jump=" + setting.jump.to_string()};
  for (double m : m_values) {
    MellinSetting local = setting;
    local.cfg.m = m;
    local.adaptive = false;
    const MiseResult r = mise_monte_carlo(
        [&local](RngStream& stream) { return run_mellin_pipeline(local, stream); }, truth,
        replicates, rng, loss, threads);
    report.mise.push_back(r.mean);
    report.std_error.push_back(r.std_error);
  }
  return report;
}

// --- theoretical rates -------------------------------------------------

RegularityClass RegularityClass::ordinary_target(double beta) {
  return RegularityClass{Kind::OrdinarySmoothTarget, beta, 0.0};
}
RegularityClass RegularityClass::ordinary_noise(double a) {
  return RegularityClass{Kind::OrdinarySmoothNoise, a, 0.0};
}
RegularityClass RegularityClass::super_target(double c, double s) {
  return RegularityClass{Kind::SuperSmoothTarget, c, s};
}
RegularityClass RegularityClass::super_noise(double b, double s) {
  return RegularityClass{Kind::SuperSmoothNoise, b, s};
}

namespace {

std::string power_text(const char* base, double exponent) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%s^(%g)", base, exponent);
  return buf;
}

std::string log_power_text(double scale, double exponent) {
  char buf[96];
  if (scale == 1.0)
    std::snprintf(buf, sizeof(buf), "(ln J)^(%g)", exponent);
  else
    std::snprintf(buf, sizeof(buf), "(ln J / %g)^(%g)", scale, exponent);
  return buf;
}

void validate_class(const RegularityClass& cls, bool target_role) {
  using Kind = RegularityClass::Kind;
  if (!(cls.exponent > 0.0)) throw NumericError("regularity exponent must be positive");
  const bool is_target =
      cls.kind == Kind::OrdinarySmoothTarget || cls.kind == Kind::SuperSmoothTarget;
  if (is_target != target_role)
    throw NumericError("regularity class used in the wrong role");
  if (cls.kind == Kind::OrdinarySmoothNoise && !(cls.exponent > 0.5))
    throw NumericError("ordinary smooth noise needs a > 1/2");
  if ((cls.kind == Kind::SuperSmoothTarget || cls.kind == Kind::SuperSmoothNoise) &&
      !(cls.s > 0.0))
    throw NumericError("super smooth classes need s > 0");
}

} // namespace

RatePair theoretical_rate(const RegularityClass& target, const RegularityClass& noise) {
  using Kind = RegularityClass::Kind;
  validate_class(target, true);
  validate_class(noise, false);

  RatePair out{};
  if (target.kind == Kind::OrdinarySmoothTarget && noise.kind == Kind::OrdinarySmoothNoise) {
    const double beta = target.exponent, a = noise.exponent;
    const double cut = 1.0 / (2.0 * a + 2.0 * beta + 1.0);
    const double rate = -2.0 * beta / (2.0 * beta + 2.0 * a + 1.0);
    out.cutoff = {RateExpression::Kind::PowerOfJ, cut, 1.0, power_text("J", cut)};
    out.risk = {RateExpression::Kind::PowerOfJ, rate, 1.0, power_text("J", rate)};
  } else if (target.kind == Kind::OrdinarySmoothTarget) {
    const double beta = target.exponent, b = noise.exponent, s = noise.s;
    out.cutoff = {RateExpression::Kind::PowerOfLogJ, 1.0 / s, b, log_power_text(b, 1.0 / s)};
    out.risk = {RateExpression::Kind::PowerOfLogJ, -2.0 * beta / s, b,
                log_power_text(b, -2.0 * beta / s)};
  } else if (noise.kind == Kind::OrdinarySmoothNoise) {
    const double c = target.exponent, s = target.s;
    out.cutoff = {RateExpression::Kind::PowerOfLogJ, 1.0 / s, c, log_power_text(c, 1.0 / s)};
    out.risk = {RateExpression::Kind::PowerOfJ, -1.0, 1.0, power_text("J", -1.0)};
  } else {
    const double c = target.exponent, b = noise.exponent, s = noise.s;
    out.cutoff = {RateExpression::Kind::PowerOfLogJ, 1.0 / s, b + c,
                  log_power_text(b + c, 1.0 / s)};
    const double rate = -c / (b + c);
    out.risk = {RateExpression::Kind::PowerOfJ, rate, 1.0, power_text("J", rate)};
  }
  return out;
}

} // namespace decompound
