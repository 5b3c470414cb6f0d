#include "decompound/config.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

#include "decompound/csv.hpp"
#include "decompound/errors.hpp"
#include "decompound/grid.hpp"
#include "decompound/risk.hpp"

namespace decompound {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& v, int line) {
  try {
    std::size_t used = 0;
    const double d = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ParseError(line, "expected a number, got '" + v + "'");
  }
}

std::uint64_t parse_u64(const std::string& v, int line) {
  try {
    std::size_t used = 0;
    const auto d = std::stoull(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ParseError(line, "expected an unsigned integer, got '" + v + "'");
  }
}

bool parse_bool(const std::string& v, int line) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ParseError(line, "expected a boolean, got '" + v + "'");
}

std::vector<double> parse_number_list(const std::string& v, int line) {
  std::vector<double> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) throw ParseError(line, "empty entry in list");
    out.push_back(parse_double(item, line));
  }
  if (out.empty()) throw ParseError(line, "expected a nonempty list");
  return out;
}

// times accepts either "t1,t2,..." or "grid(start,step,count)"
std::vector<double> parse_times(const std::string& v, int line) {
  if (v.rfind("grid(", 0) == 0) {
    if (v.back() != ')') throw ParseError(line, "malformed grid(...) spec");
    const auto inner = parse_number_list(v.substr(5, v.size() - 6), line);
    if (inner.size() != 3) throw ParseError(line, "grid(start,step,count) takes 3 values");
    const auto count = static_cast<std::size_t>(inner[2]);
    if (count == 0) throw ParseError(line, "grid count must be positive");
    return uniform_grid(inner[0], inner[1], count);
  }
  return parse_number_list(v, line);
}

struct RawConfig {
  RunConfig cfg;
  bool saw_model_section = false;
  bool saw_type = false;
  bool saw_jump = false;
  bool saw_x_min = false, saw_x_max = false, saw_x_step = false;
  bool saw_estimator_kind = false;
  double x_min = 0.0, x_max = 0.0, x_step = 0.0;
};

void apply_model_key(RawConfig& raw, const std::string& key, const std::string& value,
                     int line) {
  RunConfig& cfg = raw.cfg;
  if (key == "type") {
    if (raw.saw_type) throw ParseError(line, "model type given twice");
    raw.saw_type = true;
    if (value == "additive")
      cfg.model = ModelKind::Additive;
    else if (value == "multiplicative")
      cfg.model = ModelKind::Multiplicative;
    else
      throw ParseError(line, "model type must be additive or multiplicative");
  } else if (key == "jump") {
    cfg.jump = parse_law(value);
    raw.saw_jump = true;
  } else if (key == "noise") {
    cfg.noise = parse_law(value);
  } else if (key == "J") {
    cfg.channels = static_cast<std::size_t>(parse_u64(value, line));
  } else if (key == "times") {
    cfg.times = parse_times(value, line);
  } else if (key == "lambda") {
    cfg.lambda = parse_double(value, line);
  } else if (key == "delta") {
    cfg.delta = parse_double(value, line);
  } else if (key == "n") {
    cfg.n = static_cast<std::size_t>(parse_u64(value, line));
  } else if (key == "seed") {
    cfg.seed = parse_u64(value, line);
  } else {
    throw ParseError(line, "unknown key '" + key + "' in [model]");
  }
}

void apply_estimator_key(RawConfig& raw, const std::string& key, const std::string& value,
                         int line) {
  RunConfig& cfg = raw.cfg;
  if (key == "kind") {
    raw.saw_estimator_kind = true;
    if (value == "fourier")
      cfg.estimator = EstimatorKind::Fourier;
    else if (value == "mellin")
      cfg.estimator = EstimatorKind::Mellin;
    else
      throw ParseError(line, "estimator kind must be fourier or mellin");
  } else if (key == "t1") {
    cfg.fourier.t1 = parse_double(value, line);
  } else if (key == "t2") {
    cfg.fourier.t2 = parse_double(value, line);
  } else if (key == "m") {
    cfg.fourier.m = parse_double(value, line);
    cfg.mellin.m = cfg.fourier.m;
  } else if (key == "adaptive") {
    cfg.adaptive = parse_bool(value, line);
  } else if (key == "kappa") {
    cfg.fourier.kappa = parse_double(value, line);
    cfg.mellin.kappa = cfg.fourier.kappa;
  } else if (key == "alpha") {
    cfg.fourier.alpha = parse_double(value, line);
    cfg.mellin.alpha = cfg.fourier.alpha;
  } else if (key == "c") {
    cfg.mellin.c = parse_double(value, line);
  } else if (key == "freq_step") {
    cfg.freq_step = parse_double(value, line);
  } else if (key == "x_min") {
    raw.saw_x_min = true;
    raw.x_min = parse_double(value, line);
  } else if (key == "x_max") {
    raw.saw_x_max = true;
    raw.x_max = parse_double(value, line);
  } else if (key == "x_step") {
    raw.saw_x_step = true;
    raw.x_step = parse_double(value, line);
  } else if (key == "kappa_form") {
    if (value == "definition")
      cfg.fourier.kappa_form = FourierKappaForm::Definition;
    else if (value == "proof")
      cfg.fourier.kappa_form = FourierKappaForm::Proof;
    else
      throw ParseError(line, "kappa_form must be definition or proof");
  } else if (key == "threshold_form") {
    if (value == "additive")
      cfg.mellin.threshold_form = MellinThresholdForm::Additive;
    else if (value == "exponential")
      cfg.mellin.threshold_form = MellinThresholdForm::Exponential;
    else
      throw ParseError(line, "threshold_form must be additive or exponential");
  } else if (key == "scan") {
    if (value == "up")
      cfg.fourier.scan = CutoffScan::FirstBelow;
    else if (value == "down")
      cfg.fourier.scan = CutoffScan::LastAbove;
    else
      throw ParseError(line, "scan must be up or down");
  } else {
    throw ParseError(line, "unknown key '" + key + "' in [estimator]");
  }
}

void apply_sweep_key(RawConfig& raw, const std::string& key, const std::string& value,
                     int line) {
  if (!raw.cfg.sweep) raw.cfg.sweep = SweepSpec{};
  SweepSpec& sweep = *raw.cfg.sweep;
  if (key == "parameter") {
    if (value != "m" && value != "t2" && value != "J" && value != "n")
      throw ParseError(line, "sweep parameter must be one of m, t2, J, n");
    sweep.parameter = value;
  } else if (key == "values") {
    sweep.values = parse_number_list(value, line);
  } else if (key == "replicates") {
    sweep.replicates = static_cast<int>(parse_u64(value, line));
  } else {
    throw ParseError(line, "unknown key '" + key + "' in [sweep]");
  }
}

void apply_output_key(RawConfig& raw, const std::string& key, const std::string& value,
                      int line) {
  if (key == "out")
    raw.cfg.output.out = value;
  else if (key == "dump_cf")
    raw.cfg.output.dump_cf = value;
  else if (key == "dump_mellin")
    raw.cfg.output.dump_mellin = value;
  else
    throw ParseError(line, "unknown key '" + key + "' in [output]");
}

void validate(RawConfig& raw) {
  RunConfig& cfg = raw.cfg;
  if (!raw.saw_model_section) throw ConfigError("missing [model] section");
  if (!raw.saw_type) throw ConfigError("missing model type");
  if (!raw.saw_jump) throw ConfigError("missing jump law");

  if (!raw.saw_estimator_kind)
    cfg.estimator = (cfg.model == ModelKind::Additive) ? EstimatorKind::Fourier
                                                       : EstimatorKind::Mellin;

  if (cfg.model == ModelKind::Additive) {
    if (cfg.estimator == EstimatorKind::Mellin)
      throw ConfigError("the mellin estimator needs the multiplicative model");
    if (cfg.lambda != 1.0)
      throw ConfigError("the fourier pipeline is built for lambda = 1; "
                        "set lambda = 1 or drop the key");
    if (!(cfg.fourier.t1 > 0.0)) throw ConfigError("t1 must be positive");
    if (!(cfg.fourier.t2 > cfg.fourier.t1)) throw ConfigError("t2 must exceed t1");
  } else {
    if (cfg.estimator == EstimatorKind::Fourier)
      throw ConfigError("the fourier estimator needs the additive model");
    if (!(cfg.lambda > 0.0)) throw ConfigError("lambda must be positive");
    if (!(cfg.delta > 0.0)) throw ConfigError("delta must be positive");
    if (!cfg.jump.positive_support())
      throw ConfigError("multiplicative jumps need a law supported on (0,inf)");
    cfg.mellin.lambda = cfg.lambda;
    cfg.mellin.delta = cfg.delta;
  }

  if (!(cfg.fourier.kappa > 0.0)) throw ConfigError("kappa must be positive");
  if (!(cfg.fourier.alpha > 0.0 && cfg.fourier.alpha < 1.0))
    throw ConfigError("alpha must lie in (0,1)");
  if (cfg.freq_step < 0.0) throw ConfigError("freq_step must be positive");

  // x grid: explicit triple or the model's default study grid
  const bool saw_any = raw.saw_x_min || raw.saw_x_max || raw.saw_x_step;
  if (saw_any && !(raw.saw_x_min && raw.saw_x_max && raw.saw_x_step))
    throw ConfigError("x_min, x_max, x_step must be given together");
  if (saw_any) {
    cfg.x_min = raw.x_min;
    cfg.x_max = raw.x_max;
    cfg.x_step = raw.x_step;
  } else if (cfg.estimator == EstimatorKind::Fourier) {
    cfg.x_min = -10.0;
    cfg.x_max = 10.0;
    cfg.x_step = 0.01;
  } else {
    cfg.x_min = 0.002;
    cfg.x_max = 1.5;
    cfg.x_step = 0.002;
  }
  if (!(cfg.x_step > 0.0)) throw ConfigError("x_step must be positive");
  if (!(cfg.x_max > cfg.x_min)) throw ConfigError("x_max must exceed x_min");
  if (cfg.estimator == EstimatorKind::Mellin && !(cfg.x_min > 0.0))
    throw ConfigError("the mellin x grid must be strictly positive");
  auto grid = uniform_grid_range(cfg.x_min, cfg.x_max, cfg.x_step);
  cfg.fourier.x_grid = grid;
  cfg.mellin.x_grid = std::move(grid);

  if (cfg.sweep) {
    if (cfg.sweep->parameter.empty()) throw ConfigError("sweep parameter missing");
    if (cfg.sweep->values.empty()) throw ConfigError("sweep values missing");
    if (cfg.sweep->replicates < 2) throw ConfigError("sweep needs at least 2 replicates");
    if (cfg.sweep->parameter == "t2")
      for (double t2 : cfg.sweep->values)
        if (!(t2 > cfg.fourier.t1)) throw ConfigError("every swept t2 must exceed t1");
  }
  if (cfg.threads < 1) throw ConfigError("threads must be at least 1");
}

} // namespace

RunConfig parse_config(const std::string& text) {
  RawConfig raw;
  enum class Section { None, Model, Estimator, Sweep, Output } section = Section::None;

  std::stringstream ss(text);
  std::string rawline;
  int lineno = 0;
  while (std::getline(ss, rawline)) {
    ++lineno;
    std::string line = trim(rawline);
    if (line.empty() || line[0] == '#') continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ParseError(lineno, "malformed section header");
      const std::string name = line.substr(1, line.size() - 2);
      if (name == "model") {
        section = Section::Model;
        raw.saw_model_section = true;
      } else if (name == "estimator")
        section = Section::Estimator;
      else if (name == "sweep")
        section = Section::Sweep;
      else if (name == "output")
        section = Section::Output;
      else
        throw ParseError(lineno, "unknown section [" + name + "]");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(lineno, "expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ParseError(lineno, "empty key");
    if (value.empty()) throw ParseError(lineno, "empty value for '" + key + "'");
    switch (section) {
      case Section::None:
        throw ParseError(lineno, "key outside any section");
      case Section::Model:
        apply_model_key(raw, key, value, lineno);
        break;
      case Section::Estimator:
        apply_estimator_key(raw, key, value, lineno);
        break;
      case Section::Sweep:
        apply_sweep_key(raw, key, value, lineno);
        break;
      case Section::Output:
        apply_output_key(raw, key, value, lineno);
        break;
    }
  }
  if (!raw.saw_model_section) throw ConfigError("missing [model] section");
  validate(raw);
  return raw.cfg;
}

bool RunConfig::operator==(const RunConfig& other) const {
  return model == other.model && jump == other.jump && noise == other.noise &&
         channels == other.channels && times == other.times && lambda == other.lambda &&
         delta == other.delta && n == other.n && seed == other.seed &&
         estimator == other.estimator && fourier.t1 == other.fourier.t1 &&
         fourier.t2 == other.fourier.t2 && fourier.m == other.fourier.m &&
         fourier.kappa == other.fourier.kappa && fourier.alpha == other.fourier.alpha &&
         fourier.x_grid == other.fourier.x_grid &&
         fourier.kappa_form == other.fourier.kappa_form &&
         fourier.scan == other.fourier.scan && mellin.c == other.mellin.c &&
         mellin.threshold_form == other.mellin.threshold_form &&
         adaptive == other.adaptive && freq_step == other.freq_step &&
         x_min == other.x_min && x_max == other.x_max && x_step == other.x_step &&
         sweep == other.sweep && output == other.output && threads == other.threads;
}

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

} // namespace

std::string serialize_config(const RunConfig& cfg) {
  std::ostringstream out;
  out << "[model]\n";
  out << "type = " << (cfg.model == ModelKind::Additive ? "additive" : "multiplicative")
      << "\n";
  out << "jump = " << cfg.jump.to_string() << "\n";
  out << "noise = " << cfg.noise.to_string() << "\n";
  if (cfg.channels > 0) out << "J = " << cfg.channels << "\n";
  if (!cfg.times.empty()) {
    out << "times = ";
    for (std::size_t i = 0; i < cfg.times.size(); ++i) {
      if (i) out << ",";
      out << num(cfg.times[i]);
    }
    out << "\n";
  }
  out << "lambda = " << num(cfg.lambda) << "\n";
  out << "delta = " << num(cfg.delta) << "\n";
  if (cfg.n > 0) out << "n = " << cfg.n << "\n";
  out << "seed = " << cfg.seed << "\n";

  out << "[estimator]\n";
  out << "kind = " << (cfg.estimator == EstimatorKind::Fourier ? "fourier" : "mellin")
      << "\n";
  out << "t1 = " << num(cfg.fourier.t1) << "\n";
  out << "t2 = " << num(cfg.fourier.t2) << "\n";
  out << "m = " << num(cfg.fourier.m) << "\n";
  out << "adaptive = " << (cfg.adaptive ? "true" : "false") << "\n";
  out << "kappa = " << num(cfg.fourier.kappa) << "\n";
  out << "alpha = " << num(cfg.fourier.alpha) << "\n";
  out << "c = " << num(cfg.mellin.c) << "\n";
  if (cfg.freq_step > 0.0) out << "freq_step = " << num(cfg.freq_step) << "\n";
  out << "x_min = " << num(cfg.x_min) << "\n";
  out << "x_max = " << num(cfg.x_max) << "\n";
  out << "x_step = " << num(cfg.x_step) << "\n";
  out << "kappa_form = "
      << (cfg.fourier.kappa_form == FourierKappaForm::Definition ? "definition" : "proof")
      << "\n";
  out << "threshold_form = "
      << (cfg.mellin.threshold_form == MellinThresholdForm::Additive ? "additive"
                                                                     : "exponential")
      << "\n";
  out << "scan = " << (cfg.fourier.scan == CutoffScan::FirstBelow ? "up" : "down") << "\n";

  if (cfg.sweep) {
    out << "[sweep]\n";
    out << "parameter = " << cfg.sweep->parameter << "\n";
    out << "values = ";
    for (std::size_t i = 0; i < cfg.sweep->values.size(); ++i) {
      if (i) out << ",";
      out << num(cfg.sweep->values[i]);
    }
    out << "\n";
    out << "replicates = " << cfg.sweep->replicates << "\n";
  }
  if (!cfg.output.out.empty() || !cfg.output.dump_cf.empty() ||
      !cfg.output.dump_mellin.empty()) {
    out << "[output]\n";
    if (!cfg.output.out.empty()) out << "out = " << cfg.output.out << "\n";
    if (!cfg.output.dump_cf.empty()) out << "dump_cf = " << cfg.output.dump_cf << "\n";
    if (!cfg.output.dump_mellin.empty())
      out << "dump_mellin = " << cfg.output.dump_mellin << "\n";
  }
  return out.str();
}

namespace {

void run_simulate(const RunConfig& cfg, std::ostream& summary) {
  RngStream rng(cfg.seed);
  const std::string path = cfg.output.out.empty() ? "simulated.csv" : cfg.output.out;
  if (cfg.model == ModelKind::Additive) {
    if (cfg.channels < 1) throw ConfigError("simulate needs J >= 1");
    if (cfg.times.empty()) throw ConfigError("simulate needs observation times");
    const Panel panel = sample_panel(cfg.jump, cfg.noise, cfg.channels, cfg.times, rng);
    write_panel_csv(path, cfg.seed, panel);
    summary << "rows=" << cfg.channels * cfg.times.size() << " out=" << path << "\n";
  } else {
    if (cfg.n < 1) throw ConfigError("simulate needs n >= 1");
    const IncrementSample sample =
        sample_increments(cfg.jump, cfg.lambda, cfg.delta, cfg.n, rng);
    write_increments_csv(path, cfg.seed, sample);
    summary << "rows=" << cfg.n << " out=" << path << "\n";
  }
}

void run_estimate_fourier(const RunConfig& cfg, std::ostream& summary) {
  if (cfg.model != ModelKind::Additive)
    throw ConfigError("estimate-fourier needs the additive model");
  if (cfg.channels < 2) throw ConfigError("estimate-fourier needs J >= 2");
  RngStream rng(cfg.seed);
  const std::vector<double> times{cfg.fourier.t1, cfg.fourier.t2};
  const Panel panel = sample_panel(cfg.jump, cfg.noise, cfg.channels, times, rng);
  const FourierEstimate est = run_fourier_estimate(
      panel.column(0), panel.column(1), cfg.fourier, cfg.adaptive, cfg.freq_step);
  const std::string path = cfg.output.out.empty() ? "density.csv" : cfg.output.out;
  write_density_csv(path, cfg.seed, est.density);
  if (!cfg.output.dump_cf.empty()) {
    const ComplexProfile* thresholded = cfg.adaptive ? &est.thresholded : nullptr;
    write_profile_csv(cfg.output.dump_cf, cfg.seed, est.cf.profile, thresholded);
  }
  if (cfg.adaptive)
    summary << "m_hat=" << est.m_used << " out=" << path << "\n";
  else
    summary << "m=" << est.m_used << " out=" << path << "\n";
}

void run_estimate_mellin(const RunConfig& cfg, std::ostream& summary) {
  if (cfg.model != ModelKind::Multiplicative)
    throw ConfigError("estimate-mellin needs the multiplicative model");
  if (cfg.n < 2) throw ConfigError("estimate-mellin needs n >= 2");
  RngStream rng(cfg.seed);
  const IncrementSample sample =
      sample_increments(cfg.jump, cfg.lambda, cfg.delta, cfg.n, rng);
  const MellinEstimateResult est =
      run_mellin_estimate(sample.increments, cfg.mellin, cfg.adaptive, cfg.freq_step);
  const std::string path = cfg.output.out.empty() ? "density.csv" : cfg.output.out;
  write_density_csv(path, cfg.seed, est.density);
  if (!cfg.output.dump_mellin.empty())
    write_mellin_profile_csv(cfg.output.dump_mellin, cfg.seed, est.estimate.profile);
  if (cfg.adaptive)
    summary << "m_hat=" << est.m_used << " out=" << path << "\n";
  else
    summary << "m=" << est.m_used << " out=" << path << "\n";
}

void run_sweep(const RunConfig& cfg, bool force_t2, std::ostream& summary) {
  SweepSpec sweep = cfg.sweep.value_or(SweepSpec{});
  if (force_t2) sweep.parameter = "t2";
  if (sweep.parameter.empty()) throw ConfigError("missing [sweep] section");
  if (sweep.values.empty()) throw ConfigError("sweep values missing");

  const RngStream rng(cfg.seed);
  RiskReport report;
  if (cfg.model == ModelKind::Additive) {
    if (cfg.channels < 2) throw ConfigError("sweeps need J >= 2");
    FourierSetting setting{cfg.jump, cfg.noise, cfg.channels, cfg.fourier, cfg.adaptive,
                           cfg.freq_step};
    if (sweep.parameter == "m")
      report = sweep_cutoff(setting, sweep.values, sweep.replicates, rng, cfg.threads);
    else if (sweep.parameter == "t2")
      report = sweep_t2(setting, sweep.values, sweep.replicates, rng, cfg.threads);
    else if (sweep.parameter == "J")
      report = sweep_channels(setting, sweep.values, sweep.replicates, rng, cfg.threads);
    else
      throw ConfigError("additive sweeps accept parameter m, t2 or J");
  } else {
    if (cfg.n < 2) throw ConfigError("sweeps need n >= 2");
    MellinSetting setting{cfg.jump, cfg.n, cfg.mellin, cfg.adaptive, cfg.freq_step};
    if (sweep.parameter == "m")
      report = sweep_cutoff_mellin(setting, sweep.values, sweep.replicates, rng, cfg.threads);
    else if (sweep.parameter == "n")
      report = sweep_sample_size(setting, sweep.values, sweep.replicates, rng, cfg.threads);
    else
      throw ConfigError("multiplicative sweeps accept parameter m or n");
  }
  const std::string path = cfg.output.out.empty() ? "risk.csv" : cfg.output.out;
  write_risk_csv(path, cfg.seed, report);
  const auto [lo, hi] = std::minmax_element(report.mise.begin(), report.mise.end());
  summary << "mise_range=[" << *lo << "," << *hi << "] out=" << path << "\n";
}

} // namespace

int run(const RunConfig& config, Action action, std::ostream& summary) {
  try {
    switch (action) {
      case Action::Simulate:
        run_simulate(config, summary);
        break;
      case Action::EstimateFourier:
        run_estimate_fourier(config, summary);
        break;
      case Action::EstimateMellin:
        run_estimate_mellin(config, summary);
        break;
      case Action::MiseSweep:
        run_sweep(config, false, summary);
        break;
      case Action::T2Sweep:
        run_sweep(config, true, summary);
        break;
    }
    return 0;
  } catch (const ConfigError& e) {
    summary << "error: " << e.what() << "\n";
    return 1;
  } catch (const IoError& e) {
    summary << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    summary << "error: " << e.what() << "\n";
    return 2;
  }
}

} // namespace decompound
