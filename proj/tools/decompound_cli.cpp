#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "decompound/config.hpp"
#include "decompound/errors.hpp"
#include "decompound/risk.hpp"
#include "decompound/version.hpp"

namespace {

using namespace decompound;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

//! Flag overrides applied on top of the parsed config.
struct Overrides {
  std::optional<double> t1, t2, m, kappa, alpha, c, lambda, delta, freq_step;
  std::optional<double> x_min, x_max, x_step;
  std::optional<std::uint64_t> n, channels, seed;
  std::optional<std::string> out, dump_cf, dump_mellin, threshold_form;
  bool adaptive = false;
};

void add_estimator_flags(CLI::App* cmd, Overrides& ov) {
  cmd->add_option("--m", ov.m, "spectral cutoff");
  cmd->add_flag("--adaptive", ov.adaptive, "select the cutoff from the data");
  cmd->add_option("--kappa", ov.kappa, "adaptive threshold constant");
  cmd->add_option("--alpha", ov.alpha, "adaptive cutoff cap exponent, in (0,1)");
  cmd->add_option("--freq-step", ov.freq_step, "frequency grid step");
  cmd->add_option("--x-min", ov.x_min, "density grid start");
  cmd->add_option("--x-max", ov.x_max, "density grid end");
  cmd->add_option("--x-step", ov.x_step, "density grid step");
  cmd->add_option("--seed", ov.seed, "rng seed");
  cmd->add_option("--out", ov.out, "output CSV path");
}

//! Re-serialize with overrides folded in, then re-parse so every cross-field
//! check runs against the effective values.
RunConfig apply_overrides(const RunConfig& base, const Overrides& ov,
                          const std::string& out_dir) {
  RunConfig cfg = base;
  if (ov.t1) cfg.fourier.t1 = *ov.t1;
  if (ov.t2) cfg.fourier.t2 = *ov.t2;
  if (ov.m) {
    cfg.fourier.m = *ov.m;
    cfg.mellin.m = *ov.m;
  }
  if (ov.kappa) {
    cfg.fourier.kappa = *ov.kappa;
    cfg.mellin.kappa = *ov.kappa;
  }
  if (ov.alpha) {
    cfg.fourier.alpha = *ov.alpha;
    cfg.mellin.alpha = *ov.alpha;
  }
  if (ov.c) cfg.mellin.c = *ov.c;
  if (ov.lambda) cfg.lambda = *ov.lambda;
  if (ov.delta) cfg.delta = *ov.delta;
  if (ov.freq_step) cfg.freq_step = *ov.freq_step;
  if (ov.n) cfg.n = *ov.n;
  if (ov.channels) cfg.channels = *ov.channels;
  if (ov.seed) cfg.seed = *ov.seed;
  if (ov.adaptive) cfg.adaptive = true;
  if (ov.out) cfg.output.out = *ov.out;
  if (ov.dump_cf) cfg.output.dump_cf = *ov.dump_cf;
  if (ov.dump_mellin) cfg.output.dump_mellin = *ov.dump_mellin;
  if (ov.threshold_form) {
    if (*ov.threshold_form == "additive")
      cfg.mellin.threshold_form = MellinThresholdForm::Additive;
    else if (*ov.threshold_form == "exponential")
      cfg.mellin.threshold_form = MellinThresholdForm::Exponential;
    else
      throw ConfigError("--threshold-form must be additive or exponential");
  }
  if (ov.x_min || ov.x_max || ov.x_step) {
    if (!(ov.x_min && ov.x_max && ov.x_step))
      throw ConfigError("--x-min, --x-max, --x-step must be given together");
    cfg.x_min = *ov.x_min;
    cfg.x_max = *ov.x_max;
    cfg.x_step = *ov.x_step;
    auto grid = uniform_grid_range(cfg.x_min, cfg.x_max, cfg.x_step);
    if (cfg.estimator == EstimatorKind::Mellin && !(grid.front() > 0.0))
      throw ConfigError("the mellin x grid must be strictly positive");
    cfg.fourier.x_grid = grid;
    cfg.mellin.x_grid = std::move(grid);
  }

  auto prefix = [&out_dir](std::string& path) {
    if (path.empty() || out_dir.empty()) return;
    if (std::filesystem::path(path).is_absolute()) return;
    path = (std::filesystem::path(out_dir) / path).string();
  };
  prefix(cfg.output.out);
  prefix(cfg.output.dump_cf);
  prefix(cfg.output.dump_mellin);
  return cfg;
}

RunConfig load_config(const std::string& config_path, std::uint64_t seed_fallback,
                      bool seed_given, int threads) {
  if (config_path.empty())
    throw ConfigError("a config file with a [model] section is required (--config)");
  RunConfig cfg = parse_config(read_file(config_path));
  if (seed_given) cfg.seed = seed_fallback;
  cfg.threads = threads;
  return cfg;
}

RegularityClass parse_target_class(const std::string& text) {
  // ordinary:beta  or  super:c,s
  const auto colon = text.find(':');
  if (colon == std::string::npos)
    throw ConfigError("class spec must look like ordinary:1 or super:1,2");
  const std::string kind = text.substr(0, colon);
  std::vector<double> params;
  std::stringstream ss(text.substr(colon + 1));
  std::string item;
  while (std::getline(ss, item, ',')) params.push_back(std::stod(item));
  if (kind == "ordinary" && params.size() == 1)
    return RegularityClass::ordinary_target(params[0]);
  if (kind == "super" && params.size() == 2)
    return RegularityClass::super_target(params[0], params[1]);
  throw ConfigError("bad class spec '" + text + "'");
}

RegularityClass parse_noise_class(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos)
    throw ConfigError("class spec must look like ordinary:1 or super:1,2");
  const std::string kind = text.substr(0, colon);
  std::vector<double> params;
  std::stringstream ss(text.substr(colon + 1));
  std::string item;
  while (std::getline(ss, item, ',')) params.push_back(std::stod(item));
  if (kind == "ordinary" && params.size() == 1)
    return RegularityClass::ordinary_noise(params[0]);
  if (kind == "super" && params.size() == 2)
    return RegularityClass::super_noise(params[0], params[1]);
  throw ConfigError("bad class spec '" + text + "'");
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"noisy compound Poisson decompounding toolkit"};
  app.set_version_flag("--version", std::string("decompound-kit ") + kVersion);

  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  bool seed_given = false;
  int threads = 1;
  app.add_option("--config", config_path, "path to the run config")->envname("");
  app.add_option("--out-dir", out_dir, "directory for output files");
  auto* seed_opt = app.add_option("--seed", seed, "rng seed (env DECOMPOUND_SEED)");
  app.add_option("--threads", threads, "worker threads for sweeps");
  app.require_subcommand(1);

  Overrides ov;
  std::optional<std::string> target_spec, noise_spec;

  auto* simulate = app.add_subcommand("simulate", "write simulated observations as CSV");
  simulate->add_option("--seed", ov.seed, "rng seed");
  simulate->add_option("--out", ov.out, "output CSV path");

  auto* efourier =
      app.add_subcommand("estimate-fourier", "two-time jump density estimate");
  efourier->add_option("--t1", ov.t1, "first observation time");
  efourier->add_option("--t2", ov.t2, "second observation time");
  add_estimator_flags(efourier, ov);
  efourier->add_option("--dump-cf", ov.dump_cf, "also dump the estimated transform");

  auto* emellin =
      app.add_subcommand("estimate-mellin", "multiplicative jump density estimate");
  emellin->add_option("--lambda", ov.lambda, "jump intensity");
  emellin->add_option("--delta", ov.delta, "sampling step");
  emellin->add_option("--n", ov.n, "number of increments");
  emellin->add_option("--c", ov.c, "mellin line");
  emellin->add_option("--threshold-form", ov.threshold_form, "additive | exponential");
  add_estimator_flags(emellin, ov);
  emellin->add_option("--dump-mellin", ov.dump_mellin, "also dump the estimated transform");

  auto* msweep = app.add_subcommand("mise-sweep", "Monte-Carlo risk over a parameter sweep");
  msweep->add_option("--seed", ov.seed, "rng seed");
  msweep->add_option("--out", ov.out, "output CSV path");

  auto* tsweep = app.add_subcommand("t2-sweep", "Monte-Carlo risk over t2 values");
  tsweep->add_option("--seed", ov.seed, "rng seed");
  tsweep->add_option("--out", ov.out, "output CSV path");

  auto* rates = app.add_subcommand("rates", "optimal cutoff and risk rate for a class pair");
  rates->add_option("--target", target_spec, "jump class: ordinary:beta | super:c,s")
      ->required();
  rates->add_option("--noise", noise_spec, "noise class: ordinary:a | super:b,s")
      ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    seed_given = seed_opt->count() > 0;
    if (!seed_given) {
      if (const char* env = std::getenv("DECOMPOUND_SEED")) {
        seed = std::stoull(env);
        seed_given = true;
      }
    }

    if (rates->parsed()) {
      const RatePair pair =
          theoretical_rate(parse_target_class(*target_spec), parse_noise_class(*noise_spec));
      std::cout << "cutoff: m* ~ " << pair.cutoff.text << "\n";
      std::cout << "risk:   O(" << pair.risk.text << ")\n";
      return 0;
    }

    RunConfig cfg = load_config(config_path, seed, seed_given, threads);
    cfg = apply_overrides(cfg, ov, out_dir);

    Action action = Action::Simulate;
    if (efourier->parsed()) action = Action::EstimateFourier;
    else if (emellin->parsed()) action = Action::EstimateMellin;
    else if (msweep->parsed()) action = Action::MiseSweep;
    else if (tsweep->parsed()) action = Action::T2Sweep;

    return run(cfg, action, std::cout);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
