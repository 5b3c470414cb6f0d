#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "decompound/fourier.hpp"
#include "decompound/law.hpp"
#include "decompound/mellin.hpp"

namespace decompound {

enum class ModelKind : std::uint8_t { Additive, Multiplicative };
enum class EstimatorKind : std::uint8_t { Fourier, Mellin };

struct SweepSpec {
  std::string parameter; // "m" | "t2" | "J" | "n"
  std::vector<double> values;
  int replicates = 50;

  bool operator==(const SweepSpec&) const = default;
};

struct OutputSpec {
  std::string out;
  std::string dump_cf;
  std::string dump_mellin;

  bool operator==(const OutputSpec&) const = default;
};

//! Validated run description parsed from the line-oriented config format.
struct RunConfig {
  ModelKind model = ModelKind::Additive;
  Law jump = Law::degenerate0();
  Law noise = Law::degenerate0();
  std::size_t channels = 0;   // J, additive model
  std::vector<double> times;  // additive observation times
  double lambda = 1.0;
  double delta = 1.0;
  std::size_t n = 0; // multiplicative increments
  std::uint64_t seed = 0;

  EstimatorKind estimator = EstimatorKind::Fourier;
  FourierConfig fourier;
  MellinConfig mellin;
  bool adaptive = false;
  double freq_step = 0.0;
  double x_min = 0.0, x_max = 0.0, x_step = 0.0; // source of the x grids

  std::optional<SweepSpec> sweep;
  OutputSpec output;
  int threads = 1;

  bool operator==(const RunConfig& other) const;
};

//! Parse the `key = value` config (sections [model], [estimator], [sweep],
//! [output]); unknown keys and malformed lines are fatal, and cross-field
//! invariants are validated before returning.
RunConfig parse_config(const std::string& text);

//! Canonical text form; parse_config(serialize_config(c)) == c.
std::string serialize_config(const RunConfig& config);

enum class Action : std::uint8_t {
  Simulate,
  EstimateFourier,
  EstimateMellin,
  MiseSweep,
  T2Sweep,
};

//! Execute the pipeline for a validated config, write the output files and
//! print a one-line summary. Returns the process exit status: 0 success,
//! 1 configuration, 2 numeric, 3 I/O.
int run(const RunConfig& config, Action action, std::ostream& summary);

} // namespace decompound
