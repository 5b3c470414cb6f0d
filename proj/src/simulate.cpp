#include "decompound/simulate.hpp"

#include <cmath>

#include "decompound/errors.hpp"

namespace decompound {

std::vector<double> Panel::column(std::size_t time_index) const {
  const std::size_t n = times.size();
  std::vector<double> out(channels());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = data[j * n + time_index];
  return out;
}

namespace {

void validate_times(const std::vector<double>& times) {
  if (times.empty()) throw NumericError("observation times must be nonempty");
  double prev = 0.0;
  for (double t : times) {
    if (!(t > 0.0)) throw NumericError("observation times must be strictly positive");
    if (!(t > prev) && prev != 0.0)
      throw NumericError("observation times must be strictly increasing");
    prev = t;
  }
}

} // namespace

InstrumentedPanel sample_panel_instrumented(const Law& jump, const Law& noise,
                                            std::size_t channels,
                                            const std::vector<double>& times,
                                            RngStream& rng) {
  validate_times(times);
  const std::size_t n = times.size();
  InstrumentedPanel out;
  out.panel.times = times;
  out.panel.delta = times.front();
  out.panel.data.resize(channels * n);
  out.counts.resize(channels * n);

  for (std::size_t j = 0; j < channels; ++j) {
    RngStream stream = rng.substream(j);
    double cumulative = 0.0;
    long count = 0;
    double prev_time = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      // independent Poisson increment over (prev_time, times[i]], unit intensity
      const long new_jumps = stream.poisson(times[i] - prev_time);
      for (long k = 0; k < new_jumps; ++k) cumulative += jump.sample_one(stream);
      count += new_jumps;
      prev_time = times[i];
      out.panel.data[j * n + i] = cumulative + noise.sample_one(stream);
      out.counts[j * n + i] = count;
    }
  }
  return out;
}

Panel sample_panel(const Law& jump, const Law& noise, std::size_t channels,
                   const std::vector<double>& times, RngStream& rng) {
  return sample_panel_instrumented(jump, noise, channels, times, rng).panel;
}

IncrementSample sample_increments(const Law& jump, double lambda, double delta,
                                  std::size_t n, RngStream& rng) {
  if (!(lambda > 0.0)) throw NumericError("lambda must be positive");
  if (!(delta > 0.0)) throw NumericError("delta must be positive");
  if (!jump.positive_support())
    throw NumericError("multiplicative jumps need a law supported on (0,inf): " +
                       jump.to_string());

  IncrementSample out;
  out.delta = delta;
  out.lambda = lambda;
  out.increments.resize(n);
  const double mean = lambda * delta;
  for (std::size_t k = 0; k < n; ++k) {
    RngStream stream = rng.substream(k);
    const long jumps = stream.poisson(mean);
    double prod = 1.0;
    for (long i = 0; i < jumps; ++i) prod *= jump.sample_one(stream);
    out.increments[k] = prod;
  }
  return out;
}

} // namespace decompound
