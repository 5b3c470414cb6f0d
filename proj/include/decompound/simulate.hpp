#pragma once

#include <cstddef>
#include <vector>

#include "decompound/law.hpp"
#include "decompound/rng.hpp"

namespace decompound {

//! J x n matrix of noisy compound-Poisson observations, one row per channel.
//!
//! times may be any strictly increasing positive vector; when they come from
//! a sampling grid, times[i] = (i+1) * delta with delta = times[0].
struct Panel {
  std::vector<double> data; // row-major, channels x times.size()
  std::vector<double> times;
  double delta = 0.0;

  std::size_t channels() const { return times.empty() ? 0 : data.size() / times.size(); }
  double at(std::size_t channel, std::size_t time_index) const {
    return data[channel * times.size() + time_index];
  }
  //! All channel values at one observation time.
  std::vector<double> column(std::size_t time_index) const;
};

//! Multiplicative increments Y_{k delta} / Y_{(k-1) delta}, all positive.
struct IncrementSample {
  std::vector<double> increments;
  double delta = 0.0;
  double lambda = 0.0;
};

//! Simulate J channels of jumps-plus-noise observed at the given times.
//!
//! Each channel carries one Poisson(unit intensity) jump path sampled
//! consistently across the requested times; noise is drawn fresh at every
//! observation time of every channel. Channel j derives rng substream j, so
//! output is independent of generation order.
Panel sample_panel(const Law& jump, const Law& noise, std::size_t channels,
                   const std::vector<double>& times, RngStream& rng);

//! sample_panel plus the per-channel jump counts at each time (tests observe
//! the counting-path consistency through this).
struct InstrumentedPanel {
  Panel panel;
  std::vector<long> counts; // row-major, channels x times.size()
};
InstrumentedPanel sample_panel_instrumented(const Law& jump, const Law& noise,
                                            std::size_t channels,
                                            const std::vector<double>& times,
                                            RngStream& rng);

//! n i.i.d. multiplicative increments, each a product of Poisson(lambda*delta)
//! many jumps (empty product = 1). The jump law must be supported on (0,inf).
IncrementSample sample_increments(const Law& jump, double lambda, double delta,
                                  std::size_t n, RngStream& rng);

} // namespace decompound
