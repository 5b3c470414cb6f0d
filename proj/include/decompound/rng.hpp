#pragma once

#include <cstdint>
#include <random>

namespace decompound {

//! Seeded random stream with deterministic splitting.
//!
//! Streams are value types. substream(i) derives an independent child stream
//! from the parent's identity and the index, so replicate r / channel j can be
//! generated in any order (or in parallel) with identical output. All
//! distribution samplers are hand-rolled so that a given stream state always
//! yields the same draw sequence, independent of the standard library.
class RngStream {
public:
  explicit RngStream(std::uint64_t seed);

  //! Child stream keyed by (this stream's identity, index).
  RngStream substream(std::uint64_t index) const;

  std::uint64_t next_u64();

  //! Uniform on [0, 1).
  double uniform01();
  //! Uniform on (0, 1], safe for log().
  double uniform_pos();

  double normal(double mean, double sd);
  double gamma(double shape, double scale);
  double beta(double alpha, double beta);
  double cauchy(double location, double scale);
  long poisson(double mean);

private:
  RngStream(std::uint64_t identity, int); // internal: seed without remixing

  std::uint64_t identity_;
  std::mt19937_64 gen_;

  double standard_normal();
  double standard_gamma(double shape);
};

} // namespace decompound
