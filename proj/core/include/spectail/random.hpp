#pragma once

#include <cstdint>

namespace spectail {

// Counter-based pseudo-random stream. The value sequence is a pure function
// of (seed, stream_id): draw i equals mix(state0(seed, stream_id) + i * PHI),
// so streams can be recreated, skipped, and consumed in any order across
// workers without coordination. Distinct stream_ids are derived through an
// avalanche mix and behave as independent streams.
//
// All distributions below are built on the raw 64-bit output, so sampled
// values are identical across platforms and standard libraries.
class RandomStream {
 public:
  RandomStream() : RandomStream(0, 0) {}
  RandomStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  std::uint64_t next_u64();
  void skip(std::uint64_t n);  // advance the counter by n raw draws

  double uniform01();       // [0, 1), 53-bit resolution
  double uniform_open01();  // (0, 1), safe for inverse-CDF sampling
  double exponential();     // mean 1
  double normal();          // standard normal (Box-Muller, cached spare)
  double normal(double mean, double stddev);
  // Gamma(shape, scale 1), shape > 0. Marsaglia-Tsang for shape >= 1,
  // boosted by U^(1/shape) below 1.
  double gamma(double shape);

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::uint64_t state_;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace spectail
