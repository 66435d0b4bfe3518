#include "spectail/random.hpp"

#include <cmath>
#include <stdexcept>

namespace spectail {

namespace {

constexpr std::uint64_t kPhi = 0x9E3779B97F4A7C15ULL;

// SplitMix64 finalizer.
std::uint64_t mix(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ULL;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return z;
}

}  // namespace

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id) {
  const std::uint64_t k1 = mix(seed + kPhi);
  const std::uint64_t k2 = mix(stream_id + 0xD1B54A32D192ED03ULL);
  state_ = mix(k1 ^ (k2 * 0xCA5A826395121157ULL));
}

std::uint64_t RandomStream::next_u64() {
  state_ += kPhi;
  return mix(state_);
}

void RandomStream::skip(std::uint64_t n) { state_ += n * kPhi; }

double RandomStream::uniform01() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RandomStream::uniform_open01() {
  return (static_cast<double>(next_u64() >> 12) + 0.5) * 0x1.0p-52;
}

double RandomStream::exponential() { return -std::log(uniform_open01()); }

double RandomStream::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_normal_;
  }
  const double r = std::sqrt(2.0 * exponential());
  const double theta = 2.0 * M_PI * uniform01();
  spare_normal_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

double RandomStream::normal(double mean, double stddev) {
  return mean + stddev * normal();
}

double RandomStream::gamma(double shape) {
  if (!(shape > 0.0)) throw std::invalid_argument("gamma: shape must be positive");
  if (shape < 1.0) {
    const double u = uniform_open01();
    return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x;
    double v;
    do {
      x = normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform_open01();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
  }
}

}  // namespace spectail
