#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <random>

namespace rssiest {

using Seed = std::uint64_t;

// Stream domains keep channel, pilot-noise and trial streams disjoint even
// when they share the same numeric index.
enum class StreamDomain : std::uint64_t {
  kChannel = 0x43484e4c,  // "CHNL"
  kPilotNoise = 0x4e4f4953,  // "NOIS"
  kTrial = 0x5452494c,  // "TRIL"
};

// Counter-based seed derivation: SplitMix64 finalizer applied to the master
// seed, the domain tag and the index in turn. Streams therefore depend only
// on (master, domain, index) and never on evaluation order.
Seed derive_seed(Seed master, StreamDomain domain, std::uint64_t index) noexcept;

// xoshiro256++ seeded from a single 64-bit value through SplitMix64.
class Xoshiro256pp {
 public:
  using result_type = std::uint64_t;

  explicit Xoshiro256pp(Seed seed) noexcept;

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }
  result_type operator()() noexcept;

 private:
  std::array<std::uint64_t, 4> s_;
};

// Circularly-symmetric complex Gaussian source: real and imaginary parts are
// independent N(0, variance / 2), so E|z|^2 = variance.
class ComplexGaussian {
 public:
  explicit ComplexGaussian(Seed seed) : rng_(seed) {}

  std::complex<double> operator()(double variance) {
    const double scale = std::sqrt(variance / 2.0);
    const double re = normal_(rng_);
    const double im = normal_(rng_);
    return {scale * re, scale * im};
  }

 private:
  Xoshiro256pp rng_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace rssiest
