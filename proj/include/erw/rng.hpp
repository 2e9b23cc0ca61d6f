#pragma once

#include <cstdint>

#include "erw/rational.hpp"

namespace erw {

/// SplitMix64 finalizer (Steele/Lea/Flood).
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Counter-based stream keyed by (seed, trial, step). Streams for distinct
/// keys are statistically independent, and the draw sequence inside a step
/// depends only on the key, so results never depend on execution order or
/// thread count.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t trial, std::uint64_t step)
      : state_(derive(seed, trial, step)) {}

  std::uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix64(state_);
  }

  /// Uniform on {0, ..., bound-1}; Lemire's unbiased multiply-reject method.
  std::uint64_t below(std::uint64_t bound) {
    std::uint64_t x = next();
    __uint128_t m = static_cast<__uint128_t>(x) * bound;
    auto lo = static_cast<std::uint64_t>(m);
    if (lo < bound) {
      std::uint64_t t = -bound % bound;
      while (lo < t) {
        x = next();
        m = static_cast<__uint128_t>(x) * bound;
        lo = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

 private:
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t trial, std::uint64_t step) {
    std::uint64_t h = mix64(seed + 0x9e3779b97f4a7c15ULL);
    h = mix64(h ^ (trial + 0xd1b54a32d192ed03ULL));
    h = mix64(h ^ (step + 0x8cb92ba72f3d8dd7ULL));
    return h;
  }

  std::uint64_t state_;
};

/// Precomputed 2^64-scaled cutoff for sampling a Bernoulli(prob) event with a
/// single uint64 draw. The cutoff truncation bias is below 2^-64.
class BernoulliCutoff {
 public:
  explicit BernoulliCutoff(const Rational& prob) {
    if (prob < 0 || prob > 1) throw std::invalid_argument("probability outside [0,1]");
    if (prob == 1) {
      certain_ = true;
      cutoff_ = ~0ULL;
    } else {
      BigInt scaled = (numerator(prob) << 64) / denominator(prob);
      cutoff_ = scaled.convert_to<std::uint64_t>();
    }
  }

  bool sample(CounterRng& rng) const { return certain_ || rng.next() < cutoff_; }

 private:
  std::uint64_t cutoff_ = 0;
  bool certain_ = false;
};

}  // namespace erw
