#pragma once

#include <cmath>
#include <cstdint>

namespace pscale {

/// Counter-based stream: the n-th draw of stream (seed, index) is a fixed
/// function of (seed, index, n), so paths can be simulated in any order or on
/// any worker and still reproduce bit-for-bit.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream) noexcept
      : key_(mix(seed ^ mix(stream + 0x632be59bd9b4e019ULL))) {}

  std::uint64_t next() noexcept { return mix(key_ + (++counter_) * 0x9e3779b97f4a7c15ULL); }

  /// Uniform on (0, 1); never returns 0 or 1.
  double uniform() noexcept { return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53; }

  /// Exp(rate) by inversion; +inf for rate 0.
  double exponential(double rate) noexcept {
    if (rate <= 0.0) return INFINITY;
    return -std::log(uniform()) / rate;
  }

  std::uint64_t draws() const noexcept { return counter_; }

 private:
  static std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace pscale
