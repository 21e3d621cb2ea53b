// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

namespace evc {

/// splitmix64: tiny, platform-stable generator. Used everywhere determinism
/// across standard libraries matters (std distributions are not portable).
struct SplitMix64 {
  std::uint64_t state = 0;

  explicit SplitMix64(std::uint64_t seed = 0) : state(seed) {}

  std::uint64_t next() {
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// uniform in [0, 1), 53 random bits
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// uniform in [0, n); n >= 1
  std::uint64_t below(std::uint64_t n) { return next() % n; }
};

/// Fixed stream-splitting function: worker streams derived from (seed, index).
inline std::uint64_t split_stream_seed(std::uint64_t seed, std::uint64_t index) {
  SplitMix64 mixer(seed ^ (0xD1B54A32D192ED03ull * (index + 1)));
  return mixer.next();
}

}  // namespace evc
