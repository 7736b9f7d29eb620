#pragma once

#include <cstdint>
#include <random>

#include "hcx/rational.hpp"

namespace hcx {

/// Seeded generator with platform-independent integer draws (raw
/// mt19937_64 output reduced by modulo; standard distributions are
/// implementation-defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform integer in [lo, hi].
  long uniform(long lo, long hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<long>(engine_() % span);
  }

  bool coin() { return (engine_() & 1U) != 0; }

  /// Uniform rational num/den with num in [lo*den, hi*den].
  Rat rational(long lo, long hi, long den) { return Rat(uniform(lo * den, hi * den), den); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace hcx
