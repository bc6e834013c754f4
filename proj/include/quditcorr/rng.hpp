#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace quditcorr {

// Deterministic random stream: mt19937_64 core (output sequence fixed by the
// standard) with uniform/normal transforms spelled out here so results do not
// depend on libstdc++ distribution internals.
//
// Substreams are derived from (seed, tag, index) via splitmix64 over an
// FNV-1a hash of the tag, so parallel consumers can draw independently and
// order of consumption never changes the numbers. Stream version: 1.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  static Rng substream(std::uint64_t seed, std::string_view tag,
                       std::uint64_t index);

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1) with 53 random bits.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // index in [0, n)
  std::uint64_t uniform_index(std::uint64_t n);

  // Standard normal via Box-Muller (pairs cached).
  double normal();

  static constexpr int kStreamVersion = 1;

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace quditcorr
