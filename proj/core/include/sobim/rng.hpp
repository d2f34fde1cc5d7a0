#pragma once

#include <cstdint>
#include <span>

namespace sobim {

// All randomness in the library flows through SplitMix64 streams whose seeds
// are derived deterministically from a master seed, a purpose tag, and the
// content of the inputs (e.g. the seed set). This keeps every result a pure
// function of (inputs, master seed) regardless of thread count, and keeps
// unrelated consumers of the same master seed statistically decorrelated.

inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

/// SplitMix64 finalizer: full-avalanche 64-bit mix.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z ^= z >> 30;
  z *= 0xbf58476d1ce4e5b9ULL;
  z ^= z >> 27;
  z *= 0x94d049bb133111ebULL;
  z ^= z >> 31;
  return z;
}

/// Derives a child seed from a base seed and a tag (counter, purpose
/// constant, content hash). derive_seed(b, t1) and derive_seed(b, t2) are
/// independent streams for t1 != t2.
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t tag) noexcept {
  return mix64(base + kGolden * (tag + 1));
}

/// Canonical content hash of a sorted id sequence. Two equal node sets hash
/// equally regardless of how they were produced.
inline std::uint64_t hash_ids(std::span<const std::int32_t> sorted_ids) noexcept {
  std::uint64_t h = 0x8f1bbcdcbfa53e0bULL;
  for (std::int32_t id : sorted_ids) {
    h = mix64(h ^ (static_cast<std::uint64_t>(static_cast<std::uint32_t>(id)) + kGolden));
  }
  return h;
}

/// Purpose tags separating derived seed streams.
namespace seed_tag {
inline constexpr std::uint64_t kErStructure = 0x45521;  // ER edge sampling
inline constexpr std::uint64_t kWsStructure = 0x57531;  // WS rewiring attempts
inline constexpr std::uint64_t kWeights = 0x57411;      // edge weight draws
inline constexpr std::uint64_t kSpread = 0x53701;       // spread estimation rounds
inline constexpr std::uint64_t kGreedy = 0x47201;       // greedy marginal evaluation
inline constexpr std::uint64_t kEvaluate = 0x45601;     // final benchmark evaluation
}  // namespace seed_tag

/// Deterministic, platform-independent PRNG (SplitMix64).
class SplitMix64 {
 public:
  explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  constexpr std::uint64_t next() noexcept {
    state_ += kGolden;
    return mix64(state_);
  }

  /// Uniform double in [0, 1).
  double next_double() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) noexcept { return lo + next_double() * (hi - lo); }

  /// Bernoulli draw with success probability p.
  bool bernoulli(double p) noexcept { return next_double() < p; }

  /// Uniform integer in [0, bound); bound > 0.
  std::uint64_t next_below(std::uint64_t bound) noexcept {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next()) * bound) >> 64);
  }

 private:
  std::uint64_t state_;
};

}  // namespace sobim
