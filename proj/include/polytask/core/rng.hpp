#pragma once

// Portable deterministic randomness.
//
// Every instance owns a private stream derived from (dataset_seed, index, task_id):
//
//   key   = FNV-1a-64( le64(dataset_seed) || le64(index) || utf8(task_id) )
//   state = four successive SplitMix64 outputs seeded with key
//   draws = xoshiro256** over state
//
// Bounded integers use rejection sampling on the raw 64-bit output (threshold
// (2^64 - n) mod n), so the draw sequence is identical on every platform and
// standard library. Nothing here touches <random> distributions, whose outputs
// are implementation-defined.

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <utility>

namespace polytask {

inline constexpr std::uint64_t kFnvOffsetBasis = 0xcbf29ce484222325ULL;
inline constexpr std::uint64_t kFnvPrime = 0x100000001b3ULL;

/// Incremental FNV-1a 64-bit hash. Stable across platforms; used for seed
/// derivation and data-file content hashes.
class Fnv1a64 {
 public:
  constexpr Fnv1a64& update(std::string_view bytes) {
    for (char c : bytes) {
      hash_ ^= static_cast<std::uint8_t>(c);
      hash_ *= kFnvPrime;
    }
    return *this;
  }

  constexpr Fnv1a64& update_u64_le(std::uint64_t value) {
    for (int i = 0; i < 8; ++i) {
      hash_ ^= static_cast<std::uint8_t>(value >> (8 * i));
      hash_ *= kFnvPrime;
    }
    return *this;
  }

  [[nodiscard]] constexpr std::uint64_t digest() const { return hash_; }

 private:
  std::uint64_t hash_ = kFnvOffsetBasis;
};

constexpr std::uint64_t splitmix64_next(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// xoshiro256** generator with a draw counter.
class Rng {
 public:
  using State = std::array<std::uint64_t, 4>;

  explicit constexpr Rng(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& word : state_) word = splitmix64_next(sm);
  }

  constexpr std::uint64_t next() {
    ++draws_;
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  /// Uniform integer in [0, bound). bound must be positive.
  constexpr std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t x = next();
      if (x >= threshold) return x % bound;
    }
  }

  /// Uniform integer in the closed range [lo, hi].
  constexpr std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
    if (span == 0) return static_cast<std::int64_t>(next());
    return static_cast<std::int64_t>(static_cast<std::uint64_t>(lo) + below(span));
  }

  /// True with probability numerator / denominator.
  constexpr bool chance(std::uint64_t numerator, std::uint64_t denominator) {
    return below(denominator) < numerator;
  }

  template <typename T>
  constexpr void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(below(i));
      std::swap(items[i - 1], items[j]);
    }
  }

  template <typename T>
  constexpr const T& pick(std::span<const T> items) {
    return items[static_cast<std::size_t>(below(items.size()))];
  }

  [[nodiscard]] constexpr const State& state() const { return state_; }
  [[nodiscard]] constexpr std::uint64_t draws() const { return draws_; }

  friend constexpr bool operator==(const Rng&, const Rng&) = default;

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

  State state_{};
  std::uint64_t draws_ = 0;
};

constexpr std::uint64_t instance_seed(std::uint64_t dataset_seed, std::uint64_t index,
                                      std::string_view task_id) {
  return Fnv1a64{}.update_u64_le(dataset_seed).update_u64_le(index).update(task_id).digest();
}

/// The private stream for one problem instance. Language never enters the key.
constexpr Rng derive_rng(std::uint64_t dataset_seed, std::uint64_t index, std::string_view task_id) {
  return Rng(instance_seed(dataset_seed, index, task_id));
}

}  // namespace polytask
