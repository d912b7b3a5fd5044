#pragma once

#include <cstdint>
#include <initializer_list>

namespace graphgen {

// 64-bit avalanche mixer (SplitMix64 finalizer).
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

// Folds (seed, phase, entity...) words into a single stream key. Every
// randomized stage derives one key per independent unit of work, so the
// numbers a unit draws do not depend on scheduling and sequential and
// parallel runs produce identical graphs.
inline std::uint64_t derive_key(std::initializer_list<std::uint64_t> parts) noexcept {
  std::uint64_t h = 0x2545f4914f6cdd1dULL;
  for (std::uint64_t p : parts) {
    h += 0x9e3779b97f4a7c15ULL;
    h = mix64(h ^ mix64(p + 0x9e3779b97f4a7c15ULL));
  }
  return h;
}

// Tags keeping per-phase substreams disjoint.
enum PhaseTag : std::uint64_t {
  kTagTargets = 1,
  kTagIntraBucket = 2,
  kTagCrossPass = 3,
  kTagGroupShuffle = 4,
  kTagGroupPairs = 5,
  kTagErdosRenyi = 6,
  kTagWattsStrogatz = 7,
  kTagTwoClass = 8,
};

// xoshiro256** stream seeded through SplitMix64. Self-contained so results
// are identical across standard libraries and platforms, unlike the
// unspecified std::*_distribution implementations.
class RngStream {
 public:
  static RngStream from_key(std::uint64_t key) noexcept {
    RngStream r;
    std::uint64_t sm = key;
    for (auto& word : r.s_) {
      sm += 0x9e3779b97f4a7c15ULL;
      word = mix64(sm);
    }
    return r;
  }

  static RngStream from_parts(std::initializer_list<std::uint64_t> parts) noexcept {
    return from_key(derive_key(parts));
  }

  std::uint64_t next_u64() noexcept {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Uniform in [0, 1).
  double next_double() noexcept { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform in (0, 1]. Used where a probability-p filter must never reject
  // when p == 0.
  double next_open_closed() noexcept { return 1.0 - next_double(); }

  // Unbiased uniform integer in [0, n); n must be >= 1.
  std::uint64_t next_below(std::uint64_t n) noexcept {
    unsigned __int128 m = static_cast<unsigned __int128>(next_u64()) * n;
    auto lo = static_cast<std::uint64_t>(m);
    if (lo < n) {
      const std::uint64_t threshold = (0 - n) % n;
      while (lo < threshold) {
        m = static_cast<unsigned __int128>(next_u64()) * n;
        lo = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t s_[4] = {1, 2, 3, 4};
};

}  // namespace graphgen
