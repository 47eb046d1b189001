#pragma once

#include <cstdint>
#include <random>

#include "mor/field.hpp"

namespace mor {

/// Deterministic random stream: identical seeds reproduce identical keygen
/// and encryption transcripts. Uniform draws use rejection sampling on raw
/// mt19937_64 words, so results do not depend on the standard library's
/// distribution implementations.
class DeterministicRng {
public:
  explicit DeterministicRng(u64 seed) : seed_(seed), gen_(seed) {}

  u64 seed() const { return seed_; }

  u64 next() { return gen_(); }

  /// Uniform in [0, bound), bound > 0.
  u64 below(u64 bound) {
    if (bound == 0) throw Error("empty sampling range");
    if ((bound & (bound - 1)) == 0) return gen_() & (bound - 1);
    u64 limit = UINT64_MAX - UINT64_MAX % bound;
    u64 v;
    do {
      v = gen_();
    } while (v >= limit);
    return v % bound;
  }

  /// Uniform in [0, bound) for 128-bit bounds.
  u128 below(u128 bound) {
    if (bound == 0) throw Error("empty sampling range");
    if (bound >> 64 == 0) return below(static_cast<u64>(bound));
    constexpr u128 max = ~static_cast<u128>(0);
    u128 limit = max - max % bound;
    u128 v;
    do {
      v = (static_cast<u128>(gen_()) << 64) | gen_();
    } while (v >= limit && limit != 0);
    return v % bound;
  }

  /// Uniform element of F_q.
  FieldElement element(const Field& f) {
    std::vector<u64> coeffs(f.gamma());
    for (u64& c : coeffs) c = below(f.p());
    return FieldElement{std::move(coeffs)};
  }

  FieldElement nonzero_element(const Field& f) {
    FieldElement e = element(f);
    while (f.is_zero(e)) e = element(f);
    return e;
  }

  /// Independent stream for a derived task (bench rows, parallel trials).
  DeterministicRng derive(u64 index) const {
    // splitmix64 step over (seed, index)
    u64 z = seed_ + 0x9e3779b97f4a7c15ull * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return DeterministicRng(z ^ (z >> 31));
  }

private:
  u64 seed_;
  std::mt19937_64 gen_;
};

} // namespace mor
