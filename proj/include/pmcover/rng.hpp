#pragma once

#include <cstdint>

namespace pmc {

// SplitMix64 (Steele, Lea, Flood / Vigna). Counter-based: the state is a
// Weyl sequence with increment GAMMA and the output is a bijective mix of
// the counter, so streams can be derived by reseeding deterministically.
//
// Stream rule, relied on for reproducibility across platforms and thread
// counts: stream k of seed s starts from mix64(s ^ ((k + 1) * GAMMA)).
class SplitMix64 {
 public:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;

  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  SplitMix64 stream(std::uint64_t k) const {
    return SplitMix64(mix64(state_ ^ ((k + 1) * kGamma)));
  }

  std::uint64_t next() {
    state_ += kGamma;
    return mix64(state_);
  }

  // Uniform on [0,1) with 53 random bits.
  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform on (0,1]. A zero draw would select every remaining cover,
  // including those with x* = 0.
  double next_theta() { return 1.0 - next_unit(); }

  static std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

}  // namespace pmc
