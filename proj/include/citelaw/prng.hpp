#pragma once

#include <cstdint>

namespace citelaw {

// SplitMix64 finalizer (Steele, Lea & Flood). Used to expand seeds.
//   z += 0x9E3779B97F4A7C15
//   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//   return z ^ (z >> 31)
[[nodiscard]] std::uint64_t splitmix64(std::uint64_t& state);

// xorshift64* (Vigna): shifts 12/25/27, multiplier 0x2545F4914F6CDD1D.
// The initial state is splitmix64(seed), replaced by a fixed odd constant in
// the (astronomically unlikely) case that it is zero. Identical seeds give
// identical streams on every platform.
class Prng {
 public:
  using result_type = std::uint64_t;

  explicit Prng(std::uint64_t seed);

  // Independent stream number `stream` under `seed`.
  [[nodiscard]] static Prng derived(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next();
  std::uint64_t operator()() { return next(); }
  static constexpr std::uint64_t min() { return 0; }
  static constexpr std::uint64_t max() { return ~std::uint64_t{0}; }

  // Uniform in [0, 1) on the 2^-53 grid.
  double uniform();
  // Uniform in (0, 1): grid midpoints, never 0 or 1.
  double uniform_open();
  // Uniform integer in [0, bound) by rejection; bound > 0.
  std::uint64_t below(std::uint64_t bound);

  [[nodiscard]] std::uint64_t state() const { return state_; }

 private:
  std::uint64_t state_;
};

}  // namespace citelaw
