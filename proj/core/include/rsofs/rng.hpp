#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace rsofs {

/// splitmix64 finalizer; used to derive independent stream seeds.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Seed for a sub-stream identified by `ids`, e.g. (seed, iteration, bee).
std::uint64_t derive_seed(std::uint64_t seed,
                          std::initializer_list<std::uint64_t> ids) noexcept;

// Wraps mt19937_64 with its own integer and real mappings so that streams are
// identical across standard libraries (std distributions are not).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [0, n). n must be positive.
  std::uint64_t uniform_index(std::uint64_t n);

  /// Uniform real in [0, 1) with 53 bits of resolution.
  double uniform01();

  bool bernoulli(double p) { return uniform01() < p; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace rsofs
