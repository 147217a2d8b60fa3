#pragma once

#include <cstdint>
#include <random>

namespace ppsp {

// Source of uniformly distributed 64-bit words. Everything that consumes
// randomness takes this interface so tests can force specific draws.
class RandomSource {
 public:
  virtual ~RandomSource() = default;
  virtual std::uint64_t next_u64() = 0;
};

// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

// Child seed for sub-stream `stream` of `seed`. Distinct streams of one seed
// and equal streams of distinct seeds yield unrelated children.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

// Named sub-streams of a protocol session.
enum class Stream : std::uint64_t {
  kPrime = 1,
  kAlpha,
  kMultiplier,
  kAdditiveMasks,
  kMultiplicativeMasks,
  kInputA,
  kInputB,
  kPair,
  kOrder,
  kPrimality,
};

// Seedable, splittable deterministic generator (mt19937_64 underneath, whose
// output sequence is fixed by the standard).
class Rng final : public RandomSource {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(mix64(seed)) {}

  std::uint64_t next_u64() override { return engine_(); }

  std::uint64_t seed() const noexcept { return seed_; }

  Rng fork(std::uint64_t stream) const { return Rng(derive_seed(seed_, stream)); }
  Rng fork(Stream stream) const { return fork(static_cast<std::uint64_t>(stream)); }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

// Uniform in [0, bound); bound > 0. Rejection sampling, no modulo bias.
std::uint64_t uniform_below(RandomSource& src, std::uint64_t bound);

}  // namespace ppsp
