#include "ppsp/rng.hpp"

#include <limits>

#include "ppsp/error.hpp"

namespace ppsp {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid argument";
    case ErrorCode::kInvalidParams: return "invalid parameters";
    case ErrorCode::kParameterViolation: return "parameter violation";
    case ErrorCode::kFraming: return "framing error";
    case ErrorCode::kPrimeSearchExhausted: return "prime search exhausted";
    case ErrorCode::kNotInvertible: return "not invertible";
    case ErrorCode::kVariantMismatch: return "variant mismatch";
    case ErrorCode::kIo: return "i/o error";
  }
  return "unknown error";
}

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  return mix64(mix64(seed) ^ mix64(stream + 0x632be59bd9b4e019ULL));
}

std::uint64_t uniform_below(RandomSource& src, std::uint64_t bound) {
  if (bound == 0) throw Error(ErrorCode::kInvalidArgument, "uniform_below: bound must be positive");
  // Largest multiple of bound representable; draws at or above it are rejected.
  const std::uint64_t limit =
      std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
  for (;;) {
    const std::uint64_t x = src.next_u64();
    if (x < limit) return x % bound;
  }
}

}  // namespace ppsp
