#include "ppsp/numtheory.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "ppsp/error.hpp"

namespace ppsp {
namespace {

constexpr std::array<unsigned, 54> kSmallPrimes = {
    2,   3,   5,   7,   11,  13,  17,  19,  23,  29,  31,  37,  41,  43,
    47,  53,  59,  61,  67,  71,  73,  79,  83,  89,  97,  101, 103, 107,
    109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179, 181,
    191, 193, 197, 199, 211, 223, 227, 229, 233, 239, 241, 251};

// Odd primes below 3000, grouped so each group's product fits in 64 bits.
// A candidate is reduced once per group, then by each prime in the group.
struct SieveGroup {
  std::uint64_t product;
  std::vector<std::uint32_t> primes;
};

const std::vector<SieveGroup>& sieve_groups() {
  static const std::vector<SieveGroup> groups = [] {
    constexpr std::uint32_t kLimit = 3000;
    std::vector<bool> composite(kLimit, false);
    std::vector<SieveGroup> out;
    SieveGroup current{1, {}};
    for (std::uint32_t i = 3; i < kLimit; i += 2) {
      if (composite[i]) continue;
      for (std::uint32_t j = i * i; j < kLimit; j += 2 * i) composite[j] = true;
      if (current.product > UINT64_MAX / i) {
        out.push_back(current);
        current = SieveGroup{1, {}};
      }
      current.product *= i;
      current.primes.push_back(i);
    }
    if (!current.primes.empty()) out.push_back(current);
    return out;
  }();
  return groups;
}

// True when an odd candidate larger than every sieve prime has a small factor.
bool has_small_factor(const mpz_class& candidate) {
  for (const auto& g : sieve_groups()) {
    const std::uint64_t r = mpz_fdiv_ui(candidate.get_mpz_t(), g.product);
    for (std::uint32_t p : g.primes) {
      if (r % p == 0) return true;
    }
  }
  return false;
}

// One Miller-Rabin round for odd n > 3 with n - 1 = d * 2^s.
bool mr_round(const mpz_class& n, const mpz_class& n_minus_1, const mpz_class& d,
              unsigned long s, const mpz_class& base) {
  mpz_class x;
  mpz_powm(x.get_mpz_t(), base.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  if (x == 1 || x == n_minus_1) return true;
  for (unsigned long i = 1; i < s; ++i) {
    mpz_powm_ui(x.get_mpz_t(), x.get_mpz_t(), 2, n.get_mpz_t());
    if (x == n_minus_1) return true;
    if (x == 1) return false;
  }
  return false;
}

}  // namespace

std::size_t bit_length(const mpz_class& x) {
  if (sgn(x) == 0) return 0;
  return mpz_sizeinbase(x.get_mpz_t(), 2);
}

mpz_class random_bits(RandomSource& src, std::size_t bits) {
  if (bits == 0) return 0;
  const std::size_t words = (bits + 63) / 64;
  std::vector<std::uint64_t> buf(words);
  for (auto& w : buf) w = src.next_u64();
  if (const std::size_t extra = words * 64 - bits; extra != 0) buf.back() >>= extra;
  mpz_class out;
  // Least significant word first, native endianness within a word.
  mpz_import(out.get_mpz_t(), words, -1, sizeof(std::uint64_t), 0, 0, buf.data());
  return out;
}

mpz_class random_below(RandomSource& src, const mpz_class& bound) {
  if (sgn(bound) <= 0) throw Error(ErrorCode::kInvalidArgument, "random_below: bound must be positive");
  const std::size_t bits = bit_length(bound - 1);
  for (;;) {
    mpz_class x = random_bits(src, bits);
    if (x < bound) return x;
  }
}

mpz_class random_range(RandomSource& src, const mpz_class& lo, const mpz_class& hi) {
  if (lo >= hi) throw Error(ErrorCode::kInvalidArgument, "random_range: empty range");
  return lo + random_below(src, hi - lo);
}

mpz_class random_exact_bits(RandomSource& src, std::size_t bits) {
  if (bits == 0) throw Error(ErrorCode::kInvalidArgument, "random_exact_bits: bits must be positive");
  mpz_class x = random_bits(src, bits - 1);
  mpz_setbit(x.get_mpz_t(), bits - 1);
  return x;
}

unsigned mr_rounds_for_random_candidate(std::size_t bits) {
  if (bits >= 600) return 4;
  if (bits >= 500) return 5;
  if (bits >= 400) return 6;
  if (bits >= 300) return 9;
  if (bits >= 250) return 12;
  return 40;
}

bool is_probable_prime(const mpz_class& n, RandomSource& src, unsigned rounds) {
  if (n < 2) return false;
  for (unsigned p : kSmallPrimes) {
    if (n == p) return true;
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
  }
  constexpr unsigned long kLargestTrial = 251;
  if (n < kLargestTrial * kLargestTrial) return true;

  const mpz_class n_minus_1 = n - 1;
  mpz_class d = n_minus_1;
  const unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
  mpz_fdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);

  const mpz_class base_span = n - 3;  // bases in [2, n-2]
  for (unsigned i = 0; i < rounds; ++i) {
    const mpz_class base = 2 + random_below(src, base_span);
    if (!mr_round(n, n_minus_1, d, s, base)) return false;
  }
  return true;
}

mpz_class gen_prime(std::size_t bits, RandomSource& src) {
  if (bits < 8) {
    throw Error(ErrorCode::kInvalidArgument,
                "gen_prime: bit length must be at least 8, got " + std::to_string(bits));
  }
  // Expected draws are about ln(2^bits)/2; the cap only trips on a broken source.
  const std::size_t max_draws = 64 * bits;
  const unsigned rounds = mr_rounds_for_random_candidate(bits);
  for (std::size_t draw = 0; draw < max_draws; ++draw) {
    mpz_class candidate = random_exact_bits(src, bits);
    mpz_setbit(candidate.get_mpz_t(), 0);
    if (bits > 12 && has_small_factor(candidate)) continue;
    if (is_probable_prime(candidate, src, rounds)) return candidate;
  }
  throw Error(ErrorCode::kPrimeSearchExhausted,
              "gen_prime: no " + std::to_string(bits) + "-bit prime after " +
                  std::to_string(max_draws) + " candidates");
}

mpz_class mod_inv(const mpz_class& x, const mpz_class& m) {
  if (x < 1 || x >= m) throw Error(ErrorCode::kInvalidArgument, "mod_inv: operand out of range [1, m)");
  mpz_class y;
  if (mpz_invert(y.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t()) == 0) {
    throw Error(ErrorCode::kNotInvertible, "mod_inv: gcd(x, m) != 1");
  }
  return y;
}

}  // namespace ppsp
