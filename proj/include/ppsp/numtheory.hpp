#pragma once

#include <gmpxx.h>

#include <cstddef>

#include "ppsp/rng.hpp"

namespace ppsp {

// Bit length of |x|; 0 for x == 0.
std::size_t bit_length(const mpz_class& x);

// Uniform in [0, 2^bits).
mpz_class random_bits(RandomSource& src, std::size_t bits);

// Uniform in [0, bound); bound > 0.
mpz_class random_below(RandomSource& src, const mpz_class& bound);

// Uniform in [lo, hi); lo < hi.
mpz_class random_range(RandomSource& src, const mpz_class& lo, const mpz_class& hi);

// Uniform with exact bit length `bits` (top bit set), i.e. in [2^(bits-1), 2^bits).
mpz_class random_exact_bits(RandomSource& src, std::size_t bits);

// Miller-Rabin rounds that bound the error for a *uniformly random* odd
// candidate of the given size by 2^-80 (Damgard-Landrock-Pomerance bounds as
// tabulated in the Handbook of Applied Cryptography, table 4.4). Falls back to
// 40 rounds, which bounds the worst case by 2^-80, for small sizes.
unsigned mr_rounds_for_random_candidate(std::size_t bits);

// Trial division by small primes, then `rounds` Miller-Rabin rounds with bases
// drawn from `src`. Exact for n below the square of the largest trial prime.
bool is_probable_prime(const mpz_class& n, RandomSource& src, unsigned rounds = 40);

// Probable prime with exact bit length `bits` (>= 8). Throws
// kPrimeSearchExhausted after a bounded number of candidate draws.
mpz_class gen_prime(std::size_t bits, RandomSource& src);

// y with (x * y) mod m == 1, for 1 <= x < m.
mpz_class mod_inv(const mpz_class& x, const mpz_class& m);

}  // namespace ppsp
