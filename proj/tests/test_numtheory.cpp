#include <gmpxx.h>

#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "ppsp/error.hpp"
#include "ppsp/numtheory.hpp"
#include "ppsp/rng.hpp"

namespace {

bool trial_division_prime(unsigned long n) {
  if (n < 2) return false;
  for (unsigned long d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

// Always returns the same word; used to force candidate streams.
class ConstantSource : public ppsp::RandomSource {
 public:
  explicit ConstantSource(std::uint64_t w) : w_(w) {}
  std::uint64_t next_u64() override { return w_; }

 private:
  std::uint64_t w_;
};

}  // namespace

TEST_CASE("bit_length") {
  CHECK(ppsp::bit_length(0) == 0);
  CHECK(ppsp::bit_length(1) == 1);
  CHECK(ppsp::bit_length(255) == 8);
  CHECK(ppsp::bit_length(256) == 9);
  CHECK(ppsp::bit_length(-256) == 9);
}

TEST_CASE("random sampling stays in range and covers small ranges") {
  ppsp::Rng rng(7);
  std::set<unsigned long> seen;
  for (int i = 0; i < 2000; ++i) {
    const mpz_class x = ppsp::random_range(rng, 3, 13);
    CHECK(x >= 3);
    CHECK(x < 13);
    seen.insert(x.get_ui());
  }
  CHECK(seen.size() == 10);
  for (int i = 0; i < 200; ++i) {
    CHECK(ppsp::bit_length(ppsp::random_exact_bits(rng, 200)) == 200);
    CHECK(ppsp::bit_length(ppsp::random_bits(rng, 70)) <= 70);
    CHECK(ppsp::uniform_below(rng, 5) < 5);
  }
  CHECK_THROWS_AS(ppsp::random_range(rng, 5, 5), ppsp::Error);
}

TEST_CASE("rng streams are reproducible and separated") {
  const ppsp::Rng a(42), b(42);
  ppsp::Rng a1 = a.fork(ppsp::Stream::kPrime), b1 = b.fork(ppsp::Stream::kPrime);
  ppsp::Rng a2 = a.fork(ppsp::Stream::kAlpha);
  const auto x = a1.next_u64();
  CHECK(x == b1.next_u64());
  CHECK(x != a2.next_u64());
  CHECK(ppsp::derive_seed(1, 2) != ppsp::derive_seed(2, 1));
}

TEST_CASE("is_probable_prime agrees with trial division below 20000") {
  ppsp::Rng rng(1);
  for (unsigned long n = 0; n < 20000; ++n) {
    CHECK_MESSAGE(ppsp::is_probable_prime(n, rng) == trial_division_prime(n), "n=" << n);
  }
}

TEST_CASE("is_probable_prime on structured inputs") {
  ppsp::Rng rng(2);
  for (unsigned long carmichael : {561UL, 1105UL, 1729UL, 41041UL, 825265UL, 321197185UL}) {
    CHECK_FALSE(ppsp::is_probable_prime(carmichael, rng));
  }
  mpz_class m127;
  mpz_ui_pow_ui(m127.get_mpz_t(), 2, 127);
  m127 -= 1;
  CHECK(ppsp::is_probable_prime(m127, rng));
  mpz_class f7;  // 2^128 + 1 = 59649589127497217 * 5704689200685129054721
  mpz_ui_pow_ui(f7.get_mpz_t(), 2, 128);
  f7 += 1;
  CHECK_FALSE(ppsp::is_probable_prime(f7, rng));
  CHECK_FALSE(ppsp::is_probable_prime(m127 * m127, rng));
}

TEST_CASE("gen_prime: 8-bit primes") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    ppsp::Rng rng(seed);
    const mpz_class p = ppsp::gen_prime(8, rng);
    CHECK(p >= 131);
    CHECK(p <= 251);
    CHECK(trial_division_prime(p.get_ui()));
  }
}

TEST_CASE("gen_prime: 512-bit prime is reproducible and passes an independent test") {
  ppsp::Rng r1(2024), r2(2024);
  const mpz_class p = ppsp::gen_prime(512, r1);
  CHECK(p == ppsp::gen_prime(512, r2));
  CHECK(ppsp::bit_length(p) == 512);
  CHECK(mpz_probab_prime_p(p.get_mpz_t(), 50) > 0);
  CHECK(p.get_str(16) == std::string(
                                 "e1b3f363c27fe63109733b7b81fe4277be1580ee7c2f548c3f8ae043db7cc005"
                                 "75069ddcfa5323b30146d3738cd73cb1d0fb5dd203c70c76edbe34c2d640bbdb"));
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    ppsp::Rng rng(seed);
    const mpz_class q = ppsp::gen_prime(256 + seed, rng);
    CHECK(ppsp::bit_length(q) == 256 + seed);
    CHECK(mpz_probab_prime_p(q.get_mpz_t(), 50) > 0);
  }
}

TEST_CASE("gen_prime: failure paths") {
  ppsp::Rng rng(3);
  try {
    ppsp::gen_prime(7, rng);
    FAIL("expected argument error");
  } catch (const ppsp::Error& e) {
    CHECK(e.code() == ppsp::ErrorCode::kInvalidArgument);
  }
  // All-ones words pin every candidate to 255 = 3 * 5 * 17.
  ConstantSource stuck(~std::uint64_t{0});
  try {
    ppsp::gen_prime(8, stuck);
    FAIL("expected bounded-retry error");
  } catch (const ppsp::Error& e) {
    CHECK(e.code() == ppsp::ErrorCode::kPrimeSearchExhausted);
  }
}

TEST_CASE("mod_inv") {
  CHECK(ppsp::mod_inv(3, 7) == 5);
  ppsp::Rng rng(9);
  const mpz_class p = ppsp::gen_prime(512, rng);
  CHECK(ppsp::mod_inv(1, p) == 1);
  for (int i = 0; i < 100; ++i) {
    const mpz_class x = ppsp::random_range(rng, 1, p);
    const mpz_class y = ppsp::mod_inv(x, p);
    mpz_class prod = x * y;
    mpz_mod(prod.get_mpz_t(), prod.get_mpz_t(), p.get_mpz_t());
    CHECK(prod == 1);
  }
  CHECK_THROWS_AS(ppsp::mod_inv(0, 7), ppsp::Error);
  CHECK_THROWS_AS(ppsp::mod_inv(7, 7), ppsp::Error);
  try {
    ppsp::mod_inv(4, 8);
    FAIL("expected non-invertible");
  } catch (const ppsp::Error& e) {
    CHECK(e.code() == ppsp::ErrorCode::kNotInvertible);
  }
}
