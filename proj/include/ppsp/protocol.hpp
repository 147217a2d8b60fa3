#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <span>
#include <vector>

#include "ppsp/params.hpp"
#include "ppsp/rng.hpp"

namespace ppsp {

// Input vector; every element lies in [0, q).
using Vector = std::vector<std::uint64_t>;

// Throws Error(kParameterViolation) on a length mismatch or an element >= q.
void check_vector(const Vector& v, const ProtocolParams& params);

// Uniform vector of length n over [0, q).
Vector random_vector(const ProtocolParams& params, RandomSource& src);

// P0's random choices for one session. Exposed so tests can force them.
struct P0Secrets {
  mpz_class p;               // prime, exactly k1 bits
  mpz_class alpha;           // exactly k2 bits
  mpz_class s;               // in [2, p-1]
  std::vector<mpz_class> c;  // one additive mask per slot, each in [1, 2^k3)
};

// Draws p, alpha, s and c from dedicated sub-streams of `session`.
P0Secrets sample_p0_secrets(const ProtocolParams& params, const Rng& session);

struct P0State {
  ProtocolParams params;
  mpz_class p;
  mpz_class alpha;
  mpz_class s;
  mpz_class s_inv;
  std::vector<mpz_class> c;
  Vector a;
};

struct Round1Msg {
  mpz_class p;
  mpz_class alpha;
  std::vector<mpz_class> C;  // slot_count(params) values in [0, p)

  friend bool operator==(const Round1Msg&, const Round1Msg&) = default;
};

struct Round2Msg {
  mpz_class D;  // in [0, p)

  friend bool operator==(const Round2Msg&, const Round2Msg&) = default;
};

// What P0 holds between its two steps: its secrets and the message it sent.
struct P0Session {
  P0State state;
  Round1Msg sent;
};

// Everything P0 legitimately observes. Attacks take only this.
struct AdversaryView {
  P0State state;
  Round1Msg round1;
  Round2Msg round2;
  mpz_class E;  // s_inv * D mod p
};

// C_i = s (a_i alpha + c_i) mod p for a_i != 0, else s c_i mod p. TPDS14 adds
// two slots with a = 0. Does not require validate(params).all_satisfied.
P0Session p0_round1(const Vector& a, const ProtocolParams& params, const P0Secrets& secrets);
P0Session p0_round1(const Vector& a, const ProtocolParams& params, const Rng& session);

// P1's multiplicative masks r_i, one per slot: uniform in [1, 2^k4) for
// TPDS14, all ones for SPOC13.
std::vector<mpz_class> sample_p1_masks(const ProtocolParams& params, const Rng& session);

// D = sum_i D_i mod p with D_i = b_i alpha C_i for b_i != 0, else r_i C_i.
// The fix slots of TPDS14 carry b = 0.
Round2Msg p1_round2(const Vector& b, const Round1Msg& round1, const ProtocolParams& params,
                    std::span<const mpz_class> r);
Round2Msg p1_round2(const Vector& b, const Round1Msg& round1, const ProtocolParams& params,
                    const Rng& session);

struct SessionOutcome {
  mpz_class result;
  AdversaryView view;
};

// E = s_inv D mod p; result = (E - (E mod alpha^2)) / alpha^2. Always returns,
// even for parameters that break correctness.
SessionOutcome p0_finalize(P0Session session, const Round2Msg& round2);

// Exact sum a_i b_i.
mpz_class dot_oracle(const Vector& a, const Vector& b);

// p0_round1 -> p1_round2 -> p0_finalize, all randomness derived from `seed`.
SessionOutcome run_session(const Vector& a, const Vector& b, const ProtocolParams& params,
                           std::uint64_t seed);

}  // namespace ppsp
