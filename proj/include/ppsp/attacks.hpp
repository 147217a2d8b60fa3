#pragma once

#include <gmpxx.h>

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>

#include "ppsp/protocol.hpp"

namespace ppsp {

// P0's forward simulation of P1 in SPOC13 on candidate b:
// sum_{b_i = 0} C_i + sum_{b_i != 0} b_i alpha C_i mod p.
mpz_class predict_d_original(const P0State& state, const Round1Msg& round1, const Vector& candidate);

// kDirect:         sum_{a_i != 0} a_i b_i alpha + sum_{a_i = 0} b_i c_i
// kWithCrossTerm: additionally sum_{a_i != 0, b_i != 0} b_i c_i, the term the
//                 masking rule contributes to E / alpha for those slots.
enum class Prediction { kDirect, kWithCrossTerm };

// P0's prediction of floor(E / alpha) for candidate b, as a plain integer.
mpz_class predict_e_scaled(const P0State& state, const Vector& candidate,
                           Prediction model = Prediction::kDirect);

struct CandidateGuess {
  int index = 0;                                 // 0 or 1
  std::array<std::size_t, 2> distance_bits{};    // per candidate
};

// Picks the candidate whose prediction is nearest in bit length; ties go to
// candidate 0. SPOC13 compares D with predict_d_original, TPDS14 compares
// floor(E / alpha) with predict_e_scaled.
CandidateGuess distinguish_pair(const AdversaryView& view, const Vector& b0, const Vector& b1,
                                Prediction model = Prediction::kDirect);

// Bit length of the part of floor(E / alpha) that P0 cannot predict:
// max(log n + k3 + k4 - k2, log n + k4 + log q, log n + log q + k3).
long noise_bound_bits(const ProtocolParams& params);

inline constexpr int kDefaultSlackBits = 2;

// True iff bit_length(|floor(E / alpha) - predict_e_scaled|) <= noise bound + slack.
bool test_candidate(const AdversaryView& view, const Vector& candidate,
                    int slack_bits = kDefaultSlackBits, Prediction model = Prediction::kDirect);

struct OtTranscript {
  AdversaryView view;
  int sigma = 0;
  int output = 0;  // protocol result; -1 when it is neither 0 nor 1
};

// n = 2, q = 2, TPDS14, everything else taken from `base`.
ProtocolParams ot_params(const ProtocolParams& base = default_params());

// Runs the PPSP session with a = (1 - sigma, sigma) and b = (x0, x1).
OtTranscript ot_from_ppsp(int sigma, int x0, int x1, const ProtocolParams& params_ot, std::uint64_t seed);

struct OtBits {
  int x0 = 0;
  int x1 = 0;

  friend bool operator==(const OtBits&, const OtBits&) = default;
};

// Recovers both sender bits from P0's transcript. Among the four candidates,
// those inconsistent with the protocol output, or whose residual is negative
// or exceeds the noise bound, are dropped; the rest compete on distance.
// nullopt when no unique candidate remains.
std::optional<OtBits> break_ot(const OtTranscript& transcript, int slack_bits = kDefaultSlackBits);

}  // namespace ppsp
