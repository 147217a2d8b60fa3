#include "ppsp/attacks.hpp"

#include <algorithm>
#include <limits>
#include <vector>

#include "ppsp/error.hpp"
#include "ppsp/numtheory.hpp"

namespace ppsp {
namespace {

mpz_class to_mpz(std::uint64_t v) {
  mpz_class x;
  mpz_import(x.get_mpz_t(), 1, -1, sizeof(v), 0, 0, &v);
  return x;
}

void require_variant(const ProtocolParams& params, Variant v, const char* op) {
  if (params.variant != v) {
    throw Error(ErrorCode::kVariantMismatch,
                std::string(op) + " applies to " + to_string(v) + ", session ran " + to_string(params.variant));
  }
}

mpz_class scaled_e(const AdversaryView& view) {
  mpz_class t;
  mpz_fdiv_q(t.get_mpz_t(), view.E.get_mpz_t(), view.state.alpha.get_mpz_t());
  return t;
}

std::size_t distance_bits(const AdversaryView& view, const Vector& candidate, Prediction model) {
  if (view.state.params.variant == Variant::kSpoc13) {
    return bit_length(view.round2.D - predict_d_original(view.state, view.round1, candidate));
  }
  return bit_length(scaled_e(view) - predict_e_scaled(view.state, candidate, model));
}

}  // namespace

mpz_class predict_d_original(const P0State& state, const Round1Msg& round1, const Vector& candidate) {
  require_variant(state.params, Variant::kSpoc13, "predict_d_original");
  check_vector(candidate, state.params);
  if (round1.C.size() != candidate.size()) {
    throw Error(ErrorCode::kParameterViolation, "predict_d_original: round 1 length mismatch");
  }
  mpz_class sum = 0;
  for (std::size_t i = 0; i < candidate.size(); ++i) {
    if (candidate[i] == 0) {
      sum += round1.C[i];
    } else {
      sum += to_mpz(candidate[i]) * state.alpha * round1.C[i];
    }
  }
  mpz_mod(sum.get_mpz_t(), sum.get_mpz_t(), state.p.get_mpz_t());
  return sum;
}

mpz_class predict_e_scaled(const P0State& state, const Vector& candidate, Prediction model) {
  require_variant(state.params, Variant::kTpds14, "predict_e_scaled");
  check_vector(candidate, state.params);
  mpz_class alpha_part = 0;
  mpz_class mask_part = 0;
  for (std::size_t i = 0; i < candidate.size(); ++i) {
    if (candidate[i] == 0) continue;
    const mpz_class bi = to_mpz(candidate[i]);
    if (state.a[i] != 0) {
      alpha_part += to_mpz(state.a[i]) * bi;
      if (model == Prediction::kWithCrossTerm) mask_part += bi * state.c[i];
    } else {
      mask_part += bi * state.c[i];
    }
  }
  return alpha_part * state.alpha + mask_part;
}

CandidateGuess distinguish_pair(const AdversaryView& view, const Vector& b0, const Vector& b1,
                                Prediction model) {
  CandidateGuess g;
  g.distance_bits[0] = distance_bits(view, b0, model);
  g.distance_bits[1] = distance_bits(view, b1, model);
  g.index = g.distance_bits[1] < g.distance_bits[0] ? 1 : 0;
  return g;
}

long noise_bound_bits(const ProtocolParams& params) {
  check_structure(params);
  const long log_n = ceil_log2(params.n);
  const long log_q = ceil_log2(params.q);
  const long k2 = params.k2, k3 = params.k3, k4 = params.k4;
  return std::max({log_n + k3 + k4 - k2, log_n + k4 + log_q, log_n + log_q + k3});
}

bool test_candidate(const AdversaryView& view, const Vector& candidate, int slack_bits, Prediction model) {
  require_variant(view.state.params, Variant::kTpds14, "test_candidate");
  const mpz_class residual = scaled_e(view) - predict_e_scaled(view.state, candidate, model);
  return static_cast<long>(bit_length(residual)) <= noise_bound_bits(view.state.params) + slack_bits;
}

ProtocolParams ot_params(const ProtocolParams& base) {
  ProtocolParams p = base;
  p.n = 2;
  p.q = 2;
  p.variant = Variant::kTpds14;
  return p;
}

OtTranscript ot_from_ppsp(int sigma, int x0, int x1, const ProtocolParams& params_ot, std::uint64_t seed) {
  auto is_bit = [](int v) { return v == 0 || v == 1; };
  if (!is_bit(sigma) || !is_bit(x0) || !is_bit(x1)) {
    throw Error(ErrorCode::kInvalidArgument, "ot_from_ppsp: sigma, x0 and x1 must be bits");
  }
  if (params_ot.n != 2 || params_ot.q != 2 || params_ot.variant != Variant::kTpds14) {
    throw Error(ErrorCode::kInvalidArgument, "ot_from_ppsp: parameters must have n=2, q=2, variant tpds14");
  }
  const Vector a = {static_cast<std::uint64_t>(1 - sigma), static_cast<std::uint64_t>(sigma)};
  const Vector b = {static_cast<std::uint64_t>(x0), static_cast<std::uint64_t>(x1)};
  SessionOutcome outcome = run_session(a, b, params_ot, seed);

  OtTranscript t;
  t.sigma = sigma;
  t.output = outcome.result == 0 ? 0 : outcome.result == 1 ? 1 : -1;
  t.view = std::move(outcome.view);
  return t;
}

std::optional<OtBits> break_ot(const OtTranscript& transcript, int slack_bits) {
  const AdversaryView& view = transcript.view;
  require_variant(view.state.params, Variant::kTpds14, "break_ot");
  if (view.state.params.n != 2) throw Error(ErrorCode::kInvalidArgument, "break_ot: expected an n=2 transcript");

  const mpz_class t = scaled_e(view);
  const long bound = noise_bound_bits(view.state.params) + slack_bits;

  struct Scored {
    OtBits bits;
    std::size_t distance;
  };
  std::vector<Scored> admissible;
  for (int x0 = 0; x0 <= 1; ++x0) {
    for (int x1 = 0; x1 <= 1; ++x1) {
      const int chosen = transcript.sigma == 0 ? x0 : x1;
      if (transcript.output >= 0 && chosen != transcript.output) continue;
      const Vector candidate = {static_cast<std::uint64_t>(x0), static_cast<std::uint64_t>(x1)};
      // Every term P0 cannot predict is non-negative, so the true candidate
      // never overshoots floor(E / alpha).
      const mpz_class residual = t - predict_e_scaled(view.state, candidate, Prediction::kWithCrossTerm);
      if (sgn(residual) < 0 || static_cast<long>(bit_length(residual)) > bound) continue;
      admissible.push_back({OtBits{x0, x1}, bit_length(residual)});
    }
  }
  if (admissible.empty()) return std::nullopt;
  const auto best = std::min_element(admissible.begin(), admissible.end(),
                                     [](const Scored& l, const Scored& r) { return l.distance < r.distance; });
  const auto ties = std::count_if(admissible.begin(), admissible.end(),
                                  [&](const Scored& s) { return s.distance == best->distance; });
  if (ties != 1) return std::nullopt;
  return best->bits;
}

}  // namespace ppsp
