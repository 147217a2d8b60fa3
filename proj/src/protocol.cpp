#include "ppsp/protocol.hpp"

#include <string>

#include "ppsp/error.hpp"
#include "ppsp/numtheory.hpp"

namespace ppsp {
namespace {

mpz_class pow2(std::size_t bits) {
  mpz_class x;
  mpz_ui_pow_ui(x.get_mpz_t(), 2, bits);
  return x;
}

mpz_class to_mpz(std::uint64_t v) {
  mpz_class x;
  mpz_import(x.get_mpz_t(), 1, -1, sizeof(v), 0, 0, &v);
  return x;
}

void check_round1(const Round1Msg& m, const ProtocolParams& params) {
  if (m.C.size() != slot_count(params)) {
    throw Error(ErrorCode::kParameterViolation,
                "round 1 carries " + std::to_string(m.C.size()) + " values, expected " +
                    std::to_string(slot_count(params)));
  }
  if (m.p < 2) throw Error(ErrorCode::kParameterViolation, "round 1 modulus must be >= 2");
  for (const auto& ci : m.C) {
    if (ci < 0 || ci >= m.p) throw Error(ErrorCode::kParameterViolation, "round 1 value outside [0, p)");
  }
}

}  // namespace

void check_vector(const Vector& v, const ProtocolParams& params) {
  if (v.size() != params.n) {
    throw Error(ErrorCode::kParameterViolation, "vector has length " + std::to_string(v.size()) +
                                                    ", expected n=" + std::to_string(params.n));
  }
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] >= params.q) {
      throw Error(ErrorCode::kParameterViolation, "element " + std::to_string(i) + " = " +
                                                      std::to_string(v[i]) + " is not below q=" +
                                                      std::to_string(params.q));
    }
  }
}

Vector random_vector(const ProtocolParams& params, RandomSource& src) {
  Vector v(params.n);
  for (auto& x : v) x = uniform_below(src, params.q);
  return v;
}

P0Secrets sample_p0_secrets(const ProtocolParams& params, const Rng& session) {
  check_structure(params);
  P0Secrets out;
  Rng prime_rng = session.fork(Stream::kPrime);
  out.p = gen_prime(params.k1, prime_rng);

  Rng alpha_rng = session.fork(Stream::kAlpha);
  out.alpha = random_exact_bits(alpha_rng, params.k2);

  Rng s_rng = session.fork(Stream::kMultiplier);
  out.s = random_range(s_rng, 2, out.p);

  Rng c_rng = session.fork(Stream::kAdditiveMasks);
  const mpz_class c_bound = pow2(params.k3);
  out.c.reserve(slot_count(params));
  for (std::size_t i = 0; i < slot_count(params); ++i) out.c.push_back(random_range(c_rng, 1, c_bound));
  return out;
}

P0Session p0_round1(const Vector& a, const ProtocolParams& params, const P0Secrets& secrets) {
  check_structure(params);
  check_vector(a, params);
  const std::size_t slots = slot_count(params);
  if (secrets.c.size() != slots) {
    throw Error(ErrorCode::kParameterViolation, "need one additive mask per slot");
  }
  if (secrets.s < 1 || secrets.s >= secrets.p) {
    throw Error(ErrorCode::kParameterViolation, "multiplier s must lie in [1, p)");
  }

  P0Session session;
  P0State& st = session.state;
  st.params = params;
  st.p = secrets.p;
  st.alpha = secrets.alpha;
  st.s = secrets.s;
  st.s_inv = mod_inv(secrets.s, secrets.p);
  st.c = secrets.c;
  st.a = a;

  Round1Msg& msg = session.sent;
  msg.p = st.p;
  msg.alpha = st.alpha;
  msg.C.resize(slots);
  mpz_class masked;
  for (std::size_t i = 0; i < slots; ++i) {
    const std::uint64_t ai = i < params.n ? a[i] : 0;
    if (ai != 0) {
      masked = to_mpz(ai) * st.alpha + st.c[i];
    } else {
      masked = st.c[i];
    }
    msg.C[i] = st.s * masked;
    mpz_mod(msg.C[i].get_mpz_t(), msg.C[i].get_mpz_t(), st.p.get_mpz_t());
  }
  return session;
}

P0Session p0_round1(const Vector& a, const ProtocolParams& params, const Rng& session) {
  return p0_round1(a, params, sample_p0_secrets(params, session));
}

std::vector<mpz_class> sample_p1_masks(const ProtocolParams& params, const Rng& session) {
  check_structure(params);
  std::vector<mpz_class> r;
  r.reserve(slot_count(params));
  if (params.variant == Variant::kSpoc13) {
    r.assign(slot_count(params), mpz_class(1));
    return r;
  }
  Rng r_rng = session.fork(Stream::kMultiplicativeMasks);
  const mpz_class bound = pow2(params.k4);
  for (std::size_t i = 0; i < slot_count(params); ++i) r.push_back(random_range(r_rng, 1, bound));
  return r;
}

Round2Msg p1_round2(const Vector& b, const Round1Msg& round1, const ProtocolParams& params,
                    std::span<const mpz_class> r) {
  check_structure(params);
  check_vector(b, params);
  check_round1(round1, params);
  const std::size_t slots = slot_count(params);
  if (r.size() != slots) throw Error(ErrorCode::kParameterViolation, "need one multiplicative mask per slot");

  mpz_class sum = 0;
  mpz_class term;
  for (std::size_t i = 0; i < slots; ++i) {
    const std::uint64_t bi = i < params.n ? b[i] : 0;
    if (bi != 0) {
      term = to_mpz(bi) * round1.alpha;
      term *= round1.C[i];
    } else {
      term = r[i] * round1.C[i];
    }
    sum += term;
  }
  Round2Msg out;
  mpz_mod(out.D.get_mpz_t(), sum.get_mpz_t(), round1.p.get_mpz_t());
  return out;
}

Round2Msg p1_round2(const Vector& b, const Round1Msg& round1, const ProtocolParams& params,
                    const Rng& session) {
  const auto r = sample_p1_masks(params, session);
  return p1_round2(b, round1, params, r);
}

SessionOutcome p0_finalize(P0Session session, const Round2Msg& round2) {
  SessionOutcome out;
  AdversaryView& view = out.view;
  view.state = std::move(session.state);
  view.round1 = std::move(session.sent);
  view.round2 = round2;

  const P0State& st = view.state;
  view.E = st.s_inv * round2.D;
  mpz_mod(view.E.get_mpz_t(), view.E.get_mpz_t(), st.p.get_mpz_t());

  const mpz_class alpha_sq = st.alpha * st.alpha;
  mpz_fdiv_q(out.result.get_mpz_t(), view.E.get_mpz_t(), alpha_sq.get_mpz_t());
  return out;
}

mpz_class dot_oracle(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::kParameterViolation, "dot_oracle: length mismatch " + std::to_string(a.size()) +
                                                    " vs " + std::to_string(b.size()));
  }
  mpz_class acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += to_mpz(a[i]) * to_mpz(b[i]);
  return acc;
}

SessionOutcome run_session(const Vector& a, const Vector& b, const ProtocolParams& params,
                           std::uint64_t seed) {
  const Rng session(seed);
  P0Session p0 = p0_round1(a, params, session);
  const Round2Msg round2 = p1_round2(b, p0.sent, params, session);
  return p0_finalize(std::move(p0), round2);
}

}  // namespace ppsp
