#include "ppsp/ppsp.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <string>
#include <vector>

#include "ppsp/attacks.hpp"
#include "ppsp/error.hpp"
#include "ppsp/harness.hpp"
#include "ppsp/params.hpp"
#include "ppsp/protocol.hpp"
#include "ppsp/wire.hpp"

struct ppsp_p0 {
  ppsp::ProtocolParams params;
  ppsp::P0Session session;
};

struct ppsp_outcome {
  ppsp::SessionOutcome outcome;
};

struct ppsp_sweep {
  std::vector<ppsp::SweepRow> rows;
};

namespace {

thread_local std::string g_last_error;

ppsp_status to_status(ppsp::ErrorCode code) {
  using ppsp::ErrorCode;
  switch (code) {
    case ErrorCode::kInvalidArgument: return PPSP_ERR_INVALID_ARGUMENT;
    case ErrorCode::kInvalidParams: return PPSP_ERR_INVALID_PARAMS;
    case ErrorCode::kParameterViolation: return PPSP_ERR_PARAMETER_VIOLATION;
    case ErrorCode::kFraming: return PPSP_ERR_FRAMING;
    case ErrorCode::kPrimeSearchExhausted: return PPSP_ERR_PRIME_SEARCH;
    case ErrorCode::kNotInvertible: return PPSP_ERR_NOT_INVERTIBLE;
    case ErrorCode::kVariantMismatch: return PPSP_ERR_VARIANT_MISMATCH;
    case ErrorCode::kIo: return PPSP_ERR_INTERNAL;
  }
  return PPSP_ERR_INTERNAL;
}

ppsp_status fail(ppsp_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

// Runs fn, translating exceptions into a status and the thread's last error.
template <typename Fn>
ppsp_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const ppsp::Error& e) {
    return fail(to_status(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(PPSP_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(PPSP_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(PPSP_ERR_INTERNAL, "unknown exception");
  }
}

#define PPSP_REQUIRE(cond)                                                         \
  do {                                                                             \
    if (!(cond)) return fail(PPSP_ERR_INVALID_ARGUMENT, "null or invalid argument: " #cond); \
  } while (0)

ppsp::ProtocolParams from_c(const ppsp_params& p) {
  ppsp::ProtocolParams out;
  out.n = p.n;
  out.q = p.q;
  out.k1 = p.k1;
  out.k2 = p.k2;
  out.k3 = p.k3;
  out.k4 = p.k4;
  switch (p.variant) {
    case PPSP_SPOC13: out.variant = ppsp::Variant::kSpoc13; break;
    case PPSP_TPDS14: out.variant = ppsp::Variant::kTpds14; break;
    default: throw ppsp::Error(ppsp::ErrorCode::kInvalidArgument, "unknown variant");
  }
  return out;
}

ppsp::TrialConfig from_c(const ppsp_trial_config& c) {
  ppsp::TrialConfig cfg;
  cfg.base_params = from_c(c.params);
  cfg.trials = c.trials;
  cfg.seed = c.seed;
  cfg.a_mode = c.a_mode == PPSP_INPUT_ZERO ? ppsp::InputMode::kZero : ppsp::InputMode::kRandom;
  cfg.b_mode = c.b_mode == PPSP_INPUT_ZERO ? ppsp::InputMode::kZero : ppsp::InputMode::kRandom;
  cfg.pair_mode = c.pair_mode == PPSP_PAIR_NEIGHBOR ? ppsp::PairMode::kNeighborPair : ppsp::PairMode::kRandomPair;
  cfg.threads = c.threads;
  return cfg;
}

ppsp::Vector to_vector(const uint64_t* data, size_t len) { return ppsp::Vector(data, data + len); }

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void fill_buffer(ppsp_buffer* out, const std::vector<std::uint8_t>& bytes) {
  out->data = static_cast<uint8_t*>(std::malloc(bytes.empty() ? 1 : bytes.size()));
  if (out->data == nullptr) throw std::bad_alloc();
  if (!bytes.empty()) std::memcpy(out->data, bytes.data(), bytes.size());
  out->size = bytes.size();
}

}  // namespace

extern "C" {

const char* ppsp_last_error(void) { return g_last_error.c_str(); }

const char* ppsp_status_name(ppsp_status status) {
  switch (status) {
    case PPSP_OK: return "ok";
    case PPSP_ERR_INVALID_ARGUMENT: return "invalid argument";
    case PPSP_ERR_INVALID_PARAMS: return "invalid parameters";
    case PPSP_ERR_PARAMETER_VIOLATION: return "parameter violation";
    case PPSP_ERR_FRAMING: return "framing error";
    case PPSP_ERR_PRIME_SEARCH: return "prime search exhausted";
    case PPSP_ERR_NOT_INVERTIBLE: return "not invertible";
    case PPSP_ERR_VARIANT_MISMATCH: return "variant mismatch";
    case PPSP_ERR_AMBIGUOUS: return "ambiguous";
    case PPSP_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void ppsp_string_free(char* s) { std::free(s); }

void ppsp_buffer_free(ppsp_buffer* buffer) {
  if (buffer == nullptr) return;
  std::free(buffer->data);
  buffer->data = nullptr;
  buffer->size = 0;
}

void ppsp_params_default(ppsp_params* out) {
  if (out == nullptr) return;
  const ppsp::ProtocolParams d = ppsp::default_params();
  *out = ppsp_params{d.n, d.q, d.k1, d.k2, d.k3, d.k4, PPSP_TPDS14};
}

ppsp_status ppsp_validate(const ppsp_params* params, ppsp_constraint_report* out) {
  PPSP_REQUIRE(params && out);
  return guarded([&] {
    const auto r = ppsp::validate(from_c(*params));
    *out = ppsp_constraint_report{r.eq_result_fits_p, r.eq_1a, r.eq_1b, r.eq_1c, r.all_satisfied};
    return PPSP_OK;
  });
}

ppsp_status ppsp_attack_thresholds(const ppsp_params* params, ppsp_threshold_report* out) {
  PPSP_REQUIRE(params && out);
  return guarded([&] {
    const auto t = ppsp::attack_thresholds(from_c(*params));
    *out = ppsp_threshold_report{t.k4_correctness_onset, t.k4_attack1_neighbor, t.k4_attack1_any, t.k4_attack2,
                                 t.max_error_bits};
    return PPSP_OK;
  });
}

ppsp_status ppsp_noise_bound_bits(const ppsp_params* params, int64_t* out) {
  PPSP_REQUIRE(params && out);
  return guarded([&] {
    *out = ppsp::noise_bound_bits(from_c(*params));
    return PPSP_OK;
  });
}

ppsp_status ppsp_params_report(const ppsp_params* params, int key_values, char** out) {
  PPSP_REQUIRE(params && out);
  return guarded([&] {
    const auto p = from_c(*params);
    const auto c = ppsp::validate(p);
    const auto t = ppsp::attack_thresholds(p);
    std::string text;
    if (key_values != 0) {
      text = ppsp::to_key_values(c) + "\n" + ppsp::to_key_values(t) + "\n";
    } else {
      text = ppsp::describe(p) + "\n" + ppsp::to_text(c) + ppsp::to_text(t);
    }
    *out = dup_string(text);
    return PPSP_OK;
  });
}

ppsp_status ppsp_derive_inputs(const ppsp_params* params, uint64_t seed, int zero_a, int zero_b, uint64_t* a,
                               uint64_t* b) {
  PPSP_REQUIRE(params && a && b);
  return guarded([&] {
    const auto p = from_c(*params);
    ppsp::check_structure(p);
    const ppsp::Rng root(seed);
    ppsp::Rng a_rng = root.fork(ppsp::Stream::kInputA);
    ppsp::Rng b_rng = root.fork(ppsp::Stream::kInputB);
    const ppsp::Vector va = zero_a ? ppsp::Vector(p.n, 0) : ppsp::random_vector(p, a_rng);
    const ppsp::Vector vb = zero_b ? ppsp::Vector(p.n, 0) : ppsp::random_vector(p, b_rng);
    std::copy(va.begin(), va.end(), a);
    std::copy(vb.begin(), vb.end(), b);
    return PPSP_OK;
  });
}

ppsp_status ppsp_p0_round1(const ppsp_params* params, const uint64_t* a, size_t len, uint64_t seed,
                           ppsp_p0** out_p0, ppsp_buffer* out_frame) {
  PPSP_REQUIRE(params && (a || len == 0) && out_p0 && out_frame);
  return guarded([&] {
    auto p0 = std::make_unique<ppsp_p0>();
    p0->params = from_c(*params);
    p0->session = ppsp::p0_round1(to_vector(a, len), p0->params, ppsp::Rng(seed));
    fill_buffer(out_frame, ppsp::wire::encode(ppsp::wire::to_frame(p0->session.sent)));
    *out_p0 = p0.release();
    return PPSP_OK;
  });
}

ppsp_status ppsp_p1_round2(const ppsp_params* params, const uint64_t* b, size_t len, uint64_t seed,
                           const uint8_t* round1, size_t round1_len, ppsp_buffer* out_frame) {
  PPSP_REQUIRE(params && (b || len == 0) && round1 && out_frame);
  return guarded([&] {
    const auto p = from_c(*params);
    const auto msg = ppsp::wire::to_round1(ppsp::wire::decode({round1, round1_len}));
    const auto reply = ppsp::p1_round2(to_vector(b, len), msg, p, ppsp::Rng(seed));
    fill_buffer(out_frame, ppsp::wire::encode(ppsp::wire::to_frame(reply)));
    return PPSP_OK;
  });
}

ppsp_status ppsp_p0_finalize(const ppsp_p0* p0, const uint8_t* round2, size_t round2_len, ppsp_outcome** out) {
  PPSP_REQUIRE(p0 && round2 && out);
  return guarded([&] {
    const auto msg = ppsp::wire::to_round2(ppsp::wire::decode({round2, round2_len}));
    if (msg.D < 0 || msg.D >= p0->session.state.p) {
      throw ppsp::Error(ppsp::ErrorCode::kParameterViolation, "Round2 value D is not in [0, p)");
    }
    auto o = std::make_unique<ppsp_outcome>();
    o->outcome = ppsp::p0_finalize(p0->session, msg);
    *out = o.release();
    return PPSP_OK;
  });
}

void ppsp_p0_free(ppsp_p0* p0) { delete p0; }

ppsp_status ppsp_run_session(const ppsp_params* params, const uint64_t* a, const uint64_t* b, size_t len,
                             uint64_t seed, ppsp_outcome** out) {
  PPSP_REQUIRE(params && (len == 0 || (a && b)) && out);
  return guarded([&] {
    auto o = std::make_unique<ppsp_outcome>();
    o->outcome = ppsp::run_session(to_vector(a, len), to_vector(b, len), from_c(*params), seed);
    *out = o.release();
    return PPSP_OK;
  });
}

char* ppsp_outcome_result(const ppsp_outcome* outcome) {
  if (outcome == nullptr) return nullptr;
  try {
    return dup_string(outcome->outcome.result.get_str());
  } catch (...) {
    return nullptr;
  }
}

char* ppsp_outcome_e(const ppsp_outcome* outcome) {
  if (outcome == nullptr) return nullptr;
  try {
    return dup_string(outcome->outcome.view.E.get_str());
  } catch (...) {
    return nullptr;
  }
}

ppsp_status ppsp_outcome_frames(const ppsp_outcome* outcome, ppsp_buffer* round1, ppsp_buffer* round2) {
  PPSP_REQUIRE(outcome && round1 && round2);
  return guarded([&] {
    fill_buffer(round1, ppsp::wire::encode(ppsp::wire::to_frame(outcome->outcome.view.round1)));
    fill_buffer(round2, ppsp::wire::encode(ppsp::wire::to_frame(outcome->outcome.view.round2)));
    return PPSP_OK;
  });
}

void ppsp_outcome_free(ppsp_outcome* outcome) { delete outcome; }

ppsp_status ppsp_dot_oracle(const uint64_t* a, const uint64_t* b, size_t len, char** out) {
  PPSP_REQUIRE((len == 0 || (a && b)) && out);
  return guarded([&] {
    *out = dup_string(ppsp::dot_oracle(to_vector(a, len), to_vector(b, len)).get_str());
    return PPSP_OK;
  });
}

ppsp_status ppsp_frame_bytes_needed(const uint8_t* prefix, size_t len, size_t* needed) {
  PPSP_REQUIRE((prefix || len == 0) && needed);
  return guarded([&] {
    *needed = ppsp::wire::bytes_needed({prefix, len});
    return PPSP_OK;
  });
}

ppsp_status ppsp_frame_inspect(const uint8_t* frame, size_t len, uint8_t* tag, size_t* count) {
  PPSP_REQUIRE((frame || len == 0) && tag && count);
  return guarded([&] {
    const auto f = ppsp::wire::decode({frame, len});
    *tag = static_cast<uint8_t>(f.tag);
    *count = f.values.size();
    return PPSP_OK;
  });
}

ppsp_status ppsp_distinguish_pair(const ppsp_outcome* outcome, const uint64_t* b0, const uint64_t* b1, size_t len,
                                  int* index, size_t distance_bits[2]) {
  PPSP_REQUIRE(outcome && b0 && b1 && index && distance_bits);
  return guarded([&] {
    const auto g = ppsp::distinguish_pair(outcome->outcome.view, to_vector(b0, len), to_vector(b1, len));
    *index = g.index;
    distance_bits[0] = g.distance_bits[0];
    distance_bits[1] = g.distance_bits[1];
    return PPSP_OK;
  });
}

ppsp_status ppsp_test_candidate(const ppsp_outcome* outcome, const uint64_t* candidate, size_t len, int slack_bits,
                                int* verdict) {
  PPSP_REQUIRE(outcome && candidate && verdict);
  return guarded([&] {
    *verdict = ppsp::test_candidate(outcome->outcome.view, to_vector(candidate, len), slack_bits) ? 1 : 0;
    return PPSP_OK;
  });
}

ppsp_status ppsp_ot_break(const ppsp_params* base, int sigma, int x0, int x1, uint64_t seed, int* ot_output,
                          int* recovered_x0, int* recovered_x1) {
  PPSP_REQUIRE(base && ot_output && recovered_x0 && recovered_x1);
  return guarded([&] {
    const auto t = ppsp::ot_from_ppsp(sigma, x0, x1, ppsp::ot_params(from_c(*base)), seed);
    *ot_output = t.output;
    const auto bits = ppsp::break_ot(t);
    if (!bits) return fail(PPSP_ERR_AMBIGUOUS, "break_ot: no unique candidate");
    *recovered_x0 = bits->x0;
    *recovered_x1 = bits->x1;
    return PPSP_OK;
  });
}

void ppsp_trial_config_default(ppsp_trial_config* out) {
  if (out == nullptr) return;
  const ppsp::TrialConfig d;
  ppsp_params_default(&out->params);
  out->trials = d.trials;
  out->seed = d.seed;
  out->a_mode = PPSP_INPUT_RANDOM;
  out->pair_mode = PPSP_PAIR_RANDOM;
  out->b_mode = PPSP_INPUT_ZERO;
  out->threads = 0;
}

ppsp_status ppsp_run_correctness_trials(const ppsp_trial_config* cfg, double* mean_bits, uint64_t* max_bits,
                                        uint64_t* failures) {
  PPSP_REQUIRE(cfg && mean_bits && max_bits && failures);
  return guarded([&] {
    const auto stats = ppsp::run_correctness_trials(from_c(*cfg));
    *mean_bits = stats.mean_abs_error_bits;
    *max_bits = stats.max_abs_error_bits;
    *failures = stats.failures;
    return PPSP_OK;
  });
}

ppsp_status ppsp_run_attack_trials(const ppsp_trial_config* cfg, ppsp_attack attack, double* accuracy) {
  PPSP_REQUIRE(cfg && accuracy);
  return guarded([&] {
    const auto c = from_c(*cfg);
    switch (attack) {
      case PPSP_ATTACK_ORIGINAL: *accuracy = ppsp::run_original_attack_trials(c); break;
      case PPSP_ATTACK_FIXED_A0: *accuracy = ppsp::run_attack_trials(c, ppsp::AttackKind::kAttack1AZero); break;
      case PPSP_ATTACK_FIXED_GENERAL:
        *accuracy = ppsp::run_attack_trials(c, ppsp::AttackKind::kAttack2GeneralA);
        break;
      case PPSP_ATTACK_TEST_CANDIDATE: *accuracy = ppsp::run_candidate_test_trials(c); break;
      default: return fail(PPSP_ERR_INVALID_ARGUMENT, "unknown attack");
    }
    return PPSP_OK;
  });
}

ppsp_status ppsp_sweep_run(const ppsp_trial_config* cfg, uint32_t k4_from, uint32_t k4_to, uint32_t k4_step,
                           ppsp_sweep** out) {
  PPSP_REQUIRE(cfg && out);
  return guarded([&] {
    auto s = std::make_unique<ppsp_sweep>();
    s->rows = ppsp::sweep_k4(from_c(*cfg), k4_from, k4_to, k4_step);
    *out = s.release();
    return PPSP_OK;
  });
}

size_t ppsp_sweep_row_count(const ppsp_sweep* sweep) { return sweep == nullptr ? 0 : sweep->rows.size(); }

ppsp_status ppsp_sweep_get_row(const ppsp_sweep* sweep, size_t index, ppsp_sweep_row* out) {
  PPSP_REQUIRE(sweep && out);
  if (index >= sweep->rows.size()) return fail(PPSP_ERR_INVALID_ARGUMENT, "sweep row index out of range");
  const auto& r = sweep->rows[index];
  *out = ppsp_sweep_row{r.k4,
                        r.trials,
                        r.acc_attack1_random,
                        r.acc_attack1_neighbor,
                        r.acc_attack2_random,
                        r.acc_attack2_neighbor,
                        r.mean_abs_error_bits,
                        r.max_abs_error_bits};
  return PPSP_OK;
}

ppsp_status ppsp_sweep_csv(const ppsp_sweep* sweep, char** out) {
  PPSP_REQUIRE(sweep && out);
  return guarded([&] {
    *out = dup_string(ppsp::sweep_csv(sweep->rows));
    return PPSP_OK;
  });
}

ppsp_status ppsp_sweep_summary(const ppsp_sweep* sweep, char** out) {
  PPSP_REQUIRE(sweep && out);
  return guarded([&] {
    *out = dup_string(ppsp::to_text(ppsp::summarize(sweep->rows)));
    return PPSP_OK;
  });
}

void ppsp_sweep_free(ppsp_sweep* sweep) { delete sweep; }

ppsp_status ppsp_ot_demo(const ppsp_params* base, uint64_t trials, uint64_t seed, uint32_t threads,
                         ppsp_ot_report* out) {
  PPSP_REQUIRE(base && out);
  return guarded([&] {
    const auto r = ppsp::run_ot_demo(from_c(*base), trials, seed, threads);
    *out = ppsp_ot_report{r.runs, r.ot_correctness, r.forbidden_bit_recovery, r.both_bits_recovery, r.ambiguous};
    return PPSP_OK;
  });
}

}  // extern "C"
