#include "ppsp/harness.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>
#include <thread>
#include <utility>

#include "ppsp/error.hpp"
#include "ppsp/numtheory.hpp"
#include "ppsp/protocol.hpp"

namespace ppsp {
namespace {

// Labels separating the trial streams of one grid point.
enum RunLabel : std::uint64_t {
  kRunCorrectness = 0x10,
  kRunAttack = 0x20,
  kRunOriginal = 0x40,
  kRunCandidate = 0x50,
  kRunOt = 0x60,
};

std::uint64_t run_seed(const TrialConfig& cfg, std::uint64_t label) {
  return derive_seed(derive_seed(cfg.seed, cfg.base_params.k4), label);
}

// Evaluates fn(i) for i in [0, count) on up to `threads` workers. Results are
// stored by index, so aggregation order never depends on scheduling.
template <typename Fn>
auto parallel_map(std::uint64_t count, unsigned threads, Fn fn) {
  using Result = decltype(fn(std::uint64_t{0}));
  std::vector<Result> out(count);
  unsigned workers = threads != 0 ? threads : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, count));
  if (workers <= 1) {
    for (std::uint64_t i = 0; i < count; ++i) out[i] = fn(i);
    return out;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::uint64_t i = w; i < count; i += workers) out[i] = fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

Vector draw_input(InputMode mode, const ProtocolParams& params, Rng rng) {
  if (mode == InputMode::kZero) return Vector(params.n, 0);
  return random_vector(params, rng);
}

Vector draw_partner(PairMode mode, const Vector& b, const ProtocolParams& params, Rng rng) {
  if (mode == PairMode::kNeighborPair) {
    Vector out = b;
    const std::uint64_t j = uniform_below(rng, params.n);
    out[j] = out[j] + 1 == params.q ? 0 : out[j] + 1;
    return out;
  }
  for (;;) {
    Vector out = random_vector(params, rng);
    if (out != b) return out;
  }
}

void check_trials(const TrialConfig& cfg) {
  if (cfg.trials < 1) throw Error(ErrorCode::kInvalidArgument, "trials must be >= 1");
  check_structure(cfg.base_params);
}

double fraction(std::uint64_t hits, std::uint64_t total) {
  return total == 0 ? 0.0 : static_cast<double>(hits) / static_cast<double>(total);
}

// One session with the true b; each requested pair mode gets its own partner
// and presentation order, so both modes can share the session.
struct PairHits {
  bool random = false;
  bool neighbor = false;
};

PairHits pair_trial(const Vector& a, const ProtocolParams& params, bool want_random, bool want_neighbor,
                    Prediction model, const Rng& trial) {
  Rng b_rng = trial.fork(Stream::kInputB);
  const Vector b = random_vector(params, b_rng);
  const SessionOutcome outcome = run_session(a, b, params, trial.seed());

  auto judge = [&](PairMode mode) {
    const auto offset = static_cast<std::uint64_t>(mode);
    const Vector other = draw_partner(mode, b, params, trial.fork(Stream::kPair).fork(offset));
    Rng order = trial.fork(Stream::kOrder).fork(offset);
    const int true_index = static_cast<int>(order.next_u64() & 1);
    const CandidateGuess g = true_index == 0 ? distinguish_pair(outcome.view, b, other, model)
                                             : distinguish_pair(outcome.view, other, b, model);
    return g.index == true_index;
  };
  PairHits hits;
  if (want_random) hits.random = judge(PairMode::kRandomPair);
  if (want_neighbor) hits.neighbor = judge(PairMode::kNeighborPair);
  return hits;
}

struct PairAccuracy {
  double random = 0.0;
  double neighbor = 0.0;
};

PairAccuracy pair_accuracy(const TrialConfig& cfg, const ProtocolParams& params, InputMode a_mode,
                           std::uint64_t label, bool want_random, bool want_neighbor) {
  const std::uint64_t base = run_seed(cfg, label);
  const auto hits = parallel_map(cfg.trials, cfg.threads, [&](std::uint64_t i) {
    const Rng trial(derive_seed(base, i));
    const Vector a = draw_input(a_mode, params, trial.fork(Stream::kInputA));
    return pair_trial(a, params, want_random, want_neighbor, cfg.prediction, trial);
  });
  std::uint64_t random = 0, neighbor = 0;
  for (const auto& h : hits) {
    random += h.random;
    neighbor += h.neighbor;
  }
  return PairAccuracy{fraction(random, cfg.trials), fraction(neighbor, cfg.trials)};
}

PairAccuracy tpds14_attack(const TrialConfig& cfg, AttackKind attack, bool want_random, bool want_neighbor) {
  ProtocolParams params = cfg.base_params;
  params.variant = Variant::kTpds14;
  const InputMode a_mode = attack == AttackKind::kAttack1AZero ? InputMode::kZero : InputMode::kRandom;
  return pair_accuracy(cfg, params, a_mode, kRunAttack + static_cast<std::uint64_t>(attack), want_random,
                       want_neighbor);
}

}  // namespace

ErrorStats run_correctness_trials(const TrialConfig& cfg) {
  check_trials(cfg);
  const ProtocolParams& params = cfg.base_params;
  const std::uint64_t base = run_seed(cfg, kRunCorrectness + static_cast<std::uint64_t>(cfg.b_mode));

  const auto errors = parallel_map(cfg.trials, cfg.threads, [&](std::uint64_t i) {
    const Rng trial(derive_seed(base, i));
    const Vector a = draw_input(cfg.a_mode, params, trial.fork(Stream::kInputA));
    const Vector b = draw_input(cfg.b_mode, params, trial.fork(Stream::kInputB));
    const SessionOutcome outcome = run_session(a, b, params, trial.seed());
    mpz_class err = outcome.result - dot_oracle(a, b);
    return mpz_class(abs(err));
  });

  ErrorStats stats;
  double bits_sum = 0.0;
  for (const auto& err : errors) {
    const std::size_t bits = bit_length(err);
    bits_sum += static_cast<double>(bits);
    if (err > stats.max_abs_error) stats.max_abs_error = err;
    stats.max_abs_error_bits = std::max(stats.max_abs_error_bits, bits);
    if (sgn(err) != 0) ++stats.failures;
  }
  stats.mean_abs_error_bits = bits_sum / static_cast<double>(errors.size());
  return stats;
}

double run_attack_trials(const TrialConfig& cfg, AttackKind attack) {
  check_trials(cfg);
  const bool random = cfg.pair_mode == PairMode::kRandomPair;
  const PairAccuracy acc = tpds14_attack(cfg, attack, random, !random);
  return random ? acc.random : acc.neighbor;
}

double run_original_attack_trials(const TrialConfig& cfg) {
  check_trials(cfg);
  ProtocolParams params = cfg.base_params;
  params.variant = Variant::kSpoc13;
  const bool random = cfg.pair_mode == PairMode::kRandomPair;
  const PairAccuracy acc = pair_accuracy(cfg, params, cfg.a_mode, kRunOriginal + static_cast<std::uint64_t>(cfg.a_mode),
                                         random, !random);
  return random ? acc.random : acc.neighbor;
}

double run_candidate_test_trials(const TrialConfig& cfg, int slack_bits) {
  check_trials(cfg);
  ProtocolParams params = cfg.base_params;
  params.variant = Variant::kTpds14;
  const std::uint64_t base = run_seed(cfg, kRunCandidate);

  const auto verdicts = parallel_map(cfg.trials, cfg.threads, [&](std::uint64_t i) -> int {
    const Rng trial(derive_seed(base, i));
    const Vector a = draw_input(cfg.a_mode, params, trial.fork(Stream::kInputA));
    Rng b_rng = trial.fork(Stream::kInputB);
    const Vector b = random_vector(params, b_rng);
    Vector wrong = b;
    Rng pair_rng = trial.fork(Stream::kPair);
    const std::uint64_t j = uniform_below(pair_rng, params.n);
    const std::uint64_t delta = 1 + uniform_below(pair_rng, params.q - 1);
    wrong[j] = static_cast<std::uint64_t>((static_cast<unsigned __int128>(wrong[j]) + delta) % params.q);

    const SessionOutcome outcome = run_session(a, b, params, trial.seed());
    int ok = 0;
    if (test_candidate(outcome.view, b, slack_bits, cfg.prediction)) ++ok;
    if (!test_candidate(outcome.view, wrong, slack_bits, cfg.prediction)) ++ok;
    return ok;
  });
  std::uint64_t correct = 0;
  for (int v : verdicts) correct += static_cast<std::uint64_t>(v);
  return fraction(correct, 2 * cfg.trials);
}

std::vector<SweepRow> sweep_k4(const TrialConfig& cfg, unsigned from, unsigned to, unsigned step) {
  if (step < 1) throw Error(ErrorCode::kInvalidArgument, "sweep step must be >= 1");
  if (from > to) throw Error(ErrorCode::kInvalidArgument, "sweep range is empty (from > to)");
  std::vector<SweepRow> rows;
  for (unsigned k4 = from; k4 <= to; k4 += step) {
    TrialConfig point = cfg;
    point.base_params.k4 = k4;
    point.base_params.variant = Variant::kTpds14;

    SweepRow row;
    row.k4 = k4;
    row.trials = cfg.trials;
    const ErrorStats err = run_correctness_trials(point);
    row.mean_abs_error_bits = err.mean_abs_error_bits;
    row.max_abs_error_bits = err.max_abs_error_bits;

    // Same per-trial sessions as run_attack_trials, evaluated for both pair modes.
    const PairAccuracy attack1 = tpds14_attack(point, AttackKind::kAttack1AZero, true, true);
    const PairAccuracy attack2 = tpds14_attack(point, AttackKind::kAttack2GeneralA, true, true);
    row.acc_attack1_random = attack1.random;
    row.acc_attack1_neighbor = attack1.neighbor;
    row.acc_attack2_random = attack2.random;
    row.acc_attack2_neighbor = attack2.neighbor;
    rows.push_back(row);
    if (to - k4 < step) break;  // no unsigned wraparound
  }
  return rows;
}

const char* const kSweepCsvHeader =
    "k4,trials,acc_attack1_random,acc_attack1_neighbor,acc_attack2_random,acc_attack2_neighbor,"
    "mean_abs_error_bits,max_abs_error_bits";

std::string format_fixed(double value, int decimals) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::fixed, decimals);
  return std::string(buf, res.ptr);
}

std::string sweep_csv(std::span<const SweepRow> rows) {
  std::string out = kSweepCsvHeader;
  out += '\n';
  for (const auto& r : rows) {
    out += std::to_string(r.k4) + ',' + std::to_string(r.trials) + ',' + format_fixed(r.acc_attack1_random) + ',' +
           format_fixed(r.acc_attack1_neighbor) + ',' + format_fixed(r.acc_attack2_random) + ',' +
           format_fixed(r.acc_attack2_neighbor) + ',' + format_fixed(r.mean_abs_error_bits) + ',' +
           std::to_string(r.max_abs_error_bits) + '\n';
  }
  return out;
}

SweepSummary summarize(std::span<const SweepRow> rows) {
  SweepSummary s;
  auto first = [&](auto pred) -> std::optional<unsigned> {
    for (const auto& r : rows) {
      if (pred(r)) return r.k4;
    }
    return std::nullopt;
  };
  s.first_error_k4 = first([](const SweepRow& r) { return r.max_abs_error_bits > 0; });
  s.attack1_random_collapse_k4 = first([](const SweepRow& r) { return r.acc_attack1_random <= kCollapseAccuracy; });
  s.attack1_neighbor_collapse_k4 =
      first([](const SweepRow& r) { return r.acc_attack1_neighbor <= kCollapseAccuracy; });
  s.attack2_random_collapse_k4 = first([](const SweepRow& r) { return r.acc_attack2_random <= kCollapseAccuracy; });
  s.attack2_neighbor_collapse_k4 =
      first([](const SweepRow& r) { return r.acc_attack2_neighbor <= kCollapseAccuracy; });
  return s;
}

std::string to_text(const SweepSummary& s) {
  auto show = [](const std::optional<unsigned>& v) { return v ? std::to_string(*v) : std::string("none"); };
  std::ostringstream os;
  os << "first_error_k4=" << show(s.first_error_k4)
     << " attack1_random_collapse_k4=" << show(s.attack1_random_collapse_k4)
     << " attack1_neighbor_collapse_k4=" << show(s.attack1_neighbor_collapse_k4)
     << " attack2_random_collapse_k4=" << show(s.attack2_random_collapse_k4)
     << " attack2_neighbor_collapse_k4=" << show(s.attack2_neighbor_collapse_k4);
  return os.str();
}

OtDemoReport run_ot_demo(const ProtocolParams& base, std::uint64_t trials, std::uint64_t seed, unsigned threads) {
  if (trials < 1) throw Error(ErrorCode::kInvalidArgument, "trials must be >= 1");
  const ProtocolParams params = ot_params(base);
  check_structure(params);
  const std::uint64_t run = derive_seed(derive_seed(seed, params.k4), kRunOt);

  struct Outcome {
    bool ot_ok = false;
    bool forbidden_ok = false;
    bool both_ok = false;
    bool ambiguous = false;
  };
  const auto outcomes = parallel_map(trials * 8, threads, [&](std::uint64_t i) {
    const int combo = static_cast<int>(i % 8);
    const int sigma = combo >> 2, x0 = (combo >> 1) & 1, x1 = combo & 1;
    const OtTranscript t = ot_from_ppsp(sigma, x0, x1, params, derive_seed(run, i));
    Outcome o;
    o.ot_ok = t.output == (sigma == 0 ? x0 : x1);
    const auto recovered = break_ot(t);
    o.ambiguous = !recovered;
    if (recovered) {
      o.forbidden_ok = (sigma == 0 ? recovered->x1 == x1 : recovered->x0 == x0);
      o.both_ok = recovered->x0 == x0 && recovered->x1 == x1;
    }
    return o;
  });

  OtDemoReport r;
  r.runs = outcomes.size();
  std::uint64_t ot_ok = 0, forbidden = 0, both = 0;
  for (const auto& o : outcomes) {
    ot_ok += o.ot_ok;
    forbidden += o.forbidden_ok;
    both += o.both_ok;
    r.ambiguous += o.ambiguous;
  }
  r.ot_correctness = fraction(ot_ok, r.runs);
  r.forbidden_bit_recovery = fraction(forbidden, r.runs);
  r.both_bits_recovery = fraction(both, r.runs);
  return r;
}

}  // namespace ppsp
