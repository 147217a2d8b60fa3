// End-to-end acceptance run: one PASS/FAIL line per criterion.
// Usage: acceptance [--trials N] [--seed S] [--threads T]

#include <gmpxx.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <string>
#include <vector>

#include "ppsp/attacks.hpp"
#include "ppsp/harness.hpp"
#include "ppsp/numtheory.hpp"
#include "ppsp/protocol.hpp"
#include "ppsp/wire.hpp"

namespace {

using ppsp::SweepRow;

constexpr unsigned kGridFrom = 128;
constexpr unsigned kGridTo = 400;
constexpr unsigned kGridStep = 8;

struct Options {
  std::uint64_t trials = 1000;
  std::uint64_t seed = 2024;
  unsigned threads = 0;
};

Options parse(int argc, char** argv) {
  Options o;
  for (int i = 1; i + 1 < argc; i += 2) {
    const std::uint64_t v = std::strtoull(argv[i + 1], nullptr, 10);
    if (std::strcmp(argv[i], "--trials") == 0) o.trials = v;
    else if (std::strcmp(argv[i], "--seed") == 0) o.seed = v;
    else if (std::strcmp(argv[i], "--threads") == 0) o.threads = static_cast<unsigned>(v);
  }
  return o;
}

int failed = 0;

void report(int id, const char* name, bool pass, const std::string& detail) {
  std::printf("[%s] %2d %s: %s\n", pass ? "PASS" : "FAIL", id, name, detail.c_str());
  std::fflush(stdout);
  failed += !pass;
}

std::string opt(const std::optional<unsigned>& v) { return v ? std::to_string(*v) : "none"; }

const SweepRow* row_at(const std::vector<SweepRow>& rows, unsigned k4) {
  for (const auto& r : rows) {
    if (r.k4 == k4) return &r;
  }
  return nullptr;
}

std::optional<unsigned> first_error(const std::vector<ppsp::ErrorStats>& stats) {
  for (std::size_t i = 0; i < stats.size(); ++i) {
    if (stats[i].max_abs_error_bits != 0) return kGridFrom + kGridStep * static_cast<unsigned>(i);
  }
  return std::nullopt;
}

// All accuracies at k4 >= from must stay at or below the collapse level.
std::string collapse_check(const std::vector<SweepRow>& rows, unsigned from,
                           double SweepRow::*column, bool& pass) {
  pass = true;
  double worst = 0.0;
  unsigned worst_k4 = 0;
  for (const auto& r : rows) {
    if (r.k4 < from) continue;
    if (r.*column > worst) {
      worst = r.*column;
      worst_k4 = r.k4;
    }
    pass = pass && r.*column <= ppsp::kCollapseAccuracy;
  }
  return "max accuracy for k4 >= " + std::to_string(from) + " is " + ppsp::format_fixed(worst) +
         " at k4=" + std::to_string(worst_k4);
}

mpz_class expected_e(const ppsp::P0State& st, const ppsp::Vector& a, const ppsp::Vector& b,
                     const std::vector<mpz_class>& r) {
  mpz_class e = 0;
  for (std::size_t i = 0; i < st.c.size(); ++i) {
    const mpz_class ai = i < a.size() ? a[i] : 0UL;
    const mpz_class bi = i < b.size() ? b[i] : 0UL;
    if (bi != 0) {
      e += ai * bi * st.alpha * st.alpha + bi * st.c[i] * st.alpha;
    } else {
      e += r[i] * (ai * st.alpha + st.c[i]);
    }
  }
  return e;
}

}  // namespace

int main(int argc, char** argv) {
  const Options opts = parse(argc, argv);
  const auto start = std::chrono::steady_clock::now();
  const auto params = ppsp::default_params();

  ppsp::TrialConfig cfg;
  cfg.trials = opts.trials;
  cfg.seed = opts.seed;
  cfg.threads = opts.threads;

  std::printf("acceptance: trials=%llu seed=%llu grid=%u..%u step %u\n",
              static_cast<unsigned long long>(opts.trials), static_cast<unsigned long long>(opts.seed),
              kGridFrom, kGridTo, kGridStep);

  // 1. Correctness at the default parameters with random a and b.
  {
    ppsp::TrialConfig c = cfg;
    c.b_mode = ppsp::InputMode::kRandom;
    const auto stats = ppsp::run_correctness_trials(c);
    report(1, "correctness region", stats.failures == 0,
           std::to_string(stats.failures) + " failures in " + std::to_string(c.trials) + " sessions");
  }

  const auto rows = ppsp::sweep_k4(cfg, kGridFrom, kGridTo, kGridStep);
  const auto summary = ppsp::summarize(rows);
  std::printf("sweep: %zu rows; %s\n", rows.size(), ppsp::to_text(summary).c_str());
  std::fputs(ppsp::sweep_csv(rows).c_str(), stdout);

  // 2. Error onset with b = 0 (sweep data) and with random b.
  {
    std::vector<ppsp::ErrorStats> random_b;
    for (unsigned k4 = kGridFrom; k4 <= kGridTo; k4 += kGridStep) {
      ppsp::TrialConfig c = cfg;
      c.base_params.k4 = k4;
      c.b_mode = ppsp::InputMode::kRandom;
      random_b.push_back(ppsp::run_correctness_trials(c));
    }
    const auto zero_onset = summary.first_error_k4;
    const auto random_onset = first_error(random_b);
    const bool pass = zero_onset && *zero_onset >= 160 && *zero_onset <= 168 && random_onset &&
                      *random_onset >= 264 && *random_onset <= 272;
    report(2, "error onset", pass,
           "b=0 onset " + opt(zero_onset) + " (want 160..168), random b onset " + opt(random_onset) +
               " (want 264..272)");
  }

  // 3. Error ceiling.
  {
    std::size_t ceiling = 0;
    std::optional<unsigned> reached;
    for (const auto& r : rows) {
      ceiling = std::max(ceiling, r.max_abs_error_bits);
      if (!reached && r.max_abs_error_bits == 112) reached = r.k4;
    }
    const bool pass = ceiling <= 112 && reached && *reached <= 336;
    report(3, "error ceiling", pass,
           "max_abs_error_bits peaks at " + std::to_string(ceiling) + ", first reaches 112 at k4=" +
               opt(reached) + " (want exactly 112 by 336, never above)");
  }

  // 4. All four attacks win at k4 = 128.
  {
    const SweepRow* r = row_at(rows, 128);
    const bool pass = r && r->trials >= 1000 && r->acc_attack1_random >= 0.99 &&
                      r->acc_attack1_neighbor >= 0.99 && r->acc_attack2_random >= 0.99 &&
                      r->acc_attack2_neighbor >= 0.99;
    report(4, "attack accuracy at k4=128", pass,
           r ? "accuracies " + ppsp::format_fixed(r->acc_attack1_random) + " " +
                   ppsp::format_fixed(r->acc_attack1_neighbor) + " " +
                   ppsp::format_fixed(r->acc_attack2_random) + " " +
                   ppsp::format_fixed(r->acc_attack2_neighbor) + " over " + std::to_string(r->trials) +
                   " trials (want >= 0.99 each, >= 1000 trials)"
             : "row missing");
  }

  // 5. Attack 1 collapse.
  {
    bool pass = false;
    const std::string detail = collapse_check(rows, 232, &SweepRow::acc_attack1_random, pass);
    report(5, "attack 1 collapse", pass, detail + " (want <= 0.55)");
  }

  // 6. Attack 2 collapse and the earlier neighbor-pair collapse.
  {
    bool bound_ok = false;
    const std::string detail = collapse_check(rows, 368, &SweepRow::acc_attack2_random, bound_ok);
    const auto nb = summary.attack2_neighbor_collapse_k4;
    const auto rnd = summary.attack2_random_collapse_k4;
    const bool order_ok = nb && rnd && *nb < *rnd;
    report(6, "attack 2 collapse", bound_ok && order_ok,
           detail + " (want <= 0.55); neighbor collapse " + opt(nb) + " < random collapse " + opt(rnd));
  }

  // 7. No grid point is both correct and private.
  {
    std::vector<unsigned> both;
    for (const auto& r : rows) {
      if (r.max_abs_error_bits == 0 && r.acc_attack2_random <= ppsp::kCollapseAccuracy) both.push_back(r.k4);
    }
    std::string detail = both.empty() ? "no row is error-free with attack 2 at chance" : "conflicting rows:";
    for (unsigned k4 : both) detail += " " + std::to_string(k4);
    report(7, "correctness/privacy conflict", both.empty(), detail);
  }

  // 8. The original scheme falls to an exact distinguisher.
  {
    std::string detail;
    bool pass = true;
    for (auto a_mode : {ppsp::InputMode::kRandom, ppsp::InputMode::kZero}) {
      for (auto pair : {ppsp::PairMode::kRandomPair, ppsp::PairMode::kNeighborPair}) {
        ppsp::TrialConfig c = cfg;
        c.a_mode = a_mode;
        c.pair_mode = pair;
        const double acc = ppsp::run_original_attack_trials(c);
        pass = pass && acc == 1.0;
        detail += std::string(detail.empty() ? "" : ", ") + (a_mode == ppsp::InputMode::kZero ? "a=0" : "a random") +
                  (pair == ppsp::PairMode::kNeighborPair ? "/neighbor " : "/random ") + ppsp::format_fixed(acc);
      }
    }
    report(8, "original scheme break", pass, detail + " (want 1.0000)");
  }

  // 9. OT from PPSP: correct outputs and recovery of the other bit.
  {
    const auto ot = ppsp::run_ot_demo(params, 100, opts.seed, opts.threads);
    const bool pass = ot.runs == 800 && ot.ot_correctness == 1.0 && ot.forbidden_bit_recovery >= 0.99;
    report(9, "OT demo", pass,
           "runs=" + std::to_string(ot.runs) + " ot_correctness=" + ppsp::format_fixed(ot.ot_correctness) +
               " forbidden_bit_recovery=" + ppsp::format_fixed(ot.forbidden_bit_recovery) +
               " ambiguous=" + std::to_string(ot.ambiguous) + " (want 1.0000 and >= 0.99)");
  }

  // 10. Property suites.
  {
    std::uint64_t identity_failures = 0;
    ppsp::Rng inputs(ppsp::derive_seed(opts.seed, 0xA10));
    for (std::uint64_t t = 0; t < opts.trials; ++t) {
      ppsp::Vector a = ppsp::random_vector(params, inputs);
      ppsp::Vector b = ppsp::random_vector(params, inputs);
      if (t % 4 == 1) b.assign(params.n, 0);
      if (t % 4 == 2) a.assign(params.n, 0);
      const ppsp::Rng session(ppsp::derive_seed(opts.seed, 0xA20 + t));
      ppsp::P0Session p0 = ppsp::p0_round1(a, params, session);
      const auto r = ppsp::sample_p1_masks(params, session);
      const auto round2 = ppsp::p1_round2(b, p0.sent, params, r);
      const mpz_class want = expected_e(p0.state, a, b, r);
      const auto out = ppsp::p0_finalize(std::move(p0), round2);
      identity_failures += out.view.E != want;
    }

    std::uint64_t wire_failures = 0;
    ppsp::Rng msgs(ppsp::derive_seed(opts.seed, 0xA30));
    for (int i = 0; i < 10000; ++i) {
      ppsp::wire::Frame f;
      if (i % 2 == 0) {
        ppsp::Round1Msg m;
        m.p = ppsp::random_exact_bits(msgs, params.k1);
        m.alpha = ppsp::random_exact_bits(msgs, params.k2);
        const std::size_t slots = 1 + ppsp::uniform_below(msgs, 300);
        for (std::size_t k = 0; k < slots; ++k) m.C.push_back(ppsp::random_below(msgs, m.p));
        f = ppsp::wire::to_frame(m);
        wire_failures += ppsp::wire::to_round1(ppsp::wire::decode(ppsp::wire::encode(f))) != m;
      } else {
        const ppsp::Round2Msg m{ppsp::random_bits(msgs, ppsp::uniform_below(msgs, params.k1 + 1))};
        f = ppsp::wire::to_frame(m);
        wire_failures += ppsp::wire::to_round2(ppsp::wire::decode(ppsp::wire::encode(f))) != m;
      }
      const auto bytes = ppsp::wire::encode(f);
      wire_failures += ppsp::wire::encode(ppsp::wire::decode(bytes)) != bytes;
    }

    ppsp::TrialConfig small = cfg;
    small.trials = 20;
    const auto small_rows = ppsp::sweep_k4(small, kGridFrom, kGridTo, kGridStep);
    small.threads = 1;
    const bool csv_same =
        ppsp::sweep_csv(small_rows) == ppsp::sweep_csv(ppsp::sweep_k4(small, kGridFrom, kGridTo, kGridStep)) &&
        ppsp::sweep_k4(small, 232, 232, kGridStep).front() == small_rows[(232 - kGridFrom) / kGridStep];

    report(10, "property suites", identity_failures == 0 && wire_failures == 0 && csv_same,
           "E identity failures " + std::to_string(identity_failures) + "/" + std::to_string(opts.trials) +
               ", wire round-trip failures " + std::to_string(wire_failures) +
               "/10000, repeated sweep CSV identical: " + (csv_same ? "yes" : "no"));
  }

  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("acceptance: %d criterion(s) failed, %.0f s\n", failed, secs);
  return failed == 0 ? 0 : 1;
}
