#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ppsp/attacks.hpp"
#include "ppsp/params.hpp"

namespace ppsp {

enum class InputMode { kZero, kRandom };
enum class PairMode { kRandomPair, kNeighborPair };
enum class AttackKind { kAttack1AZero, kAttack2GeneralA };

struct TrialConfig {
  ProtocolParams base_params = default_params();
  std::uint64_t trials = 1000;
  std::uint64_t seed = 1;
  InputMode a_mode = InputMode::kRandom;
  PairMode pair_mode = PairMode::kRandomPair;
  InputMode b_mode = InputMode::kZero;  // correctness runs only
  Prediction prediction = Prediction::kDirect;
  unsigned threads = 0;  // 0: hardware concurrency
};

struct ErrorStats {
  double mean_abs_error_bits = 0.0;
  std::size_t max_abs_error_bits = 0;
  mpz_class max_abs_error = 0;
  std::uint64_t failures = 0;  // trials with result != oracle
};

// |result - dot_oracle(a, b)| per trial, aggregated in bits.
ErrorStats run_correctness_trials(const TrialConfig& cfg);

// Two-candidate accuracy of distinguish_pair against TPDS14. Attack 1 fixes
// a = 0, attack 2 draws a uniformly.
double run_attack_trials(const TrialConfig& cfg, AttackKind attack);

// Two-candidate accuracy of the exact-prediction distinguisher against SPOC13;
// a follows cfg.a_mode.
double run_original_attack_trials(const TrialConfig& cfg);

// Fraction of correct test_candidate verdicts: the true b must pass and a copy
// with one element shifted by a random non-zero delta mod q must fail.
double run_candidate_test_trials(const TrialConfig& cfg, int slack_bits = kDefaultSlackBits);

struct SweepRow {
  unsigned k4 = 0;
  std::uint64_t trials = 0;
  double acc_attack1_random = 0.0;
  double acc_attack1_neighbor = 0.0;
  double acc_attack2_random = 0.0;
  double acc_attack2_neighbor = 0.0;
  double mean_abs_error_bits = 0.0;
  std::size_t max_abs_error_bits = 0;

  friend bool operator==(const SweepRow&, const SweepRow&) = default;
};

// One row per k4 in [from, to] stepping by `step`. A row depends only on
// (cfg, k4), so any single row can be reproduced on its own.
std::vector<SweepRow> sweep_k4(const TrialConfig& cfg, unsigned from, unsigned to, unsigned step);

extern const char* const kSweepCsvHeader;
std::string sweep_csv(std::span<const SweepRow> rows);

inline constexpr double kCollapseAccuracy = 0.55;

struct SweepSummary {
  std::optional<unsigned> first_error_k4;
  std::optional<unsigned> attack1_random_collapse_k4;
  std::optional<unsigned> attack1_neighbor_collapse_k4;
  std::optional<unsigned> attack2_random_collapse_k4;
  std::optional<unsigned> attack2_neighbor_collapse_k4;
};

// First grid points with a non-zero error and with accuracy <= kCollapseAccuracy.
SweepSummary summarize(std::span<const SweepRow> rows);
std::string to_text(const SweepSummary& summary);

struct OtDemoReport {
  std::uint64_t runs = 0;              // trials x 8 input combinations
  double ot_correctness = 0.0;         // output == x_sigma
  double forbidden_bit_recovery = 0.0; // recovered x_{1-sigma} correctly
  double both_bits_recovery = 0.0;
  std::uint64_t ambiguous = 0;
};

OtDemoReport run_ot_demo(const ProtocolParams& base, std::uint64_t trials, std::uint64_t seed,
                         unsigned threads = 0);

// Fixed-point with exactly `decimals` digits, independent of the C locale.
std::string format_fixed(double value, int decimals = 4);

}  // namespace ppsp
