#include <string>
#include <vector>

#include "doctest.h"
#include "ppsp/harness.hpp"
#include "ppsp/numtheory.hpp"

using ppsp::SweepRow;
using ppsp::TrialConfig;

namespace {

TrialConfig small_config(std::uint64_t trials, unsigned threads = 1) {
  TrialConfig cfg;
  cfg.trials = trials;
  cfg.seed = 9;
  cfg.threads = threads;
  return cfg;
}

}  // namespace

TEST_CASE("format_fixed") {
  CHECK(ppsp::format_fixed(0.5) == "0.5000");
  CHECK(ppsp::format_fixed(1.0) == "1.0000");
  CHECK(ppsp::format_fixed(0.12345) == "0.1235");
  CHECK(ppsp::format_fixed(0.0) == "0.0000");
  CHECK(ppsp::format_fixed(2.5, 1) == "2.5");
}

TEST_CASE("CSV header and row format") {
  CHECK(std::string(ppsp::kSweepCsvHeader) ==
        "k4,trials,acc_attack1_random,acc_attack1_neighbor,acc_attack2_random,"
        "acc_attack2_neighbor,mean_abs_error_bits,max_abs_error_bits");
  const std::vector<SweepRow> rows = {{128, 10, 1.0, 0.9, 0.5, 0.25, 0.0, 0}, {136, 10, 0.1, 0.2, 0.3, 0.4, 12.5, 14}};
  CHECK(ppsp::sweep_csv(rows) == std::string(ppsp::kSweepCsvHeader) +
                                     "\n128,10,1.0000,0.9000,0.5000,0.2500,0.0000,0\n"
                                     "136,10,0.1000,0.2000,0.3000,0.4000,12.5000,14\n");
}

TEST_CASE("summarize picks the first qualifying grid points") {
  std::vector<SweepRow> rows = {
      {128, 1, 1.0, 1.0, 1.0, 1.0, 0.0, 0},
      {136, 1, 0.9, 0.55, 1.0, 1.0, 0.0, 0},
      {144, 1, 0.5, 0.5, 0.8, 0.2, 3.0, 5},
      {152, 1, 0.6, 0.5, 0.4, 0.5, 9.0, 12},
  };
  const auto s = ppsp::summarize(rows);
  CHECK(s.first_error_k4 == 144u);
  CHECK(s.attack1_random_collapse_k4 == 144u);
  CHECK(s.attack1_neighbor_collapse_k4 == 136u);
  CHECK(s.attack2_random_collapse_k4 == 152u);
  CHECK(s.attack2_neighbor_collapse_k4 == 144u);
  CHECK_FALSE(ppsp::summarize(std::vector<SweepRow>(rows.begin(), rows.begin() + 1)).first_error_k4);
}

TEST_CASE("correctness trials") {
  auto cfg = small_config(20);
  cfg.b_mode = ppsp::InputMode::kRandom;
  const auto ok = ppsp::run_correctness_trials(cfg);
  CHECK(ok.failures == 0);
  CHECK(ok.max_abs_error_bits == 0);
  CHECK(ok.mean_abs_error_bits == 0.0);

  cfg.base_params.k4 = 240;
  cfg.b_mode = ppsp::InputMode::kZero;
  const auto bad = ppsp::run_correctness_trials(cfg);
  CHECK(bad.failures == 20);
  CHECK(bad.max_abs_error_bits > 60);
  CHECK(bad.max_abs_error_bits == ppsp::bit_length(bad.max_abs_error));
}

TEST_CASE("attack trials are reproducible and sensitive to the seed") {
  auto cfg = small_config(30);
  cfg.base_params.k4 = 240;
  const double x = ppsp::run_attack_trials(cfg, ppsp::AttackKind::kAttack2GeneralA);
  CHECK(x == ppsp::run_attack_trials(cfg, ppsp::AttackKind::kAttack2GeneralA));
  cfg.base_params.k4 = 128;
  CHECK(ppsp::run_attack_trials(cfg, ppsp::AttackKind::kAttack1AZero) == 1.0);
  CHECK(ppsp::run_original_attack_trials(cfg) == 1.0);
  CHECK(ppsp::run_candidate_test_trials(cfg) == 1.0);
}

TEST_CASE("thread count does not change results") {
  auto one = small_config(24, 1);
  auto four = small_config(24, 4);
  one.base_params.k4 = four.base_params.k4 = 232;
  CHECK(ppsp::run_attack_trials(one, ppsp::AttackKind::kAttack1AZero) ==
        ppsp::run_attack_trials(four, ppsp::AttackKind::kAttack1AZero));
  const auto e1 = ppsp::run_correctness_trials(one);
  const auto e4 = ppsp::run_correctness_trials(four);
  CHECK(e1.max_abs_error == e4.max_abs_error);
  CHECK(e1.mean_abs_error_bits == e4.mean_abs_error_bits);
}

TEST_CASE("sweep rows are independent of the grid they sit in") {
  const auto cfg = small_config(3);
  const auto full = ppsp::sweep_k4(cfg, 128, 400, 8);
  REQUIRE(full.size() == 35);
  for (std::size_t i = 0; i < full.size(); ++i) {
    CHECK(full[i].k4 == 128 + 8 * i);
    CHECK(full[i].trials == 3);
  }
  const auto single = ppsp::sweep_k4(cfg, 232, 232, 8);
  REQUIRE(single.size() == 1);
  CHECK(single[0] == full[13]);
  CHECK(ppsp::sweep_k4(cfg, 128, 400, 8) == full);
}
