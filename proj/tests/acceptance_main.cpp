// Acceptance suite: runs every acceptance criterion at its stated
// tolerance and prints one PASS/FAIL line per criterion. Exit status is
// the number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "arenasim/harness.hpp"
#include "oracles.hpp"

using namespace arenasim;
namespace fs = std::filesystem;

namespace {

struct Check {
  std::string label;
  bool ok;
};

struct CriterionResult {
  bool ok = true;
  std::vector<Check> checks;

  void expect(const std::string& label, bool passed) {
    checks.push_back({label, passed});
    ok = ok && passed;
  }
};

// Replicate-mean replay statistics for the eight reference policies.
struct ReplayStats {
  std::vector<double> h_state, h_action, h_r0, h_r2, total_reward, h_action_pred;
};

constexpr int kReplicates = 20;
constexpr std::uint64_t kReplayMoves = 200;

ReplayStats reference_replay_stats(std::uint64_t master_seed) {
  ExperimentConfig config;
  config.master_seed = master_seed;
  const auto schemes = BinScheme::all();
  const auto states = default_state_set(9);

  ReplayStats stats;
  for (const PolicyTraceEntry& entry : reference_policy_trace()) {
    double hs = 0.0, ha = 0.0, h0 = 0.0, h2 = 0.0, reward = 0.0;
    double pred = 0.0;
    for (int replicate = 1; replicate <= kReplicates; ++replicate) {
      RandomStream rng(replay_seed(config, entry.policy.id, replicate));
      const auto trajectory = replay_policy(entry.policy, kReplayMoves, rng, config.specs);
      const EntropyReport report = analyze_replay(trajectory, schemes, entry.policy, states);
      hs += report.h_state;
      ha += report.h_action;
      h0 += report.h_reward[0].second;
      h2 += report.h_reward[2].second;
      reward += report.total_reward;
      pred = report.h_action_predicted;
    }
    stats.h_state.push_back(hs / kReplicates);
    stats.h_action.push_back(ha / kReplicates);
    stats.h_r0.push_back(h0 / kReplicates);
    stats.h_r2.push_back(h2 / kReplicates);
    stats.total_reward.push_back(reward / kReplicates);
    stats.h_action_pred.push_back(pred);
  }
  return stats;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

// --- criterion 1: entropy estimator exactness -------------------------

CriterionResult criterion_entropy_exactness() {
  CriterionResult result;

  Histogram skewed(2);
  skewed.add(0, 3);
  skewed.add(1, 1);
  result.expect("H{3,1} = 0.811278 +- 1e-9",
                std::abs(entropy(skewed) - 0.8112781244591328) <= 1e-9);

  for (std::size_t k : {2, 4, 5, 8, 16}) {
    Histogram uniform(k);
    for (std::size_t s = 0; s < k; ++s) {
      uniform.add(s, 3);
    }
    result.expect("uniform-" + std::to_string(k) + " = log2 k +- 1e-12",
                  std::abs(entropy(uniform) - std::log2(static_cast<double>(k))) <= 1e-12);
  }

  Histogram padded(6);
  padded.add(1, 3);
  padded.add(4, 1);
  result.expect("zero-count symbols change nothing",
                entropy(padded) == entropy(skewed));
  return result;
}

// --- criterion 2: geometry oracle --------------------------------------

CriterionResult criterion_geometry() {
  CriterionResult result;
  const SimSpecs specs;
  const NoiseSpec off{0.0, 1.5, -0.06, 0.06, false};
  RandomStream rng(0);

  const auto straight =
      apply_forward(specs.start_pose(), rng, off, specs.arena, specs.robot);
  result.expect("center forward travels 57.25 +- 1e-9",
                std::abs(straight.travel_cm - 57.25) <= 1e-9);
  result.expect("center forward reward 5.725 +- 1e-9",
                std::abs(reward_for(0, Action::forward, 3, straight.travel_cm) - 5.725) <= 1e-9);

  Pose up = specs.start_pose();
  up.theta_rad = kTau / 4.0;
  const auto vertical = apply_forward(up, rng, off, specs.arena, specs.robot);
  result.expect("center forward at pi/2 travels 44.1 +- 1e-9",
                std::abs(vertical.travel_cm - 44.1) <= 1e-9);

  // 110.3 cm of clearance: the 100 cm cap binds.
  result.expect("cap binds with 110.3 cm clearance",
                forward_distance({10.0, 50.0, 0.0}, specs.arena, specs.robot) == 100.0);
  return result;
}

// --- criterion 3: learned-policy optimality ----------------------------

CriterionResult criterion_learner_optimality(const testing::RewardOracle& oracle,
                                             std::uint64_t seed_base) {
  CriterionResult result;
  const SimSpecs specs;
  LearnerConfig config;

  const int trials = 30;
  int optimal_trials = 0;
  for (int trial = 0; trial < trials; ++trial) {
    RandomStream rng(derive_seed(seed_base, static_cast<std::uint64_t>(trial)));
    const LearnResult learn = run_learning_trial(config, specs, rng);

    std::array<int, kCanonicalStateCount> visits{};
    for (const MoveRecord& record : learn.trajectory) {
      if (record.state_before < kCanonicalStateCount) {
        visits[static_cast<std::size_t>(record.state_before)] += 1;
      }
    }
    bool all_match = true;
    for (StateId s = 0; s < kCanonicalStateCount; ++s) {
      if (visits[static_cast<std::size_t>(s)] >= 20 &&
          learn.trace.back().policy.entry(s) != oracle.argmax(s)) {
        all_match = false;
      }
    }
    optimal_trials += all_match ? 1 : 0;
  }
  result.expect("final policy optimal at >=20-visit states in >=90% of 30 trials (" +
                    std::to_string(optimal_trials) + "/30)",
                optimal_trials * 10 >= trials * 9);
  return result;
}

// --- criteria 4-7: replay orderings ------------------------------------

CriterionResult criterion_fig4(const ReplayStats& s) {
  CriterionResult result;
  for (int i = 0; i < 4; ++i) {
    result.expect("mean H_state(" + std::to_string(i + 1) + ") > H_state(" +
                      std::to_string(i + 2) + ")  [" + fmt(s.h_state[i]) + " > " +
                      fmt(s.h_state[i + 1]) + "]",
                  s.h_state[i] > s.h_state[i + 1]);
  }
  for (int i = 0; i < 4; ++i) {
    result.expect("mean H_action(" + std::to_string(i + 1) + ") > H_action(" +
                      std::to_string(i + 2) + ")  [" + fmt(s.h_action[i]) + " > " +
                      fmt(s.h_action[i + 1]) + "]",
                  s.h_action[i] > s.h_action[i + 1]);
  }
  result.expect("mean H_action(7) > H_action(6)  [" + fmt(s.h_action[6]) + " > " +
                    fmt(s.h_action[5]) + "]",
                s.h_action[6] > s.h_action[5]);
  result.expect("mean H_state(7) > H_state(5)  [" + fmt(s.h_state[6]) + " > " +
                    fmt(s.h_state[4]) + "]",
                s.h_state[6] > s.h_state[4]);
  return result;
}

CriterionResult criterion_fig5(const ReplayStats& s) {
  CriterionResult result;
  for (int i = 0; i < 5; ++i) {
    result.expect("mean total reward(" + std::to_string(i + 1) + ") < total reward(" +
                      std::to_string(i + 2) + ")  [" + fmt(s.total_reward[i]) + " < " +
                      fmt(s.total_reward[i + 1]) + "]",
                  s.total_reward[i] < s.total_reward[i + 1]);
  }
  result.expect("mean total reward(7) < total reward(6)  [" + fmt(s.total_reward[6]) + " < " +
                    fmt(s.total_reward[5]) + "]",
                s.total_reward[6] < s.total_reward[5]);
  return result;
}

CriterionResult criterion_fig6(const ReplayStats& s) {
  CriterionResult result;
  for (int i = 0; i < 4; ++i) {
    const double dev = std::abs(s.h_action[i] - s.h_action_pred[i]);
    result.expect("|observed - predicted| H_action(policy " + std::to_string(i + 1) +
                      ") <= 0.15  [" + fmt(dev) + "]",
                  dev <= 0.15);
  }
  const double dev5 = std::abs(s.h_action[4] - s.h_action_pred[4]);
  result.expect("|observed - predicted| H_action(policy 5) >= 0.25  [" + fmt(dev5) + "]",
                dev5 >= 0.25);
  return result;
}

CriterionResult criterion_binning(const ReplayStats& s) {
  CriterionResult result;
  result.expect("R0: mean H_reward(6) < H_reward(1)  [" + fmt(s.h_r0[5]) + " < " +
                    fmt(s.h_r0[0]) + "]",
                s.h_r0[5] < s.h_r0[0]);
  result.expect("R2: mean H_reward(6) > H_reward(4)  [" + fmt(s.h_r2[5]) + " > " +
                    fmt(s.h_r2[3]) + "]",
                s.h_r2[5] > s.h_r2[3]);
  return result;
}

// --- criterion 8: determinism -------------------------------------------

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

ExperimentConfig acceptance_pipeline_config(const fs::path& out, std::uint64_t seed) {
  ExperimentConfig config;
  config.master_seed = seed;
  config.replay_replicates = kReplicates;
  config.out_dir = out;
  return config;
}

CriterionResult criterion_determinism(const testing::RewardOracle& oracle) {
  CriterionResult result;
  const fs::path base = fs::temp_directory_path() / "arenasim_acceptance";
  fs::remove_all(base);

  const ExperimentConfig run_a = acceptance_pipeline_config(base / "a", 7);
  const ExperimentConfig run_b = acceptance_pipeline_config(base / "b", 7);
  cmd_pipeline(run_a);
  cmd_pipeline(run_b);
  bool identical = true;
  int compared = 0;
  for (const auto& item : fs::directory_iterator(run_a.out_dir)) {
    const fs::path other = run_b.out_dir / item.path().filename();
    identical = identical && fs::exists(other) && slurp(item.path()) == slurp(other);
    ++compared;
  }
  result.expect("same master seed: " + std::to_string(compared) +
                    " CSV/JSON artifacts byte-identical",
                identical && compared > 0);

  const ExperimentConfig run_c = acceptance_pipeline_config(base / "c", 8);
  cmd_pipeline(run_c);
  result.expect("different seed changes the learning trajectory",
                slurp(run_a.out_dir / "learn_trajectory.csv") !=
                    slurp(run_c.out_dir / "learn_trajectory.csv"));

  const std::uint64_t second_seed = 1002;
  const ReplayStats stats = reference_replay_stats(second_seed);
  const CriterionResult c3 = criterion_learner_optimality(oracle, second_seed);
  const CriterionResult c4 = criterion_fig4(stats);
  const CriterionResult c5 = criterion_fig5(stats);
  const CriterionResult c6 = criterion_fig6(stats);
  const CriterionResult c7 = criterion_binning(stats);
  result.expect("criterion 3 passes under a second seed", c3.ok);
  result.expect("criterion 4 passes under a second seed", c4.ok);
  result.expect("criterion 5 passes under a second seed", c5.ok);
  result.expect("criterion 6 passes under a second seed", c6.ok);
  result.expect("criterion 7 passes under a second seed", c7.ok);
  return result;
}

// --- criterion 9: pipeline runtime --------------------------------------

CriterionResult criterion_runtime() {
  CriterionResult result;
  const fs::path out = fs::temp_directory_path() / "arenasim_acceptance" / "runtime";
  fs::remove_all(out);
  const ExperimentConfig config = acceptance_pipeline_config(out, 99);

  const auto start = std::chrono::steady_clock::now();
  cmd_pipeline(config);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  result.expect("default pipeline (learn 502 + replays + analysis) in " + fmt(seconds) +
                    " s < 60 s",
                seconds < 60.0);
  return result;
}

}  // namespace

int main() {
  int failed = 0;
  const auto report = [&failed](int id, const std::string& name, const CriterionResult& r) {
    std::printf("criterion %d %-4s %s\n", id, r.ok ? "PASS" : "FAIL", name.c_str());
    for (const Check& check : r.checks) {
      if (!check.ok) {
        std::printf("    failed: %s\n", check.label.c_str());
      }
    }
    failed += r.ok ? 0 : 1;
  };

  // The reward oracle is built once, before any learner runs, and is
  // independent of the learning path it judges.
  const testing::RewardOracle oracle = testing::build_reward_oracle(SimSpecs{}, 424242, 10000);

  report(1, "entropy estimator exactness", criterion_entropy_exactness());
  report(2, "geometry oracle", criterion_geometry());
  report(3, "learned-policy optimality vs brute-force oracle",
         criterion_learner_optimality(oracle, 1001));

  const ReplayStats stats = reference_replay_stats(1);
  report(4, "entropy curve shape (state/action orderings)", criterion_fig4(stats));
  report(5, "total reward shape", criterion_fig5(stats));
  report(6, "predicted vs observed action entropy", criterion_fig6(stats));
  report(7, "reward-binning behavior", criterion_binning(stats));
  report(8, "determinism and seed robustness", criterion_determinism(oracle));
  report(9, "pipeline runtime budget", criterion_runtime());

  if (failed > 0) {
    std::printf("%d of 9 criteria failed\n", failed);
  } else {
    std::printf("all 9 criteria passed\n");
  }
  return failed;
}
