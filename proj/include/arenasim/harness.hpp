#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "arenasim/infotheory.hpp"
#include "arenasim/io.hpp"
#include "arenasim/learner.hpp"

namespace arenasim {

// Random stream layout, derived from the master seed by counter (see
// derive_seed): stream 0 seeds the learning trial; stream 1 is the replay
// root, from which policy substreams and then replicate substreams hang.
inline constexpr std::uint64_t kLearnStream = 0;
inline constexpr std::uint64_t kReplayRootStream = 1;

struct ExperimentConfig {
  std::uint64_t master_seed = 1;
  LearnerConfig learner{};
  std::uint64_t replay_moves = 200;
  int replay_replicates = 1;
  std::vector<BinScheme> schemes = BinScheme::all();
  SimSpecs specs{};
  std::filesystem::path out_dir = "out";
  int baseline_state_count = 9;       // 9 occurring states, or the 7 tabulated ones
  bool use_reference_policies = false;  // CLI: --policies-from-paper
  bool replay_with_explore = false;   // keep the 1-in-5 random moves during replay

  void validate() const;  // throws std::invalid_argument before any simulation
};

// The built-in reference policy table: eight policies from the all-RANDOM
// start to the final one, with states 7 and 8 always RANDOM.
std::vector<PolicyTraceEntry> reference_policy_trace();

// Fixed-policy replay from the standard start pose: no learning updates
// and, unless with_explore is set, no exploration phase.
std::vector<MoveRecord> replay_policy(const Policy& policy, std::uint64_t moves,
                                      RandomStream& rng, const SimSpecs& specs,
                                      bool with_explore = false);

std::uint64_t replay_seed(const ExperimentConfig& config, int policy_id, int replicate);

// Replay CSV naming: replay_p<policy_id>_r<replicate>.csv. Parses a path
// of that shape into (policy_id, replicate); returns false otherwise.
std::string replay_csv_name(int policy_id, int replicate);
bool parse_replay_csv_name(const std::filesystem::path& path, int& policy_id, int& replicate);

struct LearnArtifacts {
  std::filesystem::path trace_json;
  std::filesystem::path trajectory_csv;
  LearnResult result;
};

struct ReplayArtifacts {
  std::vector<std::filesystem::path> trajectory_csvs;  // one per replicate
};

struct AnalyzeArtifacts {
  std::filesystem::path report_csv;
  std::vector<std::filesystem::path> plotdata_csvs;
  std::vector<EntropyReport> rows;        // per (policy, replicate)
  std::vector<EntropyReport> mean_rows;   // per policy, replicate means
};

struct BaselineArtifacts {
  std::filesystem::path baseline_csv;
};

struct PipelineArtifacts {
  LearnArtifacts learn;
  std::vector<std::filesystem::path> replay_csvs;
  AnalyzeArtifacts analysis;
  BaselineArtifacts baseline;
  std::filesystem::path manifest_json;
};

LearnArtifacts cmd_learn(const ExperimentConfig& config);

ReplayArtifacts cmd_replay(const ExperimentConfig& config, const PolicyTraceEntry& entry);

// replay_csvs maps policy id to that policy's replicate files.
AnalyzeArtifacts cmd_analyze(const ExperimentConfig& config,
                             const std::vector<PolicyTraceEntry>& policies,
                             const std::map<int, std::vector<std::filesystem::path>>& replay_csvs);

BaselineArtifacts cmd_baseline(const ExperimentConfig& config,
                               const std::vector<PolicyTraceEntry>& policies);

PipelineArtifacts cmd_pipeline(const ExperimentConfig& config);

// Rebuilds the experiment configuration recorded in a manifest.json;
// rerunning the pipeline with it (same out_dir) reproduces every artifact
// byte for byte.
ExperimentConfig read_manifest_config(const std::filesystem::path& manifest_json);

}  // namespace arenasim
