#include <algorithm>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "arenasim/harness.hpp"

namespace {

using namespace arenasim;

struct CliOptions {
  ExperimentConfig config;
  std::string bins = "all";
  bool no_noise = false;
  bool from_reference = false;
  std::string trace_path;
  std::string in_dir;
  int policy_id = 1;
};

std::vector<BinScheme> schemes_from(const std::string& bins) {
  if (bins == "all") {
    return BinScheme::all();
  }
  if (bins == "r0") {
    return {BinScheme::r0()};
  }
  if (bins == "r1") {
    return {BinScheme::r1()};
  }
  return {BinScheme::r2()};
}

void add_seed_opt(CLI::App* cmd, CliOptions& opt) {
  cmd->add_option("--seed", opt.config.master_seed, "master seed for all derived streams");
}

void add_out_opts(CLI::App* cmd, CliOptions& opt) {
  cmd->add_option("--out", opt.config.out_dir, "output directory")
      ->default_str(opt.config.out_dir.string());
  cmd->set_config("--config", "", "config file with key=value overrides");
}

void add_noise_opt(CLI::App* cmd, CliOptions& opt) {
  cmd->add_flag("--no-noise", opt.no_noise, "disable forward overshoot and turn noise");
}

void add_replay_opts(CLI::App* cmd, CliOptions& opt) {
  cmd->add_option("--replay-moves", opt.config.replay_moves, "moves per replay trial");
  cmd->add_option("--replicates", opt.config.replay_replicates, "replay replicates per policy");
  cmd->add_flag("--with-explore", opt.config.replay_with_explore,
                "keep the 1-in-5 random exploration moves during replay");
}

void add_bins_opt(CLI::App* cmd, CliOptions& opt) {
  cmd->add_option("--bins", opt.bins, "reward binning scheme")
      ->check(CLI::IsMember({"r0", "r1", "r2", "all"}));
}

void add_states_opt(CLI::App* cmd, CliOptions& opt) {
  cmd->add_option("--states", opt.config.baseline_state_count,
                  "assumed state count for predicted baselines")
      ->check(CLI::IsMember({7, 9}));
}

void add_policy_source_opts(CLI::App* cmd, CliOptions& opt) {
  cmd->add_option("--trace", opt.trace_path, "trace.json with the policies to use");
  cmd->add_flag("--policies-from-paper", opt.from_reference,
                "use the built-in reference policy table instead of a learned trace");
}

void finalize(CliOptions& opt) {
  opt.config.schemes = schemes_from(opt.bins);
  opt.config.specs.noise.enabled = !opt.no_noise;
  opt.config.use_reference_policies = opt.from_reference;
}

std::vector<PolicyTraceEntry> load_policies(const CliOptions& opt) {
  if (opt.from_reference) {
    return reference_policy_trace();
  }
  if (opt.trace_path.empty()) {
    throw CLI::ValidationError("policy source", "need --trace FILE or --policies-from-paper");
  }
  return read_trace_json(opt.trace_path);
}

const PolicyTraceEntry& find_policy(const std::vector<PolicyTraceEntry>& policies, int id) {
  const auto found = std::find_if(policies.begin(), policies.end(),
                                  [id](const auto& e) { return e.policy.id == id; });
  if (found == policies.end()) {
    throw std::runtime_error("policy id " + std::to_string(id) + " not found in trace");
  }
  return *found;
}

void run_learn(CliOptions& opt) {
  finalize(opt);
  const LearnArtifacts artifacts = cmd_learn(opt.config);
  std::cout << "wrote " << artifacts.trace_json.string() << '\n'
            << "wrote " << artifacts.trajectory_csv.string() << '\n'
            << "policies: " << artifacts.result.trace.size()
            << ", moves: " << artifacts.result.trajectory.size() << '\n';
}

void run_replay(CliOptions& opt) {
  finalize(opt);
  const auto policies = load_policies(opt);
  const auto& entry = find_policy(policies, opt.policy_id);
  const ReplayArtifacts artifacts = cmd_replay(opt.config, entry);
  for (const auto& path : artifacts.trajectory_csvs) {
    std::cout << "wrote " << path.string() << '\n';
  }
}

void run_analyze(CliOptions& opt) {
  finalize(opt);
  const auto policies = load_policies(opt);
  const std::filesystem::path in_dir =
      opt.in_dir.empty() ? opt.config.out_dir : std::filesystem::path(opt.in_dir);
  std::map<int, std::vector<std::filesystem::path>> replay_csvs;
  for (const auto& item : std::filesystem::directory_iterator(in_dir)) {
    int policy_id = 0;
    int replicate = 0;
    if (item.is_regular_file() && parse_replay_csv_name(item.path(), policy_id, replicate)) {
      replay_csvs[policy_id].push_back(item.path());
    }
  }
  if (replay_csvs.empty()) {
    throw std::runtime_error("no replay_p*_r*.csv files found in " + in_dir.string());
  }
  for (auto& [id, paths] : replay_csvs) {
    std::sort(paths.begin(), paths.end());
  }
  const AnalyzeArtifacts artifacts = cmd_analyze(opt.config, policies, replay_csvs);
  std::cout << "wrote " << artifacts.report_csv.string() << '\n';
  for (const auto& path : artifacts.plotdata_csvs) {
    std::cout << "wrote " << path.string() << '\n';
  }
}

void run_baseline(CliOptions& opt) {
  finalize(opt);
  const auto policies = load_policies(opt);
  const BaselineArtifacts artifacts = cmd_baseline(opt.config, policies);
  std::cout << "wrote " << artifacts.baseline_csv.string() << '\n';
}

void run_pipeline(CliOptions& opt) {
  finalize(opt);
  const PipelineArtifacts artifacts = cmd_pipeline(opt.config);
  std::cout << "wrote " << artifacts.learn.trace_json.string() << '\n';
  if (!opt.config.use_reference_policies) {
    std::cout << "wrote " << artifacts.learn.trajectory_csv.string() << '\n';
  }
  std::cout << "wrote " << artifacts.replay_csvs.size() << " replay CSVs\n"
            << "wrote " << artifacts.analysis.report_csv.string() << '\n'
            << "wrote " << artifacts.baseline.baseline_csv.string() << '\n'
            << "wrote " << artifacts.manifest_json.string() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"arena robot simulator: Monte Carlo learning and entropy analysis"};
  app.require_subcommand(1);
  CliOptions opt;

  CLI::App* learn = app.add_subcommand("learn", "run a learning trial and write its trace");
  add_seed_opt(learn, opt);
  learn->add_option("--moves", opt.config.learner.trial_moves, "moves in the learning trial");
  add_noise_opt(learn, opt);
  add_out_opts(learn, opt);
  learn->callback([&opt] { run_learn(opt); });

  CLI::App* replay = app.add_subcommand("replay", "replay one policy without learning");
  add_seed_opt(replay, opt);
  add_policy_source_opts(replay, opt);
  replay->add_option("--policy", opt.policy_id, "policy id to replay")->required();
  add_replay_opts(replay, opt);
  add_noise_opt(replay, opt);
  add_out_opts(replay, opt);
  replay->callback([&opt] { run_replay(opt); });

  CLI::App* analyze = app.add_subcommand("analyze", "entropy report over replay CSVs");
  analyze->add_option("--in", opt.in_dir, "directory containing replay_p*_r*.csv");
  add_policy_source_opts(analyze, opt);
  add_bins_opt(analyze, opt);
  add_states_opt(analyze, opt);
  add_out_opts(analyze, opt);
  analyze->callback([&opt] { run_analyze(opt); });

  CLI::App* baseline = app.add_subcommand("baseline", "predicted entropies per policy");
  add_policy_source_opts(baseline, opt);
  add_states_opt(baseline, opt);
  add_out_opts(baseline, opt);
  baseline->callback([&opt] { run_baseline(opt); });

  CLI::App* pipeline = app.add_subcommand("pipeline", "learn, replay every policy, analyze");
  add_seed_opt(pipeline, opt);
  pipeline->add_option("--moves", opt.config.learner.trial_moves, "moves in the learning trial");
  add_replay_opts(pipeline, opt);
  add_bins_opt(pipeline, opt);
  add_states_opt(pipeline, opt);
  pipeline->add_flag("--policies-from-paper", opt.from_reference,
                     "use the built-in reference policy table instead of learning");
  add_noise_opt(pipeline, opt);
  add_out_opts(pipeline, opt);
  pipeline->callback([&opt] { run_pipeline(opt); });

  try {
    CLI11_PARSE(app, argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
