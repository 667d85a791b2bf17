#include "arenasim/harness.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace arenasim {

namespace {

using nlohmann::json;

constexpr const char* kToolVersion = "0.1.0";

std::string format_report_double(double v) {
  std::array<char, 64> buf{};
  const int n = std::snprintf(buf.data(), buf.size(), "%.6g", v);
  return std::string(buf.data(), static_cast<std::size_t>(n));
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error(path.string() + ": cannot open for writing");
  }
  return out;
}

Policy make_policy(int id, std::initializer_list<const char*> letters) {
  Policy policy = Policy::all_random(id);
  std::size_t s = 0;
  for (const char* letter : letters) {
    if (std::string_view(letter) != "RAND") {
      policy.entries[s] = *action_from_letter(letter[0]);
    }
    ++s;
  }
  return policy;
}

double mean_of(const std::vector<double>& values) {
  double sum = 0.0;
  for (double v : values) {
    sum += v;
  }
  return sum / static_cast<double>(values.size());
}

json config_to_json(const ExperimentConfig& config) {
  json bins = json::array();
  for (const BinScheme& scheme : config.schemes) {
    bins.push_back(scheme.name);
  }
  return json{
      {"master_seed", config.master_seed},
      {"trial_moves", config.learner.trial_moves},
      {"episode_length", config.learner.episode_length},
      {"explore_moves_per_episode", config.learner.explore_moves_per_episode},
      {"replay_moves", config.replay_moves},
      {"replay_replicates", config.replay_replicates},
      {"bins", bins},
      {"noise",
       {{"enabled", config.specs.noise.enabled},
        {"forward_overshoot_cm",
         {config.specs.noise.forward_overshoot_lo_cm, config.specs.noise.forward_overshoot_hi_cm}},
        {"rotation_rad", {config.specs.noise.rotation_lo_rad, config.specs.noise.rotation_hi_rad}}}},
      {"arena_cm", {config.specs.arena.white_width_cm, config.specs.arena.white_height_cm}},
      {"robot_side_cm", config.specs.robot.side_cm},
      {"forward_cap_cm", config.specs.forward_cap_cm},
      {"baseline_state_count", config.baseline_state_count},
      {"policies_from_paper", config.use_reference_policies},
      {"replay_with_explore", config.replay_with_explore},
  };
}

}  // namespace

void ExperimentConfig::validate() const {
  learner.validate();
  if (replay_moves == 0) {
    throw std::invalid_argument("replay_moves must be positive");
  }
  if (replay_replicates <= 0) {
    throw std::invalid_argument("replay_replicates must be positive");
  }
  if (schemes.empty()) {
    throw std::invalid_argument("at least one bin scheme is required");
  }
  if (specs.arena.white_width_cm <= 0.0 || specs.arena.white_height_cm <= 0.0) {
    throw std::invalid_argument("arena dimensions must be positive");
  }
  if (specs.robot.side_cm <= 0.0) {
    throw std::invalid_argument("robot side must be positive");
  }
  if (specs.noise.forward_overshoot_lo_cm > specs.noise.forward_overshoot_hi_cm ||
      specs.noise.rotation_lo_rad > specs.noise.rotation_hi_rad) {
    throw std::invalid_argument("noise interval bounds out of order");
  }
  if (specs.forward_cap_cm <= 0.0) {
    throw std::invalid_argument("forward cap must be positive");
  }
  if (baseline_state_count != 7 && baseline_state_count != 9) {
    throw std::invalid_argument("baseline state count must be 7 or 9");
  }
}

std::vector<PolicyTraceEntry> reference_policy_trace() {
  // P[0..6] per policy; states 7 and 8 stay RANDOM throughout.
  std::vector<PolicyTraceEntry> trace;
  trace.push_back({make_policy(1, {"RAND", "RAND", "RAND", "RAND", "RAND", "RAND", "RAND"}), 1, 6});
  trace.push_back({make_policy(2, {"F", "RAND", "RAND", "RAND", "RAND", "RAND", "RAND"}), 7, 2});
  trace.push_back({make_policy(3, {"F", "RAND", "RAND", "A", "RAND", "RAND", "RAND"}), 9, 3});
  trace.push_back({make_policy(4, {"F", "RAND", "A", "A", "RAND", "RAND", "RAND"}), 12, 2});
  trace.push_back({make_policy(5, {"F", "R", "A", "A", "RAND", "RAND", "RAND"}), 14, 1});
  trace.push_back({make_policy(6, {"F", "R", "A", "A", "F", "RAND", "RAND"}), 15, 52});
  trace.push_back({make_policy(7, {"F", "R", "L", "A", "F", "RAND", "RAND"}), 67, 26});
  trace.push_back({make_policy(8, {"F", "R", "L", "A", "F", "RAND", "F"}), 93, 410});
  return trace;
}

std::vector<MoveRecord> replay_policy(const Policy& policy, std::uint64_t moves,
                                      RandomStream& rng, const SimSpecs& specs,
                                      bool with_explore) {
  std::vector<MoveRecord> trajectory;
  trajectory.reserve(moves);
  Pose pose = specs.start_pose();
  for (std::uint64_t move = 1; move <= moves; ++move) {
    const bool explore = with_explore && (move - 1) % 5 == 0;
    MoveRecord record;
    if (explore) {
      record = execute_move(pose, random_action(rng), rng, specs);
      record.phase = Phase::explore;
    } else {
      record = execute_move(pose, policy, rng, specs);
      record.phase = with_explore ? Phase::exploit : Phase::policy;
    }
    record.move_index = move;
    record.episode_index = (move - 1) / 5 + 1;
    pose = record.pose_after;
    if (distance_outside({pose.x_cm, pose.y_cm}, specs.arena) > 0.0 ||
        max_sensor_overhang(pose, specs.arena, specs.robot) > 8.5) {
      std::fprintf(stderr, "warning: pose envelope violated at replay move %llu\n",
                   static_cast<unsigned long long>(move));
    }
    trajectory.push_back(record);
  }
  return trajectory;
}

std::uint64_t replay_seed(const ExperimentConfig& config, int policy_id, int replicate) {
  const std::uint64_t replay_root = derive_seed(config.master_seed, kReplayRootStream);
  const std::uint64_t policy_stream =
      derive_seed(replay_root, static_cast<std::uint64_t>(policy_id));
  return derive_seed(policy_stream, static_cast<std::uint64_t>(replicate));
}

std::string replay_csv_name(int policy_id, int replicate) {
  return "replay_p" + std::to_string(policy_id) + "_r" + std::to_string(replicate) + ".csv";
}

bool parse_replay_csv_name(const std::filesystem::path& path, int& policy_id, int& replicate) {
  const std::string name = path.filename().string();
  int consumed = 0;
  if (std::sscanf(name.c_str(), "replay_p%d_r%d.csv%n", &policy_id, &replicate, &consumed) == 2 &&
      consumed == static_cast<int>(name.size())) {
    return true;
  }
  return false;
}

LearnArtifacts cmd_learn(const ExperimentConfig& config) {
  config.validate();
  std::filesystem::create_directories(config.out_dir);

  LearnerConfig learner = config.learner;
  learner.seed = derive_seed(config.master_seed, kLearnStream);
  RandomStream rng(learner.seed);

  LearnArtifacts artifacts;
  artifacts.result = run_learning_trial(learner, config.specs, rng);
  artifacts.trace_json = config.out_dir / "trace.json";
  artifacts.trajectory_csv = config.out_dir / "learn_trajectory.csv";
  write_trace_json(artifacts.trace_json, artifacts.result.trace);
  write_trajectory_csv(artifacts.trajectory_csv, artifacts.result.trajectory);
  return artifacts;
}

ReplayArtifacts cmd_replay(const ExperimentConfig& config, const PolicyTraceEntry& entry) {
  config.validate();
  std::filesystem::create_directories(config.out_dir);

  ReplayArtifacts artifacts;
  for (int replicate = 1; replicate <= config.replay_replicates; ++replicate) {
    RandomStream rng(replay_seed(config, entry.policy.id, replicate));
    const auto trajectory = replay_policy(entry.policy, config.replay_moves, rng, config.specs,
                                          config.replay_with_explore);
    const auto path = config.out_dir / replay_csv_name(entry.policy.id, replicate);
    write_trajectory_csv(path, trajectory);
    artifacts.trajectory_csvs.push_back(path);
  }
  return artifacts;
}

AnalyzeArtifacts cmd_analyze(const ExperimentConfig& config,
                             const std::vector<PolicyTraceEntry>& policies,
                             const std::map<int, std::vector<std::filesystem::path>>& replay_csvs) {
  config.validate();
  std::filesystem::create_directories(config.out_dir);
  const std::vector<StateId> state_set = default_state_set(config.baseline_state_count);

  AnalyzeArtifacts artifacts;
  for (const auto& [policy_id, paths] : replay_csvs) {
    if (paths.empty()) {
      throw std::invalid_argument("no replay CSVs for policy " + std::to_string(policy_id));
    }
    const auto found =
        std::find_if(policies.begin(), policies.end(), [id = policy_id](const auto& e) {
          return e.policy.id == id;
        });
    if (found == policies.end()) {
      throw std::invalid_argument("unknown policy id " + std::to_string(policy_id));
    }

    std::vector<EntropyReport> rows;
    for (const auto& path : paths) {
      const auto trajectory = read_trajectory_csv(path);
      if (trajectory.empty()) {
        throw std::invalid_argument(path.string() + ": empty trajectory");
      }
      rows.push_back(analyze_replay(trajectory, config.schemes, found->policy, state_set));
    }

    EntropyReport mean = rows.front();
    auto collect = [&rows](auto field) {
      std::vector<double> values;
      values.reserve(rows.size());
      for (const auto& row : rows) {
        values.push_back(field(row));
      }
      return values;
    };
    mean.h_state = mean_of(collect([](const auto& r) { return r.h_state; }));
    mean.h_action = mean_of(collect([](const auto& r) { return r.h_action; }));
    for (std::size_t i = 0; i < mean.h_reward.size(); ++i) {
      mean.h_reward[i].second =
          mean_of(collect([i](const auto& r) { return r.h_reward[i].second; }));
    }
    mean.total_reward = mean_of(collect([](const auto& r) { return r.total_reward; }));

    artifacts.rows.insert(artifacts.rows.end(), rows.begin(), rows.end());
    artifacts.mean_rows.push_back(mean);
  }

  // entropy_report.csv: one row per (policy, replicate), then the
  // replicate-mean rows with "mean" in the replicate column.
  artifacts.report_csv = config.out_dir / "entropy_report.csv";
  std::ofstream report = open_for_write(artifacts.report_csv);
  report << "policy_id,replicate,H_state,H_action,H_reward_r0,H_reward_r1,H_reward_r2,"
            "H_action_pred,H_state_pred,total_reward\n";
  auto reward_cell = [](const EntropyReport& row, const std::string& scheme) -> std::string {
    for (const auto& [name, value] : row.h_reward) {
      if (name == scheme) {
        return format_report_double(value);
      }
    }
    return "";
  };
  auto write_row = [&](const EntropyReport& row, const std::string& replicate) {
    report << row.policy_id << ',' << replicate << ',' << format_report_double(row.h_state)
           << ',' << format_report_double(row.h_action) << ',' << reward_cell(row, "R0") << ','
           << reward_cell(row, "R1") << ',' << reward_cell(row, "R2") << ','
           << format_report_double(row.h_action_predicted) << ','
           << format_report_double(row.h_state_predicted) << ','
           << format_report_double(row.total_reward) << '\n';
  };
  {
    std::size_t i = 0;
    for (const auto& [policy_id, paths] : replay_csvs) {
      for (std::size_t replicate = 1; replicate <= paths.size(); ++replicate) {
        write_row(artifacts.rows[i++], std::to_string(replicate));
      }
    }
  }
  for (const EntropyReport& mean : artifacts.mean_rows) {
    write_row(mean, "mean");
  }
  if (!report) {
    throw std::runtime_error(artifacts.report_csv.string() + ": write failed");
  }
  report.close();

  // Plot-ready (policy_id, series, value) triples from the mean rows.
  const auto plot_path = [&](const char* name) { return config.out_dir / name; };
  {
    std::ofstream plot = open_for_write(plot_path("plot_entropy.csv"));
    plot << "policy_id,series,value\n";
    for (const EntropyReport& mean : artifacts.mean_rows) {
      plot << mean.policy_id << ",H_state," << format_report_double(mean.h_state) << '\n';
      plot << mean.policy_id << ",H_action," << format_report_double(mean.h_action) << '\n';
      for (const auto& [name, value] : mean.h_reward) {
        std::string scheme = name;
        std::transform(scheme.begin(), scheme.end(), scheme.begin(),
                       [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
        plot << mean.policy_id << ",H_reward_" << scheme << ','
             << format_report_double(value) << '\n';
      }
    }
    artifacts.plotdata_csvs.push_back(plot_path("plot_entropy.csv"));
  }
  {
    std::ofstream plot = open_for_write(plot_path("plot_total_reward.csv"));
    plot << "policy_id,series,value\n";
    for (const EntropyReport& mean : artifacts.mean_rows) {
      plot << mean.policy_id << ",total_reward," << format_report_double(mean.total_reward)
           << '\n';
    }
    artifacts.plotdata_csvs.push_back(plot_path("plot_total_reward.csv"));
  }
  {
    std::ofstream plot = open_for_write(plot_path("plot_predicted_vs_observed.csv"));
    plot << "policy_id,series,value\n";
    for (const EntropyReport& mean : artifacts.mean_rows) {
      plot << mean.policy_id << ",H_action_observed," << format_report_double(mean.h_action)
           << '\n';
      plot << mean.policy_id << ",H_action_predicted,"
           << format_report_double(mean.h_action_predicted) << '\n';
      plot << mean.policy_id << ",H_state_observed," << format_report_double(mean.h_state)
           << '\n';
      plot << mean.policy_id << ",H_state_predicted,"
           << format_report_double(mean.h_state_predicted) << '\n';
    }
    artifacts.plotdata_csvs.push_back(plot_path("plot_predicted_vs_observed.csv"));
  }
  return artifacts;
}

BaselineArtifacts cmd_baseline(const ExperimentConfig& config,
                               const std::vector<PolicyTraceEntry>& policies) {
  config.validate();
  std::filesystem::create_directories(config.out_dir);
  const std::vector<StateId> state_set = default_state_set(config.baseline_state_count);

  BaselineArtifacts artifacts;
  artifacts.baseline_csv = config.out_dir / "baseline.csv";
  std::ofstream out = open_for_write(artifacts.baseline_csv);
  out << "policy_id,H_action_pred,H_state_pred\n";
  for (const PolicyTraceEntry& entry : policies) {
    out << entry.policy.id << ','
        << format_report_double(predicted_action_entropy(entry.policy, state_set)) << ','
        << format_report_double(predicted_state_entropy(state_set)) << '\n';
  }
  if (!out) {
    throw std::runtime_error(artifacts.baseline_csv.string() + ": write failed");
  }
  return artifacts;
}

PipelineArtifacts cmd_pipeline(const ExperimentConfig& config) {
  config.validate();
  std::filesystem::create_directories(config.out_dir);

  PipelineArtifacts artifacts;
  std::vector<PolicyTraceEntry> policies;
  try {
    if (config.use_reference_policies) {
      policies = reference_policy_trace();
      artifacts.learn.trace_json = config.out_dir / "trace.json";
      write_trace_json(artifacts.learn.trace_json, policies);
    } else {
      artifacts.learn = cmd_learn(config);
      policies = artifacts.learn.result.trace;
    }
  } catch (const std::exception& e) {
    throw std::runtime_error(std::string("pipeline stage learn failed: ") + e.what());
  }

  std::map<int, std::vector<std::filesystem::path>> replay_csvs;
  try {
    for (const PolicyTraceEntry& entry : policies) {
      const auto replays = cmd_replay(config, entry);
      replay_csvs[entry.policy.id] = replays.trajectory_csvs;
      artifacts.replay_csvs.insert(artifacts.replay_csvs.end(), replays.trajectory_csvs.begin(),
                                   replays.trajectory_csvs.end());
    }
  } catch (const std::exception& e) {
    throw std::runtime_error(std::string("pipeline stage replay failed: ") + e.what());
  }

  try {
    artifacts.analysis = cmd_analyze(config, policies, replay_csvs);
  } catch (const std::exception& e) {
    throw std::runtime_error(std::string("pipeline stage analyze failed: ") + e.what());
  }

  try {
    artifacts.baseline = cmd_baseline(config, policies);
  } catch (const std::exception& e) {
    throw std::runtime_error(std::string("pipeline stage baseline failed: ") + e.what());
  }

  // Manifest: config snapshot, derived seeds, and a content hash per
  // artifact; enough to reproduce every output bit-exactly.
  json seeds;
  seeds["learn"] = derive_seed(config.master_seed, kLearnStream);
  json replay_seeds = json::object();
  for (const auto& entry : policies) {
    json per_policy = json::array();
    for (int replicate = 1; replicate <= config.replay_replicates; ++replicate) {
      per_policy.push_back(replay_seed(config, entry.policy.id, replicate));
    }
    replay_seeds[std::to_string(entry.policy.id)] = per_policy;
  }
  seeds["replay"] = replay_seeds;

  std::vector<std::filesystem::path> files;
  if (!config.use_reference_policies) {
    files.push_back(artifacts.learn.trajectory_csv);
  }
  files.push_back(artifacts.learn.trace_json);
  files.insert(files.end(), artifacts.replay_csvs.begin(), artifacts.replay_csvs.end());
  files.push_back(artifacts.analysis.report_csv);
  files.insert(files.end(), artifacts.analysis.plotdata_csvs.begin(),
               artifacts.analysis.plotdata_csvs.end());
  files.push_back(artifacts.baseline.baseline_csv);

  json artifact_list = json::array();
  for (const auto& file : files) {
    std::array<char, 32> hex{};
    std::snprintf(hex.data(), hex.size(), "0x%016llx",
                  static_cast<unsigned long long>(fnv1a64_file(file)));
    artifact_list.push_back(json{{"path", file.filename().string()}, {"fnv1a64", hex.data()}});
  }

  const json manifest = {{"tool", "arenasim"},
                         {"version", kToolVersion},
                         {"hash_algo", "fnv1a64"},
                         {"config", config_to_json(config)},
                         {"seeds", seeds},
                         {"artifacts", artifact_list}};
  artifacts.manifest_json = config.out_dir / "manifest.json";
  std::ofstream out = open_for_write(artifacts.manifest_json);
  out << manifest.dump(2) << '\n';
  if (!out) {
    throw std::runtime_error(artifacts.manifest_json.string() + ": write failed");
  }
  return artifacts;
}

ExperimentConfig read_manifest_config(const std::filesystem::path& manifest_json) {
  std::ifstream in(manifest_json);
  if (!in) {
    throw std::runtime_error(manifest_json.string() + ": cannot open for reading");
  }
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw std::runtime_error(manifest_json.string() + ": malformed JSON: " + e.what());
  }

  ExperimentConfig config;
  try {
    const json& c = doc.at("config");
    config.master_seed = c.at("master_seed").get<std::uint64_t>();
    config.learner.trial_moves = c.at("trial_moves").get<std::uint64_t>();
    config.learner.episode_length = c.at("episode_length").get<int>();
    config.learner.explore_moves_per_episode = c.at("explore_moves_per_episode").get<int>();
    config.replay_moves = c.at("replay_moves").get<std::uint64_t>();
    config.replay_replicates = c.at("replay_replicates").get<int>();
    config.schemes.clear();
    for (const json& name : c.at("bins")) {
      for (BinScheme& scheme : BinScheme::all()) {
        if (scheme.name == name.get<std::string>()) {
          config.schemes.push_back(std::move(scheme));
        }
      }
    }
    config.specs.noise.enabled = c.at("noise").at("enabled").get<bool>();
    config.specs.noise.forward_overshoot_lo_cm =
        c.at("noise").at("forward_overshoot_cm").at(0).get<double>();
    config.specs.noise.forward_overshoot_hi_cm =
        c.at("noise").at("forward_overshoot_cm").at(1).get<double>();
    config.specs.noise.rotation_lo_rad = c.at("noise").at("rotation_rad").at(0).get<double>();
    config.specs.noise.rotation_hi_rad = c.at("noise").at("rotation_rad").at(1).get<double>();
    config.specs.arena.white_width_cm = c.at("arena_cm").at(0).get<double>();
    config.specs.arena.white_height_cm = c.at("arena_cm").at(1).get<double>();
    config.specs.robot.side_cm = c.at("robot_side_cm").get<double>();
    config.specs.forward_cap_cm = c.at("forward_cap_cm").get<double>();
    config.baseline_state_count = c.at("baseline_state_count").get<int>();
    config.use_reference_policies = c.at("policies_from_paper").get<bool>();
    config.replay_with_explore = c.at("replay_with_explore").get<bool>();
  } catch (const json::exception& e) {
    throw std::runtime_error(manifest_json.string() + ": malformed config: " + e.what());
  }
  return config;
}

}  // namespace arenasim
