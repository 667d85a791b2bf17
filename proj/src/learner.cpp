#include "arenasim/learner.hpp"

#include <cstdio>
#include <stdexcept>

namespace arenasim {

namespace {

std::size_t action_index(Action a) { return static_cast<std::size_t>(a); }

void check_canonical(StateId state) {
  if (state < 0 || state >= kCanonicalStateCount) {
    throw std::out_of_range("value table covers canonical states 0-8 only");
  }
}

}  // namespace

const ValueCell& ValueTable::cell(StateId state, Action action) const {
  check_canonical(state);
  return cells_[static_cast<std::size_t>(state)][action_index(action)];
}

void ValueTable::record(StateId state, Action action, double reward) {
  check_canonical(state);
  ValueCell& c = cells_[static_cast<std::size_t>(state)][action_index(action)];
  ++observations_;
  if (c.count == 0) {
    c.first_seen = observations_;
  }
  ++c.count;
  c.mean += (reward - c.mean) / static_cast<double>(c.count);
}

void LearnerConfig::validate() const {
  if (episode_length <= 0 || explore_moves_per_episode <= 0) {
    throw std::invalid_argument("episode counts must be positive");
  }
  if (explore_moves_per_episode > episode_length) {
    throw std::invalid_argument("explore moves per episode exceed episode length");
  }
}

SelectedAction select_action(StateId state, int move_in_episode, const Policy& policy,
                             RandomStream& rng, int explore_moves_per_episode,
                             int episode_length) {
  if (move_in_episode < 1 || move_in_episode > episode_length) {
    throw std::out_of_range("move_in_episode outside [1, episode_length]");
  }
  if (move_in_episode <= explore_moves_per_episode) {
    return {random_action(rng), Phase::explore};
  }
  return {policy_action(policy, state, rng), Phase::exploit};
}

bool record_and_update(ValueTable& table, Policy& policy, const MoveRecord& record) {
  if (record.reward <= 0.0 || record.state_before >= kCanonicalStateCount) {
    return false;
  }
  table.record(record.state_before, record.action, record.reward);

  const std::optional<Action> incumbent = policy.entry(record.state_before);
  std::optional<Action> best;
  double best_mean = 0.0;
  std::uint64_t best_first = 0;
  for (Action a : kAllActions) {
    const ValueCell& c = table.cell(record.state_before, a);
    if (c.count == 0 || c.mean <= 0.0) {
      continue;
    }
    const bool wins = !best || c.mean > best_mean ||
                      (c.mean == best_mean && a == incumbent && best != incumbent) ||
                      (c.mean == best_mean && best != incumbent && c.first_seen < best_first);
    if (wins) {
      best = a;
      best_mean = c.mean;
      best_first = c.first_seen;
    }
  }
  if (best == incumbent) {
    return false;
  }
  policy.entries[static_cast<std::size_t>(record.state_before)] = best;
  return true;
}

LearnResult run_learning_trial(const LearnerConfig& config, const SimSpecs& specs,
                               RandomStream& rng) {
  config.validate();

  LearnResult result;
  Pose pose = specs.start_pose();
  Policy policy = Policy::all_random(1);
  result.trace.push_back({policy, 1, 0});
  result.trajectory.reserve(config.trial_moves);

  for (std::uint64_t move = 1; move <= config.trial_moves; ++move) {
    const int move_in_episode =
        static_cast<int>((move - 1) % static_cast<std::uint64_t>(config.episode_length)) + 1;
    const StateId state = encode_state(sense(pose, specs.arena, specs.robot));
    const SelectedAction selected =
        select_action(state, move_in_episode, policy, rng, config.explore_moves_per_episode,
                      config.episode_length);

    MoveRecord record = execute_move(pose, selected.action, rng, specs);
    record.move_index = move;
    record.episode_index = (move - 1) / static_cast<std::uint64_t>(config.episode_length) + 1;
    record.phase = selected.phase;
    pose = record.pose_after;

    // Envelope violations indicate a geometry problem and are flagged,
    // never clamped.
    if (distance_outside({pose.x_cm, pose.y_cm}, specs.arena) > 0.0 ||
        max_sensor_overhang(pose, specs.arena, specs.robot) > 8.5) {
      std::fprintf(stderr, "warning: pose envelope violated at move %llu\n",
                   static_cast<unsigned long long>(move));
    }

    result.trace.back().moves_used += 1;
    if (record_and_update(result.table, policy, record)) {
      policy.id += 1;
      result.trace.push_back({policy, move + 1, 0});
    }
    result.trajectory.push_back(record);
  }
  return result;
}

}  // namespace arenasim
