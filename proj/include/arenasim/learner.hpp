#pragma once

#include <cstdint>
#include <vector>

#include "arenasim/behavior.hpp"

namespace arenasim {

// Per (state, action) observation count and running mean of immediate
// reward. first_seen is a global observation ordinal used for stable
// tie-breaking; a count of zero marks the pair unknown.
struct ValueCell {
  std::uint64_t count = 0;
  double mean = 0.0;
  std::uint64_t first_seen = 0;
};

class ValueTable {
 public:
  const ValueCell& cell(StateId state, Action action) const;
  void record(StateId state, Action action, double reward);
  std::uint64_t observations() const { return observations_; }

 private:
  std::array<std::array<ValueCell, kActionCount>, kCanonicalStateCount> cells_{};
  std::uint64_t observations_ = 0;
};

struct LearnerConfig {
  std::uint64_t trial_moves = 502;
  int episode_length = 5;
  int explore_moves_per_episode = 1;
  std::uint64_t seed = 1;

  void validate() const;  // throws std::invalid_argument
};

// One row of the policy trace: the policy, the move at which it took
// effect, and how many moves it governed.
struct PolicyTraceEntry {
  Policy policy;
  std::uint64_t adopted_at_move = 1;
  std::uint64_t moves_used = 0;
};

struct SelectedAction {
  Action action = Action::no_move;
  Phase phase = Phase::exploit;
};

// Episode schedule: the first explore_moves_per_episode moves of each
// episode draw a uniformly random action; the rest follow the policy.
SelectedAction select_action(StateId state, int move_in_episode, const Policy& policy,
                             RandomStream& rng, int explore_moves_per_episode = 1,
                             int episode_length = 5);

// Applies one observed move: positive rewards update the running mean for
// (state_before, action), then the policy entry for state_before is set to
// the argmax over observed positive means (incumbent wins ties; among
// fresh ties the earliest-observed action wins). Zero-reward moves and
// overflow states leave both table and policy untouched. Returns true iff
// the policy entry changed.
bool record_and_update(ValueTable& table, Policy& policy, const MoveRecord& record);

struct LearnResult {
  std::vector<PolicyTraceEntry> trace;
  std::vector<MoveRecord> trajectory;
  ValueTable table;
};

// A full learning trial: starts at the arena center with the all-RANDOM
// policy and iterates select -> execute -> update for trial_moves moves.
LearnResult run_learning_trial(const LearnerConfig& config, const SimSpecs& specs,
                               RandomStream& rng);

}  // namespace arenasim
