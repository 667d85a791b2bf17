#include "arenasim/behavior.hpp"

#include <stdexcept>

namespace arenasim {

namespace {

// id by pattern nibble (fl<<3 | fr<<2 | rl<<1 | rr). Canonical ids 0-8
// cover the expected patterns; the remaining seven nibbles get overflow
// ids 9-15 in ascending nibble order.
constexpr std::array<StateId, kStateCount> kStateByNibble = {
    0,   // 0000 all light
    5,   // 0001 rr
    4,   // 0010 rl
    6,   // 0011 rl+rr
    2,   // 0100 fr
    8,   // 0101 fr+rr
    9,   // 0110
    10,  // 0111
    1,   // 1000 fl
    11,  // 1001
    7,   // 1010 fl+rl
    12,  // 1011
    3,   // 1100 fl+fr
    13,  // 1101
    14,  // 1110
    15,  // 1111
};

constexpr std::array<std::uint8_t, kStateCount> invert_table() {
  std::array<std::uint8_t, kStateCount> nibble_by_state{};
  for (std::uint8_t n = 0; n < kStateCount; ++n) {
    nibble_by_state[static_cast<std::size_t>(kStateByNibble[n])] = n;
  }
  return nibble_by_state;
}

constexpr std::array<std::uint8_t, kStateCount> kNibbleByState = invert_table();

void check_state(StateId state) {
  if (state < 0 || state >= kStateCount) {
    throw std::out_of_range("state id out of range 0-15");
  }
}

}  // namespace

char action_letter(Action a) {
  switch (a) {
    case Action::forward:
      return 'F';
    case Action::left90:
      return 'L';
    case Action::right90:
      return 'R';
    case Action::about180:
      return 'A';
    case Action::no_move:
      return 'N';
  }
  throw std::invalid_argument("unknown action");
}

std::optional<Action> action_from_letter(char c) {
  switch (c) {
    case 'F':
      return Action::forward;
    case 'L':
      return Action::left90;
    case 'R':
      return Action::right90;
    case 'A':
      return Action::about180;
    case 'N':
      return Action::no_move;
    default:
      return std::nullopt;
  }
}

std::string_view phase_name(Phase phase) {
  switch (phase) {
    case Phase::explore:
      return "explore";
    case Phase::exploit:
      return "exploit";
    case Phase::policy:
      return "policy";
  }
  throw std::invalid_argument("unknown phase");
}

std::optional<Phase> phase_from_name(std::string_view name) {
  if (name == "explore") return Phase::explore;
  if (name == "exploit") return Phase::exploit;
  if (name == "policy") return Phase::policy;
  return std::nullopt;
}

StateId encode_state(const SensorPattern& pattern) {
  return kStateByNibble[pattern.nibble()];
}

SensorPattern state_pattern(StateId state) {
  check_state(state);
  return SensorPattern::from_nibble(kNibbleByState[static_cast<std::size_t>(state)]);
}

bool front_active_rear_clear(StateId state) {
  const SensorPattern p = state_pattern(state);
  return !p.front_clear() && p.rear_clear();
}

bool front_clear_state(StateId state) { return state_pattern(state).front_clear(); }

Action random_action(RandomStream& rng) {
  return kAllActions[rng.uniform_index(kActionCount)];
}

Action policy_action(const Policy& policy, StateId state, RandomStream& rng) {
  check_state(state);
  const auto entry = policy.entry(state);
  return entry ? *entry : random_action(rng);
}

double reward_for(StateId state_before, Action action, StateId state_after, double travel_cm) {
  switch (action) {
    case Action::forward:
      return travel_cm / 10.0;
    case Action::left90:
    case Action::right90:
      return front_active_rear_clear(state_before) && front_clear_state(state_after) ? 2.0
                                                                                     : 0.0;
    case Action::about180:
      return front_active_rear_clear(state_before) && front_clear_state(state_after) ? 1.0
                                                                                     : 0.0;
    case Action::no_move:
      return 0.0;
  }
  throw std::invalid_argument("unknown action");
}

MoveRecord execute_move(const Pose& pose, Action action, RandomStream& rng,
                        const SimSpecs& specs) {
  const SensorPattern before = sense(pose, specs.arena, specs.robot);
  const StateId state_before = encode_state(before);

  MoveRecord record;
  record.state_before = state_before;
  record.action = action;

  switch (action) {
    case Action::forward: {
      if (!before.front_clear()) {
        // Forward disallowed: initial state returned, no reward.
        record.state_after = state_before;
        record.pose_after = pose;
        return record;
      }
      const ForwardResult moved =
          apply_forward(pose, rng, specs.noise, specs.arena, specs.robot, specs.forward_cap_cm);
      record.pose_after = moved.pose;
      record.state_after = encode_state(sense(moved.pose, specs.arena, specs.robot));
      record.reward = reward_for(state_before, action, record.state_after, moved.travel_cm);
      return record;
    }
    case Action::left90:
    case Action::right90:
    case Action::about180: {
      const TurnKind kind = action == Action::left90    ? TurnKind::left90
                            : action == Action::right90 ? TurnKind::right90
                                                        : TurnKind::about180;
      record.pose_after = apply_turn(pose, kind, rng, specs.noise);
      record.state_after = encode_state(sense(record.pose_after, specs.arena, specs.robot));
      record.reward = reward_for(state_before, action, record.state_after, 0.0);
      return record;
    }
    case Action::no_move:
      record.state_after = state_before;
      record.pose_after = pose;
      return record;
  }
  throw std::invalid_argument("unknown action");
}

MoveRecord execute_move(const Pose& pose, const Policy& policy, RandomStream& rng,
                        const SimSpecs& specs) {
  const StateId state = encode_state(sense(pose, specs.arena, specs.robot));
  return execute_move(pose, policy_action(policy, state, rng), rng, specs);
}

}  // namespace arenasim
