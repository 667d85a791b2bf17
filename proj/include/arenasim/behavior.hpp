#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

#include "arenasim/geometry.hpp"
#include "arenasim/random.hpp"

namespace arenasim {

// The five-action alphabet.
enum class Action : std::uint8_t { forward, left90, right90, about180, no_move };

inline constexpr int kActionCount = 5;
inline constexpr std::array<Action, kActionCount> kAllActions = {
    Action::forward, Action::left90, Action::right90, Action::about180, Action::no_move};

char action_letter(Action a);
std::optional<Action> action_from_letter(char c);

// Canonical sensor-state encoding. Ids 0-8 are the patterns that occur
// under normal operation; 9-15 are diagnostic overflow ids for the seven
// remaining patterns, assigned in ascending pattern-nibble order.
//
//   0 all light   1 fl   2 fr   3 fl+fr
//   4 rl           5 rr   6 rl+rr
//   7 fl+rl (left side)   8 fr+rr (right side)
using StateId = int;

inline constexpr int kCanonicalStateCount = 9;
inline constexpr int kStateCount = 16;

StateId encode_state(const SensorPattern& pattern);
SensorPattern state_pattern(StateId state);

// States 1, 2, 3: at least one front sensor dark, both rear sensors light.
bool front_active_rear_clear(StateId state);
bool front_clear_state(StateId state);

// Map from canonical state to an action; a missing entry is the RANDOM
// marker (uniform draw over the five actions). Overflow states 9-15 are
// implicitly RANDOM.
struct Policy {
  std::array<std::optional<Action>, kCanonicalStateCount> entries{};
  int id = 1;  // 1-based policy number

  std::optional<Action> entry(StateId state) const {
    return state < kCanonicalStateCount ? entries[static_cast<std::size_t>(state)]
                                        : std::nullopt;
  }
  static Policy all_random(int id = 1) { return Policy{{}, id}; }
  bool same_entries(const Policy& other) const { return entries == other.entries; }
};

Action random_action(RandomStream& rng);
Action policy_action(const Policy& policy, StateId state, RandomStream& rng);

// Immediate reward in points. Forward pays travel/10; quarter turns pay 2
// and an about face pays 1 when they take a front-active, rear-clear state
// to a front-clear one; everything else pays 0.
double reward_for(StateId state_before, Action action, StateId state_after, double travel_cm);

enum class Phase : std::uint8_t { explore, exploit, policy };

std::string_view phase_name(Phase phase);
std::optional<Phase> phase_from_name(std::string_view name);

struct MoveRecord {
  std::uint64_t move_index = 0;     // 1-based within a trial
  std::uint64_t episode_index = 0;  // 1-based episode window
  Phase phase = Phase::policy;
  StateId state_before = 0;
  Action action = Action::no_move;
  StateId state_after = 0;
  double reward = 0.0;
  Pose pose_after{};
};

struct SimSpecs {
  ArenaSpec arena{};
  RobotSpec robot{};
  NoiseSpec noise{};
  double forward_cap_cm = 100.0;

  Pose start_pose() const {
    const Vec2 c = arena.center();
    return {c.x, c.y, 0.0};
  }
};

// Sense -> act -> sense -> reward. A Forward attempted with a dark front
// sensor is refused: the pose is unchanged, the initial state is returned
// and no reward is given (the move is still recorded by callers).
// Bookkeeping fields (indices, phase) are left for the caller to fill.
MoveRecord execute_move(const Pose& pose, Action action, RandomStream& rng,
                        const SimSpecs& specs);
MoveRecord execute_move(const Pose& pose, const Policy& policy, RandomStream& rng,
                        const SimSpecs& specs);

}  // namespace arenasim
