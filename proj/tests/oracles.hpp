#pragma once

// Test-only oracles, independent of the implementation paths they check.

#include <array>
#include <optional>
#include <vector>

#include "arenasim/behavior.hpp"
#include "arenasim/geometry.hpp"

namespace arenasim::testing {

// Stepping + bisection route to the forward stopping distance; checks the
// closed-form forward_distance without sharing its wall-crossing algebra.
double scan_forward_distance(const Pose& pose, const ArenaSpec& arena, const RobotSpec& robot,
                             double cap_cm = 100.0);

// Monte Carlo estimate of the expected immediate reward per (state,
// action), sampled over poses drawn uniformly from the arena and filtered
// by sensed state. Built before (and independently of) any learning run.
struct RewardOracle {
  struct Cell {
    double mean = 0.0;
    std::uint64_t samples = 0;
  };
  std::array<std::array<Cell, kActionCount>, kCanonicalStateCount> cells{};
  std::array<std::uint64_t, kCanonicalStateCount> pose_samples{};

  // Action with the highest positive expected reward; nullopt when no
  // action yields a positive reward from that state.
  std::optional<Action> argmax(StateId state) const;
};

RewardOracle build_reward_oracle(const SimSpecs& specs, std::uint64_t seed,
                                 std::uint64_t samples_per_pair = 10000);

// Largest |H - log2 k| over `trials` simulated n-draw histograms from the
// uniform k-symbol distribution; the sampling-error envelope for plug-in
// entropy at sample size n.
double multinomial_entropy_envelope(std::uint64_t draws, std::size_t symbols,
                                    std::uint64_t trials, std::uint64_t seed);

}  // namespace arenasim::testing
