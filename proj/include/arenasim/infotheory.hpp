#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "arenasim/behavior.hpp"

namespace arenasim {

// Counts over a fixed ordered alphabet [0, size). Frequencies are
// count/total; zero-count symbols carry no probability mass.
class Histogram {
 public:
  explicit Histogram(std::size_t alphabet_size) : counts_(alphabet_size, 0) {}

  void add(std::size_t symbol, std::uint64_t n = 1);
  const std::vector<std::uint64_t>& counts() const { return counts_; }
  std::uint64_t total() const { return total_; }

 private:
  std::vector<std::uint64_t> counts_;
  std::uint64_t total_ = 0;
};

// Plug-in Shannon entropy in bits, -sum p log2 p over nonzero counts.
// Throws std::invalid_argument on an empty histogram.
double entropy(const Histogram& hist);

// Reward binning. Bin 0 holds exactly zero; interior edges split the
// positive axis into (prev, edge] intervals; the last bin is open above.
//   R0 (2 bins):  0 | R > 0
//   R1 (3 bins):  0 | 0 < R <= 2 | R > 2
//   R2 (11 bins): 0 | 0 < R <= 1 | ... | 8 < R <= 9 | R > 9
struct BinScheme {
  std::string name;
  std::vector<double> edges;

  std::size_t bin_count() const { return edges.size() + 2; }

  static BinScheme r0();
  static BinScheme r1();
  static BinScheme r2();
  static std::vector<BinScheme> all();
};

// Index of the unique bin containing r. Throws on negative reward.
std::size_t bin_reward(double r, const BinScheme& scheme);

// The canonical assumed-state sets for predicted baselines: the nine
// occurring states 0-8, or the seven explicitly tabulated ones 0-6.
std::vector<StateId> default_state_set(int count);

// Entropy of the action distribution a policy would induce if decision
// states were uniformly distributed over assumed_states: deterministic
// entries put mass 1 on their action, RANDOM entries 1/5 on each.
double predicted_action_entropy(const Policy& policy, std::span<const StateId> assumed_states);

// log2 |assumed_states|; constant across policies.
double predicted_state_entropy(std::span<const StateId> assumed_states);

struct EntropyReport {
  int policy_id = 0;
  double h_state = 0.0;
  double h_action = 0.0;
  std::vector<std::pair<std::string, double>> h_reward;  // per scheme, input order
  double h_action_predicted = 0.0;
  double h_state_predicted = 0.0;
  double total_reward = 0.0;
  std::uint64_t replay_moves = 0;
};

// Frequency distributions over a replay trajectory (state_before is the
// state sample), their entropies, predicted baselines, and total reward.
EntropyReport analyze_replay(std::span<const MoveRecord> trajectory,
                             std::span<const BinScheme> schemes, const Policy& policy,
                             std::span<const StateId> assumed_states);

}  // namespace arenasim
