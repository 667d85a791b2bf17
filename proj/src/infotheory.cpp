#include "arenasim/infotheory.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace arenasim {

void Histogram::add(std::size_t symbol, std::uint64_t n) {
  if (symbol >= counts_.size()) {
    throw std::out_of_range("histogram symbol outside alphabet");
  }
  counts_[symbol] += n;
  total_ += n;
}

double entropy(const Histogram& hist) {
  if (hist.total() == 0) {
    throw std::invalid_argument("entropy of an empty histogram is undefined");
  }
  const double total = static_cast<double>(hist.total());
  double h = 0.0;
  for (std::uint64_t count : hist.counts()) {
    if (count == 0) {
      continue;
    }
    const double p = static_cast<double>(count) / total;
    h -= p * std::log2(p);
  }
  return h <= 0.0 ? 0.0 : h;
}

BinScheme BinScheme::r0() { return {"R0", {}}; }

BinScheme BinScheme::r1() { return {"R1", {2.0}}; }

BinScheme BinScheme::r2() {
  std::vector<double> edges(9);
  std::iota(edges.begin(), edges.end(), 1.0);
  return {"R2", std::move(edges)};
}

std::vector<BinScheme> BinScheme::all() { return {r0(), r1(), r2()}; }

std::size_t bin_reward(double r, const BinScheme& scheme) {
  if (r < 0.0) {
    throw std::invalid_argument("reward must be non-negative");
  }
  if (r == 0.0) {
    return 0;
  }
  std::size_t bin = 1;
  for (double edge : scheme.edges) {
    if (r <= edge) {
      return bin;
    }
    ++bin;
  }
  return bin;  // open above the last edge
}

std::vector<StateId> default_state_set(int count) {
  if (count <= 0 || count > kStateCount) {
    throw std::invalid_argument("assumed state count out of range");
  }
  std::vector<StateId> states(static_cast<std::size_t>(count));
  std::iota(states.begin(), states.end(), 0);
  return states;
}

double predicted_action_entropy(const Policy& policy, std::span<const StateId> assumed_states) {
  if (assumed_states.empty()) {
    throw std::invalid_argument("assumed state set must be non-empty");
  }
  std::array<double, kActionCount> p{};
  const double state_mass = 1.0 / static_cast<double>(assumed_states.size());
  for (StateId s : assumed_states) {
    if (const auto entry = policy.entry(s)) {
      p[static_cast<std::size_t>(*entry)] += state_mass;
    } else {
      for (std::size_t a = 0; a < kActionCount; ++a) {
        p[a] += state_mass / kActionCount;
      }
    }
  }
  double h = 0.0;
  for (double mass : p) {
    if (mass > 0.0) {
      h -= mass * std::log2(mass);
    }
  }
  return h <= 0.0 ? 0.0 : h;
}

double predicted_state_entropy(std::span<const StateId> assumed_states) {
  if (assumed_states.empty()) {
    throw std::invalid_argument("assumed state set must be non-empty");
  }
  return std::log2(static_cast<double>(assumed_states.size()));
}

EntropyReport analyze_replay(std::span<const MoveRecord> trajectory,
                             std::span<const BinScheme> schemes, const Policy& policy,
                             std::span<const StateId> assumed_states) {
  Histogram states(kStateCount);
  Histogram actions(kActionCount);
  std::vector<Histogram> rewards;
  rewards.reserve(schemes.size());
  for (const BinScheme& scheme : schemes) {
    rewards.emplace_back(scheme.bin_count());
  }

  double total_reward = 0.0;
  for (const MoveRecord& record : trajectory) {
    states.add(static_cast<std::size_t>(record.state_before));
    actions.add(static_cast<std::size_t>(record.action));
    for (std::size_t i = 0; i < schemes.size(); ++i) {
      rewards[i].add(bin_reward(record.reward, schemes[i]));
    }
    total_reward += record.reward;
  }

  EntropyReport report;
  report.policy_id = policy.id;
  report.h_state = entropy(states);
  report.h_action = entropy(actions);
  for (std::size_t i = 0; i < schemes.size(); ++i) {
    report.h_reward.emplace_back(schemes[i].name, entropy(rewards[i]));
  }
  report.h_action_predicted = predicted_action_entropy(policy, assumed_states);
  report.h_state_predicted = predicted_state_entropy(assumed_states);
  report.total_reward = total_reward;
  report.replay_moves = trajectory.size();
  return report;
}

}  // namespace arenasim
