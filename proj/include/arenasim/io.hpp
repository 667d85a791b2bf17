#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "arenasim/learner.hpp"

namespace arenasim {

// Fixed 12-significant-digit formatting for CSV floats; wide enough that
// rewards recomputed from parsed poses agree within 1e-9.
std::string format_double(double v);

// Trajectory CSV columns:
// move_index,episode_index,phase,state_before,action,state_after,reward,x_cm,y_cm,theta_rad
void write_trajectory_csv(const std::filesystem::path& path,
                          std::span<const MoveRecord> trajectory);
std::vector<MoveRecord> read_trajectory_csv(const std::filesystem::path& path);

// trace.json: array of {policy_id, adopted_at_move, moves_used,
// entries: {state_id: action letter | "RAND"}} with entries for states 0-8.
void write_trace_json(const std::filesystem::path& path,
                      std::span<const PolicyTraceEntry> trace);
std::vector<PolicyTraceEntry> read_trace_json(const std::filesystem::path& path);

// FNV-1a 64-bit content hash, used by the run manifest.
std::uint64_t fnv1a64_file(const std::filesystem::path& path);

}  // namespace arenasim
