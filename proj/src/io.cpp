#include "arenasim/io.hpp"

#include <array>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace arenasim {

namespace {

using nlohmann::json;

[[noreturn]] void io_fail(const std::filesystem::path& path, const std::string& what) {
  throw std::runtime_error(path.string() + ": " + what);
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    io_fail(path, "cannot open for writing");
  }
  return out;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream stream(line);
  while (std::getline(stream, field, ',')) {
    fields.push_back(field);
  }
  if (!line.empty() && line.back() == ',') {
    fields.emplace_back();
  }
  return fields;
}

double parse_double(const std::string& s, const std::filesystem::path& path) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    io_fail(path, "malformed number '" + s + "'");
  }
  return v;
}

std::uint64_t parse_u64(const std::string& s, const std::filesystem::path& path) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    io_fail(path, "malformed integer '" + s + "'");
  }
  return v;
}

constexpr const char* kTrajectoryHeader =
    "move_index,episode_index,phase,state_before,action,state_after,reward,x_cm,y_cm,theta_rad";

json policy_to_json(const PolicyTraceEntry& entry) {
  json entries = json::object();
  for (StateId s = 0; s < kCanonicalStateCount; ++s) {
    const auto action = entry.policy.entry(s);
    entries[std::to_string(s)] =
        action ? std::string(1, action_letter(*action)) : std::string("RAND");
  }
  return json{{"policy_id", entry.policy.id},
              {"adopted_at_move", entry.adopted_at_move},
              {"moves_used", entry.moves_used},
              {"entries", entries}};
}

}  // namespace

std::string format_double(double v) {
  std::array<char, 64> buf{};
  const int n = std::snprintf(buf.data(), buf.size(), "%.12g", v);
  return std::string(buf.data(), static_cast<std::size_t>(n));
}

void write_trajectory_csv(const std::filesystem::path& path,
                          std::span<const MoveRecord> trajectory) {
  std::ofstream out = open_for_write(path);
  out << kTrajectoryHeader << '\n';
  for (const MoveRecord& r : trajectory) {
    out << r.move_index << ',' << r.episode_index << ',' << phase_name(r.phase) << ','
        << r.state_before << ',' << action_letter(r.action) << ',' << r.state_after << ','
        << format_double(r.reward) << ',' << format_double(r.pose_after.x_cm) << ','
        << format_double(r.pose_after.y_cm) << ',' << format_double(r.pose_after.theta_rad)
        << '\n';
  }
  if (!out) {
    io_fail(path, "write failed");
  }
}

std::vector<MoveRecord> read_trajectory_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    io_fail(path, "cannot open for reading");
  }
  std::string line;
  if (!std::getline(in, line) || line != kTrajectoryHeader) {
    io_fail(path, "missing or unexpected trajectory header");
  }
  std::vector<MoveRecord> trajectory;
  while (std::getline(in, line)) {
    if (line.empty()) {
      continue;
    }
    const auto fields = split_csv_line(line);
    if (fields.size() != 10) {
      io_fail(path, "expected 10 columns, got " + std::to_string(fields.size()));
    }
    MoveRecord r;
    r.move_index = parse_u64(fields[0], path);
    r.episode_index = parse_u64(fields[1], path);
    const auto phase = phase_from_name(fields[2]);
    if (!phase) {
      io_fail(path, "unknown phase '" + fields[2] + "'");
    }
    r.phase = *phase;
    r.state_before = static_cast<StateId>(parse_u64(fields[3], path));
    const auto action = fields[4].size() == 1 ? action_from_letter(fields[4][0]) : std::nullopt;
    if (!action) {
      io_fail(path, "unknown action '" + fields[4] + "'");
    }
    r.action = *action;
    r.state_after = static_cast<StateId>(parse_u64(fields[5], path));
    if (r.state_before >= kStateCount || r.state_after >= kStateCount) {
      io_fail(path, "state id out of range");
    }
    r.reward = parse_double(fields[6], path);
    if (r.reward < 0.0) {
      io_fail(path, "negative reward");
    }
    r.pose_after.x_cm = parse_double(fields[7], path);
    r.pose_after.y_cm = parse_double(fields[8], path);
    r.pose_after.theta_rad = parse_double(fields[9], path);
    trajectory.push_back(r);
  }
  return trajectory;
}

void write_trace_json(const std::filesystem::path& path,
                      std::span<const PolicyTraceEntry> trace) {
  json doc = json::array();
  for (const PolicyTraceEntry& entry : trace) {
    doc.push_back(policy_to_json(entry));
  }
  std::ofstream out = open_for_write(path);
  out << doc.dump(2) << '\n';
  if (!out) {
    io_fail(path, "write failed");
  }
}

std::vector<PolicyTraceEntry> read_trace_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    io_fail(path, "cannot open for reading");
  }
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    io_fail(path, std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_array()) {
    io_fail(path, "trace must be a JSON array");
  }
  std::vector<PolicyTraceEntry> trace;
  for (const json& item : doc) {
    PolicyTraceEntry entry;
    try {
      entry.policy.id = item.at("policy_id").get<int>();
      entry.adopted_at_move = item.at("adopted_at_move").get<std::uint64_t>();
      entry.moves_used = item.at("moves_used").get<std::uint64_t>();
      const json& entries = item.at("entries");
      for (StateId s = 0; s < kCanonicalStateCount; ++s) {
        const std::string value = entries.at(std::to_string(s)).get<std::string>();
        if (value == "RAND") {
          continue;
        }
        const auto action = value.size() == 1 ? action_from_letter(value[0]) : std::nullopt;
        if (!action) {
          io_fail(path, "unknown action '" + value + "'");
        }
        entry.policy.entries[static_cast<std::size_t>(s)] = *action;
      }
    } catch (const json::exception& e) {
      io_fail(path, std::string("malformed trace entry: ") + e.what());
    }
    trace.push_back(std::move(entry));
  }
  return trace;
}

std::uint64_t fnv1a64_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    io_fail(path, "cannot open for hashing");
  }
  std::uint64_t hash = 14695981039346656037ULL;
  char chunk[4096];
  while (in.read(chunk, sizeof(chunk)) || in.gcount() > 0) {
    for (std::streamsize i = 0; i < in.gcount(); ++i) {
      hash ^= static_cast<std::uint8_t>(chunk[i]);
      hash *= 1099511628211ULL;
    }
  }
  return hash;
}

}  // namespace arenasim
