#pragma once

#include <array>
#include <cstdint>
#include <numbers>

#include "arenasim/random.hpp"

namespace arenasim {

inline constexpr double kTau = 2.0 * std::numbers::pi_v<double>;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

// White rectangle [0, width] x [0, height]. Everything outside is black;
// the border is unbounded. The long axis is x.
struct ArenaSpec {
  double white_width_cm = 126.3;
  double white_height_cm = 100.0;

  Vec2 center() const { return {white_width_cm / 2.0, white_height_cm / 2.0}; }
};

// Square robot with a ground sensor at each corner. Body frame: +x is
// forward, +y is left. Sensor order is fl, fr, rl, rr; the front pair is
// the two corners with positive forward offset.
struct RobotSpec {
  double side_cm = 12.0;

  std::array<Vec2, 4> sensor_offsets() const {
    const double h = side_cm / 2.0;
    return {{{h, h}, {h, -h}, {-h, h}, {-h, -h}}};
  }
  static constexpr std::array<int, 2> front_sensors() { return {0, 1}; }
};

// Robot center position and heading. theta 0 points along +x and is kept
// normalized to [0, tau).
struct Pose {
  double x_cm = 0.0;
  double y_cm = 0.0;
  double theta_rad = 0.0;
};

// Uniform noise intervals for forward overshoot x_f and turn wobble x_r.
// Disabling yields exactly-zero noise terms and consumes no random draws.
struct NoiseSpec {
  double forward_overshoot_lo_cm = 0.0;
  double forward_overshoot_hi_cm = 1.5;
  double rotation_lo_rad = -0.06;
  double rotation_hi_rad = 0.06;
  bool enabled = true;
};

// One light/dark reading per corner sensor; true = dark.
struct SensorPattern {
  bool fl = false;
  bool fr = false;
  bool rl = false;
  bool rr = false;

  bool front_clear() const { return !fl && !fr; }
  bool rear_clear() const { return !rl && !rr; }
  std::uint8_t nibble() const {
    return static_cast<std::uint8_t>(fl << 3 | fr << 2 | rl << 1 | rr);
  }
  static SensorPattern from_nibble(std::uint8_t n) {
    return {(n & 8) != 0, (n & 4) != 0, (n & 2) != 0, (n & 1) != 0};
  }
  bool operator==(const SensorPattern&) const = default;
};

enum class TurnKind : std::uint8_t { left90, right90, about180 };

double normalize_angle(double theta_rad);

Vec2 sensor_world_position(const Pose& pose, const Vec2& body_offset);

// A sensor reads dark iff it lies outside the closed white rectangle;
// points exactly on the boundary read light.
SensorPattern sense(const Pose& pose, const ArenaSpec& arena, const RobotSpec& robot);

// Euclidean distance from a point to the closed white rectangle (0 inside).
double distance_outside(const Vec2& p, const ArenaSpec& arena);

// Largest sensor distance outside the white rectangle. Legal dynamics from
// the arena center keep this at or below 8.5 cm with the center inside.
double max_sensor_overhang(const Pose& pose, const ArenaSpec& arena, const RobotSpec& robot);

// Noiseless stopping distance for a forward move: min(cap, d_cross + 0.1),
// where d_cross is the smallest displacement along the heading at which a
// front sensor exits the white rectangle. Throws std::invalid_argument if
// a front sensor is already dark (caller contract violation).
double forward_distance(const Pose& pose, const ArenaSpec& arena, const RobotSpec& robot,
                        double cap_cm = 100.0);

struct ForwardResult {
  Pose pose;
  double travel_cm = 0.0;
};

// Forward move with overshoot noise; heading unchanged.
ForwardResult apply_forward(const Pose& pose, RandomStream& rng, const NoiseSpec& noise,
                            const ArenaSpec& arena, const RobotSpec& robot,
                            double cap_cm = 100.0);

// Rotation about the robot center with turn noise; position unchanged.
// Turns are always legal, even when the robot overlaps the border.
Pose apply_turn(const Pose& pose, TurnKind kind, RandomStream& rng, const NoiseSpec& noise);

}  // namespace arenasim
