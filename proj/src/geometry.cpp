#include "arenasim/geometry.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace arenasim {

double normalize_angle(double theta_rad) {
  double t = std::fmod(theta_rad, kTau);
  if (t < 0.0) {
    t += kTau;
  }
  if (t >= kTau) {
    t = 0.0;
  }
  return t;
}

Vec2 sensor_world_position(const Pose& pose, const Vec2& body_offset) {
  const double c = std::cos(pose.theta_rad);
  const double s = std::sin(pose.theta_rad);
  return {pose.x_cm + c * body_offset.x - s * body_offset.y,
          pose.y_cm + s * body_offset.x + c * body_offset.y};
}

namespace {

bool outside_white(const Vec2& p, const ArenaSpec& arena) {
  return p.x < 0.0 || p.x > arena.white_width_cm || p.y < 0.0 || p.y > arena.white_height_cm;
}

}  // namespace

SensorPattern sense(const Pose& pose, const ArenaSpec& arena, const RobotSpec& robot) {
  const auto offsets = robot.sensor_offsets();
  SensorPattern pattern;
  pattern.fl = outside_white(sensor_world_position(pose, offsets[0]), arena);
  pattern.fr = outside_white(sensor_world_position(pose, offsets[1]), arena);
  pattern.rl = outside_white(sensor_world_position(pose, offsets[2]), arena);
  pattern.rr = outside_white(sensor_world_position(pose, offsets[3]), arena);
  return pattern;
}

double distance_outside(const Vec2& p, const ArenaSpec& arena) {
  const double dx = std::max({0.0, -p.x, p.x - arena.white_width_cm});
  const double dy = std::max({0.0, -p.y, p.y - arena.white_height_cm});
  return std::hypot(dx, dy);
}

double max_sensor_overhang(const Pose& pose, const ArenaSpec& arena, const RobotSpec& robot) {
  double worst = 0.0;
  for (const Vec2& offset : robot.sensor_offsets()) {
    worst = std::max(worst, distance_outside(sensor_world_position(pose, offset), arena));
  }
  return worst;
}

double forward_distance(const Pose& pose, const ArenaSpec& arena, const RobotSpec& robot,
                        double cap_cm) {
  const SensorPattern pattern = sense(pose, arena, robot);
  if (!pattern.front_clear()) {
    throw std::invalid_argument("forward_distance: a front sensor is already dark");
  }

  const double ux = std::cos(pose.theta_rad);
  const double uy = std::sin(pose.theta_rad);
  const auto offsets = robot.sensor_offsets();

  // Closed-form first wall crossing over both front sensors and all four
  // walls; the arena is bounded, so a positive crossing always exists.
  double d_cross = std::numeric_limits<double>::infinity();
  for (int i : RobotSpec::front_sensors()) {
    const Vec2 p0 = sensor_world_position(pose, offsets[i]);
    if (ux > 0.0) {
      d_cross = std::min(d_cross, (arena.white_width_cm - p0.x) / ux);
    } else if (ux < 0.0) {
      d_cross = std::min(d_cross, -p0.x / ux);
    }
    if (uy > 0.0) {
      d_cross = std::min(d_cross, (arena.white_height_cm - p0.y) / uy);
    } else if (uy < 0.0) {
      d_cross = std::min(d_cross, -p0.y / uy);
    }
  }
  return std::min(cap_cm, d_cross + 0.1);
}

ForwardResult apply_forward(const Pose& pose, RandomStream& rng, const NoiseSpec& noise,
                            const ArenaSpec& arena, const RobotSpec& robot, double cap_cm) {
  double travel = forward_distance(pose, arena, robot, cap_cm);
  if (noise.enabled) {
    travel += rng.uniform_open(noise.forward_overshoot_lo_cm, noise.forward_overshoot_hi_cm);
  }
  Pose moved = pose;
  moved.x_cm += travel * std::cos(pose.theta_rad);
  moved.y_cm += travel * std::sin(pose.theta_rad);
  return {moved, travel};
}

Pose apply_turn(const Pose& pose, TurnKind kind, RandomStream& rng, const NoiseSpec& noise) {
  double delta = 0.0;
  switch (kind) {
    case TurnKind::left90:
      delta = kTau / 4.0;
      break;
    case TurnKind::right90:
      delta = -kTau / 4.0;
      break;
    case TurnKind::about180:
      delta = kTau / 2.0;
      break;
  }
  if (noise.enabled) {
    delta += rng.uniform_open(noise.rotation_lo_rad, noise.rotation_hi_rad);
  }
  Pose turned = pose;
  turned.theta_rad = normalize_angle(pose.theta_rad + delta);
  return turned;
}

}  // namespace arenasim
