#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <span>
#include <vector>

namespace flatpunct {

inline constexpr double kPi = std::numbers::pi;

// Degeneracy cutoff shared by every angle test (flattening, sliver triangles).
inline constexpr double kAngleEps = 1e-9;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  double norm() const { return std::hypot(x, y); }
};

Vec2 rotate(Vec2 p, double angle);
Vec2 unit(double angle);

/// Euclidean triangle. `sides[k]` is opposite `angles[k]`.
struct TriangleSolution {
  std::array<double, 3> angles{};
  std::array<double, 3> sides{};
};

// Two sides and the angle they enclose. Result ordering:
// angles = {opposite side_a, opposite side_b, apex}, sides = {side_a, side_b, third}.
TriangleSolution solve_sas(double side_a, double side_b, double apex);

// Base with its two adjacent angles. Result ordering:
// angles = {angle_a, angle_v, pi - angle_a - angle_v},
// sides  = {opposite angle_a, opposite angle_v, base}.
// sides[1] is therefore the side adjacent to angle_a.
TriangleSolution solve_asa(double angle_a, double base, double angle_v);

/// Orientation-preserving isometry of the plane: x -> R(rotation) x + translation.
struct RigidMotion {
  double rotation = 0.0;
  Vec2 translation{};

  static RigidMotion identity() { return {}; }
  Vec2 apply(Vec2 p) const { return rotate(p, rotation) + translation; }
  // (this * other)(p) = this(other(p))
  RigidMotion operator*(const RigidMotion& other) const;
  RigidMotion inverse() const;
};

struct DevelopedBoundary {
  std::vector<Vec2> points;  // one per vertex, points[0] at the origin
  Vec2 end_point{};          // where the traversal closes up
  RigidMotion closing_motion;
};

class FlatDiskMetric;

// Unrolls the boundary into the plane: start at the origin heading along +x,
// walk each segment, turn left by kappa at each vertex (surface on the left).
DevelopedBoundary develop_boundary(std::span<const double> kappas,
                                   std::span<const double> lengths);
DevelopedBoundary develop_boundary(const FlatDiskMetric& metric);

// Representative of `angle` in (-pi, pi].
double wrap_angle(double angle);

// |angle - target| measured on the circle, in [0, pi].
double angle_distance_mod_2pi(double angle, double target);

}  // namespace flatpunct
