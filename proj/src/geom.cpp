#include "flatpunct/geom.hpp"

#include <string>

#include "flatpunct/errors.hpp"
#include "flatpunct/metric.hpp"

namespace flatpunct {

Vec2 rotate(Vec2 p, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return {c * p.x - s * p.y, s * p.x + c * p.y};
}

Vec2 unit(double angle) { return {std::cos(angle), std::sin(angle)}; }

TriangleSolution solve_sas(double side_a, double side_b, double apex) {
  if (!(side_a > 0.0) || !(side_b > 0.0)) {
    throw Error(ErrorCode::DomainError, "solve_sas: sides must be positive");
  }
  if (!(apex > 0.0) || !(apex < kPi)) {
    throw Error(ErrorCode::DomainError, "solve_sas: apex must lie in (0, pi)");
  }
  const double third = std::sqrt(side_a * side_a + side_b * side_b -
                                 2.0 * side_a * side_b * std::cos(apex));
  // atan2 form stays accurate for obtuse and sliver triangles.
  const double angle_a =
      std::atan2(side_a * std::sin(apex), side_b - side_a * std::cos(apex));
  const double angle_b = kPi - apex - angle_a;
  return {{angle_a, angle_b, apex}, {side_a, side_b, third}};
}

TriangleSolution solve_asa(double angle_a, double base, double angle_v) {
  if (!(base > 0.0)) {
    throw Error(ErrorCode::DomainError, "solve_asa: base must be positive");
  }
  if (!(angle_a > 0.0) || !(angle_v > 0.0)) {
    throw Error(ErrorCode::DomainError, "solve_asa: angles must be positive");
  }
  const double w = kPi - angle_a - angle_v;
  if (w <= kAngleEps) {
    throw Error(ErrorCode::DegenerateTriangle,
                "solve_asa: base angles sum to pi or more");
  }
  const double sw = std::sin(w);
  return {{angle_a, angle_v, w},
          {base * std::sin(angle_a) / sw, base * std::sin(angle_v) / sw, base}};
}

RigidMotion RigidMotion::operator*(const RigidMotion& other) const {
  return {rotation + other.rotation, apply(other.translation)};
}

RigidMotion RigidMotion::inverse() const {
  return {-rotation, rotate(translation, -rotation) * -1.0};
}

DevelopedBoundary develop_boundary(std::span<const double> kappas,
                                   std::span<const double> lengths) {
  if (kappas.size() != lengths.size() || kappas.empty()) {
    throw Error(ErrorCode::InvalidMetric,
                "develop_boundary: need matching, non-empty curvature and length lists");
  }
  DevelopedBoundary out;
  out.points.reserve(kappas.size());
  Vec2 pos{};
  double heading = 0.0;
  const std::size_t k = kappas.size();
  for (std::size_t i = 0; i < k; ++i) {
    out.points.push_back(pos);
    pos = pos + unit(heading) * lengths[i];
    heading += kappas[(i + 1) % k];
  }
  out.end_point = pos;
  out.closing_motion = {heading, pos};
  return out;
}

DevelopedBoundary develop_boundary(const FlatDiskMetric& metric) {
  if (metric.is_cylinder()) {
    // A closed geodesic loop: one segment, no turning.
    const double w = metric.width();
    return {{Vec2{}}, Vec2{w, 0.0}, {0.0, Vec2{w, 0.0}}};
  }
  return develop_boundary(metric.kappas(), metric.lengths());
}

double wrap_angle(double angle) {
  double r = std::remainder(angle, 2.0 * kPi);
  if (r <= -kPi) r += 2.0 * kPi;
  return r;
}

double angle_distance_mod_2pi(double angle, double target) {
  return std::abs(wrap_angle(angle - target));
}

}  // namespace flatpunct
