#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "flatpunct/rational.hpp"

namespace flatpunct {

// Default comparison tolerance (curvature classification, plan replay).
inline constexpr double kDefaultTolerance = 1e-9;

/// Boundary data of a complete flat metric on the once-punctured disk.
///
/// Either a cyclic list of boundary vertices, where `kappas()[i]` is the
/// turning curvature at vertex i and `lengths()[i]` is the segment from
/// vertex i to vertex i+1 (mod k), or the half-cylinder of a given width.
///
/// When the curvatures came in as exact multiples of pi the exact total
/// K/pi rides along. Every modification conserves K, so operations copy
/// it forward and classification at K = -2*pi stays exact.
class FlatDiskMetric {
 public:
  FlatDiskMetric() = default;

  static FlatDiskMetric polygon(std::vector<double> kappas,
                                std::vector<double> lengths,
                                std::optional<Rational> exact_total_pi = std::nullopt);
  static FlatDiskMetric from_pi_units(const std::vector<Rational>& kappa_pi,
                                      std::vector<double> lengths);
  static FlatDiskMetric cylinder(double width);

  bool is_cylinder() const { return cylinder_; }
  double width() const { return width_; }
  std::size_t size() const { return kappas_.size(); }
  std::span<const double> kappas() const { return kappas_; }
  std::span<const double> lengths() const { return lengths_; }
  const std::optional<Rational>& exact_total_pi() const { return exact_total_pi_; }

  FlatDiskMetric with_exact_total(std::optional<Rational> total_pi) const;
  FlatDiskMetric without_exact() const { return with_exact_total(std::nullopt); }

 private:
  std::vector<double> kappas_;
  std::vector<double> lengths_;
  std::optional<Rational> exact_total_pi_;
  bool cylinder_ = false;
  double width_ = 0.0;
};

struct ValidationReport {
  bool valid = true;
  std::vector<std::string> errors;
  std::vector<std::string> warnings;
};

ValidationReport validate(const FlatDiskMetric& metric);

// Throws Error{InvalidMetric} listing every violated invariant.
void require_valid(const FlatDiskMetric& metric);

// Drops non-singular vertices (|kappa| <= kAngleEps) by merging their two
// segments; a metric with no singular vertex left becomes the half-cylinder
// whose width is the boundary length.
FlatDiskMetric normalize(const FlatDiskMetric& metric);

/// K, the total boundary curvature (0 for the cylinder).
double total_curvature(const FlatDiskMetric& metric);

/// 2*pi - K.
double puncture_curvature(const FlatDiskMetric& metric);

struct PunctureInfo {
  double boundary_total = 0.0;       // K
  double puncture_curvature = 0.0;   // 2*pi - K
  double puncture_angle = 0.0;       // K; the cone at infinity has angle -K
};

PunctureInfo puncture_info(const FlatDiskMetric& metric);

struct CanonicalCount {
  bool cylinder = false;
  int n = 0;
};

// Unique n >= 1 with (n-1)*pi <= |K| < n*pi; the cylinder when K == 0.
// Values within `tolerance` of a multiple of pi are snapped to it.
CanonicalCount canonical_count(double total, double tolerance = kDefaultTolerance);
CanonicalCount canonical_count_exact(const Rational& total_pi);
CanonicalCount canonical_count(const FlatDiskMetric& metric,
                               double tolerance = kDefaultTolerance);

// K == -2*pi: exact when the metric carries its exact total, otherwise
// |K + 2*pi| <= tolerance.
bool is_minus_two_pi(const FlatDiskMetric& metric, double tolerance = kDefaultTolerance);

struct GaussBonnetReport {
  double boundary_total = 0.0;
  double puncture_curvature = 0.0;
  double expected = 0.0;  // 2*pi * chi(disk)
  double residual = 0.0;
  std::optional<Rational> exact_residual_pi;
  bool holds = false;
};

GaussBonnetReport gauss_bonnet_check(const FlatDiskMetric& metric);

/// Canonical representative: n vertices of curvature K/n each.
struct CanonicalMetric {
  double total = 0.0;  // K
  std::optional<Rational> exact_total_pi;
  int n = 0;
  std::vector<double> lengths;

  double vertex_curvature() const { return total / n; }
  FlatDiskMetric to_metric() const;
};

// Reads a metric already in canonical form. Throws Error{DomainError} when
// the curvatures are not all K/n or the count does not match K.
CanonicalMetric as_canonical(const FlatDiskMetric& metric,
                             double tolerance = kDefaultTolerance);

}  // namespace flatpunct
