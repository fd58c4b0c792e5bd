#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "flatpunct/metric.hpp"
#include "flatpunct/moves.hpp"

namespace flatpunct {

struct ClassifyOptions {
  double tolerance = kDefaultTolerance;
  Labeling labeling = Labeling::Unlabeled;
  std::optional<std::uint64_t> seed;  // forwarded to canonicalize
};

// When K is a multiple of 2*pi the loop around the puncture has trivial
// rotational holonomy and its translation part has a well-defined length,
// which no modification can change. Returns that length, else nullopt.
std::optional<double> translation_holonomy(const FlatDiskMetric& metric,
                                           double tolerance = kDefaultTolerance);

enum class InvariantKind { Cylinder, SingleClass, TorsionClass };
std::string_view to_string(InvariantKind kind);

using Vec2d = std::pair<double, double>;

// The orbit {(x, y), (y - x, -x), (-y, x - y)} of (l2 - l1, l3 - l1).
std::array<Vec2d, 3> difference_orbit(double l1, double l2, double l3);
// Least member, in lexicographic order, among those with both coordinates >= 0.
Vec2d orbit_representative(const std::array<Vec2d, 3>& orbit);
// (1 + x, 1 + y) from the rotation that puts a minimal length first.
Vec2d alpha_beta(double l1, double l2, double l3);
bool same_orbit(const std::array<Vec2d, 3>& a, const std::array<Vec2d, 3>& b, double tolerance);

struct InvariantReport {
  double total = 0.0;
  std::optional<Rational> exact_total_pi;
  InvariantKind kind = InvariantKind::SingleClass;
  int n = 0;
  std::vector<double> canonical_lengths;
  ModificationPlan plan;
  // K = -2*pi only.
  std::vector<Vec2d> orbit;
  std::optional<Vec2d> representative;
  std::optional<Vec2d> alpha_beta;
  // K a nonpositive multiple of 2*pi.
  std::optional<double> holonomy;
};

InvariantReport invariant(const FlatDiskMetric& metric, const ClassifyOptions& options = {});

struct EquivalenceResult {
  bool equivalent = false;
  std::optional<Certificate> certificate;
  // Which argument decided: "total_curvature", "holonomy", "orbit",
  // "canonical_match", "principal_solve", "loop_grow", "asserted".
  std::string basis;
  std::string note;
};

EquivalenceResult equivalent(const FlatDiskMetric& mu, const FlatDiskMetric& eta,
                             const ClassifyOptions& options = {});

struct RegularityReport {
  bool regular = true;
  double puncture_curvature = 0.0;
  std::optional<Rational> puncture_curvature_pi;
  std::optional<double> holonomy;
  std::string reason;
};

RegularityReport classify_regularity(const FlatDiskMetric& metric,
                                     const ClassifyOptions& options = {});

struct ConePiece {
  std::array<double, 3> angles{};  // apex first, then the two base angles
  std::array<double, 3> sides{};   // base, then the two legs
};

struct ConeCompletion {
  double cone_angle = 0.0;  // |K|
  int n = 0;                // 0 for the cylinder
  std::vector<ConePiece> pieces;
  std::string gluing;
  double leg = 0.0;
  double gamma = 0.0;
  double gamma_prime = 0.0;
  double residual = 0.0;
  int iterations = 0;
  // Each apex angle below pi, so both pieces are Euclidean triangles.
  bool realizable = true;
};

// Triangle with apex |K| on a base of length `loop`.
ConeCompletion cone_completion_single(double magnitude, double loop);
// Two isosceles triangles on bases l1, l2 with common legs, apex angles
// summing to `magnitude`; gamma found by bisection.
ConeCompletion cone_completion_pair(double magnitude, double l1, double l2);
// Canonicalizes first. Throws Error{OutOfRange} when |K| >= 2*pi.
ConeCompletion cone_completion(const FlatDiskMetric& metric, const ClassifyOptions& options = {});

struct ModuliDescription {
  std::string kind;  // "half_cylinder", "single_class", "torsion"
  std::string text;
};

ModuliDescription moduli_description(double total, double tolerance = kDefaultTolerance);

}  // namespace flatpunct
