#pragma once

#include <cstddef>
#include <optional>
#include <variant>
#include <vector>

#include "flatpunct/metric.hpp"

namespace flatpunct {

/// Removal of the Euclidean triangle standing on segment i, with wedge `a`
/// taken at vertex i and wedge `v` at vertex i+1. Its third vertex lies
/// inside the surface and becomes a new boundary vertex of curvature -(a+v).
struct TriCut {
  std::size_t i = 0;
  double a = 0.0;
  double v = 0.0;
};

/// Principal move: removal of the quadrangle on segment j of a canonical
/// metric (n >= 3); shifts segment lengths j-1, j, j+1 by r, 2r*cos(pi - K/n), r.
struct PrincipalMove {
  std::size_t j = 0;
  double r = 0.0;
};

using PlanStep = std::variant<TriCut, PrincipalMove>;

struct ModificationPlan {
  std::vector<PlanStep> steps;

  bool empty() const { return steps.empty(); }
  std::size_t size() const { return steps.size(); }
  void append(const PlanStep& step) { steps.push_back(step); }
  void append(const ModificationPlan& other) {
    steps.insert(steps.end(), other.steps.begin(), other.steps.end());
  }
};

/// Certificate of modification equivalence: both plans land on `common`.
struct Certificate {
  ModificationPlan plan_left;
  ModificationPlan plan_right;
  CanonicalMetric common;
};

/// Bookkeeping for the half-plane surgery that fuses the vertices x = b_i
/// and y = b_{i+1} into one vertex xy (K grows by pi).
struct MergeSurgery {
  std::size_t i = 0;
  double recorded_length = 0.0;  // the deleted segment [x, y]
  double left_budget = 0.0;      // |kappa_x|, the angle left on x's side
  double right_budget = 0.0;     // |kappa_y|
};

struct TriCutResult {
  FlatDiskMetric metric;
  // Old vertex index -> new index, or npos when the vertex was flattened.
  std::vector<std::size_t> index_map;
  std::size_t new_vertex = 0;
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
};

// Vertex order is preserved; the new vertex sits between i and i+1 and
// takes over the slot of a flattened endpoint, so a cut that flattens one
// endpoint leaves every index unchanged. A wedge within kAngleEps of an
// endpoint's |kappa| is snapped to flatten it exactly.
TriCutResult apply_tri_cut_mapped(const FlatDiskMetric& metric, const TriCut& cut);
FlatDiskMetric apply_tri_cut(const FlatDiskMetric& metric, const TriCut& cut);

// Length update of a principal move. Throws Error{UnsupportedArity} for n < 3.
CanonicalMetric apply_principal(const CanonicalMetric& canonical, const PrincipalMove& move);
// Same update on a metric that must already be canonical.
FlatDiskMetric apply_principal(const FlatDiskMetric& metric, const PrincipalMove& move);

// The move that equals `first` followed by `second`, when one exists (same
// index, or either move trivial).
std::optional<PrincipalMove> compose_principal(const PrincipalMove& first,
                                               const PrincipalMove& second);

FlatDiskMetric apply_step(const FlatDiskMetric& metric, const PlanStep& step);

// Replays from normalize(metric). Step failures are rethrown as
// Error{ReplayFailure} carrying the step index.
FlatDiskMetric apply_plan(const FlatDiskMetric& metric, const ModificationPlan& plan);

enum class Labeling { Unlabeled, Labeled };

// Curvatures compared absolutely, lengths relative to max(1, |l|).
// Unlabeled compares up to cyclic rotation of the vertex labels.
bool same_boundary_data(const FlatDiskMetric& lhs, const FlatDiskMetric& rhs,
                        double tolerance = kDefaultTolerance,
                        Labeling labeling = Labeling::Unlabeled);

// Replays `plan`, checking every step's preconditions, conservation of K,
// and positivity of lengths. Throws Error{ReplayFailure} on the first bad
// step; returns whether the endpoint matches `expected`.
bool verify_plan(const FlatDiskMetric& source, const ModificationPlan& plan,
                 const FlatDiskMetric& expected, double tolerance = kDefaultTolerance,
                 Labeling labeling = Labeling::Unlabeled);

// First i (cyclically, i+1 taken mod size) where the values cross their
// mean. Throws Error{AllEqual}.
std::size_t crossing_index(std::span<const double> values);

struct MergeResult {
  FlatDiskMetric metric;
  MergeSurgery surgery;
  std::size_t merged_vertex = 0;
};

// Requires kappa_i, kappa_{i+1} <= 0 and k >= 2. The fused vertex gets
// kappa_x + kappa_y + pi.
MergeResult merge_surgery(const FlatDiskMetric& metric, std::size_t i);

// Reinserts the half-plane at `merged_vertex`: x and y come back with
// curvatures -left and -right and the recorded segment between them.
// Budgets default to the ones recorded at merge time.
FlatDiskMetric split_surgery(const FlatDiskMetric& metric, std::size_t merged_vertex,
                             const MergeSurgery& surgery,
                             std::optional<double> left_residual = std::nullopt,
                             std::optional<double> right_residual = std::nullopt);

}  // namespace flatpunct
