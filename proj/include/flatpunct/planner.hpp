#pragma once

#include <cstdint>
#include <optional>

#include "flatpunct/metric.hpp"
#include "flatpunct/moves.hpp"

namespace flatpunct {

struct PlanResult {
  FlatDiskMetric metric;
  ModificationPlan plan;
};

// Brings every vertex to K/k without changing the vertex count. Requires
// |kappa_i| < pi for all i. Throws Error{IterationLimit} after k^2 cuts.
PlanResult equalize(const FlatDiskMetric& metric, double tolerance = kDefaultTolerance);

// Stages vertex i (kappa_i <= -pi) by shaving wedges of at most 0.45*pi
// onto new vertices until |kappa_i| < pi.
PlanResult stage_large(const FlatDiskMetric& metric, std::size_t i);
// Stages every large vertex.
PlanResult stage_large(const FlatDiskMetric& metric);

struct ReduceOptions {
  // Seeded runs pick among feasible cuts at random and start with a few
  // random curvature transfers, giving a different but valid plan.
  std::optional<std::uint64_t> seed;
  // Skip the direct strategies and go straight to surgery (for testing).
  bool force_surgery = false;
};

// Reduces to exactly canonical_count(K) vertices, all negatively curved.
// Throws Error{SearchExhausted} if no strategy applies.
PlanResult reduce_count(const FlatDiskMetric& metric, const ReduceOptions& options = {});

struct CanonicalizeResult {
  CanonicalMetric canonical;
  ModificationPlan plan;
};

CanonicalizeResult canonicalize(const FlatDiskMetric& metric,
                                const ReduceOptions& options = {});

// Full cuts on the loop of an n = 1 canonical metric (a + v = |K|) growing
// its length to `target`. Throws Error{TargetNotGreater}.
ModificationPlan loop_grow(const CanonicalMetric& canonical, double target);

}  // namespace flatpunct
