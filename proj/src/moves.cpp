#include "flatpunct/moves.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "flatpunct/errors.hpp"
#include "flatpunct/geom.hpp"

namespace flatpunct {

namespace {

struct Vertex {
  double kappa;
  double length;        // outgoing segment
  std::size_t origin;   // old index, or npos for the inserted vertex
};

bool is_flat(double kappa) { return std::abs(kappa) <= kAngleEps; }

}  // namespace

TriCutResult apply_tri_cut_mapped(const FlatDiskMetric& metric, const TriCut& cut) {
  if (metric.is_cylinder()) {
    throw Error(ErrorCode::DomainError, "tri-cut needs a boundary vertex; got the half-cylinder");
  }
  const std::size_t k = metric.size();
  const auto kappas = metric.kappas();
  const auto lengths = metric.lengths();
  if (cut.i >= k) {
    throw Error(ErrorCode::DomainError, "tri-cut index " + std::to_string(cut.i) +
                                            " out of range for " + std::to_string(k) +
                                            " vertices");
  }
  if (!(cut.a > 0.0) || !(cut.v > 0.0)) {
    throw Error(ErrorCode::DomainError, "tri-cut wedges must be positive");
  }
  const std::size_t i = cut.i;
  const std::size_t j = (i + 1) % k;
  double a = cut.a;
  double v = cut.v;

  constexpr std::size_t npos = TriCutResult::npos;
  std::vector<Vertex> ring;
  ring.reserve(k + 1);

  if (k == 1) {
    // Loop segment: both base corners sit at the single vertex.
    if (std::abs(kappas[0] + a + v) <= kAngleEps) v = -kappas[0] - a;
    if (!(v > 0.0)) throw Error(ErrorCode::DomainError, "tri-cut wedges must be positive");
    const double theta = kPi - kappas[0];
    if (a + v >= theta + kAngleEps) {
      throw Error(ErrorCode::WedgeTooLarge, "tri-cut wedges exceed the vertex angle");
    }
    const auto tri = solve_asa(a, lengths[0], v);
    const double kept = kappas[0] + a + v;
    ring.push_back({kept, tri.sides[1], 0});
    ring.push_back({-(a + v), tri.sides[0], npos});
  } else {
    if (std::abs(kappas[i] + a) <= kAngleEps) a = -kappas[i];
    if (std::abs(kappas[j] + v) <= kAngleEps) v = -kappas[j];
    if (a >= kPi - kappas[i] || v >= kPi - kappas[j]) {
      throw Error(ErrorCode::WedgeTooLarge, "tri-cut wedge exceeds the vertex angle");
    }
    const auto tri = solve_asa(a, lengths[i], v);
    for (std::size_t s = 0; s < k; ++s) {
      if (s == i) {
        ring.push_back({kappas[i] + a, tri.sides[1], i});
        ring.push_back({-(a + v), tri.sides[0], npos});
      } else if (s == j) {
        ring.push_back({kappas[j] + v, lengths[j], j});
      } else {
        ring.push_back({kappas[s], lengths[s], s});
      }
    }
  }

  // Flatten endpoints; each one's incoming segment absorbs its outgoing one.
  const bool vertex0_flat = [&] {
    for (const auto& vx : ring) {
      if (vx.origin == 0) return is_flat(vx.kappa);
    }
    return false;
  }();
  for (std::size_t s = 0; s < ring.size();) {
    if (ring[s].origin != npos && is_flat(ring[s].kappa) && ring.size() > 1) {
      const std::size_t prev = (s + ring.size() - 1) % ring.size();
      ring[prev].length += ring[s].length;
      ring.erase(ring.begin() + static_cast<std::ptrdiff_t>(s));
    } else {
      ++s;
    }
  }
  // On the wrap segment the new vertex was appended last; when vertex 0
  // flattened it takes over slot 0.
  if (k > 1 && j == 0 && vertex0_flat) {
    std::rotate(ring.rbegin(), ring.rbegin() + 1, ring.rend());
  }

  TriCutResult out;
  out.index_map.assign(k, npos);
  std::vector<double> new_kappas;
  std::vector<double> new_lengths;
  for (std::size_t s = 0; s < ring.size(); ++s) {
    new_kappas.push_back(ring[s].kappa);
    new_lengths.push_back(ring[s].length);
    if (ring[s].origin == npos) {
      out.new_vertex = s;
    } else {
      out.index_map[ring[s].origin] = s;
    }
  }
  out.metric = FlatDiskMetric::polygon(std::move(new_kappas), std::move(new_lengths),
                                       metric.exact_total_pi());
  return out;
}

FlatDiskMetric apply_tri_cut(const FlatDiskMetric& metric, const TriCut& cut) {
  return apply_tri_cut_mapped(metric, cut).metric;
}

namespace {

double principal_coefficient(double total, int n) {
  return 2.0 * std::cos(kPi - total / n);
}

std::vector<double> principal_update(std::vector<double> lengths, double total,
                                     const PrincipalMove& move) {
  const std::size_t n = lengths.size();
  if (n < 3) {
    throw Error(ErrorCode::UnsupportedArity, "principal moves need n >= 3 vertices");
  }
  if (move.j >= n) {
    throw Error(ErrorCode::DomainError, "principal move index out of range");
  }
  if (!(move.r >= 0.0) || !std::isfinite(move.r)) {
    throw Error(ErrorCode::DomainError, "principal move needs r >= 0");
  }
  const double c1 = principal_coefficient(total, static_cast<int>(n));
  lengths[(move.j + n - 1) % n] += move.r;
  lengths[move.j] += c1 * move.r;
  lengths[(move.j + 1) % n] += move.r;
  return lengths;
}

}  // namespace

CanonicalMetric apply_principal(const CanonicalMetric& canonical, const PrincipalMove& move) {
  CanonicalMetric out = canonical;
  out.lengths = principal_update(canonical.lengths, canonical.total, move);
  return out;
}

FlatDiskMetric apply_principal(const FlatDiskMetric& metric, const PrincipalMove& move) {
  if (!metric.is_cylinder() && metric.size() < 3) {
    throw Error(ErrorCode::UnsupportedArity, "principal moves need n >= 3 vertices");
  }
  const CanonicalMetric canonical = as_canonical(metric);
  auto lengths = principal_update(canonical.lengths, canonical.total, move);
  return FlatDiskMetric::polygon(std::vector<double>(metric.kappas().begin(),
                                                     metric.kappas().end()),
                                 std::move(lengths), metric.exact_total_pi());
}

std::optional<PrincipalMove> compose_principal(const PrincipalMove& first,
                                               const PrincipalMove& second) {
  if (first.r == 0.0) return second;
  if (second.r == 0.0) return first;
  if (first.j == second.j) return PrincipalMove{first.j, first.r + second.r};
  return std::nullopt;
}

FlatDiskMetric apply_step(const FlatDiskMetric& metric, const PlanStep& step) {
  return std::visit(
      [&](const auto& s) -> FlatDiskMetric {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, TriCut>) {
          return apply_tri_cut(metric, s);
        } else {
          return apply_principal(metric, s);
        }
      },
      step);
}

FlatDiskMetric apply_plan(const FlatDiskMetric& metric, const ModificationPlan& plan) {
  FlatDiskMetric current = normalize(metric);
  for (std::size_t s = 0; s < plan.steps.size(); ++s) {
    try {
      current = apply_step(current, plan.steps[s]);
    } catch (const Error& e) {
      throw Error(ErrorCode::ReplayFailure,
                  "step " + std::to_string(s) + ": " + std::string(to_string(e.code())) +
                      ": " + e.what(),
                  s);
    }
  }
  return current;
}

namespace {

bool close_length(double x, double y, double tolerance) {
  return std::abs(x - y) <= tolerance * std::max({1.0, std::abs(x), std::abs(y)});
}

bool matches_at(const FlatDiskMetric& lhs, const FlatDiskMetric& rhs, std::size_t shift,
                double tolerance) {
  const std::size_t k = lhs.size();
  for (std::size_t s = 0; s < k; ++s) {
    const std::size_t t = (s + shift) % k;
    if (std::abs(lhs.kappas()[s] - rhs.kappas()[t]) > tolerance * 10.0) return false;
    if (!close_length(lhs.lengths()[s], rhs.lengths()[t], tolerance)) return false;
  }
  return true;
}

}  // namespace

bool same_boundary_data(const FlatDiskMetric& lhs, const FlatDiskMetric& rhs,
                        double tolerance, Labeling labeling) {
  if (lhs.is_cylinder() || rhs.is_cylinder()) {
    return lhs.is_cylinder() && rhs.is_cylinder() &&
           close_length(lhs.width(), rhs.width(), tolerance);
  }
  if (lhs.size() != rhs.size()) return false;
  if (labeling == Labeling::Labeled) return matches_at(lhs, rhs, 0, tolerance);
  for (std::size_t shift = 0; shift < lhs.size(); ++shift) {
    if (matches_at(lhs, rhs, shift, tolerance)) return true;
  }
  return false;
}

bool verify_plan(const FlatDiskMetric& source, const ModificationPlan& plan,
                 const FlatDiskMetric& expected, double tolerance, Labeling labeling) {
  FlatDiskMetric current;
  try {
    require_valid(source);
    current = normalize(source);
  } catch (const Error& e) {
    throw Error(ErrorCode::ReplayFailure, std::string("source: ") + e.what());
  }
  const double total = total_curvature(current);
  for (std::size_t s = 0; s < plan.steps.size(); ++s) {
    try {
      current = apply_step(current, plan.steps[s]);
    } catch (const Error& e) {
      throw Error(ErrorCode::ReplayFailure,
                  "step " + std::to_string(s) + ": " + std::string(to_string(e.code())) +
                      ": " + e.what(),
                  s);
    }
    if (std::abs(total_curvature(current) - total) > 1e-9) {
      throw Error(ErrorCode::ReplayFailure,
                  "step " + std::to_string(s) + ": total curvature not conserved", s);
    }
    for (double l : current.lengths()) {
      if (!(l > 0.0)) {
        throw Error(ErrorCode::ReplayFailure,
                    "step " + std::to_string(s) + ": nonpositive segment length", s);
      }
    }
  }
  return same_boundary_data(current, normalize(expected), tolerance, labeling);
}

std::size_t crossing_index(std::span<const double> values) {
  const std::size_t k = values.size();
  if (k == 0) throw Error(ErrorCode::AllEqual, "crossing_index: empty sequence");
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(k);
  for (std::size_t i = 0; i < k; ++i) {
    const double here = values[i];
    const double next = values[(i + 1) % k];
    if ((here >= mean && next < mean) || (here < mean && next >= mean)) return i;
  }
  throw Error(ErrorCode::AllEqual, "crossing_index: all values are equal");
}

MergeResult merge_surgery(const FlatDiskMetric& metric, std::size_t i) {
  if (metric.is_cylinder() || metric.size() < 2) {
    throw Error(ErrorCode::DomainError, "merge surgery needs at least two vertices");
  }
  const std::size_t k = metric.size();
  if (i >= k) throw Error(ErrorCode::DomainError, "merge surgery index out of range");
  const std::size_t j = (i + 1) % k;
  const auto kappas = metric.kappas();
  const auto lengths = metric.lengths();
  if (kappas[i] > kAngleEps || kappas[j] > kAngleEps) {
    throw Error(ErrorCode::DomainError, "merge surgery needs nonpositive curvature at both ends");
  }
  MergeSurgery surgery{i, lengths[i], -kappas[i], -kappas[j]};
  const double fused = kappas[i] + kappas[j] + kPi;

  std::vector<double> new_kappas;
  std::vector<double> new_lengths;
  std::size_t merged = 0;
  if (j == 0) {
    // Wrap pair: the fused vertex takes slot 0.
    new_kappas.push_back(fused);
    new_lengths.push_back(lengths[0]);
    for (std::size_t s = 1; s + 1 < k; ++s) {
      new_kappas.push_back(kappas[s]);
      new_lengths.push_back(lengths[s]);
    }
    merged = 0;
  } else {
    for (std::size_t s = 0; s < k; ++s) {
      if (s == i) {
        new_kappas.push_back(fused);
        new_lengths.push_back(lengths[j]);
        merged = new_kappas.size() - 1;
      } else if (s != j) {
        new_kappas.push_back(kappas[s]);
        new_lengths.push_back(lengths[s]);
      }
    }
  }
  std::optional<Rational> total;
  if (metric.exact_total_pi()) total = *metric.exact_total_pi() + 1;
  return {FlatDiskMetric::polygon(std::move(new_kappas), std::move(new_lengths), total),
          surgery, merged};
}

FlatDiskMetric split_surgery(const FlatDiskMetric& metric, std::size_t merged_vertex,
                             const MergeSurgery& surgery, std::optional<double> left_residual,
                             std::optional<double> right_residual) {
  if (metric.is_cylinder() || merged_vertex >= metric.size()) {
    throw Error(ErrorCode::DomainError, "split surgery: no such merged vertex");
  }
  const double left = left_residual.value_or(surgery.left_budget);
  const double right = right_residual.value_or(surgery.right_budget);
  if (left < 0.0 || right < 0.0 || left > surgery.left_budget + kAngleEps ||
      right > surgery.right_budget + kAngleEps) {
    throw Error(ErrorCode::DomainError, "split surgery: residual budgets out of range");
  }
  const auto kappas = metric.kappas();
  const auto lengths = metric.lengths();
  std::vector<double> new_kappas;
  std::vector<double> new_lengths;
  for (std::size_t s = 0; s < metric.size(); ++s) {
    if (s == merged_vertex) {
      new_kappas.push_back(-left);
      new_lengths.push_back(surgery.recorded_length);
      new_kappas.push_back(-right);
      new_lengths.push_back(lengths[s]);
    } else {
      new_kappas.push_back(kappas[s]);
      new_lengths.push_back(lengths[s]);
    }
  }
  std::optional<Rational> total;
  if (metric.exact_total_pi()) total = *metric.exact_total_pi() - 1;
  return FlatDiskMetric::polygon(std::move(new_kappas), std::move(new_lengths), total);
}

}  // namespace flatpunct
