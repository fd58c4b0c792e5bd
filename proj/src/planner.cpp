#include "flatpunct/planner.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "flatpunct/errors.hpp"
#include "flatpunct/geom.hpp"

namespace flatpunct {

namespace {

// A merge needs its triangle's third angle at least this wide.
constexpr double kMergeMargin = 1e-6;
// Headroom kept on both sides of a transfer so no vertex flattens or
// reaches angle zero by accident.
constexpr double kTransferHeadroom = 1e-6;
constexpr double kLargeThreshold = kPi - 1e-7;

double mass(const FlatDiskMetric& m, std::size_t i) { return -m.kappas()[i]; }

bool is_below(double kappa, double target, double tol) { return kappa < target - tol; }
bool is_above(double kappa, double target, double tol) { return kappa > target + tol; }

}  // namespace

PlanResult equalize(const FlatDiskMetric& input, double tolerance) {
  PlanResult out{normalize(input), {}};
  FlatDiskMetric& metric = out.metric;
  if (metric.is_cylinder() || metric.size() <= 1) return out;
  const std::size_t k = metric.size();
  for (double kappa : metric.kappas()) {
    if (kappa <= -kLargeThreshold) {
      throw Error(ErrorCode::DomainError, "equalize needs |kappa| < pi; stage the metric first");
    }
  }
  const double target = total_curvature(metric) / static_cast<double>(k);
  const double tol = std::max(tolerance, 1e-12);
  const std::size_t limit = k * k;

  for (std::size_t run = 0;; ++run) {
    const auto kap = metric.kappas();
    bool all_equal = true;
    for (double kappa : kap) all_equal = all_equal && !is_below(kappa, target, tol) &&
                                         !is_above(kappa, target, tol);
    if (all_equal) break;
    if (run >= limit) {
      throw Error(ErrorCode::IterationLimit,
                  "equalize did not converge within " + std::to_string(limit) + " cuts");
    }

    std::optional<TriCut> cut;
    for (std::size_t i = 0; i < k && !cut; ++i) {
      const std::size_t j = (i + 1) % k;
      if (is_below(kap[i], target, tol) && is_above(kap[j], target, tol)) {
        cut = TriCut{i, target - kap[i], -kap[j]};
      } else if (is_above(kap[i], target, tol) && is_below(kap[j], target, tol)) {
        cut = TriCut{i, -kap[i], target - kap[j]};
      }
    }
    if (!cut) {
      // No adjacent below/above pair: walk a low vertex forward through the
      // run of equal ones that separates it from a high vertex.
      for (std::size_t i = 0; i < k && !cut; ++i) {
        const std::size_t j = (i + 1) % k;
        if (!is_below(kap[i], target, tol) || is_below(kap[j], target, tol) ||
            is_above(kap[j], target, tol)) {
          continue;
        }
        std::size_t s = j;
        while (!is_below(kap[s], target, tol) && !is_above(kap[s], target, tol)) s = (s + 1) % k;
        if (is_above(kap[s], target, tol)) cut = TriCut{i, target - kap[i], -kap[j]};
      }
    }
    if (!cut) {
      throw Error(ErrorCode::IterationLimit, "equalize found no admissible cut");
    }
    metric = apply_tri_cut(metric, *cut);
    out.plan.append(*cut);
  }
  return out;
}

namespace {

void stage_vertex(PlanResult& state, std::size_t i) {
  // Each pass takes 0.45*pi off vertex i; the bound guarantees termination.
  for (int pass = 0; pass < 64; ++pass) {
    FlatDiskMetric& metric = state.metric;
    if (mass(metric, i) < kLargeThreshold) return;
    const std::size_t k = metric.size();
    TriCut cut;
    if (k == 1) {
      const double w = std::min(0.45 * kPi, mass(metric, 0) / 4.0);
      cut = {0, w, w};
    } else {
      const std::size_t j = (i + 1) % k;
      cut = {i, std::min(0.45 * kPi, mass(metric, i) / 2.0),
             std::min(0.45 * kPi, mass(metric, j) / 2.0)};
    }
    const auto res = apply_tri_cut_mapped(metric, cut);
    state.plan.append(cut);
    metric = res.metric;
    i = res.index_map[k == 1 ? 0 : i];
  }
  throw Error(ErrorCode::IterationLimit, "staging did not terminate");
}

}  // namespace

PlanResult stage_large(const FlatDiskMetric& metric, std::size_t i) {
  PlanResult out{metric, {}};
  if (metric.is_cylinder() || i >= metric.size()) {
    throw Error(ErrorCode::DomainError, "stage_large: no such vertex");
  }
  if (mass(metric, i) < kLargeThreshold) return out;
  stage_vertex(out, i);
  return out;
}

PlanResult stage_large(const FlatDiskMetric& metric) {
  PlanResult out{normalize(metric), {}};
  if (out.metric.is_cylinder()) return out;
  for (;;) {
    std::optional<std::size_t> large;
    for (std::size_t i = 0; i < out.metric.size(); ++i) {
      if (mass(out.metric, i) >= kLargeThreshold) {
        large = i;
        break;
      }
    }
    if (!large) return out;
    stage_vertex(out, *large);
  }
}

namespace {

class Reducer {
 public:
  Reducer(FlatDiskMetric metric, int n, std::optional<std::size_t> frozen, std::mt19937_64* rng)
      : metric_(std::move(metric)), n_(n), frozen_(frozen), rng_(rng) {}

  const FlatDiskMetric& metric() const { return metric_; }
  const ModificationPlan& plan() const { return plan_; }

  void random_transfers() {
    const std::size_t k = metric_.size();
    if (k < 2) return;
    const int count = 1 + static_cast<int>((*rng_)() % 3);
    for (int t = 0; t < count; ++t) {
      const std::size_t u = (*rng_)() % k;
      const std::size_t w = (u + 1) % k;
      const bool forward = (*rng_)() % 2 == 0;
      const std::size_t sender = forward ? u : w;
      const std::size_t receiver = forward ? w : u;
      const double cap = std::min(mass(metric_, sender) - kTransferHeadroom,
                                  kPi - kTransferHeadroom - mass(metric_, receiver));
      if (cap <= 1e-3) continue;
      const double amount = cap * std::uniform_real_distribution<double>(0.1, 0.8)(*rng_);
      transfer(u, forward, amount);
    }
  }

  void run(bool force_surgery) {
    const std::size_t guard = 16 * metric_.size() + 16;
    for (std::size_t iter = 0; static_cast<int>(metric_.size()) > n_; ++iter) {
      if (iter > guard) break;
      if (force_surgery && iter == 0) {
        if (surgery()) continue;
        throw exhausted("forced surgery found no feasible pair");
      }
      if (greedy_merge()) continue;
      if (single_transfer()) continue;
      if (redistribute()) continue;
      if (!frozen_ && surgery()) continue;
      throw exhausted("no merge, transfer or surgery applies");
    }
    if (static_cast<int>(metric_.size()) != n_) throw exhausted("iteration guard reached");
  }

 private:
  Error exhausted(const std::string& why) const {
    std::string state = "k=" + std::to_string(metric_.size()) + " n=" + std::to_string(n_) +
                        " kappa/pi=(";
    for (std::size_t i = 0; i < metric_.size(); ++i) {
      if (i) state += ",";
      state += std::to_string(metric_.kappas()[i] / kPi);
    }
    return Error(ErrorCode::SearchExhausted, "reduce_count: " + why + "; " + state + ")");
  }

  std::size_t k() const { return metric_.size(); }
  double m(std::size_t i) const { return mass(metric_, i % k()); }
  double pair_sum(std::size_t i) const { return m(i) + m(i + 1); }
  bool touches_frozen(std::size_t edge) const {
    return frozen_ && (edge % k() == *frozen_ || (edge + 1) % k() == *frozen_);
  }

  void cut(const TriCut& c) {
    const auto res = apply_tri_cut_mapped(metric_, c);
    if (frozen_) frozen_ = res.index_map[*frozen_];
    metric_ = res.metric;
    plan_.append(c);
  }

  // Moves `amount` of curvature magnitude across edge u (u -> u+1 when
  // forward). The receiving endpoint is replaced in place by the new vertex.
  void transfer(std::size_t u, bool forward, double amount) {
    const std::size_t w = (u + 1) % k();
    if (forward) {
      cut(TriCut{u, amount, m(w)});
    } else {
      cut(TriCut{u, m(u), amount});
    }
  }

  std::size_t pick(std::size_t count) {
    return rng_ ? static_cast<std::size_t>((*rng_)() % count) : 0;
  }

  bool greedy_merge() {
    std::vector<std::size_t> candidates;
    for (std::size_t i = 0; i < k(); ++i) {
      if (k() >= 2 && !touches_frozen(i) && pair_sum(i) < kPi - kMergeMargin) {
        candidates.push_back(i);
      }
    }
    if (candidates.empty()) return false;
    const std::size_t i = candidates[pick(candidates.size())];
    cut(TriCut{i, m(i), m(i + 1)});
    return true;
  }

  struct TransferOption {
    std::size_t edge;
    bool forward;
    double lo;
    double hi;
  };

  bool single_transfer() {
    if (k() < 3) return false;
    std::vector<TransferOption> options;
    for (std::size_t u = 0; u < k(); ++u) {
      if (touches_frozen(u)) continue;
      const std::size_t w = u + 1;
      // Forward lowers pair (u-1, u); backward lowers pair (u+1, u+2).
      const std::size_t before = u + k() - 1;
      if (!touches_frozen(before)) {
        const double lo = std::max(0.0, pair_sum(before) - kPi);
        const double hi = std::min(m(u), kPi - m(w));
        if (hi - lo > 4.0 * kMergeMargin) options.push_back({u, true, lo, hi});
      }
      if (!touches_frozen(w)) {
        const double lo = std::max(0.0, pair_sum(w) - kPi);
        const double hi = std::min(m(w), kPi - m(u));
        if (hi - lo > 4.0 * kMergeMargin) options.push_back({u, false, lo, hi});
      }
    }
    if (options.empty()) return false;
    const auto& opt = options[pick(options.size())];
    double amount = 0.5 * (opt.lo + opt.hi);
    if (rng_) {
      amount = opt.lo + (opt.hi - opt.lo) *
                            std::uniform_real_distribution<double>(0.25, 0.75)(*rng_);
    }
    transfer(opt.edge % k(), opt.forward, amount);
    return true;
  }

  // Spreads curvature along the cycle so that one pair sums below pi while
  // every other vertex stays below pi, then leaves the merge to greedy_merge.
  bool redistribute() {
    if (k() < 3) return false;
    std::vector<std::size_t> pairs;
    for (std::size_t i = 0; i < k(); ++i) {
      if (!touches_frozen(i)) pairs.push_back(i);
    }
    if (pairs.empty()) return false;
    std::size_t j0 = pairs[0];
    if (rng_) {
      j0 = pairs[pick(pairs.size())];
    } else {
      for (std::size_t i : pairs) {
        if (pair_sum(i) < pair_sum(j0)) j0 = i;
      }
    }
    double budget = -total_curvature(metric_);
    std::size_t others = k() - 2;
    if (frozen_) {
      budget -= m(*frozen_);
      others -= 1;
    }
    std::vector<double> target(k());
    if (others == 0) {
      if (budget >= kPi - kMergeMargin) return false;
      target[j0] = target[(j0 + 1) % k()] = budget / 2.0;
    } else {
      const double c = static_cast<double>(others);
      const double lo = std::max((budget - kPi) / c, 0.0);
      const double hi = std::min(budget / c, kPi);
      if (hi - lo < 4.0 * kMergeMargin) return false;
      const double level = 0.5 * (lo + hi);
      const double pair_share = 0.5 * (budget - c * level);
      if (level >= kPi - kTransferHeadroom || 2.0 * pair_share >= kPi - kMergeMargin) return false;
      for (std::size_t i = 0; i < k(); ++i) target[i] = level;
      target[j0] = target[(j0 + 1) % k()] = pair_share;
    }
    if (frozen_) target[*frozen_] = m(*frozen_);

    // Flows along a path: cut the cycle at the frozen vertex when there is
    // one, otherwise at the edge k-1 -> 0.
    const std::size_t start = frozen_ ? (*frozen_ + 1) % k() : 0;
    const std::size_t len = frozen_ ? k() - 1 : k();
    std::vector<double> flow(len > 0 ? len - 1 : 0);
    double carry = 0.0;
    for (std::size_t q = 0; q + 1 < len; ++q) {
      const std::size_t v = (start + q) % k();
      carry += m(v) - target[v];
      flow[q] = carry;
    }

    const std::size_t before = plan_.size();
    for (std::size_t sweep = 0; sweep < 4 * k(); ++sweep) {
      bool pending = false;
      for (std::size_t q = 0; q < flow.size(); ++q) {
        if (std::abs(flow[q]) <= 1e-13) continue;
        const std::size_t u = (start + q) % k();
        const std::size_t w = (u + 1) % k();
        const bool forward = flow[q] > 0.0;
        const std::size_t sender = forward ? u : w;
        const std::size_t receiver = forward ? w : u;
        const double room = std::min(m(sender) - kTransferHeadroom,
                                     kPi - kTransferHeadroom - m(receiver));
        const double amount = std::min(std::abs(flow[q]), room);
        if (amount > 1e-13) {
          transfer(u, forward, amount);
          flow[q] += forward ? -amount : amount;
        }
        pending = pending || std::abs(flow[q]) > 1e-13;
      }
      if (!pending) break;
    }
    const std::size_t j1 = (j0 + 1) % k();
    return plan_.size() > before && m(j0) + m(j1) < kPi - kMergeMargin;
  }

  bool surgery() {
    std::vector<std::size_t> pairs;
    for (std::size_t x = 0; x + 1 < k(); ++x) {
      if (pair_sum(x) >= kPi) pairs.push_back(x);
    }
    if (rng_) std::shuffle(pairs.begin(), pairs.end(), *rng_);
    for (std::size_t x : pairs) {
      const MergeResult merged = merge_surgery(metric_, x);
      Reducer sub(merged.metric, n_ - 1, merged.merged_vertex, rng_);
      try {
        sub.run(false);
      } catch (const Error& e) {
        if (e.code() == ErrorCode::SearchExhausted) continue;
        throw;
      }
      // Every recursive cut avoids the fused vertex's edges, so it is also
      // a cut of the unfused metric once indices past the fused vertex
      // shift by one.
      FlatDiskMetric shadow = merged.metric;
      std::size_t fused = merged.merged_vertex;
      for (const auto& step : sub.plan().steps) {
        const TriCut c = std::get<TriCut>(step);
        const TriCut lifted{c.i < fused ? c.i : c.i + 1, c.a, c.v};
        const auto res = apply_tri_cut_mapped(shadow, c);
        fused = res.index_map[fused];
        shadow = res.metric;
        cut(lifted);
      }
      const FlatDiskMetric restored = split_surgery(shadow, fused, merged.surgery);
      if (!same_boundary_data(restored, metric_, 1e-9, Labeling::Labeled)) {
        throw exhausted("split after surgery disagrees with the lifted plan");
      }
      return true;
    }
    return false;
  }

  FlatDiskMetric metric_;
  ModificationPlan plan_;
  int n_;
  std::optional<std::size_t> frozen_;
  std::mt19937_64* rng_;
};

}  // namespace

PlanResult reduce_count(const FlatDiskMetric& input, const ReduceOptions& options) {
  const FlatDiskMetric metric = normalize(input);
  if (metric.is_cylinder()) return {metric, {}};
  for (double kappa : metric.kappas()) {
    if (kappa > kAngleEps) {
      throw Error(ErrorCode::PositiveCurvature, "reduce_count needs nonpositive curvature");
    }
    if (kappa <= -kLargeThreshold) {
      throw Error(ErrorCode::DomainError, "reduce_count needs |kappa| < pi; stage first");
    }
  }
  const int n = canonical_count(metric).n;
  std::optional<std::mt19937_64> rng;
  if (options.seed) rng.emplace(*options.seed);
  Reducer reducer(metric, n, std::nullopt, rng ? &*rng : nullptr);
  if (rng) reducer.random_transfers();
  reducer.run(options.force_surgery);
  return {reducer.metric(), reducer.plan()};
}

CanonicalizeResult canonicalize(const FlatDiskMetric& input, const ReduceOptions& options) {
  require_valid(input);
  const FlatDiskMetric metric = normalize(input);
  if (metric.is_cylinder()) {
    throw Error(ErrorCode::DomainError, "the half-cylinder has no canonical vertex form");
  }
  for (double kappa : metric.kappas()) {
    if (kappa > kAngleEps) {
      throw Error(ErrorCode::PositiveCurvature,
                  "input has a positively curved vertex; normal form requires kappa <= 0");
    }
  }
  CanonicalizeResult out;
  PlanResult staged = stage_large(metric);
  out.plan.append(staged.plan);
  PlanResult reduced = reduce_count(staged.metric, options);
  out.plan.append(reduced.plan);
  PlanResult equal = equalize(reduced.metric);
  out.plan.append(equal.plan);
  out.canonical = as_canonical(equal.metric);
  return out;
}

ModificationPlan loop_grow(const CanonicalMetric& canonical, double target) {
  if (canonical.n != 1) {
    throw Error(ErrorCode::UnsupportedArity, "loop_grow needs a single-vertex canonical metric");
  }
  const double magnitude = -canonical.total;
  if (!(magnitude > 0.0 && magnitude < kPi)) {
    throw Error(ErrorCode::DomainError, "loop_grow needs 0 < |K| < pi");
  }
  FlatDiskMetric metric = canonical.to_metric();
  if (!(target > metric.lengths()[0])) {
    throw Error(ErrorCode::TargetNotGreater, "target loop length must exceed the current one");
  }
  const double half = magnitude / 2.0;
  const double max_factor = 1.0 / std::cos(half);
  ModificationPlan plan;
  for (int guard = 0; guard < 10000; ++guard) {
    const double current = metric.lengths()[0];
    const double ratio = target / current;
    if (ratio <= 1.0 + 1e-15) break;
    TriCut cut;
    if (ratio >= max_factor) {
      cut = {0, half, half};
    } else {
      // (sin a + sin v)/sin|K| = cos((a - v)/2)/cos(|K|/2) with a + v = |K|.
      const double d = std::acos(std::min(1.0, ratio * std::cos(half)));
      cut = {0, half + d, half - d};
      if (!(cut.v > 0.0)) break;
    }
    metric = apply_tri_cut(metric, cut);
    plan.append(cut);
    if (ratio < max_factor) break;
  }
  return plan;
}

}  // namespace flatpunct
