#include "flatpunct/classify.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "flatpunct/circulant.hpp"
#include "flatpunct/errors.hpp"
#include "flatpunct/geom.hpp"
#include "flatpunct/planner.hpp"

namespace flatpunct {

namespace {

// Multiple of 2*pi: exact from K/pi when available.
std::optional<long> two_pi_multiple(const FlatDiskMetric& metric, double tolerance) {
  if (metric.is_cylinder()) return 0L;
  if (const auto& q = metric.exact_total_pi()) {
    if (boost::multiprecision::denominator(*q) != 1) return std::nullopt;
    const auto num = boost::multiprecision::numerator(*q);
    if (num % 2 != 0) return std::nullopt;
    return static_cast<long>(num / 2);
  }
  const double turns = total_curvature(metric) / (2.0 * kPi);
  const double nearest = std::round(turns);
  if (std::abs(turns - nearest) * 2.0 * kPi > tolerance) return std::nullopt;
  return static_cast<long>(nearest);
}

double perimeter(const FlatDiskMetric& metric) {
  if (metric.is_cylinder()) return metric.width();
  const auto l = metric.lengths();
  return std::accumulate(l.begin(), l.end(), 0.0);
}

bool totals_match(const FlatDiskMetric& a, const FlatDiskMetric& b, double tolerance) {
  if (a.exact_total_pi() && b.exact_total_pi()) return *a.exact_total_pi() == *b.exact_total_pi();
  return std::abs(total_curvature(a) - total_curvature(b)) <= tolerance;
}

bool holonomy_match(double a, double b, double scale) {
  return std::abs(a - b) <= 1e-6 * std::max(1.0, scale);
}

void require_normal_form(const FlatDiskMetric& metric) {
  require_valid(metric);
  if (metric.is_cylinder()) return;
  for (double kappa : metric.kappas()) {
    if (kappa > kAngleEps) {
      throw Error(ErrorCode::PositiveCurvature,
                  "input has a positively curved vertex; normal form requires kappa <= 0");
    }
  }
}

ReduceOptions reduce_options(const ClassifyOptions& options) {
  ReduceOptions out;
  out.seed = options.seed;
  return out;
}

}  // namespace

std::optional<double> translation_holonomy(const FlatDiskMetric& metric, double tolerance) {
  if (!two_pi_multiple(metric, tolerance)) return std::nullopt;
  if (metric.is_cylinder()) return metric.width();
  const auto dev = develop_boundary(metric);
  return dev.closing_motion.translation.norm();
}

std::string_view to_string(InvariantKind kind) {
  switch (kind) {
    case InvariantKind::Cylinder: return "cylinder";
    case InvariantKind::SingleClass: return "single_class";
    case InvariantKind::TorsionClass: return "torsion_class";
  }
  return "unknown";
}

std::array<Vec2d, 3> difference_orbit(double l1, double l2, double l3) {
  const double x = l2 - l1;
  const double y = l3 - l1;
  return {Vec2d{x, y}, Vec2d{y - x, -x}, Vec2d{-y, x - y}};
}

Vec2d orbit_representative(const std::array<Vec2d, 3>& orbit) {
  std::optional<Vec2d> best;
  for (const auto& p : orbit) {
    // A member is nonnegative when its base length is minimal; allow rounding.
    if (p.first < -1e-12 || p.second < -1e-12) continue;
    if (!best || p < *best) best = p;
  }
  Vec2d out = best.value_or(*std::min_element(orbit.begin(), orbit.end()));
  out.first = std::max(out.first, 0.0);
  out.second = std::max(out.second, 0.0);
  return out;
}

Vec2d alpha_beta(double l1, double l2, double l3) {
  const std::array<double, 3> l{l1, l2, l3};
  const std::size_t first = static_cast<std::size_t>(std::min_element(l.begin(), l.end()) - l.begin());
  return {1.0 + l[(first + 1) % 3] - l[first], 1.0 + l[(first + 2) % 3] - l[first]};
}

bool same_orbit(const std::array<Vec2d, 3>& a, const std::array<Vec2d, 3>& b, double tolerance) {
  auto contains = [&](const std::array<Vec2d, 3>& set, const Vec2d& p) {
    return std::any_of(set.begin(), set.end(), [&](const Vec2d& q) {
      return std::abs(p.first - q.first) <= tolerance && std::abs(p.second - q.second) <= tolerance;
    });
  };
  return std::all_of(a.begin(), a.end(), [&](const Vec2d& p) { return contains(b, p); }) &&
         std::all_of(b.begin(), b.end(), [&](const Vec2d& p) { return contains(a, p); });
}

InvariantReport invariant(const FlatDiskMetric& input, const ClassifyOptions& options) {
  require_normal_form(input);
  const FlatDiskMetric metric = normalize(input);
  InvariantReport out;
  out.total = total_curvature(metric);
  out.exact_total_pi = metric.exact_total_pi();
  out.holonomy = translation_holonomy(metric, options.tolerance);
  if (metric.is_cylinder()) {
    out.kind = InvariantKind::Cylinder;
    return out;
  }
  const auto canon = canonicalize(metric, reduce_options(options));
  out.n = canon.canonical.n;
  out.canonical_lengths = canon.canonical.lengths;
  out.plan = canon.plan;
  out.kind = out.holonomy ? InvariantKind::TorsionClass : InvariantKind::SingleClass;
  if (is_minus_two_pi(metric, options.tolerance)) {
    const auto& l = out.canonical_lengths;
    const auto orbit = difference_orbit(l[0], l[1], l[2]);
    if (options.labeling == Labeling::Labeled) {
      out.orbit = {orbit[0]};
      out.representative = orbit[0];
    } else {
      out.orbit.assign(orbit.begin(), orbit.end());
      out.representative = orbit_representative(orbit);
    }
    out.alpha_beta = alpha_beta(l[0], l[1], l[2]);
  }
  return out;
}

namespace {

Certificate trivial_certificate(const CanonicalizeResult& left, const CanonicalizeResult& right) {
  return {left.plan, right.plan, left.canonical};
}

// K = -2*pi: a rotation of the right lengths that differs from the left by
// a constant vector r*(1, 1, 1) is closed by one principal move.
std::optional<Certificate> diagonal_certificate(const CanonicalizeResult& left,
                                                const CanonicalizeResult& right,
                                                double tolerance, Labeling labeling) {
  const auto& a = left.canonical.lengths;
  const auto& b = right.canonical.lengths;
  const std::size_t shifts = labeling == Labeling::Labeled ? 1 : 3;
  for (std::size_t d = 0; d < shifts; ++d) {
    const double r = a[0] - b[d % 3];
    bool diagonal = true;
    for (std::size_t s = 0; s < 3; ++s) {
      diagonal = diagonal && std::abs(a[s] - b[(s + d) % 3] - r) <=
                                 tolerance * std::max(1.0, std::abs(a[s]));
    }
    if (!diagonal) continue;
    Certificate cert{left.plan, right.plan, {}};
    if (r >= 0.0) {
      cert.plan_right.append(PrincipalMove{0, r});
      cert.common = apply_principal(right.canonical, PrincipalMove{0, r});
    } else {
      cert.plan_left.append(PrincipalMove{0, -r});
      cert.common = apply_principal(left.canonical, PrincipalMove{0, -r});
    }
    return cert;
  }
  return std::nullopt;
}

// n >= 3: solve C x = B - A; left takes x + lambda, right takes lambda.
std::optional<Certificate> principal_certificate(const CanonicalizeResult& left,
                                                 const CanonicalizeResult& right) {
  const int n = left.canonical.n;
  const CirculantMatrix c = principal_matrix(left.canonical.total, n);
  std::vector<double> delta(static_cast<std::size_t>(n));
  for (std::size_t s = 0; s < delta.size(); ++s) {
    delta[s] = right.canonical.lengths[s] - left.canonical.lengths[s];
  }
  std::vector<double> x;
  try {
    x = circulant_solve(c, delta);
  } catch (const Error&) {
    return std::nullopt;
  }
  const double lambda = std::max(0.0, -*std::min_element(x.begin(), x.end()));
  Certificate cert{left.plan, right.plan, left.canonical};
  CanonicalMetric from_right = right.canonical;
  for (std::size_t s = 0; s < x.size(); ++s) {
    // Column s of C is the move on segment s + 1.
    const std::size_t j = (s + 1) % x.size();
    const PrincipalMove on_left{j, x[s] + lambda};
    const PrincipalMove on_right{j, lambda};
    if (on_left.r > 0.0) {
      cert.plan_left.append(on_left);
      cert.common = apply_principal(cert.common, on_left);
    }
    if (on_right.r > 0.0) {
      cert.plan_right.append(on_right);
      from_right = apply_principal(from_right, on_right);
    }
  }
  for (std::size_t s = 0; s < x.size(); ++s) {
    const double scale = std::max(1.0, std::abs(cert.common.lengths[s]));
    if (std::abs(cert.common.lengths[s] - from_right.lengths[s]) > 1e-9 * scale) {
      return std::nullopt;
    }
  }
  return cert;
}

Certificate loop_certificate(const CanonicalizeResult& left, const CanonicalizeResult& right,
                             double tolerance) {
  const double a = left.canonical.lengths[0];
  const double b = right.canonical.lengths[0];
  Certificate cert{left.plan, right.plan, a >= b ? left.canonical : right.canonical};
  if (std::abs(a - b) <= tolerance * std::max(1.0, std::max(a, b))) {
    cert.common = left.canonical;
  } else if (a < b) {
    cert.plan_left.append(loop_grow(left.canonical, b));
  } else {
    cert.plan_right.append(loop_grow(right.canonical, a));
  }
  return cert;
}

}  // namespace

EquivalenceResult equivalent(const FlatDiskMetric& mu_in, const FlatDiskMetric& eta_in,
                             const ClassifyOptions& options) {
  require_normal_form(mu_in);
  require_normal_form(eta_in);
  const FlatDiskMetric mu = normalize(mu_in);
  const FlatDiskMetric eta = normalize(eta_in);
  const double tol = options.tolerance;
  EquivalenceResult out;

  if (!totals_match(mu, eta, std::max(tol, 1e-9))) {
    out.basis = "total_curvature";
    out.note = "total boundary curvature differs";
    return out;
  }

  const auto hol_mu = translation_holonomy(mu, tol);
  const auto hol_eta = translation_holonomy(eta, tol);
  if (hol_mu && hol_eta) {
    const double scale = std::max(perimeter(mu), perimeter(eta));
    out.equivalent = holonomy_match(*hol_mu, *hol_eta, scale);
    out.basis = "holonomy";
    if (!out.equivalent) {
      out.note = "translation holonomy lengths differ";
      return out;
    }
    if (mu.is_cylinder() || eta.is_cylinder()) {
      out.note = "half-cylinders of equal width";
      return out;
    }
  }

  const auto left = canonicalize(mu, reduce_options(options));
  const auto right = canonicalize(eta, reduce_options(options));
  const int n = left.canonical.n;

  if (is_minus_two_pi(mu, tol)) {
    const auto& a = left.canonical.lengths;
    const auto& b = right.canonical.lengths;
    const bool orbits = options.labeling == Labeling::Labeled
                            ? std::abs((a[1] - a[0]) - (b[1] - b[0])) <= 1e-6 &&
                                  std::abs((a[2] - a[0]) - (b[2] - b[0])) <= 1e-6
                            : same_orbit(difference_orbit(a[0], a[1], a[2]),
                                         difference_orbit(b[0], b[1], b[2]), 1e-6);
    if (orbits) {
      out.certificate = diagonal_certificate(left, right, 1e-6, options.labeling);
      out.basis = "orbit";
    } else {
      out.note = "canonical orbits differ; equal holonomy decides";
    }
    return out;
  }

  out.equivalent = true;
  if (same_boundary_data(left.canonical.to_metric(), right.canonical.to_metric(), tol,
                         options.labeling)) {
    out.certificate = trivial_certificate(left, right);
    out.basis = out.basis.empty() ? "canonical_match" : out.basis;
    return out;
  }
  if (n == 1) {
    out.certificate = loop_certificate(left, right, tol);
    out.basis = "loop_grow";
  } else if (n == 2) {
    out.basis = "asserted";
    out.note = "two-vertex class: equivalence asserted without a certificate";
  } else {
    out.certificate = principal_certificate(left, right);
    if (out.certificate) {
      out.basis = "principal_solve";
    } else {
      out.basis = out.basis.empty() ? "asserted" : out.basis;
      out.note = "principal matrix is singular here; no certificate";
    }
  }
  return out;
}

RegularityReport classify_regularity(const FlatDiskMetric& input, const ClassifyOptions& options) {
  require_normal_form(input);
  const FlatDiskMetric metric = normalize(input);
  RegularityReport out;
  out.puncture_curvature = puncture_curvature(metric);
  if (metric.exact_total_pi()) out.puncture_curvature_pi = Rational(2) - *metric.exact_total_pi();
  if (metric.is_cylinder()) {
    out.holonomy = metric.width();
    out.reason = "half-cylinder";
    return out;
  }
  out.holonomy = translation_holonomy(metric, options.tolerance);
  if (!out.holonomy) {
    out.reason = "nontrivial rotational holonomy";
    return out;
  }
  // A cone end of angle 2*pi*m has trivial holonomy; any translation left
  // over rules out a cone neighbourhood.
  out.regular = *out.holonomy <= 1e-9 * std::max(1.0, perimeter(metric));
  out.reason = out.regular ? "trivial holonomy" : "nonzero translation holonomy";
  return out;
}

ConeCompletion cone_completion_single(double magnitude, double loop) {
  if (!(magnitude > 0.0 && magnitude < kPi) || !(loop > 0.0)) {
    throw Error(ErrorCode::DomainError, "single-vertex completion needs 0 < |K| < pi");
  }
  ConeCompletion out;
  out.cone_angle = magnitude;
  out.n = 1;
  const double base_angle = (kPi - magnitude) / 2.0;
  out.leg = loop / (2.0 * std::sin(magnitude / 2.0));
  out.gamma = magnitude;
  out.pieces.push_back({{magnitude, base_angle, base_angle}, {loop, out.leg, out.leg}});
  out.gluing = "glue the two legs to each other, then the base to the boundary loop";
  return out;
}

ConeCompletion cone_completion_pair(double magnitude, double l1, double l2) {
  if (!(magnitude >= kPi - 1e-12 && magnitude < 2.0 * kPi) || !(l1 > 0.0) || !(l2 > 0.0)) {
    throw Error(ErrorCode::DomainError, "two-vertex completion needs pi <= |K| < 2*pi");
  }
  // The two pieces share legs exactly when l1 sin((|K|-g)/2) = l2 sin(g/2).
  // That difference is positive near 0 and negative near |K|, with one root.
  auto balance = [&](double g) {
    return l1 * std::sin((magnitude - g) / 2.0) - l2 * std::sin(g / 2.0);
  };
  double lo = 0.0;
  double hi = magnitude;
  int iterations = 0;
  while (iterations < 200) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    ++iterations;
    if (balance(mid) > 0.0) lo = mid;
    else hi = mid;
  }
  ConeCompletion out;
  out.cone_angle = magnitude;
  out.n = 2;
  out.iterations = iterations;
  out.gamma = 0.5 * (lo + hi);
  out.gamma_prime = magnitude - out.gamma;
  const double a1 = l1 / (2.0 * std::sin(out.gamma / 2.0));
  const double a2 = l2 / (2.0 * std::sin(out.gamma_prime / 2.0));
  out.leg = 0.5 * (a1 + a2);
  out.residual = std::abs(a1 - a2);
  out.realizable = out.gamma < kPi && out.gamma_prime < kPi;
  const double alpha = (kPi - out.gamma) / 2.0;
  const double beta = (kPi - out.gamma_prime) / 2.0;
  out.pieces.push_back({{out.gamma, alpha, alpha}, {l1, a1, a1}});
  out.pieces.push_back({{out.gamma_prime, beta, beta}, {l2, a2, a2}});
  out.gluing =
      "glue the pieces along both legs (apexes meet at the interior cone point), "
      "then the bases to the two boundary arcs";
  return out;
}

ConeCompletion cone_completion(const FlatDiskMetric& input, const ClassifyOptions& options) {
  require_normal_form(input);
  const FlatDiskMetric metric = normalize(input);
  if (metric.is_cylinder()) {
    ConeCompletion out;
    out.gluing = "half-cylinder: the end is already a cone of angle 0";
    return out;
  }
  const double magnitude = -total_curvature(metric);
  if (magnitude >= 2.0 * kPi - options.tolerance) {
    throw Error(ErrorCode::OutOfRange, "cone completion needs |K| < 2*pi");
  }
  const auto canon = canonicalize(metric, reduce_options(options));
  if (canon.canonical.n == 1) return cone_completion_single(magnitude, canon.canonical.lengths[0]);
  return cone_completion_pair(magnitude, canon.canonical.lengths[0], canon.canonical.lengths[1]);
}

ModuliDescription moduli_description(double total, double tolerance) {
  if (total > tolerance) {
    throw Error(ErrorCode::PositiveCurvature, "moduli description needs K <= 0");
  }
  if (std::abs(total) <= tolerance) {
    return {"half_cylinder", "half-cylinder classes, one for each boundary length"};
  }
  if (std::abs(total + 2.0 * kPi) <= tolerance) {
    return {"torsion", "classes separated by the holonomy translation length |t| >= 0; "
                       "|t| = 0 is the plane minus a triangle. The canonical (alpha, beta) "
                       "chart depends on the chosen plan and is not an invariant"};
  }
  const double turns = total / (2.0 * kPi);
  if (std::abs(turns - std::round(turns)) * 2.0 * kPi <= tolerance) {
    return {"torsion", "classes separated by the holonomy translation length"};
  }
  return {"single_class", "single class"};
}

}  // namespace flatpunct
