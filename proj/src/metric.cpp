#include "flatpunct/metric.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "flatpunct/errors.hpp"
#include "flatpunct/geom.hpp"

namespace flatpunct {

FlatDiskMetric FlatDiskMetric::polygon(std::vector<double> kappas,
                                       std::vector<double> lengths,
                                       std::optional<Rational> exact_total_pi) {
  FlatDiskMetric m;
  m.kappas_ = std::move(kappas);
  m.lengths_ = std::move(lengths);
  m.exact_total_pi_ = std::move(exact_total_pi);
  return m;
}

FlatDiskMetric FlatDiskMetric::from_pi_units(const std::vector<Rational>& kappa_pi,
                                             std::vector<double> lengths) {
  std::vector<double> kappas;
  kappas.reserve(kappa_pi.size());
  Rational total = 0;
  for (const auto& q : kappa_pi) {
    kappas.push_back(to_double(q) * kPi);
    total += q;
  }
  return polygon(std::move(kappas), std::move(lengths), total);
}

FlatDiskMetric FlatDiskMetric::cylinder(double width) {
  FlatDiskMetric m;
  m.cylinder_ = true;
  m.width_ = width;
  m.exact_total_pi_ = Rational(0);
  return m;
}

FlatDiskMetric FlatDiskMetric::with_exact_total(std::optional<Rational> total_pi) const {
  FlatDiskMetric m = *this;
  m.exact_total_pi_ = std::move(total_pi);
  return m;
}

ValidationReport validate(const FlatDiskMetric& metric) {
  ValidationReport report;
  auto fail = [&](std::string msg) {
    report.valid = false;
    report.errors.push_back(std::move(msg));
  };
  if (metric.is_cylinder()) {
    if (!(metric.width() > 0.0) || !std::isfinite(metric.width())) {
      fail("cylinder width must be positive and finite");
    }
    return report;
  }
  const auto kappas = metric.kappas();
  const auto lengths = metric.lengths();
  if (kappas.empty()) fail("metric has no boundary vertices");
  if (kappas.size() != lengths.size()) {
    fail("curvature and length lists differ in size (" +
         std::to_string(kappas.size()) + " vs " + std::to_string(lengths.size()) + ")");
  }
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    if (!std::isfinite(lengths[i]) || !(lengths[i] > 0.0)) {
      fail("length " + std::to_string(i) + " is not strictly positive");
    }
  }
  for (std::size_t i = 0; i < kappas.size(); ++i) {
    const double kappa = kappas[i];
    if (!std::isfinite(kappa)) {
      fail("curvature " + std::to_string(i) + " is not finite");
    } else if (kappa >= kPi - kAngleEps) {
      fail("vertex " + std::to_string(i) + " has angle pi - kappa <= 0");
    } else if (kappa > kAngleEps) {
      report.warnings.push_back("vertex " + std::to_string(i) +
                                " has positive curvature (not in normal form)");
    } else if (kappa >= -kAngleEps) {
      report.warnings.push_back("vertex " + std::to_string(i) + " is non-singular");
    }
  }
  if (metric.exact_total_pi() && report.valid) {
    const double sum = std::accumulate(kappas.begin(), kappas.end(), 0.0);
    const double exact = to_double(*metric.exact_total_pi()) * kPi;
    if (std::abs(sum - exact) > 1e-9 * std::max(1.0, std::abs(exact))) {
      fail("exact total curvature disagrees with the vertex curvatures");
    }
  }
  return report;
}

void require_valid(const FlatDiskMetric& metric) {
  const auto report = validate(metric);
  if (report.valid) return;
  std::ostringstream msg;
  msg << "invalid metric:";
  for (const auto& e : report.errors) msg << " " << e << ";";
  throw Error(ErrorCode::InvalidMetric, msg.str());
}

FlatDiskMetric normalize(const FlatDiskMetric& metric) {
  if (metric.is_cylinder()) return metric;
  const auto kappas = metric.kappas();
  const auto lengths = metric.lengths();
  const std::size_t k = kappas.size();
  std::size_t first = k;
  for (std::size_t i = 0; i < k; ++i) {
    if (std::abs(kappas[i]) > kAngleEps) {
      first = i;
      break;
    }
  }
  if (first == k) {
    return FlatDiskMetric::cylinder(std::accumulate(lengths.begin(), lengths.end(), 0.0));
  }
  if (first == 0) {
    bool all_singular = true;
    for (double kappa : kappas) all_singular = all_singular && std::abs(kappa) > kAngleEps;
    if (all_singular) return metric;
  }
  // Walk from the first singular vertex, absorbing flat ones into the
  // preceding segment, then rotate back so surviving vertices keep order.
  std::vector<std::size_t> kept;
  std::vector<double> new_kappas;
  std::vector<double> new_lengths;
  for (std::size_t step = 0; step < k; ++step) {
    const std::size_t i = (first + step) % k;
    if (std::abs(kappas[i]) > kAngleEps) {
      kept.push_back(i);
      new_kappas.push_back(kappas[i]);
      new_lengths.push_back(lengths[i]);
    } else {
      new_lengths.back() += lengths[i];
    }
  }
  // Restore index order: the surviving vertex with the smallest index first.
  std::size_t pivot = 0;
  for (std::size_t s = 0; s < kept.size(); ++s) {
    if (kept[s] < kept[pivot]) pivot = s;
  }
  std::rotate(new_kappas.begin(), new_kappas.begin() + pivot, new_kappas.end());
  std::rotate(new_lengths.begin(), new_lengths.begin() + pivot, new_lengths.end());
  return FlatDiskMetric::polygon(std::move(new_kappas), std::move(new_lengths),
                                 metric.exact_total_pi());
}

double total_curvature(const FlatDiskMetric& metric) {
  if (metric.is_cylinder()) return 0.0;
  const auto kappas = metric.kappas();
  return std::accumulate(kappas.begin(), kappas.end(), 0.0);
}

double puncture_curvature(const FlatDiskMetric& metric) {
  return 2.0 * kPi - total_curvature(metric);
}

PunctureInfo puncture_info(const FlatDiskMetric& metric) {
  const double total = total_curvature(metric);
  return {total, 2.0 * kPi - total, total};
}

CanonicalCount canonical_count(double total, double tolerance) {
  if (total > tolerance) {
    throw Error(ErrorCode::PositiveCurvature,
                "total boundary curvature is positive; normal form requires K <= 0");
  }
  const double magnitude = -total;
  if (magnitude <= tolerance) return {true, 0};
  const double q = magnitude / kPi;
  const double nearest = std::round(q);
  if (std::abs(q - nearest) * kPi <= tolerance) {
    return {false, static_cast<int>(nearest) + 1};
  }
  return {false, static_cast<int>(std::floor(q)) + 1};
}

CanonicalCount canonical_count_exact(const Rational& total_pi) {
  if (total_pi > 0) {
    throw Error(ErrorCode::PositiveCurvature,
                "total boundary curvature is positive; normal form requires K <= 0");
  }
  if (total_pi == 0) return {true, 0};
  const Rational magnitude = -total_pi;
  const auto floor = boost::multiprecision::numerator(magnitude) /
                     boost::multiprecision::denominator(magnitude);
  return {false, floor.convert_to<int>() + 1};
}

CanonicalCount canonical_count(const FlatDiskMetric& metric, double tolerance) {
  if (metric.is_cylinder()) return {true, 0};
  if (metric.exact_total_pi()) return canonical_count_exact(*metric.exact_total_pi());
  return canonical_count(total_curvature(metric), tolerance);
}

bool is_minus_two_pi(const FlatDiskMetric& metric, double tolerance) {
  if (metric.is_cylinder()) return false;
  if (metric.exact_total_pi()) return *metric.exact_total_pi() == -2;
  return std::abs(total_curvature(metric) + 2.0 * kPi) <= tolerance;
}

GaussBonnetReport gauss_bonnet_check(const FlatDiskMetric& metric) {
  GaussBonnetReport r;
  r.boundary_total = total_curvature(metric);
  r.puncture_curvature = puncture_curvature(metric);
  r.expected = 2.0 * kPi;  // chi(disk) = 1
  r.residual = r.boundary_total + r.puncture_curvature - r.expected;
  if (metric.exact_total_pi()) {
    const Rational& k = *metric.exact_total_pi();
    r.exact_residual_pi = k + (Rational(2) - k) - Rational(2);
  }
  r.holds = std::abs(r.residual) <= 1e-12 &&
            (!r.exact_residual_pi || *r.exact_residual_pi == 0);
  return r;
}

FlatDiskMetric CanonicalMetric::to_metric() const {
  std::vector<double> kappas(static_cast<std::size_t>(n), total / n);
  return FlatDiskMetric::polygon(std::move(kappas), lengths, exact_total_pi);
}

CanonicalMetric as_canonical(const FlatDiskMetric& metric, double tolerance) {
  if (metric.is_cylinder()) {
    throw Error(ErrorCode::DomainError, "the half-cylinder has no canonical vertex form");
  }
  const double total = total_curvature(metric);
  const auto count = canonical_count(metric, tolerance);
  const int n = static_cast<int>(metric.size());
  if (count.cylinder || count.n != n) {
    throw Error(ErrorCode::DomainError,
                "vertex count " + std::to_string(n) + " is not the canonical count for K");
  }
  const double target = total / n;
  for (double kappa : metric.kappas()) {
    // Equalization accumulates a few ulps per cut, hence the looser bound.
    if (std::abs(kappa - target) > std::max(tolerance, 1e-9) * 10.0) {
      throw Error(ErrorCode::DomainError, "vertex curvatures are not all equal to K/n");
    }
  }
  const double exact_total = metric.exact_total_pi()
                                 ? to_double(*metric.exact_total_pi()) * kPi
                                 : total;
  return {exact_total, metric.exact_total_pi(), n,
          std::vector<double>(metric.lengths().begin(), metric.lengths().end())};
}

}  // namespace flatpunct
