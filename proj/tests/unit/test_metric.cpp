#include "flatpunct/errors.hpp"
#include "flatpunct/metric.hpp"
#include "support.hpp"

using namespace flatpunct;
using doctest::Approx;

namespace {
Rational q(long long p, long long d = 1) { return Rational(p, d); }
}  // namespace

TEST_CASE("validation") {
  const auto ok = FlatDiskMetric::polygon({-2 * kPi / 3, -2 * kPi / 3, -2 * kPi / 3}, {1, 2, 3});
  CHECK(validate(ok).valid);

  const auto zero = FlatDiskMetric::polygon({-kPi, -kPi}, {1, 0});
  CHECK_FALSE(validate(zero).valid);
  CHECK_THROWS_AS(require_valid(zero), Error);

  const auto tip = FlatDiskMetric::polygon({kPi, -kPi}, {1, 1});
  CHECK_FALSE(validate(tip).valid);

  // Intermediate states may carry positive curvature; only a warning.
  const auto positive = FlatDiskMetric::polygon({0.2, -0.5}, {1, 1});
  CHECK(validate(positive).valid);
  CHECK_FALSE(validate(positive).warnings.empty());
}

TEST_CASE("total and puncture curvature") {
  const auto tri = FlatDiskMetric::from_pi_units({q(-2, 3), q(-2, 3), q(-2, 3)}, {1, 1, 1});
  CHECK(total_curvature(tri) == Approx(-2 * kPi));
  REQUIRE(tri.exact_total_pi());
  CHECK(*tri.exact_total_pi() == -2);
  CHECK(puncture_curvature(tri) == Approx(4 * kPi));

  const auto quad = FlatDiskMetric::from_pi_units({q(-1, 3), q(-1, 3), q(-2, 3), q(-2, 3)},
                                                  {1, 1, 1, 1});
  CHECK(*quad.exact_total_pi() == -2);

  const auto cyl = FlatDiskMetric::cylinder(1.5);
  CHECK(total_curvature(cyl) == 0);
  CHECK(puncture_curvature(cyl) == Approx(2 * kPi));

  const auto half = FlatDiskMetric::polygon({-kPi / 2, -kPi / 2}, {1, 1});
  CHECK(puncture_curvature(half) == Approx(3 * kPi));
}

TEST_CASE("canonical count uses the left-closed bracket") {
  CHECK(canonical_count(-kPi / 2).n == 1);
  CHECK(canonical_count(-2 * kPi).n == 3);
  CHECK(canonical_count(-3 * kPi).n == 4);
  CHECK(canonical_count(-kPi).n == 2);
  CHECK(canonical_count(-2.5 * kPi).n == 3);
  CHECK(canonical_count(0).cylinder);
  CHECK(canonical_count_exact(q(-2)).n == 3);
  CHECK(canonical_count_exact(q(-7, 2)).n == 4);
  CHECK(canonical_count_exact(q(0)).cylinder);
}

TEST_CASE("minus two pi detection") {
  const auto exact = FlatDiskMetric::from_pi_units({q(-2, 3), q(-2, 3), q(-2, 3)}, {1, 1, 1});
  CHECK(is_minus_two_pi(exact));
  CHECK(is_minus_two_pi(exact.without_exact()));
  const auto off = FlatDiskMetric::polygon({-2 * kPi / 3, -2 * kPi / 3, -2 * kPi / 3 + 1e-7},
                                           {1, 1, 1});
  CHECK_FALSE(is_minus_two_pi(off));
}

TEST_CASE("gauss bonnet bookkeeping") {
  const auto tri = FlatDiskMetric::from_pi_units({q(-2, 3), q(-2, 3), q(-2, 3)}, {1, 1, 1});
  const auto report = gauss_bonnet_check(tri);
  CHECK(report.holds);
  CHECK(report.residual == 0);
  REQUIRE(report.exact_residual_pi);
  CHECK(*report.exact_residual_pi == 0);
  CHECK(gauss_bonnet_check(FlatDiskMetric::cylinder(2)).holds);
  const auto irregular = FlatDiskMetric::polygon({-0.31, -1.7, -2.9, -0.4}, {1, 2, 0.5, 3});
  CHECK(std::abs(gauss_bonnet_check(irregular).residual) <= 1e-12);
}

TEST_CASE("normalize drops straight vertices") {
  const auto m = FlatDiskMetric::polygon({-kPi / 2, 0.0, -kPi / 2}, {1, 2, 3});
  const auto n = normalize(m);
  REQUIRE(n.size() == 2);
  CHECK(n.lengths()[0] == Approx(3));
  CHECK(n.lengths()[1] == Approx(3));
  const auto flat = normalize(FlatDiskMetric::polygon({0.0, 0.0}, {1, 2}));
  CHECK(flat.is_cylinder());
  CHECK(flat.width() == Approx(3));
}

TEST_CASE("canonical view") {
  const auto m = FlatDiskMetric::polygon({-2 * kPi / 3, -2 * kPi / 3, -2 * kPi / 3}, {1, 2, 3});
  const auto c = as_canonical(m);
  CHECK(c.n == 3);
  CHECK(c.vertex_curvature() == Approx(-2 * kPi / 3));
  const auto back = c.to_metric();
  CHECK(back.size() == 3);
  CHECK_THROWS_AS(as_canonical(FlatDiskMetric::polygon({-1.0, -2.0}, {1, 1})), Error);
}

TEST_CASE("rational parsing") {
  CHECK(parse_rational("-2/3") == q(-2, 3));
  CHECK(parse_rational("0.375") == q(3, 8));
  CHECK(parse_rational("2.5e-1") == q(1, 4));
  CHECK(rational_from_double(0.3) == q(3, 10));
  CHECK(to_string(q(-4, 6)) == "-2/3");
  CHECK(to_string(q(5)) == "5");
  CHECK_THROWS_AS(parse_rational("x/2"), Error);
}
