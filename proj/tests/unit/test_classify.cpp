#include <cmath>
#include <random>

#include "flatpunct/classify.hpp"
#include "flatpunct/errors.hpp"
#include "flatpunct/planner.hpp"
#include "support.hpp"

using namespace flatpunct;
using doctest::Approx;

namespace {

FlatDiskMetric canonical3(double a, double b, double c) {
  return FlatDiskMetric::from_pi_units({Rational(-2, 3), Rational(-2, 3), Rational(-2, 3)},
                                       {a, b, c});
}

// Complement of a planar triangle with angles A_i: kappa_i = A_i - pi and
// the segment from vertex i to i+1 is the side opposite the third vertex.
FlatDiskMetric triangle_complement(double a0, double a1) {
  const double a2 = kPi - a0 - a1;
  return FlatDiskMetric::polygon({a0 - kPi, a1 - kPi, a2 - kPi},
                                 {std::sin(a2), std::sin(a0), std::sin(a1)});
}

}  // namespace

TEST_CASE("difference orbit and representative") {
  const auto orbit = difference_orbit(1, 2, 3);
  CHECK(orbit[0] == Vec2d{1, 2});
  CHECK(orbit[1] == Vec2d{1, -1});
  CHECK(orbit[2] == Vec2d{-2, -1});
  CHECK(orbit_representative(orbit) == Vec2d{1, 2});

  const auto o = difference_orbit(2, 1, 2);
  CHECK(orbit_representative(o) == Vec2d{1, 1});
  CHECK(same_orbit(difference_orbit(1, 2, 3), difference_orbit(2, 3, 1), 1e-12));
  CHECK_FALSE(same_orbit(difference_orbit(1, 2, 3), difference_orbit(1, 3, 2), 1e-12));

  const auto ab = alpha_beta(3, 1, 2);
  CHECK(ab == Vec2d{2, 3});
}

TEST_CASE("holonomy of planar complements vanishes") {
  const auto m = triangle_complement(0.3 * kPi, 0.5 * kPi);
  const auto t = translation_holonomy(m);
  REQUIRE(t);
  CHECK(*t < 1e-12);
  const auto r = classify_regularity(m);
  CHECK(r.regular);
  const auto inv = invariant(m);
  CHECK(inv.kind == InvariantKind::TorsionClass);
  REQUIRE(inv.representative);
  CHECK(std::abs(inv.representative->first) < 1e-9);
  CHECK(std::abs(inv.representative->second) < 1e-9);
}

TEST_CASE("unequal canonical lengths at K = -2*pi are irregular") {
  const auto r = classify_regularity(canonical3(1, 2, 3));
  CHECK_FALSE(r.regular);
  REQUIRE(r.puncture_curvature_pi);
  CHECK(*r.puncture_curvature_pi == 4);
  CHECK(r.puncture_curvature == Approx(4 * kPi));
}

TEST_CASE("other totals are regular") {
  CHECK(classify_regularity(FlatDiskMetric::polygon({-0.5, -0.7}, {1, 3})).regular);
  CHECK(classify_regularity(FlatDiskMetric::cylinder(2)).regular);
  CHECK(classify_regularity(FlatDiskMetric::polygon({-0.6 * kPi, -0.6 * kPi, -0.6 * kPi, -0.6 * kPi},
                                                    {1, 2, 3, 4}))
            .regular);
  // K = -2*pi with four vertices and a nonzero translation.
  CHECK_FALSE(classify_regularity(FlatDiskMetric::polygon({-kPi / 2, -kPi / 2, -kPi / 2, -kPi / 2},
                                                          {1, 2, 3, 4}))
                  .regular);
}

TEST_CASE("equivalence at K = -2*pi") {
  const auto a = equivalent(canonical3(1, 2, 3), canonical3(2, 3, 4));
  CHECK(a.equivalent);
  REQUIRE(a.certificate);
  CHECK(verify_plan(canonical3(1, 2, 3), a.certificate->plan_left,
                    a.certificate->common.to_metric()));
  CHECK(verify_plan(canonical3(2, 3, 4), a.certificate->plan_right,
                    a.certificate->common.to_metric()));

  const auto b = equivalent(canonical3(1, 2, 3), canonical3(1, 2, 4));
  CHECK_FALSE(b.equivalent);
  // Mirror length orders have translations of equal length.
  const auto c = equivalent(canonical3(1, 2, 3), canonical3(1, 3, 2));
  CHECK(c.equivalent);
  CHECK(c.basis == "holonomy");
}

TEST_CASE("different totals are never equivalent") {
  const auto r = equivalent(FlatDiskMetric::polygon({-0.5}, {1}),
                            FlatDiskMetric::polygon({-0.6}, {1}));
  CHECK_FALSE(r.equivalent);
  CHECK(r.basis == "total_curvature");
}

TEST_CASE("single class totals come with certificates") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> len(0.5, 2.5);
  for (double total_pi : {-0.4, -2.6, -3.3}) {
    const int n = canonical_count(total_pi * kPi).n;
    std::vector<double> ks(n + 1, total_pi * kPi / (n + 1));
    std::vector<double> l1, l2;
    for (int i = 0; i <= n; ++i) {
      l1.push_back(len(rng));
      l2.push_back(len(rng));
    }
    const auto mu = FlatDiskMetric::polygon(ks, l1);
    const auto eta = FlatDiskMetric::polygon(ks, l2);
    const auto r = equivalent(mu, eta);
    CHECK(r.equivalent);
    REQUIRE(r.certificate);
    CHECK(verify_plan(mu, r.certificate->plan_left, r.certificate->common.to_metric(), 1e-7));
    CHECK(verify_plan(eta, r.certificate->plan_right, r.certificate->common.to_metric(), 1e-7));
  }
}

TEST_CASE("two-vertex classes are asserted") {
  const auto mu = FlatDiskMetric::polygon({-0.7 * kPi, -0.8 * kPi}, {1, 2});
  const auto eta = FlatDiskMetric::polygon({-0.75 * kPi, -0.75 * kPi}, {3, 1});
  const auto r = equivalent(mu, eta);
  CHECK(r.equivalent);
  CHECK(r.basis == "asserted");
  CHECK_FALSE(r.certificate);
}

TEST_CASE("cone completion, one vertex") {
  const double k = 0.6 * kPi;
  const auto c = cone_completion_single(k, 2);
  REQUIRE(c.pieces.size() == 1);
  CHECK(c.pieces[0].angles[0] == k);
  CHECK(c.pieces[0].angles[1] == (kPi - k) / 2);
  CHECK(c.pieces[0].angles[2] == (kPi - k) / 2);
  CHECK(c.leg == Approx(1 / std::sin(k / 2)));
}

TEST_CASE("cone completion, two vertices") {
  // Closed form of the balance equation, from tests/oracles/derive_values.py.
  const auto c = cone_completion_pair(1.5 * kPi, 1, 2);
  CHECK(c.gamma / kPi == Approx(0.318611667367831).epsilon(1e-10));
  CHECK(c.gamma_prime / kPi == Approx(1.18138833263217).epsilon(1e-10));
  CHECK(c.leg == Approx(1.04201076655997).epsilon(1e-10));
  CHECK(c.residual < 1e-10);
  CHECK_FALSE(c.realizable);  // one apex angle exceeds pi

  const auto s = cone_completion_pair(1.3 * kPi, 1.7, 1.7);
  CHECK(std::abs(s.gamma - 0.65 * kPi) < 1e-12);
  CHECK(std::abs(s.gamma_prime - 0.65 * kPi) < 1e-12);
  CHECK(s.realizable);

  CHECK_THROWS_AS(cone_completion(FlatDiskMetric::polygon({-kPi, -kPi / 2, -kPi / 2}, {1, 1, 1})),
                  Error);
}

TEST_CASE("moduli description") {
  CHECK(moduli_description(0).kind == "half_cylinder");
  CHECK(moduli_description(-2 * kPi).kind == "torsion");
  CHECK(moduli_description(-1.5 * kPi).kind == "single_class");
  CHECK_THROWS_AS(moduli_description(0.5), Error);
}

TEST_CASE("invariant kinds") {
  CHECK(invariant(FlatDiskMetric::cylinder(1)).kind == InvariantKind::Cylinder);
  CHECK(invariant(FlatDiskMetric::polygon({-1.0, -1.0}, {1, 1})).kind ==
        InvariantKind::SingleClass);
  CHECK(to_string(InvariantKind::TorsionClass) == "torsion_class");
}
