#include <cmath>

#include "flatpunct/errors.hpp"
#include "flatpunct/moves.hpp"
#include "support.hpp"

using namespace flatpunct;
using flatpunct::testing::cyclic_match;
using flatpunct::testing::sum;
using doctest::Approx;

// Expected values below come from tests/oracles/derive_values.py, which cuts
// the triangles out of an explicit planar development and re-measures.

TEST_CASE("tri-cut merging two vertices") {
  const auto m = FlatDiskMetric::polygon({-kPi / 3, -kPi / 3, -2 * kPi / 3, -2 * kPi / 3},
                                         {1, 1, 1, 1});
  const auto r = apply_tri_cut_mapped(m, TriCut{0, kPi / 3, kPi / 3});
  REQUIRE(r.metric.size() == 3);
  for (double k : r.metric.kappas()) CHECK(k == Approx(-2 * kPi / 3));
  // Reading from the new vertex.
  const std::size_t p = r.new_vertex;
  const auto ls = r.metric.lengths();
  CHECK(ls[p] == Approx(2));
  CHECK(ls[(p + 1) % 3] == Approx(1));
  CHECK(ls[(p + 2) % 3] == Approx(2));
  CHECK(r.index_map[0] == TriCutResult::npos);
}

TEST_CASE("homogenization cut") {
  const auto m = FlatDiskMetric::polygon({-0.9 * kPi, -0.3 * kPi, -0.8 * kPi}, {1, 1, 1});
  const auto out = apply_tri_cut(m, TriCut{0, 0.9 * kPi - 2 * kPi / 3, 0.3 * kPi});
  REQUIRE(out.size() == 3);
  CHECK(cyclic_match(out.kappas(), {-2 * kPi / 3, -8 * kPi / 15, -0.8 * kPi}));
  CHECK(out.kappas()[0] == Approx(-2 * kPi / 3));
  CHECK(cyclic_match(out.lengths(), {0.8134732861516, 1.67281636480319, 1}));
  CHECK(sum(out.kappas()) == Approx(-2 * kPi).epsilon(1e-14));
}

TEST_CASE("swap cut exchanges neighbouring curvatures") {
  const auto m = FlatDiskMetric::polygon({-0.8 * kPi, -2 * kPi / 3, -8 * kPi / 15}, {1, 1, 1});
  const auto out = apply_tri_cut(m, TriCut{0, 0.8 * kPi - 2 * kPi / 3, 2 * kPi / 3});
  REQUIRE(out.size() == 3);
  CHECK(out.kappas()[0] == Approx(-2 * kPi / 3));
  CHECK(out.kappas()[1] == Approx(-0.8 * kPi));
  CHECK(out.kappas()[2] == Approx(-8 * kPi / 15));
  CHECK(cyclic_match(out.lengths(), {1.47337041956527, 1.69198170843765, 1}));
}

TEST_CASE("curvature transfer on a blocked quadrilateral") {
  const double t = 0.4 * kPi;
  const auto m = FlatDiskMetric::polygon({-t, -(kPi - t), -t, -(kPi - t)}, {1, 1, 1, 1});
  const auto out = apply_tri_cut(m, TriCut{0, t / 2, kPi - t});
  REQUIRE(out.size() == 4);
  CHECK(cyclic_match(out.kappas(), {-0.2 * kPi, -0.8 * kPi, -0.4 * kPi, -0.6 * kPi}));
  CHECK(cyclic_match(out.lengths(), {1.61803398874989, 2, 1, 1}));
}

TEST_CASE("tri-cut errors") {
  const auto m = FlatDiskMetric::polygon({-kPi / 2, -kPi / 2, -kPi}, {1, 1, 1});
  CHECK_THROWS_AS(apply_tri_cut(m, TriCut{0, 0.6 * kPi, 0.5 * kPi}), Error);
  try {
    apply_tri_cut(m, TriCut{0, 0.2, kPi - 0.2});
    FAIL("expected a degenerate triangle");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegenerateTriangle);
  }
  const auto bent = FlatDiskMetric::polygon({-kPi / 2, kPi / 2, -kPi}, {1, 1, 1});
  try {
    apply_tri_cut(bent, TriCut{1, 0.6 * kPi, 0.1});
    FAIL("expected an oversized wedge");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::WedgeTooLarge);
  }
}

TEST_CASE("principal moves") {
  CanonicalMetric c{-2 * kPi, Rational(-2), 3, {1, 2, 3}};
  const auto shifted = apply_principal(c, PrincipalMove{0, 0.5});
  CHECK(cyclic_match(shifted.lengths, {1.5, 2.5, 3.5}));
  const auto same = apply_principal(c, PrincipalMove{1, 0});
  CHECK(same.lengths == c.lengths);

  CanonicalMetric d{-3 * kPi, Rational(-3), 4, {1, 1, 1, 1}};
  const auto e = apply_principal(d, PrincipalMove{1, 1});
  CHECK(e.lengths[0] == Approx(2));
  CHECK(e.lengths[1] == Approx(1 + std::sqrt(2.0)));
  CHECK(e.lengths[2] == Approx(2));
  CHECK(e.lengths[3] == Approx(1));

  CanonicalMetric two{-1.5 * kPi, std::nullopt, 2, {1, 2}};
  CHECK_THROWS_AS(apply_principal(two, PrincipalMove{0, 1}), Error);
}

TEST_CASE("principal composition") {
  const auto c = compose_principal(PrincipalMove{2, 0.25}, PrincipalMove{2, 0.5});
  REQUIRE(c);
  CHECK(c->j == 2);
  CHECK(c->r == Approx(0.75));
  CHECK(compose_principal(PrincipalMove{1, 0}, PrincipalMove{3, 0.5})->j == 3);
  CHECK_FALSE(compose_principal(PrincipalMove{0, 1}, PrincipalMove{1, 1}));
}

TEST_CASE("plans replay and report the failing step") {
  const auto m = FlatDiskMetric::polygon({-kPi / 3, -kPi / 3, -2 * kPi / 3, -2 * kPi / 3},
                                         {1, 1, 1, 1});
  CHECK(same_boundary_data(apply_plan(m, {}), m, 1e-12, Labeling::Labeled));
  ModificationPlan plan;
  plan.append(TriCut{0, kPi / 3, kPi / 3});
  plan.append(TriCut{0, 0.9 * kPi, 0.9 * kPi});
  try {
    apply_plan(m, plan);
    FAIL("expected a replay failure");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ReplayFailure);
    REQUIRE(e.step());
    CHECK(*e.step() == 1);
  }
}

TEST_CASE("crossing index") {
  const double a[] = {1, 5, 3};
  const double b[] = {5, 1, 3};
  const double c[] = {2, 2, 2};
  CHECK(crossing_index(a) == 0);
  CHECK(crossing_index(b) == 0);
  CHECK_THROWS_AS(crossing_index(c), Error);
}

TEST_CASE("merge and split surgery round trip") {
  const auto m = FlatDiskMetric::polygon({-0.7 * kPi, -0.6 * kPi, -0.4 * kPi, -0.3 * kPi},
                                         {1.0, 1.3, 0.8, 2.1});
  for (std::size_t i = 0; i < 4; ++i) {
    const auto merged = merge_surgery(m, i);
    CHECK(merged.metric.size() == 3);
    CHECK(sum(merged.metric.kappas()) == Approx(-kPi).epsilon(1e-14));
    CHECK(merged.surgery.recorded_length == Approx(m.lengths()[i]));
    const auto back = split_surgery(merged.metric, merged.merged_vertex, merged.surgery);
    CHECK(same_boundary_data(back, m, 1e-12, Labeling::Unlabeled));
  }
}
