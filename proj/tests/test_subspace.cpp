#include <doctest.h>

#include <cmath>

#include "ssdb/errors.hpp"
#include "ssdb/subspace.hpp"
#include "support/generators.hpp"

using namespace ssdb;
using testing::vmake;

TEST_CASE("span construction decides rank by singular values") {
  const Space r3 = Space::paper_r3();
  const Subspace collinear = Subspace::span(r3, {vmake({1, -1, 2}), vmake({2, -2, 4})});
  CHECK(collinear.dim() == 1);

  CHECK(Subspace::span(r3, std::vector<Vec>{}).dim() == 0);
  CHECK(Subspace::span(r3, {Vec::Zero(3)}).dim() == 0);

  const Subspace whole =
      Subspace::span(r3, {vmake({1, 0, 0}), vmake({0, 1, 0}), vmake({0, 0, 1})});
  CHECK(whole.dim() == 3);
  CHECK(projector_distance(whole, Subspace::whole(r3)) <= 1e-12);

  CHECK_THROWS_AS(Subspace::span(r3, {vmake({1, 0})}), Error);

  Mat skewed(3, 2);
  skewed.col(0) = vmake({1, 0, 0});
  skewed.col(1) = vmake({1, 1, 0});
  CHECK_THROWS_AS(Subspace(r3, skewed), Error);  // not orthonormal
}

TEST_CASE("containment test") {
  const Space r3 = Space::paper_r3();
  const Subspace a = Subspace::span(r3, {vmake({1, -1, 2})});
  CHECK(a.contains(vmake({2, -2, 4})));
  CHECK_FALSE(a.contains(vmake({1, 1, 0})));
  CHECK(a.contains(Vec::Zero(3)));
  CHECK(Subspace::zero(r3).contains(Vec::Zero(3)));
  CHECK_FALSE(Subspace::zero(r3).contains(vmake({0, 0, 1e-3})));
  CHECK_THROWS_AS(a.contains(vmake({1, 2})), Error);
}

TEST_CASE("q-complement matches hand computations") {
  const Space r3 = Space::paper_r3();
  const Subspace a = Subspace::span(r3, {vmake({1, -1, 2})});
  const Subspace comp = a.q_complement();
  CHECK(comp.dim() == 2);
  // A0 = { b : -b1 + b2 + 2 b3 = 0 }.
  for (int i = 0; i < comp.dim(); ++i) {
    const Vec b = comp.basis().col(i);
    CHECK(std::abs(-b(0) + b(1) + 2.0 * b(2)) <= 1e-12);
  }
  CHECK(comp.contains(vmake({1, 1, 0})));

  CHECK(Subspace::whole(r3).q_complement().dim() == 0);
  CHECK(Subspace::zero(r3).q_complement().dim() == 3);

  // Graph complements in the product space: A = graph(S) gives
  // A0 = {(x, -S'x)}.
  const Space prod = Space::product(2);
  Mat s(2, 2);
  s << 0, -1, 1, 0;
  Mat graph_gen(4, 2);
  graph_gen.topRows(2) = Mat::Identity(2, 2);
  graph_gen.bottomRows(2) = s;
  const Subspace graph = Subspace::span(prod, graph_gen);
  Mat expected_gen(4, 2);
  expected_gen.topRows(2) = Mat::Identity(2, 2);
  expected_gen.bottomRows(2) = -s.transpose();
  CHECK(projector_distance(graph.q_complement(), Subspace::span(prod, expected_gen)) <= 1e-12);
}

TEST_CASE("q-positivity of subspaces") {
  const Space r3 = Space::paper_r3();
  CHECK(Subspace::span(r3, {vmake({1, -1, 2})}).is_q_positive());
  CHECK_FALSE(Subspace::span(r3, {vmake({1, -1, 0})}).is_q_positive());
  CHECK(Subspace::zero(r3).is_q_positive());
  CHECK(Subspace::zero(r3).is_q_negative());

  const Space h3 = Space::hilbert(3);
  GaussianRng rng(3);
  for (int t = 0; t < 8; ++t) {
    Mat gens(3, 2);
    gens.col(0) = rng.normal_vec(3);
    gens.col(1) = rng.normal_vec(3);
    CHECK(Subspace::span(h3, gens).is_q_positive());
    CHECK(Subspace::span(Space::anti_hilbert(3), gens).is_q_negative());
  }

  // Whole paper space is neither q-positive nor q-negative.
  CHECK_FALSE(Subspace::whole(r3).is_q_positive());
  CHECK_FALSE(Subspace::whole(r3).is_q_negative());
}

TEST_CASE("infimum of q over a translated subspace") {
  const Space r3 = Space::paper_r3();
  const Subspace a = Subspace::span(r3, {vmake({1, -1, 2})});

  SUBCASE("pinned value against a grid search") {
    const Vec b = vmake({1, 1, 0});
    const ExtReal inf = a.inf_q_over_translate(b);
    REQUIRE(inf.finite());
    CHECK(inf.value() == doctest::Approx(1.0).epsilon(1e-12));

    // Independent oracle: brute-force the line parameter.
    double best = 1e300;
    for (double t = -5.0; t <= 5.0; t += 1e-4) {
      const Vec diff = t * vmake({1, -1, 2}) - b;
      best = std::min(best, r3.q(diff));
    }
    CHECK(std::abs(best - inf.value()) <= 1e-6);
  }

  SUBCASE("zero point gives zero") {
    const ExtReal inf = a.inf_q_over_translate(Vec::Zero(3));
    REQUIRE(inf.finite());
    CHECK(inf.value() == doctest::Approx(0.0));
  }

  SUBCASE("indefinite directions give minus infinity") {
    CHECK(Subspace::span(r3, {vmake({1, -1, 0})}).inf_q_over_translate(Vec::Zero(3)).neg_infinite());
    CHECK(Subspace::whole(r3).inf_q_over_translate(vmake({1, 2, 3})).neg_infinite());
  }

  SUBCASE("zero subspace evaluates q at the point") {
    const Vec b = vmake({2, 3, 1});
    const ExtReal inf = Subspace::zero(r3).inf_q_over_translate(b);
    REQUIRE(inf.finite());
    CHECK(inf.value() == doctest::Approx(r3.q(b)));
  }

  SUBCASE("degenerate PSD form escapes along the kernel") {
    // A = {0} x R in the product space: q = 0 on A, and the cross term
    // makes the translated infimum -inf for generic points.
    const Space prod = Space::product(1);
    const Subspace af = Subspace::span(prod, {vmake({0, 1})});
    CHECK(af.inf_q_over_translate(vmake({1, 0})).neg_infinite());
    // Points with no component against the kernel stay finite.
    const ExtReal inf = af.inf_q_over_translate(vmake({0, 3}));
    REQUIRE(inf.finite());
    CHECK(inf.value() == doctest::Approx(0.0));
  }
}

TEST_CASE("maximality via the complement criterion") {
  const Space r3 = Space::paper_r3();
  const Subspace line = Subspace::span(r3, {vmake({1, -1, 2})});
  const MaximalityCheck check = line.is_maximal_q_positive();
  CHECK_FALSE(check.maximal);
  REQUIRE(check.witness.has_value());
  const Vec w = *check.witness;
  CHECK(line.q_complement().contains(w));
  CHECK(r3.q(w) > 0.0);
  CHECK_FALSE(line.contains(w));
  const ExtReal inf = line.inf_q_over_translate(w);
  REQUIRE(inf.finite());
  CHECK(inf.value() >= -1e-8);

  const Space prod = Space::product(1);
  CHECK(Subspace::span(prod, {vmake({1, 1})}).is_maximal_q_positive().maximal);

  const Space prod2 = Space::product(2);
  Mat zero_cross(4, 2);
  zero_cross.setZero();
  zero_cross(2, 0) = 1.0;
  zero_cross(3, 1) = 1.0;
  CHECK(Subspace::span(prod2, zero_cross).is_maximal_q_positive().maximal);

  CHECK_THROWS_AS(Subspace::span(r3, {vmake({1, -1, 0})}).is_maximal_q_positive(), Error);

  // Mirrored statements under negation.
  CHECK(Subspace::span(Space::anti_hilbert(2), std::vector<Vec>{}).is_maximal_q_positive().maximal);
  CHECK(Subspace::whole(Space::hilbert(3)).is_maximal_q_positive().maximal);
  CHECK(Subspace::zero(Space::hilbert(2)).is_maximal_q_negative().maximal);
  try {
    Subspace::span(r3, {vmake({1, -1, 2})}).is_maximal_q_negative();
    FAIL("expected a q-negativity precondition error");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::NotQNegative);
  }
}

TEST_CASE("randomized extension oracle") {
  const Space r3 = Space::paper_r3();
  const Subspace line = Subspace::span(r3, {vmake({1, -1, 2})});

  const OracleOutcome outcome = line.maximality_oracle(2000, 42);
  CHECK(outcome.non_maximal);
  REQUIRE(outcome.witness.has_value());
  CHECK_FALSE(line.contains(*outcome.witness));
  const ExtReal inf = line.inf_q_over_translate(*outcome.witness);
  REQUIRE(inf.finite());
  CHECK(inf.value() >= -1e-9);

  // Same seed, same witness; different seed may differ but stays valid.
  const OracleOutcome again = line.maximality_oracle(2000, 42);
  REQUIRE(again.witness.has_value());
  CHECK((*outcome.witness - *again.witness).norm() == 0.0);
  CHECK(outcome.trials == again.trials);

  CHECK_FALSE(Subspace::span(Space::product(1), {vmake({1, 1})})
                  .maximality_oracle(2000, 42)
                  .non_maximal);
  CHECK_FALSE(Subspace::whole(Space::hilbert(3)).maximality_oracle(50, 1).non_maximal);

  CHECK_THROWS_AS(Subspace::span(r3, {vmake({1, -1, 0})}).maximality_oracle(10, 1), Error);
}

TEST_CASE("sum and intersection") {
  const Space r3 = Space::paper_r3();
  const Subspace u = Subspace::span(r3, {vmake({1, 0, 0})});
  const Subspace v = Subspace::span(r3, {vmake({0, 1, 0})});
  CHECK(sum(u, v).dim() == 2);
  CHECK(intersection(u, v).dim() == 0);
  const Subspace a = Subspace::span(r3, {vmake({1, -1, 2})});
  CHECK(projector_distance(intersection(Subspace::whole(r3), a), a) <= 1e-12);
  CHECK(projector_distance(sum(a, Subspace::zero(r3)), a) <= 1e-12);

  CHECK_THROWS_AS(sum(u, Subspace::span(Space::hilbert(3), {vmake({1, 0, 0})})), Error);
}

TEST_CASE("complement identities on random subspaces") {
  GaussianRng rng(23);
  for (int t = 0; t < 60; ++t) {
    const int n = rng.uniform_int(2, 6);
    const auto factor = testing::random_space(rng, n);
    const int j = rng.uniform_int(0, factor.p);
    const Subspace a = testing::random_q_positive_subspace(rng, factor, j);
    const Subspace comp = a.q_complement();

    CHECK(a.dim() + comp.dim() == n);
    CHECK(projector_distance(comp.q_complement(), a) <= 1e-9);

    // The complement depends only on the pairing's kernel condition, so
    // negating the space does not move it.
    const Subspace comp_neg = a.in_space(factor.space.negated()).q_complement();
    CHECK(projector_distance(comp, comp_neg) <= 1e-9);
  }
}

TEST_CASE("maximal subspaces satisfy the translated-infimum bound") {
  GaussianRng rng(29);
  for (int t = 0; t < 20; ++t) {
    const int n = rng.uniform_int(2, 5);
    const auto factor = testing::random_space(rng, n);
    const Subspace a = testing::random_q_positive_subspace(rng, factor, factor.p);
    REQUIRE(a.is_maximal_q_positive().maximal);
    CHECK(a.q_complement().is_q_negative());
    for (int s = 0; s < 100; ++s) {
      const Vec b = 2.0 * rng.normal_vec(n);
      const ExtReal inf = a.inf_q_over_translate(b);
      if (inf.finite()) CHECK(inf.value() <= 1e-9 * (1.0 + b.squaredNorm()));
    }
  }
}

TEST_CASE("point sets: pairwise positivity and witnesses") {
  const Space r3 = Space::paper_r3();

  SUBCASE("helix samples are q-positive") {
    std::vector<Vec> pts;
    for (int i = 0; i <= 12; ++i) {
      const double theta = 0.5 * i;
      pts.push_back(vmake({std::cos(theta), std::sin(theta), theta}));
    }
    CHECK(is_q_positive(PointSet(r3, pts)).positive);
  }

  SUBCASE("slowed helix fails on the quarter-turn pair") {
    const std::vector<double> thetas = {0.0, M_PI / 2.0, M_PI, 2.0 * M_PI};
    std::vector<Vec> pts;
    for (const double theta : thetas) {
      pts.push_back(vmake({std::cos(theta), std::sin(theta), 0.5 * theta}));
    }
    const PairwiseCheck check = is_q_positive(PointSet(r3, pts));
    CHECK_FALSE(check.positive);
    REQUIRE(check.witness.has_value());
    CHECK(check.witness->first == 0);
    CHECK(check.witness->second == 1);
    CHECK(check.worst_value == doctest::Approx(-1.0 + M_PI * M_PI / 32.0).epsilon(1e-12));
  }

  SUBCASE("monotone plane sets embed q-positively") {
    std::vector<Vec> pts;
    for (const auto& [m, t] : {std::pair<Vec, double>{vmake({0, 0}), 0.3},
                               {vmake({1, 1}), -2.0},
                               {vmake({1, 1}), 5.0}}) {
      pts.push_back(vmake({m(0), m(1), t}));
    }
    CHECK(is_q_positive(PointSet(r3, pts)).positive);
  }

  SUBCASE("validation") {
    CHECK_THROWS_AS(PointSet(r3, {}), Error);
    CHECK_THROWS_AS(PointSet(r3, {vmake({1, 2})}), Error);
  }
}
