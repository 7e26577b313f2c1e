#include <gtest/gtest.h>

#include "minact/minact.hpp"

using namespace minact;

namespace {

const double kAlpha = std::sqrt(2.0) - 1;

std::vector<PLPoint> rotation_orbit(double a, std::size_t n) {
  std::vector<PLPoint> pts;
  for (std::size_t k = 0; k < n; ++k) {
    const double x = static_cast<double>(k) * a;
    pts.push_back({0, x - std::floor(x)});
  }
  return pts;
}

// Circular arcs [a, a+la] and [b, b+lb] overlap (lengths below 1/2).
bool arcs_overlap(double a, double la, double b, double lb) {
  const double d = (b - a) - std::floor(b - a);
  return d < la || d > 1.0 - lb;
}

}  // namespace

TEST(MinimalSet, RationalRotationIsItsOrbit) {
  const auto m = approximate_minimal_set({PLMap::rotation(0.2)}, 1e-3, {100, 8, 4}, {0, 0.05});
  EXPECT_EQ(m.points.size(), 5u);
  EXPECT_LT(m.invariance_defect, 1e-12);
  EXPECT_FALSE(m.budget_exhausted);
}

TEST(MinimalSet, IrrationalRotationFillsCircle) {
  const double eps = 1e-2;
  const auto m = approximate_minimal_set({PLMap::rotation(kAlpha)}, eps, {400, 4, 4});
  std::vector<double> xs;
  for (const auto& p : m.points) xs.push_back(p.x);
  EXPECT_LE(detail::max_circular_gap(xs), 2 * eps);
  EXPECT_LT(m.invariance_defect, 2 * eps);
}

TEST(MinimalSet, AttractingFixedPoint) {
  // Flat spot at 0.5: every orbit lands on the fixed point 0.5.
  const PLMap f(PLSpace({ComponentKind::Arc}), {{0, {0.0, 0.4, 0.6, 1.0}, {0.3, 0.5, 0.5, 0.7}}});
  const auto m = approximate_minimal_set({f}, 1e-3, {50, 4, 4}, {0, 0.0});
  ASSERT_EQ(m.points.size(), 1u);
  EXPECT_DOUBLE_EQ(m.points[0].x, 0.5);
  EXPECT_EQ(m.invariance_defect, 0.0);
}

TEST(MinimalSet, DenjoyAvoidsInsertedGaps) {
  const std::size_t N = 8;
  const PLMap f = denjoy_stage(kAlpha, N);
  const auto gaps = denjoy_gaps(kAlpha, N);
  const auto m = approximate_minimal_set({f}, 1e-3, {2000, 8, 4});
  ASSERT_GT(m.points.size(), 100u);
  for (const auto& p : m.points)
    for (std::size_t n = 0; n < N; ++n)
      EXPECT_FALSE(p.x > gaps.left[n] + 1e-4 && p.x < gaps.left[n] + gaps.length[n] - 1e-4) << p.x << " in gap " << n;
}

TEST(MinimalSet, MinimalPointsOfOneGeneratorAreDense) {
  // Carry action on 2 circles: the single generator's minimal sets, sampled
  // from many starts, cover both circles.
  const auto act = build_action(carry_cocycle(2, RotationNumber::symbol(default_basis(), "alpha1")), {});
  const auto gens = to_pl_maps(act);
  std::vector<std::vector<double>> seen(2);
  for (int s = 0; s < 16; ++s) {
    const auto m = approximate_minimal_set({gens[0]}, 1e-2, {600, 2, 2}, {static_cast<std::size_t>(s % 2), s / 16.0});
    for (const auto& p : m.points) seen[p.component].push_back(p.x);
  }
  EXPECT_LE(detail::max_circular_gap(seen[0]), 2e-2);
  EXPECT_LE(detail::max_circular_gap(seen[1]), 2e-2);
}

TEST(Trichotomy, RationalRotationIsFinite) {
  const auto r = classify_trichotomy(rotation_orbit(0.4, 5), PLSpace::circles(1), {}, 1e-3);
  EXPECT_EQ(r.verdict, Verdict::Finite);
  EXPECT_EQ(r.cardinality, 5u);
  EXPECT_NEAR(r.min_separation, 0.2, 1e-12);
}

TEST(Trichotomy, IrrationalRotationIsOneCircle) {
  const auto r = classify_trichotomy(rotation_orbit(kAlpha, 500), PLSpace::circles(1), {}, 1e-2);
  EXPECT_EQ(r.verdict, Verdict::Circles);
  EXPECT_EQ(r.circle_count, 1u);
}

TEST(Trichotomy, TwoCircles) {
  std::vector<PLPoint> M;
  for (const auto& p : rotation_orbit(kAlpha, 500)) {
    M.push_back(p);
    M.push_back({1, p.x});
  }
  const auto r = classify_trichotomy(M, PLSpace::circles(2), {1, 0.2, 0.4}, 1e-2);
  EXPECT_EQ(r.verdict, Verdict::Circles);
  EXPECT_EQ(r.circle_count, 2u);
}

TEST(Trichotomy, DenjoyIsCantorOnFullCircle) {
  const PLMap f = denjoy_stage(kAlpha, 8);
  const auto m = approximate_minimal_set({f}, 1e-3, {4000, 8, 4});
  const auto r = classify_trichotomy(m.points, PLSpace::circles(1), {}, 1e-2, {f});
  EXPECT_EQ(r.verdict, Verdict::CantorOnArc);
  EXPECT_TRUE(r.arc_is_full_circle);
  EXPECT_GE(r.gaps_over_2eps, 1u);
  EXPECT_LE(r.isolation_radius, 1e-2);
  ASSERT_TRUE(r.globally_perfect.has_value());
  EXPECT_TRUE(*r.globally_perfect);
}

TEST(Trichotomy, CantorOnSubArc) {
  // Middle-thirds Cantor set at depth 7 inside [0.2, 0.6] on an arc.
  std::vector<double> xs{0.0, 1.0};
  for (int d = 0; d < 7; ++d) {
    std::vector<double> next;
    for (std::size_t i = 0; i + 1 < xs.size(); i += 2) {
      const double a = xs[i], b = xs[i + 1], t = (b - a) / 3;
      next.insert(next.end(), {a, a + t, b - t, b});
    }
    xs = next;
  }
  std::vector<PLPoint> M;
  for (double x : xs) M.push_back({0, 0.2 + 0.4 * x});
  const auto r = classify_trichotomy(M, PLSpace({ComponentKind::Arc}), {0, 0.0, 1.0}, 2e-3);
  EXPECT_EQ(r.verdict, Verdict::CantorOnArc);
  EXPECT_NEAR(r.arc_lo, 0.2, 1e-12);
  EXPECT_NEAR(r.arc_hi, 0.6, 1e-12);
  EXPECT_FALSE(r.arc_is_full_circle);
}

TEST(Trichotomy, SolidIntervalIsAmbiguous) {
  // 400 evenly spaced points on [0, 0.4] of a circle: no case fits.
  std::vector<PLPoint> M;
  for (int i = 0; i < 400; ++i) M.push_back({0, 0.001 * i});
  EXPECT_THROW(classify_trichotomy(M, PLSpace::circles(1), {}, 1e-2), AmbiguousVerdict);
}

TEST(Trichotomy, FlatLapRejectsInfiniteVerdict) {
  const PLMap flat(PLSpace::circles(1), {{0, {0.0, 0.1, 0.2, 1.0}, {0.3, 0.4, 0.4, 1.3}}});
  EXPECT_THROW(classify_trichotomy(rotation_orbit(kAlpha, 500), PLSpace::circles(1), {}, 1e-2, {flat}),
               MinimalityRejected);
  const auto r = classify_trichotomy(rotation_orbit(0.25, 4), PLSpace::circles(1), {}, 1e-2, {flat});
  EXPECT_EQ(r.verdict, Verdict::Finite);
}

TEST(Trichotomy, BadInput) {
  EXPECT_THROW(classify_trichotomy({}, PLSpace::circles(1), {}, 1e-2), std::invalid_argument);
  EXPECT_THROW(classify_trichotomy({{0, 0.9}}, PLSpace::circles(1), {0, 0.1, 0.2}, 1e-2), std::invalid_argument);
  EXPECT_THROW(classify_trichotomy({{0, 0.1}}, PLSpace::circles(1), {}, 0.0), std::invalid_argument);
}

TEST(RotationEstimate, RigidRotation) {
  for (std::size_t n : {1u, 10u, 1000u}) EXPECT_NEAR(rotation_number_estimate(PLMap::rotation(0.3), n), 0.3, 1e-9);
}

TEST(RotationEstimate, IrrationalRotationWithinOneOverN) {
  for (std::size_t n : {10u, 100u, 10000u})
    EXPECT_LE(std::fabs(rotation_number_estimate(PLMap::rotation(kAlpha), n) - kAlpha), 1.0 / static_cast<double>(n));
}

TEST(RotationEstimate, RejectsNonHomeomorphisms) {
  const PLMap flat(PLSpace::circles(1), {{0, {0.0, 0.1, 0.2, 1.0}, {0.3, 0.4, 0.4, 1.3}}});
  EXPECT_THROW(rotation_number_estimate(flat, 10), std::invalid_argument);
  const PLMap deg2(PLSpace::circles(1), {{0, {0.0, 1.0}, {0.0, 2.0}}});
  EXPECT_THROW(rotation_number_estimate(deg2, 10), std::invalid_argument);
}

TEST(Denjoy, SingleStageIsHomeomorphism) {
  const PLMap f = denjoy_stage(kAlpha, 1);
  EXPECT_TRUE(f.is_homeomorphism());
  EXPECT_EQ(f.degree(0), 1);
  EXPECT_FALSE(f.has_flat_lap());
}

TEST(Denjoy, StageEightRotationNumber) {
  const PLMap f = denjoy_stage(kAlpha, 8);
  EXPECT_TRUE(f.is_homeomorphism());
  EXPECT_NEAR(rotation_number_estimate(f, 10000), kAlpha, 1e-2);
}

TEST(Denjoy, GapsMapForward) {
  const std::size_t N = 8;
  const PLMap f = denjoy_stage(kAlpha, N);
  const auto g = denjoy_gaps(kAlpha, N);
  double total = 0.0;
  for (double l : g.length) total += l;
  EXPECT_NEAR(total, 0.5, 1e-12);
  for (std::size_t n = 0; n + 1 < N; ++n) {
    EXPECT_NEAR(f({0, g.left[n]}).x, g.left[n + 1], 1e-12);
    EXPECT_NEAR(f({0, g.left[n] + g.length[n]}).x, g.left[n + 1] + g.length[n + 1], 1e-12);
  }
}

TEST(Denjoy, GapsWander) {
  const std::size_t N = 8;
  const PLMap f = denjoy_stage(kAlpha, N);
  const auto g = denjoy_gaps(kAlpha, N);
  for (std::size_t n = 0; n < N; ++n) {
    // f is increasing, so the image of the gap is the short arc between the
    // images of its endpoints.
    double a = g.left[n], b = g.left[n] + g.length[n];
    for (int k = 1; k <= 100; ++k) {
      a = f({0, a}).x;
      b = f({0, b}).x;
      const double len = (b - a) - std::floor(b - a);
      EXPECT_FALSE(arcs_overlap(a, len, g.left[n], g.length[n])) << "gap " << n << " iterate " << k;
    }
  }
}
