#include <gtest/gtest.h>

#include <random>

#include "instances.hpp"
#include "minact/minact.hpp"

using namespace minact;

namespace {

// Plain linear interpolation, independent of PLMap.
double interp(const std::vector<double>& xs, const std::vector<double>& ys, double x) {
  for (std::size_t i = 0; i + 1 < xs.size(); ++i)
    if (x <= xs[i + 1]) return ys[i] + (x - xs[i]) / (xs[i + 1] - xs[i]) * (ys[i + 1] - ys[i]);
  return ys.back();
}

double mod1(double y) { return y - std::floor(y); }

// A circle map which, on A = [0.25, 0.75] in local coordinates, is
// s: 0 -> -0.1, 0.4 -> 0.35, 0.5 -> 0.2, 0.9 -> -0.2, 1 -> -0.25.
PLMap folded_map() {
  return PLMap(PLSpace::circles(1),
               {{0, {0.0, 0.25, 0.45, 0.5, 0.7, 0.75, 1.0}, {0.2, 0.2, 0.425, 0.35, 0.15, 0.125, 0.2}}});
}

}  // namespace

TEST(ArcLaps, TentHasTwoLaps) {
  const PLMap tent(PLSpace({ComponentKind::Arc}), {{0, {0.0, 0.5, 1.0}, {0.0, 1.0, 0.0}}});
  const auto laps = arc_laps(tent, {0, 0.0, 1.0});
  ASSERT_EQ(laps.size(), 2u);
  EXPECT_EQ(laps[0].orientation, 1);
  EXPECT_EQ(laps[1].orientation, -1);
  const auto g = covering_graph(laps);
  // Each lap covers both laps.
  EXPECT_EQ(g[0].size(), 2u);
  EXPECT_EQ(g[1].size(), 2u);
}

TEST(PeriodicPoint, TentFixedPoint) {
  const PLMap tent(PLSpace({ComponentKind::Arc}), {{0, {0.0, 0.5, 1.0}, {0.0, 1.0, 0.0}}});
  const auto p = periodic_point_in_arc(tent, {0, 0.0, 1.0}, 5);
  ASSERT_TRUE(p);
  EXPECT_EQ(p->period, 1u);
  // Interior solution of 2 - 2x = x; the endpoint 0 is also fixed.
  EXPECT_NEAR(p->point.x, 2.0 / 3.0, 1e-9);
  EXPECT_LT(p->residual, 1e-9);
}

TEST(PeriodicPoint, IrrationalRotationHasNone) {
  const PLMap r = PLMap::rotation(std::sqrt(2.0) - 1);
  EXPECT_FALSE(periodic_point_in_arc(r, {0, 0.1, 0.3}, 20));
  EXPECT_FALSE(periodic_point_in_arc(r, {0, 0.0, 1.0}, 20));
  EXPECT_FALSE(fixed_point_in_arc(r, {0, 0.0, 1.0}));
}

TEST(PeriodicPoint, FoldingWitnessOnArc) {
  // h(0.1) >= 0.8 and h(0.7) <= 0.1 (mod 1): a periodic point lies in [0.1, 0.2].
  const std::vector<double> xs{0.0, 0.1, 0.2, 0.7, 0.8, 1.0}, ys{0.85, 0.8, 0.7, 1.1, 1.75, 1.85};
  const PLMap h(PLSpace::circles(1), {{0, xs, ys}});
  EXPECT_GE(interp(xs, ys, 0.1), 0.8);
  EXPECT_LE(mod1(interp(xs, ys, 0.7)), 0.1 + 1e-12);
  const auto p = periodic_point_in_arc(h, {0, 0.1, 0.8}, 20);
  ASSERT_TRUE(p);
  EXPECT_GE(p->point.x, 0.1);
  EXPECT_LE(p->point.x, 0.2);
  // Iterate with the independent interpolator.
  double y = p->point.x;
  for (std::size_t i = 0; i < p->period; ++i) y = mod1(interp(xs, ys, y));
  EXPECT_LT(circle_distance(y, p->point.x), 1e-9);
  EXPECT_NE(p->period, 1u);
  EXPECT_FALSE(fixed_point_in_arc(h, {0, 0.1, 0.2}));
}

TEST(PeriodicPoint, RandomArcSelfMaps) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> xs{0.0}, ys{u(rng)};
    const int k = 2 + trial % 6;
    for (int i = 1; i < k; ++i) xs.push_back(static_cast<double>(i) / k + 0.3 * (u(rng) - 0.5) / k);
    for (int i = 1; i < k; ++i) ys.push_back(u(rng));
    xs.push_back(1.0);
    ys.push_back(u(rng));
    const PLMap f(PLSpace({ComponentKind::Arc}), {{0, xs, ys}});
    // A continuous self-map of [0,1] always has a fixed point.
    const auto p = periodic_point_in_arc(f, {0, 0.0, 1.0}, 4);
    ASSERT_TRUE(p) << trial;
    EXPECT_EQ(p->period, 1u);
    EXPECT_LT(std::fabs(interp(xs, ys, p->point.x) - p->point.x), 1e-9) << trial;
    const auto fx = fixed_point_in_arc(f, {0, 0.0, 1.0});
    ASSERT_TRUE(fx);
    EXPECT_LT(std::fabs(interp(xs, ys, *fx) - *fx), 1e-9);
  }
}

TEST(CrossingArcs, IncreasingCase) {
  const PLMap r = PLMap::rotation(0.15);
  const FreeArc A{0, 0.25, 0.75};
  const auto I = monotone_crossing_arcs(r, A, 0.2, 0.9);
  EXPECT_EQ(I.crossing_case, 1);
  EXPECT_EQ(I.orientation, 1);
  EXPECT_NEAR(I.lo, 0.2, 1e-12);
  EXPECT_NEAR(I.hi, 0.7, 1e-12);
  EXPECT_NEAR(I.image_lo, 0.5, 1e-12);
  EXPECT_NEAR(I.image_hi, 1.0, 1e-12);
  // Endpoint images by direct evaluation.
  EXPECT_NEAR(A.to_local(r({0, A.to_global(I.lo)}).x), 0.5, 1e-12);
  EXPECT_NEAR(A.to_local(r({0, A.to_global(I.hi)}).x), 1.0, 1e-12);
}

TEST(CrossingArcs, DecreasingCase) {
  const PLMap f = folded_map();
  const FreeArc A{0, 0.25, 0.75};
  ASSERT_FALSE(fixed_point_in_arc(f, A));
  const auto I = monotone_crossing_arcs(f, A, 0.5, 0.9);
  EXPECT_EQ(I.crossing_case, 2);
  EXPECT_EQ(I.orientation, -1);
  EXPECT_NEAR(I.lo, 0.5, 1e-12);
  EXPECT_NEAR(I.hi, 0.7, 1e-12);
  EXPECT_NEAR(I.image_lo, 0.0, 1e-12);
  EXPECT_NEAR(I.image_hi, 0.2, 1e-12);
}

TEST(CrossingArcs, FoldBeforeExitIsSkipped) {
  // From a = 0.2 the image rises to 0.35, folds back through f(a) = 0.125 and
  // exits below 0. I starts at the last return to f(a).
  const PLMap f = folded_map();
  const FreeArc A{0, 0.25, 0.75};
  const auto I = monotone_crossing_arcs(f, A, 0.2, 0.9);
  const double fa = -0.1 + 0.45 * 0.2 / 0.4;
  EXPECT_NEAR(I.image_hi, fa, 1e-12);
  EXPECT_NEAR(I.image_lo, 0.0, 1e-12);
  EXPECT_GT(I.lo, 0.5);
  EXPECT_EQ(I.orientation, -1);
}

TEST(CrossingArcs, HypothesisViolations) {
  const PLMap r = PLMap::rotation(0.15);
  const FreeArc A{0, 0.25, 0.75};
  EXPECT_THROW(monotone_crossing_arcs(r, A, 0.2, 0.3), HypothesisViolation);
  EXPECT_THROW(monotone_crossing_arcs(r, A, 0.9, 0.2), HypothesisViolation);
  const PLMap tent(PLSpace({ComponentKind::Arc}), {{0, {0.0, 0.5, 1.0}, {0.0, 1.0, 0.0}}});
  EXPECT_THROW(monotone_crossing_arcs(tent, {0, 0.0, 1.0}, 0.1, 0.9), HypothesisViolation);
}

TEST(PeriodicPoint, OrbitLeavingTheArc) {
  const PLMap r = PLMap::rotation(0.4);
  const auto p = periodic_point_in_arc(r, {0, 0.1, 0.3}, 5);
  ASSERT_TRUE(p);
  EXPECT_EQ(p->period, 5u);
  EXPECT_GE(p->point.x, 0.1);
  EXPECT_LE(p->point.x, 0.3);
  EXPECT_FALSE(periodic_point_in_arc(r, {0, 0.1, 0.3}, 4));
}

TEST(PeriodicPoint, FlatSpotCircleMap) {
  // Degree one, constant 0.3 on [0, 0.2]: the flat value returns after
  // 0.3 -> 0.65 -> 0.9875 -> ... ; every orbit ends on one periodic cycle.
  const std::vector<double> xs{0.0, 0.2, 1.0}, ys{0.3, 0.3, 1.3};
  const PLMap f(PLSpace::circles(1), {{0, xs, ys}});
  const auto p = periodic_point_in_arc(f, {0, 0.0, 1.0}, 30);
  ASSERT_TRUE(p);
  double y = p->point.x;
  for (std::size_t i = 0; i < p->period; ++i) y = mod1(interp(xs, ys, y));
  EXPECT_LT(circle_distance(y, p->point.x), 1e-9);
  // No shorter return with the independent evaluator.
  y = p->point.x;
  for (std::size_t i = 1; i < p->period; ++i) {
    y = mod1(interp(xs, ys, y));
    EXPECT_GT(circle_distance(y, p->point.x), 1e-9) << i;
  }
}

TEST(FlatSpotInstances, ShapeAndTuning) {
  std::mt19937_64 rng(5);
  int seen = 0;
  for (int i = 0; i < 40 && seen < 5; ++i) {
    const auto in = instances::draw(rng);
    if (!in) continue;
    ++seen;
    const auto& m = in->shape;
    EXPECT_EQ(in->f.degree(0), 1);
    EXPECT_TRUE(in->f.has_flat_lap());
    // Constant c on both flat ends, which A reaches into.
    EXPECT_DOUBLE_EQ(in->f({0, 0.5 * m.w}).x, m.c);
    EXPECT_DOUBLE_EQ(in->f({0, 1 - 0.5 * m.w}).x, m.c);
    EXPECT_LT(in->A.u, m.w);
    EXPECT_GT(in->A.v, 1 - m.w);
    // Bisection stopped at double resolution around the target rotation number.
    EXPECT_EQ(instances::rotation_sign(in->f, in->target, 1000), 0);
  }
  EXPECT_EQ(seen, 5);
}

TEST(FlatSpotInstances, GridDetectsPeriodicFlatSpot) {
  // Rotation number 1/3 exactly: the flat value is periodic.
  const PLMap f(PLSpace::circles(1), {{0, {0.0, 0.001, 0.999, 1.0}, {1.0 / 3, 1.0 / 3, 4.0 / 3, 4.0 / 3}}});
  EXPECT_TRUE(instances::grid_shows_periodic_point(f, 8192, 10));
  EXPECT_FALSE(instances::grid_shows_periodic_point(PLMap::rotation(std::sqrt(2.0) - 1), 8192, 100));
}
