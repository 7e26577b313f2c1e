#include <gtest/gtest.h>

#include <random>
#include <set>

#include "minact/minact.hpp"
#include "oracles.hpp"

using namespace minact;

namespace {

IntMatrix diag2(Int a, Int b) { return IntMatrix{{a, 0}, {0, b}}; }

bool is_unimodular(const IntMatrix& M) {
  const Int d = determinant(M);
  return d == 1 || d == -1;
}

// Membership of a torsion element in a witness, via the lattice coordinates.
bool contains(const SubgroupWitness& w, const IntVector& v) {
  return detail::hermite_coordinates(w.generators.transpose(), v).has_value();
}

}  // namespace

TEST(SmithNormalForm, IdentityIsFixed) {
  const auto s = smith_normal_form(IntMatrix::identity(2));
  EXPECT_EQ(s.D, IntMatrix::identity(2));
  EXPECT_EQ(s.U, IntMatrix::identity(2));
  EXPECT_EQ(s.V, IntMatrix::identity(2));
}

TEST(SmithNormalForm, TwoByTwoExample) {
  const IntMatrix M{{2, 4}, {6, 8}};
  const auto s = smith_normal_form(M);
  EXPECT_EQ(s.D, diag2(2, 4));
  EXPECT_EQ(s.U * M * s.V, s.D);
  const auto [d1, d12] = oracle::minor_gcds({{2, 4}, {6, 8}});
  EXPECT_EQ(d1, 2);
  EXPECT_EQ(d12 / d1, 4);
}

TEST(SmithNormalForm, ZeroMatrix) {
  const auto s = smith_normal_form(IntMatrix(2, 3));
  EXPECT_TRUE(s.D.is_zero());
}

TEST(SmithNormalForm, RandomMatricesMatchMinorGcds) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> e(-9, 9), dim(2, 4);
  for (int t = 0; t < 300; ++t) {
    const std::size_t r = static_cast<std::size_t>(dim(rng)), c = static_cast<std::size_t>(dim(rng));
    std::vector<std::vector<long>> raw(r, std::vector<long>(c));
    IntMatrix M(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) M(i, j) = raw[i][j] = e(rng);
    const auto s = smith_normal_form(M);
    ASSERT_EQ(s.U * M * s.V, s.D);
    ASSERT_TRUE(is_unimodular(s.U));
    ASSERT_TRUE(is_unimodular(s.V));
    const auto d = s.diagonal();
    for (std::size_t i = 0; i + 1 < d.size(); ++i) {
      ASSERT_GE(d[i], 0);
      if (d[i + 1] != 0) {
        ASSERT_EQ(d[i + 1] % d[i], 0);
      }
    }
    const auto [g1, g12] = oracle::minor_gcds(raw);
    ASSERT_EQ(d[0], g1);
    ASSERT_EQ(g1 == 0 ? 0 : d[0] * d[1], g12);
    // Same input, same output.
    const auto again = smith_normal_form(M);
    ASSERT_EQ(again.U, s.U);
    ASSERT_EQ(again.V, s.V);
  }
}

TEST(CanonicalForm, Examples) {
  EXPECT_EQ(canonical_form(IntMatrix(1, 0), 1), FgAbelianGroup::integers());
  EXPECT_EQ(canonical_form(IntMatrix::from_columns({{2, 0}, {0, 2}}, 2), 2), FgAbelianGroup(0, {2, 2}));
  EXPECT_EQ(canonical_form(IntMatrix::from_columns({{2, 2}, {0, 4}}, 2), 2), FgAbelianGroup(0, {2, 4}));
  const auto [d1, d12] = oracle::minor_gcds({{2, 0}, {2, 4}});
  EXPECT_EQ(d1, 2);
  EXPECT_EQ(d12 / d1, 4);
}

TEST(CanonicalForm, DropsUnitFactors) {
  // Z6 presented as Z2 + Z3.
  EXPECT_EQ(canonical_form(IntMatrix::from_columns({{2, 0}, {0, 3}}, 2), 2), FgAbelianGroup(0, {6}));
}

TEST(FgAbelianGroup, RejectsBrokenChains) {
  EXPECT_THROW(FgAbelianGroup(0, {2, 3}), std::invalid_argument);
  EXPECT_THROW(FgAbelianGroup(0, {1}), std::invalid_argument);
  EXPECT_EQ(FgAbelianGroup(1, {2, 2}).to_string(), "Z+Z2+Z2");
}

TEST(IndexSubgroups, IntegersIndexTwo) {
  const auto subs = index_subgroups(FgAbelianGroup::integers(), 2);
  ASSERT_EQ(subs.size(), 1u);
  EXPECT_EQ(subs[0].generators, IntMatrix{{2}});
}

TEST(IndexSubgroups, KleinFourIndexTwoAgainstClosedSubsets) {
  const FgAbelianGroup G(0, {2, 2});
  const auto subs = index_subgroups(G, 2);
  EXPECT_EQ(subs.size(), 3u);
  oracle::FiniteGroup og{{2, 2}};
  std::set<oracle::Subset> expected;
  for (const auto& s : oracle::closed_subsets(og))
    if (oracle::count(s) == 2) expected.insert(s);
  EXPECT_EQ(expected.size(), 3u);
  std::set<oracle::Subset> got;
  for (const auto& w : subs) {
    oracle::Subset s(4);
    for (long i = 0; i < 4; ++i) s[i] = contains(w, og.element(i));
    got.insert(s);
  }
  EXPECT_EQ(got, expected);
}

TEST(IndexSubgroups, PlaneIndexTwoHermiteForms) {
  const FgAbelianGroup Z2(2, {});
  const auto subs = index_subgroups(Z2, 2);
  ASSERT_EQ(subs.size(), 3u);
  // Column bases of the three index-2 sublattices.
  std::vector<SubgroupWitness> expected;
  for (const IntMatrix& m : {IntMatrix{{2, 0}, {0, 1}}, IntMatrix{{1, 0}, {0, 2}}, IntMatrix{{2, 1}, {0, 1}}})
    expected.push_back(make_witness(Z2, m));
  for (const auto& e : expected) EXPECT_EQ(std::count(subs.begin(), subs.end(), e), 1);
}

TEST(IndexSubgroups, LatticeCountsMatchDivisorFormula) {
  for (long n = 1; n <= 12; ++n) {
    EXPECT_EQ(static_cast<long>(index_subgroups(FgAbelianGroup(2, {}), n).size()), oracle::sublattice_count(n, 2));
    EXPECT_EQ(static_cast<long>(index_subgroups(FgAbelianGroup(3, {}), n).size()), oracle::sublattice_count(n, 3));
  }
}

TEST(IndexSubgroups, NoDuplicatesAndExactIndex) {
  const FgAbelianGroup G(1, {2, 4});
  for (Int l = 1; l <= 8; ++l) {
    const auto subs = index_subgroups(G, l);
    std::set<std::vector<IntVector>> seen;
    for (const auto& w : subs) {
      ASSERT_EQ(w.index, l);
      const auto again = make_witness(G, w.generators);
      ASSERT_EQ(again, w);
      std::vector<IntVector> rows;
      for (std::size_t i = 0; i < w.generators.cols(); ++i) rows.push_back(w.generators.column(i));
      ASSERT_TRUE(seen.insert(rows).second);
    }
  }
}

TEST(IndexSubgroups, ResourceBound) {
  EXPECT_THROW(index_subgroups(FgAbelianGroup(4, {}), 64, 1000), ResourceLimitExceeded);
}

TEST(StructureOfSubgroup, Examples) {
  const auto Z = FgAbelianGroup::integers();
  EXPECT_EQ(structure_of_subgroup(Z, make_witness(Z, IntMatrix{{2}})), Z);
  const FgAbelianGroup V(0, {2, 2});
  EXPECT_EQ(structure_of_subgroup(V, make_witness(V, IntMatrix::from_columns({{1, 1}}, 2))), FgAbelianGroup::cyclic(2));
  const FgAbelianGroup Z2(2, {});
  EXPECT_EQ(structure_of_subgroup(Z2, make_witness(Z2, IntMatrix::from_columns({{2, 0}, {0, 1}}, 2))), Z2);
}

TEST(EmbedsDensely, Examples) {
  EXPECT_TRUE(embeds_densely_in_circle(FgAbelianGroup::integers()));
  EXPECT_FALSE(embeds_densely_in_circle(FgAbelianGroup(0, {2, 2})));
  EXPECT_FALSE(embeds_densely_in_circle(FgAbelianGroup(1, {2, 2})));
  // Z2 + Z2 has three elements of order 2; the circle has one.
  oracle::FiniteGroup v{{2, 2}};
  int order_two = 0;
  for (long a = 1; a < 4; ++a) order_two += v.element_order(a) == 2;
  EXPECT_EQ(order_two, 3);
}

TEST(DecideEffective, IntegersAnyNumberOfCircles) {
  for (Int l = 1; l <= 12; ++l) {
    const auto c = decide_effective(FgAbelianGroup::integers(), l);
    ASSERT_TRUE(c.has_value());
    EXPECT_EQ(c->subgroup().generators, IntMatrix{{l}});
    EXPECT_EQ(c->quotient(), FgAbelianGroup::cyclic(l));
  }
}

TEST(DecideEffective, FiniteGroupsNever) {
  for (Int l = 1; l <= 6; ++l) EXPECT_FALSE(decide_effective(FgAbelianGroup(0, {2, 6}), l).has_value());
}

TEST(DecideEffective, KillOneTorsionFactor) {
  const FgAbelianGroup G(1, {2, 2});
  const auto c = decide_effective(G, 2);
  ASSERT_TRUE(c.has_value());
  EXPECT_EQ(c->subgroup_structure(), FgAbelianGroup(1, {2}));
  EXPECT_EQ(c->quotient_order(), 2);
}

TEST(DecideEffective, CertificateSplitsEveryElement) {
  const FgAbelianGroup G(1, {2, 4});
  for (Int l = 1; l <= 8; ++l) {
    const auto c = decide_effective(G, l);
    if (!c) continue;
    FiniteIndexer K(c->quotient());
    ASSERT_EQ(K.size(), l);
    for (Int a = -3; a <= 3; ++a)
      for (Int b = 0; b < 2; ++b)
        for (Int t = 0; t < 4; ++t) {
          const IntVector g{a, b, t};
          const auto [k, h] = c->to_extension(g);
          // g - s(k) lies in the kernel lattice.
          const IntVector s = c->lift(k);
          IntVector diff(3);
          for (int i = 0; i < 3; ++i) diff[i] = g[i] - s[i];
          EXPECT_TRUE(contains(c->subgroup(), diff));
          EXPECT_EQ(c->quotient_of(s), k);
        }
  }
}

TEST(DecideNonEffective, Examples) {
  const auto q = decide_non_effective(FgAbelianGroup(1, {2, 2}), 3);
  ASSERT_TRUE(q.has_value());
  EXPECT_EQ(q->quotient, FgAbelianGroup::integers());
  EXPECT_FALSE(decide_non_effective(FgAbelianGroup(0, {3}), 2).has_value());
  const auto z2 = decide_non_effective(FgAbelianGroup(2, {}), 6);
  ASSERT_TRUE(z2.has_value());
  EXPECT_EQ(z2->effective.quotient_order(), 6);
}

TEST(DecideCatalog, TorsionOfCircle) {
  EXPECT_TRUE(decide_catalog({CatalogKind::TorsionOfCircle, {}}, 1).admits_minimal_action);
  EXPECT_FALSE(decide_catalog({CatalogKind::TorsionOfCircle, {}}, 3).admits_minimal_action);
}

TEST(DecideCatalog, PrimeSum) {
  const CatalogGroup g{CatalogKind::PrimeSum, {2, 3, 5, 7, 11}};
  EXPECT_TRUE(decide_catalog(g, 30).admits_minimal_action);
  EXPECT_EQ(decide_catalog(g, 30).factor_primes, (std::vector<Int>{2, 3, 5}));
  EXPECT_FALSE(decide_catalog(g, 4).admits_minimal_action);
  EXPECT_TRUE(decide_catalog(g, 1).admits_minimal_action);
}

TEST(DecideCatalog, DivisibleGroups) {
  EXPECT_TRUE(decide_catalog({CatalogKind::Rationals, {}}, 1).admits_minimal_action);
  EXPECT_FALSE(decide_catalog({CatalogKind::Rationals, {}}, 2).admits_minimal_action);
  EXPECT_TRUE(decide_catalog({CatalogKind::Prufer, {3}}, 1).admits_minimal_action);
  EXPECT_FALSE(decide_catalog({CatalogKind::Prufer, {3}}, 3).admits_minimal_action);
  EXPECT_THROW(decide_catalog({CatalogKind::Prufer, {4}}, 1), std::invalid_argument);
}
