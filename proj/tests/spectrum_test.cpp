#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "gfred/catalog.hpp"
#include "gfred/convolution.hpp"
#include "gfred/spectrum.hpp"
#include "test_support.hpp"

using namespace gfred;
using gfred::testing::names;

namespace {

const std::vector<std::string> k123 = {"1", "2", "3"};

std::vector<int> dims(const BlockDecomposition& d) {
  std::vector<int> out;
  for (const auto& b : d.blocks) out.push_back(b.dim);
  std::sort(out.begin(), out.end());
  return out;
}

Vector delta(const FiniteGroupoid& g, ArrowIndex a) {
  Vector v = Vector::Zero(g.num_arrows());
  v[a] = 1.0;
  return v;
}

// Oracle: block j lies in Prim_U iff its block map kills δ_a for every arrow
// with both endpoints in U.
std::set<std::size_t> lower_by_evaluation(const BlockDecomposition& d, const UnitSubset& u) {
  const FiniteGroupoid& g = d.groupoid();
  std::set<std::size_t> out;
  for (std::size_t b = 0; b < d.size(); ++b) {
    bool kills = true;
    for (ArrowIndex a = 0; a < g.num_arrows(); ++a)
      if (u.contains(g.dom(a)) && u.contains(g.ran(a)) && d.block_map(b, delta(g, a)).norm() > 1e-8) kills = false;
    if (kills) out.insert(b);
  }
  return out;
}

std::set<std::size_t> as_set(const SpectrumSubset& s) { return {s.begin(), s.end()}; }

}  // namespace

TEST(ConcreteAlgebra, PairIsFullMatrixAlgebra) {
  const ConcreteAlgebra a = concrete_algebra(pair_groupoid(k123));
  EXPECT_EQ(a.dimension, 3);
  EXPECT_EQ(a.base_points.size(), 1u);
  // The nine generators are the nine matrix units.
  std::set<std::pair<int, int>> cells;
  for (ArrowIndex x = 0; x < 9; ++x) {
    ASSERT_EQ(a.generators[x].size(), 1u);
    cells.insert(a.generators[x].front());
  }
  EXPECT_EQ(cells.size(), 9u);
}

TEST(ConcreteAlgebra, CyclicGroupIsCommutative) {
  const ConcreteAlgebra a = concrete_algebra(group_groupoid(FiniteGroup::cyclic(3)));
  EXPECT_EQ(a.dimension, 3);
  for (ArrowIndex x = 0; x < 3; ++x)
    for (ArrowIndex y = 0; y < 3; ++y) {
      const Matrix gx = a.generator(x), gy = a.generator(y);
      EXPECT_EQ((gx * gy - gy * gx).norm(), 0.0);
    }
}

TEST(ConcreteAlgebra, DisjointUnionIsDirectSum) {
  const FiniteGroupoid g = disjoint_union(pair_groupoid(k123), group_groupoid(FiniteGroup::cyclic(3), "4"));
  const ConcreteAlgebra a = concrete_algebra(g);
  EXPECT_EQ(a.dimension, 6);
  EXPECT_EQ(a.base_points.size(), 2u);
  for (ArrowIndex x = 0; x < g.num_arrows(); ++x) {
    const Matrix m = a.generator(x);
    const int o = a.orbit_of_arrow[x];
    const int lo = a.offsets[o], hi = lo + 3;
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j)
        if (m(i, j) != Complex(0.0)) {
          EXPECT_TRUE(i >= lo && i < hi && j >= lo && j < hi);
        }
  }
}

TEST(ConcreteAlgebra, RejectsInvalidGroupoid) {
  const FiniteGroupoid g = pair_groupoid(k123);
  const FiniteGroupoid broken = gfred::testing::with_compose(g, gfred::testing::arrow_between(g, "2", "1"),
                                                            gfred::testing::arrow_between(g, "3", "2"),
                                                            gfred::testing::arrow_between(g, "3", "3"));
  EXPECT_THROW(concrete_algebra(broken), InputError);
}

TEST(Wedderburn, PairThreeIsOneBlock) {
  const BlockDecomposition d = decompose(pair_groupoid(k123));
  EXPECT_EQ(dims(d), (std::vector<int>{3}));
  EXPECT_EQ(d.blocks[0].label, "O0.0");
}

TEST(Wedderburn, CyclicThreeMatchesCharacterTable) {
  const FiniteGroupoid g = group_groupoid(FiniteGroup::cyclic(3));
  const BlockDecomposition d = decompose(g);
  ASSERT_EQ(dims(d), (std::vector<int>{1, 1, 1}));
  // Oracle: characters k ↦ ω^{jk}, ω = e^{2πi/3}; element k of ℤ/3 is arrow id k.
  const double pi = std::acos(-1.0);
  std::vector<bool> matched(3, false);
  for (const auto& b : d.blocks) {
    for (int j = 0; j < 3; ++j) {
      double err = 0.0;
      for (ArrowIndex a = 0; a < 3; ++a)
        err = std::max(err, std::abs(b.character[a] - std::polar(1.0, 2 * pi * j * g.id(a) / 3.0)));
      if (err < 1e-9) matched[j] = true;
    }
  }
  EXPECT_TRUE(matched[0] && matched[1] && matched[2]);
}

TEST(Wedderburn, SwapActionIsOneTwoByTwoBlock) {
  EXPECT_EQ(dims(decompose(catalog::swap_groupoid())), (std::vector<int>{2}));
}

TEST(Wedderburn, SplitExampleCensus) {
  const BlockDecomposition d = decompose(catalog::split_example());
  EXPECT_EQ(dims(d), (std::vector<int>{1, 1, 2}));
}

TEST(Wedderburn, DenseCommutantAgreesWithUnionFind) {
  const ConcreteAlgebra a = concrete_algebra(catalog::swap_groupoid());
  std::vector<Matrix> gens;
  for (ArrowIndex x = 0; x < a.groupoid.num_arrows(); ++x) gens.push_back(a.generator(x));
  EXPECT_EQ(commutant_basis(a, 0).size(), commutant_basis_dense(gens).size());
}

TEST(Wedderburn, InvalidToleranceIsRejected) {
  SpectrumOptions o;
  o.cluster_tol = 1e-3;
  EXPECT_THROW(decompose(pair_groupoid(k123), o), InputError);
}

TEST(PrimPartition, PairThreeSinglePoint) {
  const FiniteGroupoid g = pair_groupoid(k123);
  const BlockDecomposition d = decompose(g);
  const PrimPartition p = prim_partition(d, names(g, {"1"}));
  EXPECT_TRUE(p.lower.empty());
  EXPECT_EQ(p.upper, (SpectrumSubset{0}));
  EXPECT_TRUE(p.consistent);
}

TEST(PrimPartition, SplitExampleIsotropyUnit) {
  const FiniteGroupoid g = catalog::split_example();
  const BlockDecomposition d = decompose(g);
  const UnitSubset u = names(g, {"3"});
  const PrimPartition p = prim_partition(d, u);
  EXPECT_EQ(as_set(p.lower), lower_by_evaluation(d, u));
  ASSERT_EQ(p.lower.size(), 1u);
  EXPECT_EQ(d.blocks[p.lower[0]].dim, 2);
  ASSERT_EQ(p.upper.size(), 2u);
  for (std::size_t b : p.upper) EXPECT_EQ(d.blocks[b].dim, 1);
  EXPECT_TRUE(p.consistent);
}

TEST(PrimPartition, AllUnitsLeavesNothingBelow) {
  const FiniteGroupoid g = catalog::split_example();
  const BlockDecomposition d = decompose(g);
  const PrimPartition p = prim_partition(d, UnitSubset::all(g));
  EXPECT_TRUE(p.lower.empty());
  EXPECT_EQ(p.upper.size(), d.size());
}

TEST(Induce, PairThreeCornerMapsToTheOnlyBlock) {
  const FiniteGroupoid g = pair_groupoid(k123);
  const UnitSubset u = names(g, {"1"});
  const BlockDecomposition d = decompose(g), r = decompose(reduction(g, u));
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(induce(d, r, u, 0), 0u);
}

TEST(Induce, SplitExampleCharactersMapToThemselves) {
  const FiniteGroupoid g = catalog::split_example();
  const UnitSubset u = names(g, {"3"});
  const FiniteGroupoid red = reduction(g, u);
  const BlockDecomposition d = decompose(g), r = decompose(red);
  const std::vector<ArrowIndex> emb = corner_embedding(g, red);
  for (std::size_t j = 0; j < r.size(); ++j) {
    const std::size_t b = induce(d, r, u, j);
    // Oracle: the target block evaluates every isotropy arrow to the same scalar.
    for (ArrowIndex a = 0; a < red.num_arrows(); ++a)
      EXPECT_NEAR(std::abs(d.block_map(b, delta(g, emb[a]))(0, 0) - r.block_map(j, delta(red, a))(0, 0)), 0.0, 1e-9);
  }
  const InductionMap m = induction_map(d, r, u);
  EXPECT_TRUE(m.bijective_onto_upper);
}

TEST(Induce, AllUnitsIsIdentity) {
  const FiniteGroupoid g = catalog::split_example();
  const UnitSubset all = UnitSubset::all(g);
  const BlockDecomposition d = decompose(g), r = decompose(reduction(g, all));
  for (std::size_t j = 0; j < r.size(); ++j) EXPECT_EQ(d.blocks[induce(d, r, all, j)].label, r.blocks[j].label);
}

TEST(PhiIsometry, Examples) {
  const FiniteGroupoid p = pair_groupoid({"1", "2"});
  const PhiReport a = check_phi_isometry(p, names(p, {"1"}), *p.find_unit("1"));
  EXPECT_EQ(a.fiber_size, 2u);
  EXPECT_LT(a.isometry_residual, 1e-10);
  EXPECT_LT(a.intertwining_residual, 1e-10);
  EXPECT_TRUE(a.surjective);

  const PhiReport b = check_phi_isometry(p, UnitSubset::all(p), 0);
  EXPECT_LT(b.isometry_residual, 1e-10);
  EXPECT_TRUE(b.surjective);

  const FiniteGroupoid s = catalog::split_example();
  const PhiReport c = check_phi_isometry(s, names(s, {"3"}), *s.find_unit("3"));
  EXPECT_EQ(c.fiber_size, 2u);
  EXPECT_LT(c.isometry_residual, 1e-10);
  EXPECT_LT(c.intertwining_residual, 1e-10);
  EXPECT_TRUE(c.surjective);
}

TEST(PhiIsometry, UnitOutsideUThrows) {
  const FiniteGroupoid p = pair_groupoid({"1", "2"});
  EXPECT_THROW(check_phi_isometry(p, names(p, {"1"}), *p.find_unit("2")), InputError);
}

TEST(NormEstimates, SplitExampleCharacterSum) {
  const FiniteGroupoid g = catalog::split_example();
  const UnitSubset u = names(g, {"3"});
  const FiniteGroupoid red = reduction(g, u);
  const BlockDecomposition d = decompose(g), r = decompose(red);
  const std::vector<ArrowIndex> emb = corner_embedding(g, red);
  ArrowFunction fr(red), f(g);
  for (ArrowIndex a = 0; a < red.num_arrows(); ++a) {
    fr[a] = 1.0;
    f[emb[a]] = 1.0;
  }
  EXPECT_NEAR(reduced_norm(fr), 2.0, 1e-12);
  EXPECT_NEAR(reduced_norm(f), 2.0, 1e-12);
  std::mt19937_64 rng(5);
  const NormReport rep = check_norm_estimates(d, r, u, 10, rng);
  EXPECT_LT(rep.max_corner_delta, 1e-9);
  EXPECT_GE(rep.min_slack, -1e-9);
}

TEST(NormEstimates, DeltasHaveNormOne) {
  const FiniteGroupoid g = pair_groupoid(k123);
  const FiniteGroupoid red = reduction(g, names(g, {"1", "2"}));
  const std::vector<ArrowIndex> emb = corner_embedding(g, red);
  for (ArrowIndex a = 0; a < red.num_arrows(); ++a) {
    EXPECT_NEAR(reduced_norm(ArrowFunction::delta(red, a)), 1.0, 1e-12);
    EXPECT_NEAR(reduced_norm(ArrowFunction::delta(g, emb[a])), 1.0, 1e-12);
  }
}

TEST(NormEstimates, RandomFunctionsOnPairCorner) {
  const FiniteGroupoid g = pair_groupoid(k123);
  const UnitSubset u = names(g, {"1", "2"});
  const FiniteGroupoid red = reduction(g, u);
  const std::vector<ArrowIndex> emb = corner_embedding(g, red);
  Rng rng(17);
  for (int t = 0; t < 10; ++t) {
    const ArrowFunction fr = random_function(red, rng);
    ArrowFunction f(g);
    for (ArrowIndex a = 0; a < red.num_arrows(); ++a) f[emb[a]] = fr[a];
    // Independent computation: operator norm of the 2×2 and 3×3 matrices directly.
    Matrix m2 = Matrix::Zero(2, 2), m3 = Matrix::Zero(3, 3);
    for (ArrowIndex a = 0; a < red.num_arrows(); ++a) {
      m2(red.ran(a), red.dom(a)) = fr[a];
      m3(g.ran(emb[a]), g.dom(emb[a])) = fr[a];
    }
    EXPECT_NEAR(operator_norm(m2), operator_norm(m3), 1e-9);
    EXPECT_NEAR(reduced_norm(fr), reduced_norm(f), 1e-9);
  }
}

TEST(SpectrumDecomposition, FixtureCovers) {
  const FiniteGroupoid s = catalog::split_example();
  const BlockDecomposition ds = decompose(s);
  const DecompositionReport a = verify_spectrum_decomposition(ds, {names(s, {"1", "2"}), names(s, {"3"})});
  EXPECT_EQ(a.total_blocks, 3u);
  ASSERT_EQ(a.entries.size(), 2u);
  EXPECT_EQ(a.entries[0].image.size(), 1u);
  EXPECT_EQ(a.entries[1].image.size(), 2u);
  EXPECT_TRUE(a.equality);

  const FiniteGroupoid p = pair_groupoid(k123);
  const BlockDecomposition dp = decompose(p);
  const DecompositionReport b = verify_spectrum_decomposition(dp, {names(p, {"1"}), names(p, {"2"})});
  EXPECT_TRUE(b.equality);
  for (const auto& e : b.entries) EXPECT_EQ(e.image, (SpectrumSubset{0}));

  const DecompositionReport c = verify_spectrum_decomposition(ds, {UnitSubset::all(s)});
  EXPECT_TRUE(c.equality);
  EXPECT_TRUE(c.entries[0].image_is_upper);
}

TEST(SpectrumDecomposition, UncoveredUnitsAreRefused) {
  const FiniteGroupoid s = catalog::split_example();
  EXPECT_THROW(verify_spectrum_decomposition(decompose(s), {names(s, {"1"})}), InputError);
}

TEST(Families, RegularRepresentationsAreExhaustive) {
  const FiniteGroupoid g = catalog::split_example();
  const BlockDecomposition d = decompose(g);
  std::vector<FamilyMember> fam;
  for (const auto& o : orbits(g)) {
    FamilyMember m;
    m.unit = o.members().front();
    fam.push_back(m);
  }
  const FamilyReport r = check_families(d, fam);
  EXPECT_TRUE(r.exhaustive);
  EXPECT_TRUE(r.corollary_holds);
}

TEST(Families, TrivialCharacterAloneMissesTheSign) {
  const FiniteGroupoid g = group_groupoid(FiniteGroup::cyclic(2));
  const BlockDecomposition d = decompose(g);
  // Oracle: the trivial character is the block sending every arrow to 1.
  std::string trivial;
  for (const auto& b : d.blocks)
    if (std::abs(b.character[0] - 1.0) < 1e-9 && std::abs(b.character[1] - 1.0) < 1e-9) trivial = b.label;
  ASSERT_FALSE(trivial.empty());
  FamilyMember m;
  m.kind = FamilyMember::Kind::Induced;
  m.u = UnitSubset::all(g);
  m.blocks = {trivial};
  const FamilyReport r = check_families(d, {m});
  EXPECT_FALSE(r.exhaustive);
  EXPECT_EQ(r.covered.size(), 1u);
  EXPECT_TRUE(r.members[0].equality_holds);

  FamilyMember all = m;
  all.blocks = d.labels({0, 1});
  EXPECT_TRUE(check_families(d, {all}).exhaustive);
}

TEST(Morita, SplitExample) {
  const FiniteGroupoid g = catalog::split_example();
  const MoritaReport r = check_morita(g, names(g, {"1"}));
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(r.bimodule_size, 2u);  // arrows with source 1 inside the orbit {1, 2}
}

class SpectrumProperties : public ::testing::TestWithParam<int> {};

TEST_P(SpectrumProperties, BlocksAreStarHomomorphisms) {
  Rng rng(1300 + GetParam());
  const FiniteGroupoid g = random_groupoid(rng);
  const BlockDecomposition d = decompose(g);
  int squares = 0;
  for (const auto& b : d.blocks) squares += b.dim * b.dim;
  EXPECT_EQ(squares, g.num_arrows());
  const ArrowFunction f = random_function(g, rng), h = random_function(g, rng);
  const ArrowFunction fh = convolve(f, h), fs = involution(f);
  for (std::size_t b = 0; b < d.size(); ++b) {
    const Matrix bf = d.block_map(b, f.values()), bh = d.block_map(b, h.values());
    EXPECT_LT((d.block_map(b, fh.values()) - bf * bh).norm(), 1e-9 * (1 + bf.norm() * bh.norm()));
    EXPECT_LT((d.block_map(b, fs.values()) - bf.adjoint()).norm(), 1e-9 * (1 + bf.norm()));
  }
  // Joint kernel is zero: the reduced norm is the largest block norm.
  double best = 0.0;
  for (std::size_t b = 0; b < d.size(); ++b) best = std::max(best, operator_norm(d.block_map(b, f.values())));
  EXPECT_NEAR(best, reduced_norm(f), 1e-9 * (1 + best));
}

TEST_P(SpectrumProperties, InductionIsBijectiveOntoUpper) {
  Rng rng(1400 + GetParam());
  const FiniteGroupoid g = random_groupoid(rng);
  const UnitSubset u = random_subset(g, rng);
  const BlockDecomposition d = decompose(g), r = decompose(reduction(g, u));
  const PrimPartition p = prim_partition(d, u);
  EXPECT_EQ(as_set(p.lower), lower_by_evaluation(d, u));
  EXPECT_TRUE(p.consistent);
  const InductionMap m = induction_map(d, r, u);
  EXPECT_TRUE(m.bijective_onto_upper);
  std::set<std::size_t> image(m.target.begin(), m.target.end());
  EXPECT_EQ(image, as_set(p.upper));
  EXPECT_EQ(image.size(), r.size());
  // Prim splits as lower ⊔ upper.
  EXPECT_EQ(p.lower.size() + p.upper.size(), d.size());
}

TEST_P(SpectrumProperties, PhiAndMorita) {
  Rng rng(1500 + GetParam());
  const FiniteGroupoid g = random_groupoid(rng);
  const UnitSubset u = random_subset(g, rng);
  for (UnitIndex x : u) {
    const PhiReport r = check_phi_isometry(g, u, x);
    EXPECT_LT(r.isometry_residual, 1e-8);
    EXPECT_LT(r.intertwining_residual, 1e-8);
    EXPECT_TRUE(r.surjective);
    EXPECT_EQ(r.rank, r.fiber_size);
  }
  EXPECT_TRUE(check_morita(g, u).ok());
}

TEST_P(SpectrumProperties, AdmissibleCoversDecompose) {
  Rng rng(1600 + GetParam());
  const FiniteGroupoid g = random_groupoid(rng);
  const auto cover = random_admissible_cover(g, rng);
  const DecompositionReport r = verify_spectrum_decomposition(decompose(g), cover);
  EXPECT_TRUE(r.equality);
  for (const auto& e : r.entries) EXPECT_TRUE(e.image_is_upper);
}

INSTANTIATE_TEST_SUITE_P(Seeds, SpectrumProperties, ::testing::Range(0, 10));
