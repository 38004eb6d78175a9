#include <gtest/gtest.h>

#include "gfred/catalog.hpp"
#include "gfred/convolution.hpp"
#include "test_support.hpp"

using namespace gfred;
using gfred::testing::arrow_between;

namespace {

const FiniteGroupoid& pair12() {
  static const FiniteGroupoid g = pair_groupoid({"1", "2"});
  return g;
}

const FiniteGroupoid& z2() {
  static const FiniteGroupoid g = group_groupoid(FiniteGroup::cyclic(2));
  return g;
}

// (x, y) in the pair groupoid: ran x, dom y.
ArrowIndex pa(const FiniteGroupoid& g, const std::string& ran, const std::string& dom) {
  return arrow_between(g, dom, ran);
}

double max_diff(const ArrowFunction& a, const ArrowFunction& b) { return (a.values() - b.values()).cwiseAbs().maxCoeff(); }

// Oracle: (f∗g)(a) summed over all composable pairs (b, c) with b·c = a.
ArrowFunction convolve_by_pairs(const ArrowFunction& f, const ArrowFunction& h) {
  const FiniteGroupoid& g = f.parent();
  ArrowFunction out(g);
  for (ArrowIndex b = 0; b < g.num_arrows(); ++b)
    for (ArrowIndex c = 0; c < g.num_arrows(); ++c) {
      const ArrowIndex bc = g.compose(b, c);
      if (bc != kNoArrow) out[bc] += f[b] * h[c];
    }
  return out;
}

}  // namespace

TEST(Convolve, DeltaCalculus) {
  const FiniteGroupoid g = catalog::split_example();
  for (ArrowIndex a = 0; a < g.num_arrows(); ++a)
    for (ArrowIndex b = 0; b < g.num_arrows(); ++b) {
      const ArrowFunction p = convolve(ArrowFunction::delta(g, a), ArrowFunction::delta(g, b));
      ArrowFunction expected(g);
      if (g.dom(a) == g.ran(b)) expected[g.compose(a, b)] = 1.0;
      EXPECT_EQ(max_diff(p, expected), 0.0);
    }
}

TEST(Convolve, PairGroupoidTwoByTwo) {
  const FiniteGroupoid& g = pair12();
  ArrowFunction f = ArrowFunction::delta(g, pa(g, "1", "1")) + ArrowFunction::delta(g, pa(g, "1", "2"));
  const ArrowFunction h = ArrowFunction::delta(g, pa(g, "2", "1"));
  const ArrowFunction p = convolve(f, h);
  EXPECT_EQ(max_diff(p, ArrowFunction::delta(g, pa(g, "1", "1"))), 0.0);
}

TEST(Convolve, UnitIsPartialIdentity) {
  Rng rng(3);
  const FiniteGroupoid g = catalog::split_example();
  const ArrowFunction f = random_function(g, rng);
  for (UnitIndex x = 0; x < g.num_units(); ++x) {
    const ArrowFunction p = convolve(f, ArrowFunction::delta(g, g.unit_arrow(x)));
    for (ArrowIndex a = 0; a < g.num_arrows(); ++a) EXPECT_EQ(p[a], g.dom(a) == x ? f[a] : Complex(0.0));
  }
}

TEST(Convolve, ParentMismatchThrows) {
  const FiniteGroupoid other = pair_groupoid({"1", "2"});
  EXPECT_THROW(convolve(ArrowFunction(pair12()), ArrowFunction(other)), InputError);
}

TEST(Involution, Examples) {
  const FiniteGroupoid g = catalog::swap_groupoid();
  for (ArrowIndex a = 0; a < g.num_arrows(); ++a) {
    EXPECT_EQ(max_diff(involution(ArrowFunction::delta(g, a)), ArrowFunction::delta(g, g.inverse(a))), 0.0);
    const ArrowFunction i = involution(ArrowFunction::delta(g, a, Complex(0, 1)));
    EXPECT_EQ(max_diff(i, ArrowFunction::delta(g, g.inverse(a), Complex(0, -1))), 0.0);
  }
  const ArrowFunction u = ArrowFunction::on_units(g, {2.5, -1.0});
  EXPECT_EQ(max_diff(involution(u), u), 0.0);
}

TEST(RegularRep, PairMatrixUnit) {
  const FiniteGroupoid& g = pair12();
  const UnitIndex x = *g.find_unit("1");
  const RepMatrix m = regular_rep(g, x, ArrowFunction::delta(g, pa(g, "2", "1")));
  ASSERT_EQ(m.matrix.rows(), 2);
  Matrix expected = Matrix::Zero(2, 2);
  int from = -1, to = -1;
  for (int i = 0; i < 2; ++i) {
    if (m.basis[i] == pa(g, "1", "1")) from = i;
    if (m.basis[i] == pa(g, "2", "1")) to = i;
  }
  ASSERT_GE(from, 0);
  ASSERT_GE(to, 0);
  expected(to, from) = 1.0;
  EXPECT_EQ((m.matrix - expected).norm(), 0.0);
}

TEST(RegularRep, UnitsGiveIdentityAndZeroGivesZero) {
  const FiniteGroupoid g = catalog::split_example();
  const ArrowFunction one = ArrowFunction::on_units(g, std::vector<Complex>(g.num_units(), 1.0));
  for (UnitIndex x = 0; x < g.num_units(); ++x) {
    const RepMatrix m = regular_rep(g, x, one);
    EXPECT_TRUE(m.matrix.isIdentity(0.0));
    EXPECT_TRUE(regular_rep(g, x, ArrowFunction(g)).matrix.isZero(0.0));
    EXPECT_EQ(m.matrix.rows(), static_cast<int>(g.source_fiber(x).size()));
  }
}

TEST(RegularRep, InvalidUnitThrows) { EXPECT_THROW(regular_rep(pair12(), 5, ArrowFunction(pair12())), InputError); }

TEST(ReducedNorm, Examples) {
  const FiniteGroupoid& g = pair12();
  EXPECT_NEAR(reduced_norm(ArrowFunction::delta(g, g.unit_arrow(0))), 1.0, 1e-12);
  EXPECT_NEAR(reduced_norm(ArrowFunction::delta(g, pa(g, "1", "2")) + ArrowFunction::delta(g, pa(g, "2", "1"))), 1.0,
              1e-12);
  // Characters of ℤ/2 evaluate δ_e + δ_s to 1 ± 1.
  const ArrowFunction f = ArrowFunction::delta(z2(), 0) + ArrowFunction::delta(z2(), 1);
  EXPECT_NEAR(reduced_norm(f), 2.0, 1e-12);
}

TEST(Apply, MatchesRegularRep) {
  Rng rng(11);
  const FiniteGroupoid g = catalog::swap_groupoid();
  const ArrowFunction f = random_function(g, rng);
  for (UnitIndex x = 0; x < g.num_units(); ++x) {
    FiberVector xi = fiber_vector(g, x);
    std::normal_distribution<double> n;
    for (Eigen::Index i = 0; i < xi.coefficients.size(); ++i) xi.coefficients[i] = {n(rng), n(rng)};
    const FiberVector out = apply(f, xi);
    const RepMatrix m = regular_rep(g, x, f);
    EXPECT_LT((out.coefficients - m.matrix * xi.coefficients).norm(), 1e-12);
  }
}

TEST(HaarSystem, CountingMeasureIsRightInvariant) {
  EXPECT_TRUE(check_right_invariance(catalog::split_example()).empty());
  EXPECT_TRUE(check_right_invariance(catalog::swap_groupoid()).empty());
}

class ConvolutionProperties : public ::testing::TestWithParam<int> {};

TEST_P(ConvolutionProperties, AlgebraLaws) {
  Rng rng(500 + GetParam());
  const FiniteGroupoid g = random_groupoid(rng);
  const ArrowFunction f = random_function(g, rng), h = random_function(g, rng), k = random_function(g, rng);
  const double scale = 1.0 + f.values().norm() * h.values().norm() * k.values().norm();

  EXPECT_LT(max_diff(convolve(f, h), convolve_by_pairs(f, h)), 1e-12 * scale);
  EXPECT_LT(max_diff(convolve(convolve(f, h), k), convolve(f, convolve(h, k))), 1e-12 * scale);
  EXPECT_EQ(max_diff(involution(involution(f)), f), 0.0);
  EXPECT_LT(max_diff(involution(convolve(f, h)), convolve(involution(h), involution(f))), 1e-12 * scale);
  EXPECT_LT(max_diff(convolve(f, h + k), convolve(f, h) + convolve(f, k)), 1e-12 * scale);
}

TEST_P(ConvolutionProperties, RegularRepIsStarHomomorphism) {
  Rng rng(600 + GetParam());
  const FiniteGroupoid g = random_groupoid(rng);
  const ArrowFunction f = random_function(g, rng), h = random_function(g, rng);
  const ArrowFunction fh = convolve(f, h), fs = involution(f);
  for (UnitIndex x = 0; x < g.num_units(); ++x) {
    const Matrix pf = regular_rep(g, x, f).matrix, ph = regular_rep(g, x, h).matrix;
    EXPECT_LT((regular_rep(g, x, fh).matrix - pf * ph).cwiseAbs().maxCoeff(), 1e-12 * (1 + pf.norm() * ph.norm()));
    EXPECT_LT((regular_rep(g, x, fs).matrix - pf.adjoint()).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST_P(ConvolutionProperties, CStarIdentity) {
  Rng rng(700 + GetParam());
  const FiniteGroupoid g = random_groupoid(rng);
  const ArrowFunction f = random_function(g, rng);
  const double n = reduced_norm(f);
  EXPECT_NEAR(reduced_norm(convolve(involution(f), f)), n * n, 1e-9 * (1 + n * n));
}

TEST_P(ConvolutionProperties, HaarRightInvariance) {
  Rng rng(800 + GetParam());
  EXPECT_TRUE(check_right_invariance(random_groupoid(rng)).empty());
}

TEST_P(ConvolutionProperties, MultiplierEstimate) {
  Rng rng(900 + GetParam());
  const FiniteGroupoid g = random_groupoid(rng);
  const ArrowFunction f = random_function(g, rng);
  std::normal_distribution<double> n;
  std::vector<Complex> phi(g.num_units());
  for (auto& v : phi) v = {n(rng), n(rng)};
  double sup = 0.0;
  for (const auto& v : phi) sup = std::max(sup, std::abs(v));
  EXPECT_LE(reduced_norm(range_multiplier(phi, f)), sup * reduced_norm(f) + 1e-10);

  // φ supported in an invariant set keeps the product inside 𝒢_U.
  const UnitSubset w = saturation(g, random_subset(g, rng));
  std::vector<Complex> cut(g.num_units(), 0.0);
  for (UnitIndex x : w) cut[x] = phi[x];
  const ArrowFunction p = range_multiplier(cut, f);
  for (ArrowIndex a : p.support()) {
    EXPECT_TRUE(w.contains(g.ran(a)));
    EXPECT_TRUE(w.contains(g.dom(a)));
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, ConvolutionProperties, ::testing::Range(0, 15));
