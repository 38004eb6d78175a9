#include <gtest/gtest.h>

#include <cmath>

#include "gfred/band_operator.hpp"
#include "gfred/catalog.hpp"
#include "gfred/random.hpp"

using namespace gfred;

namespace {

const double kPi = std::acos(-1.0);

double max_coeff_diff(const LaurentSymbol& a, const LaurentSymbol& b) {
  const int w = std::max(a.bandwidth(), b.bandwidth());
  double m = 0.0;
  for (int k = -w; k <= w; ++k) {
    const Complex x = k >= -a.bandwidth() && k <= a.bandwidth() ? a.coefficient(k) : Complex(0.0);
    const Complex y = k >= -b.bandwidth() && k <= b.bandwidth() ? b.coefficient(k) : Complex(0.0);
    m = std::max(m, std::abs(x - y));
  }
  return m;
}

// Oracle: (AB)[i][j] = Σ_k A[i][k] B[k][j] summed over a window wide enough
// to hold every nonzero term.
Complex product_entry(const BandOperator& a, const BandOperator& b, long i, long j) {
  Complex s = 0.0;
  for (long k = i - a.bandwidth(); k <= i + a.bandwidth(); ++k) s += a.entry(i, k) * b.entry(k, j);
  return s;
}

}  // namespace

TEST(LimitOperator, Identity) {
  const BandOperator id = BandOperator::identity();
  for (End e : {End::Minus, End::Plus}) {
    const LaurentSymbol s = limit_operator(id, e);
    for (double t : {0.0, 1.0, 2.5}) EXPECT_EQ(s(t), Complex(1.0));
  }
}

TEST(LimitOperator, Laplacian) {
  for (End e : {End::Minus, End::Plus}) {
    const LaurentSymbol s = limit_operator(BandOperator::laplacian(), e);
    for (double t = 0; t < 2 * kPi; t += 0.3) EXPECT_NEAR(std::abs(s(t) - (2 * std::cos(t) - 2)), 0.0, 1e-14);
  }
}

TEST(LimitOperator, LaplacianWithPotential) {
  BandOperator a = catalog::laplacian_with_limits(-1.0, 5.0);
  a.diagonal(0).core[0] = 17.0;
  a.diagonal(1).core[-3] = Complex(0, 2);
  const LaurentSymbol m = limit_operator(a, End::Minus), p = limit_operator(a, End::Plus);
  for (double t = 0; t < 2 * kPi; t += 0.3) {
    EXPECT_NEAR(std::abs(m(t) - (2 * std::cos(t) - 3)), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(p(t) - (2 * std::cos(t) + 3)), 0.0, 1e-14);
  }
}

TEST(BandOperator, EntriesAndCore) {
  BandOperator a(1);
  a.diagonal(1).limit_minus = 2.0;
  a.diagonal(1).limit_plus = 3.0;
  a.diagonal(1).core[4] = 9.0;
  EXPECT_EQ(a.entry(-5, -4), Complex(2.0));
  EXPECT_EQ(a.entry(0, 1), Complex(3.0));
  EXPECT_EQ(a.entry(4, 5), Complex(9.0));
  EXPECT_EQ(a.entry(0, 3), Complex(0.0));
  EXPECT_EQ(a.core_extent(), 4);
  EXPECT_THROW(a.diagonal(2), InputError);
  a.diagonal(1).core[7] = 3.0;
  a.normalize();
  EXPECT_EQ(a.diagonal(1).core.size(), 1u);
}

TEST(BandOperator, CompositionMatchesMatrixProduct) {
  Rng rng(21);
  const BandOperator a = random_band_operator(rng, 2, 4), b = random_band_operator(rng, 1, 3);
  const BandOperator ab = compose(a, b);
  for (long i = -15; i <= 15; ++i)
    for (long j = i - 4; j <= i + 4; ++j) EXPECT_LT(std::abs(ab.entry(i, j) - product_entry(a, b, i, j)), 1e-12);
}

TEST(Symbol, Examples) {
  const SymbolCheck one = symbol_invertible(LaurentSymbol(0, {1.0}));
  EXPECT_TRUE(one.invertible());
  EXPECT_NEAR(one.min_modulus, 1.0, 1e-14);

  const LaurentSymbol lap = limit_operator(BandOperator::laplacian(), End::Plus);
  const SymbolCheck z = symbol_invertible(lap);
  EXPECT_EQ(z.outcome, Invertibility::NotInvertible);
  EXPECT_LT(z.min_modulus, 1e-8);

  const LaurentSymbol shifted(1, {1.0, 3.0, 1.0});
  const SymbolCheck s = symbol_invertible(shifted);
  EXPECT_TRUE(s.invertible());
  EXPECT_NEAR(s.min_modulus, 1.0, 1e-12);
}

TEST(Symbol, NearZeroWithCoarseGridIsInconclusive) {
  // Range [1e-6, 4 + 1e-6]: positive but too close to zero for a coarse grid.
  const LaurentSymbol s(1, {-1.0, 2.0 + 1e-6, -1.0});
  const SymbolCheck c = symbol_invertible(s, 16);
  EXPECT_EQ(c.outcome, Invertibility::Inconclusive);
  EXPECT_TRUE(symbol_invertible_refined(s, 16).outcome != Invertibility::NotInvertible);
}

TEST(Symbol, PreconditionsAreChecked) {
  const LaurentSymbol s(2, {0, 0, 1, 0, 0});
  EXPECT_THROW(symbol_invertible(s, 19), InputError);
  EXPECT_NO_THROW(symbol_invertible(s, 20));
  EXPECT_THROW(symbol_invertible(s, 64, 0.0), InputError);
}

TEST(Symbol, LipschitzAndAutoGrid) {
  const LaurentSymbol s(2, {1.0, 0.0, 0.0, Complex(0, 2), 0.5});
  EXPECT_NEAR(s.lipschitz(), 2 * 1.0 + 2.0 + 2 * 0.5, 1e-14);
  EXPECT_EQ(auto_grid(LaurentSymbol(0, {1.0})), kDefaultSymbolGrid);
  const int g = auto_grid(LaurentSymbol(1, {1000.0, 0.0, 1000.0}));
  EXPECT_GE(g, 64 * 2000);
  EXPECT_EQ(g & (g - 1), 0);
}

TEST(Fredholm, Examples) {
  EXPECT_TRUE(fredholm_verdict(BandOperator::identity()).fredholm);
  const FredholmVerdict free = fredholm_verdict(BandOperator::laplacian());
  EXPECT_FALSE(free.fredholm);
  EXPECT_TRUE(free.conclusive);

  BandOperator a = catalog::laplacian_with_limits(-1.0, 5.0);
  a.diagonal(0).core[2] = Complex(4, -1);
  const FredholmVerdict v = fredholm_verdict(a);
  EXPECT_TRUE(v.fredholm);
  EXPECT_NEAR(v.minus.min_modulus, 1.0, 1e-12);
  EXPECT_NEAR(v.plus.min_modulus, 1.0, 1e-12);
}

TEST(Locality, Examples) {
  const LocalityReport id = locality_check(BandOperator::identity());
  EXPECT_TRUE(id.left_fredholm && id.right_fredholm && id.two_sided.fredholm && id.conjunction_holds);

  const LocalityReport half = locality_check(catalog::laplacian_with_limits(-1.0, 0.0));
  EXPECT_TRUE(half.left_fredholm);
  EXPECT_FALSE(half.right_fredholm);
  EXPECT_FALSE(half.two_sided.fredholm);
  EXPECT_TRUE(half.conjunction_holds);

  const LocalityReport both = locality_check(catalog::laplacian_with_limits(-7.0, 5.0));
  EXPECT_TRUE(both.left_fredholm && both.right_fredholm && both.two_sided.fredholm);
}

class BandProperties : public ::testing::TestWithParam<int> {};

TEST_P(BandProperties, SymbolIsMultiplicative) {
  Rng rng(2000 + GetParam());
  const BandOperator a = random_band_operator(rng, 1 + GetParam() % 3), b = random_band_operator(rng, 1 + GetParam() % 2);
  const BandOperator ab = compose(a, b);
  for (End e : {End::Minus, End::Plus})
    EXPECT_LT(max_coeff_diff(limit_operator(ab, e), multiply(limit_operator(a, e), limit_operator(b, e))), 1e-12);
}

TEST_P(BandProperties, VerdictIgnoresCore) {
  Rng rng(2100 + GetParam());
  const RandomTridiagonal t = random_selfadjoint_tridiagonal(rng);
  const FredholmVerdict v = fredholm_verdict(t.op);
  for (int i = 0; i < 3; ++i) {
    const FredholmVerdict w = fredholm_verdict(rerandomize_core(t.op, rng));
    EXPECT_EQ(w.fredholm, v.fredholm);
  }
}

TEST_P(BandProperties, LocalityConjunction) {
  Rng rng(2200 + GetParam());
  const BandOperator a = random_band_operator(rng, 2);
  const LocalityReport r = locality_check(a);
  if (r.conclusive) {
    EXPECT_TRUE(r.conjunction_holds);
    EXPECT_EQ(r.two_sided.fredholm, r.left_fredholm && r.right_fredholm);
  }
}

TEST_P(BandProperties, TridiagonalOracle) {
  Rng rng(2300 + GetParam());
  for (int flag : {0, 1}) {
    const RandomTridiagonal t = random_selfadjoint_tridiagonal(rng, 8, flag);
    // Closed form: σ(θ) = d + 2|c| cos(θ + arg c), range [d − 2|c|, d + 2|c|].
    auto avoids = [](double d, Complex c) { return d - 2 * std::abs(c) > 0 || d + 2 * std::abs(c) < 0; };
    const bool oracle = avoids(t.d_minus, t.c_minus) && avoids(t.d_plus, t.c_plus);
    EXPECT_EQ(oracle, flag == 1);
    EXPECT_EQ(tridiagonal_oracle(t), oracle);
    EXPECT_EQ(fredholm_verdict(t.op).fredholm, oracle);
  }
}

TEST_P(BandProperties, ScalingCovariance) {
  Rng rng(2400 + GetParam());
  const RandomTridiagonal t = random_selfadjoint_tridiagonal(rng);
  const bool v = fredholm_verdict(t.op).fredholm;
  for (Complex s : {Complex(2.0), Complex(-0.5), Complex(0.0, 3.0), std::polar(0.7, 1.1)})
    EXPECT_EQ(fredholm_verdict(scale(t.op, s)).fredholm, v);
}

INSTANTIATE_TEST_SUITE_P(Seeds, BandProperties, ::testing::Range(0, 20));
