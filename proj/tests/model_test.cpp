#include <gtest/gtest.h>

#include <cmath>

#include "gfred/model.hpp"

using namespace gfred;

namespace {

const double kPi = std::acos(-1.0);

ModelOperatorSpec shifted(Geometry g, double c, double r = 2.0) {
  ModelOperatorSpec s;
  s.geometry = g;
  s.r = r;
  s.coefficients = {{c}, {}, {1.0}};
  s.n = 64;
  s.h = 0.1;
  return s;
}

}  // namespace

TEST(Model, GeometryNames) {
  for (Geometry g : {Geometry::B, Geometry::Cusp, Geometry::Scattering}) EXPECT_EQ(parse_geometry(to_string(g)), g);
  EXPECT_THROW(parse_geometry("edge"), InputError);
}

TEST(Model, FlatteningMapsAndInverses) {
  ModelOperatorSpec b = shifted(Geometry::B, 1.0);
  ModelOperatorSpec c = shifted(Geometry::Cusp, 1.0, 3.0);
  ModelOperatorSpec s = shifted(Geometry::Scattering, 1.0);
  for (double x : {0.01, 0.3, 0.9}) {
    EXPECT_NEAR(flatten(b, x), -std::log(x), 1e-14);
    EXPECT_NEAR(flatten(c, x), std::pow(x, -2.0) / 2.0, 1e-12 * flatten(c, x));
    EXPECT_NEAR(flatten(s, x), 1.0 / x, 1e-12 / x);
    for (const auto* spec : {&b, &c, &s}) EXPECT_NEAR(unflatten(*spec, flatten(*spec, x)), x, 1e-12);
  }
}

TEST(Model, BShiftedIsFredholmAtTheBoundary) {
  const ModelOperatorSpec spec = shifted(Geometry::B, 1.0);
  const BandOperator a = discretize_model(spec);
  const LaurentSymbol boundary = limit_operator(a, End::Plus);
  // Closed form: 1 + (2 − 2cos θ)/h².
  for (double t = 0; t < 2 * kPi; t += 0.1)
    EXPECT_NEAR(std::abs(boundary(t) - (1.0 + (2 - 2 * std::cos(t)) / (spec.h * spec.h))), 0.0, 1e-10);
  const SymbolCheck c = symbol_invertible(boundary, auto_grid(boundary));
  EXPECT_TRUE(c.invertible());
  EXPECT_NEAR(c.min_modulus, 1.0, 1e-10);
  EXPECT_TRUE(fredholm_verdict(a, auto_grid(boundary)).fredholm);
}

TEST(Model, BBareIsNotFredholm) {
  const ModelOperatorSpec spec = shifted(Geometry::B, 0.0);
  const LaurentSymbol boundary = limit_operator(discretize_model(spec), End::Plus);
  const SymbolCheck c = symbol_invertible(boundary, auto_grid(boundary));
  EXPECT_EQ(c.outcome, Invertibility::NotInvertible);
  EXPECT_NEAR(c.argmin, 0.0, 1e-3);
}

TEST(Model, CuspAndScatteringShareTheBSymbol) {
  const LaurentSymbol b = limit_operator(discretize_model(shifted(Geometry::B, 1.0)), End::Plus);
  for (const ModelOperatorSpec& spec : {shifted(Geometry::Cusp, 1.0, 2.0), shifted(Geometry::Scattering, 1.0)}) {
    const BandOperator a = discretize_model(spec);
    const LaurentSymbol s = limit_operator(a, End::Plus);
    ASSERT_EQ(s.bandwidth(), b.bandwidth());
    for (int k = -b.bandwidth(); k <= b.bandwidth(); ++k) EXPECT_LT(std::abs(s.coefficient(k) - b.coefficient(k)), 1e-10);
    EXPECT_TRUE(fredholm_verdict(a, auto_grid(s)).fredholm);
  }
}

TEST(Model, ClosedFormMatchesDiscretization) {
  ModelOperatorSpec spec;
  spec.geometry = Geometry::Cusp;
  spec.r = 1.5;
  spec.coefficients = {{0.5, 2.0}, {-1.5}, {2.0, 1.0}};
  spec.h = 0.05;
  const LaurentSymbol s = limit_operator(discretize_model(spec), End::Plus);
  for (double t = 0; t < 2 * kPi; t += 0.13) EXPECT_LT(std::abs(s(t) - model_boundary_symbol(spec, t)), 1e-9);
}

TEST(Model, CoreCarriesInteriorCoefficients) {
  ModelOperatorSpec spec;
  spec.geometry = Geometry::B;
  spec.coefficients = {{1.0, 3.0}, {}, {2.0}};  // (1 + 3x) + 2 D²
  spec.n = 20;
  spec.h = 0.2;
  const BandOperator a = discretize_model(spec);
  for (long j = 0; j < spec.n; ++j) {
    const double x = std::exp(-(j * spec.h));
    // −δ² has diagonal 2/h² and off-diagonals −1/h².
    EXPECT_NEAR(std::abs(a.entry(j, j) - (1.0 + 3.0 * x + 2.0 * 2.0 / (spec.h * spec.h))), 0.0, 1e-9);
    EXPECT_NEAR(std::abs(a.entry(j, j + 1) - (-2.0 / (spec.h * spec.h))), 0.0, 1e-9);
  }
  // Interior end is the identity; boundary end the limit.
  EXPECT_EQ(a.entry(-5, -5), Complex(1.0));
  EXPECT_EQ(a.entry(-5, -4), Complex(0.0));
  EXPECT_NEAR(std::abs(a.entry(spec.n + 5, spec.n + 5) - (1.0 + 4.0 / (spec.h * spec.h))), 0.0, 1e-9);
}

TEST(Model, FirstOrderTermIsAntisymmetricStencil) {
  ModelOperatorSpec spec;
  spec.coefficients = {{0.0}, {1.0}};
  const LaurentSymbol s = limit_operator(discretize_model(spec), End::Plus);
  for (double t = 0.1; t < 2 * kPi; t += 0.4) EXPECT_NEAR(std::abs(s(t) - (-std::sin(t) / spec.h)), 0.0, 1e-12);
}

TEST(Model, InvalidSpecsAreRejected) {
  ModelOperatorSpec bad_r = shifted(Geometry::Cusp, 1.0, 0.5);
  EXPECT_THROW(discretize_model(bad_r), InputError);
  ModelOperatorSpec small = shifted(Geometry::B, 1.0);
  small.n = 8;
  EXPECT_THROW(discretize_model(small), InputError);
  ModelOperatorSpec flat = shifted(Geometry::B, 1.0);
  flat.h = 0.0;
  EXPECT_THROW(discretize_model(flat), InputError);
  ModelOperatorSpec empty = shifted(Geometry::B, 1.0);
  empty.coefficients.clear();
  EXPECT_THROW(discretize_model(empty), InputError);
}
