#include "gfred/kernels.hpp"

#include <cmath>
#include <numbers>

#include "gfred/finite_section.hpp"

namespace gfred::kernels {

Matrix regular_matrix(const FiniteGroupoid& g, UnitIndex x, const Vector& f) {
  const auto basis = g.source_fiber(x);
  const Eigen::Index n = static_cast<Eigen::Index>(basis.size());
  Matrix m = Matrix::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const ArrowIndex hinv = g.inverse(basis[j]);
    for (Eigen::Index i = 0; i < n; ++i) m(i, j) = f[g.compose(basis[i], hinv)];
  }
  return m;
}

namespace {

Complex convolve_at(const FiniteGroupoid& g, const Vector& f, const Vector& h, ArrowIndex a) {
  Complex s = 0.0;
  for (ArrowIndex y : g.source_fiber(g.dom(a))) s += f[g.compose(a, g.inverse(y))] * h[y];
  return s;
}

Complex symbol_at(const std::vector<Complex>& c, int grid, int j) {
  const int w = static_cast<int>(c.size() / 2);
  Complex s = 0.0;
  for (int k = -w; k <= w; ++k) {
    // Reduce k·j modulo the grid so that grid angles are evaluated exactly.
    const long r = ((static_cast<long>(k) * j) % grid + grid) % grid;
    const double theta = 2.0 * std::numbers::pi * static_cast<double>(r) / grid;
    s += c[k + w] * Complex(std::cos(theta), std::sin(theta));
  }
  return s;
}

}  // namespace

namespace serial {

Vector convolve(const FiniteGroupoid& g, const Vector& f, const Vector& h) {
  Vector out(g.num_arrows());
  for (ArrowIndex a = 0; a < g.num_arrows(); ++a) out[a] = convolve_at(g, f, h, a);
  return out;
}

std::vector<double> regular_norms(const FiniteGroupoid& g, const Vector& f) {
  std::vector<double> out(g.num_units());
  for (UnitIndex x = 0; x < g.num_units(); ++x) out[x] = operator_norm(regular_matrix(g, x, f));
  return out;
}

std::vector<double> symbol_moduli(const std::vector<Complex>& coefficients, int grid) {
  std::vector<double> out(grid);
  for (int j = 0; j < grid; ++j) out[j] = std::abs(symbol_at(coefficients, grid, j));
  return out;
}

std::vector<std::vector<double>> section_singular_values(const BandOperator& a, const std::vector<long>& sizes) {
  std::vector<std::vector<double>> out;
  for (long n : sizes) out.push_back(gfred::section_singular_values(a, n));
  return out;
}

}  // namespace serial

namespace omp {

Vector convolve(const FiniteGroupoid& g, const Vector& f, const Vector& h) {
  const int m = g.num_arrows();
  Vector out(m);
#pragma omp parallel for schedule(static) if (m > 256)
  for (ArrowIndex a = 0; a < m; ++a) out[a] = convolve_at(g, f, h, a);
  return out;
}

std::vector<double> regular_norms(const FiniteGroupoid& g, const Vector& f) {
  const int n = g.num_units();
  std::vector<double> out(n);
#pragma omp parallel for schedule(dynamic) if (n > 4)
  for (UnitIndex x = 0; x < n; ++x) out[x] = operator_norm(regular_matrix(g, x, f));
  return out;
}

std::vector<double> symbol_moduli(const std::vector<Complex>& coefficients, int grid) {
  std::vector<double> out(grid);
#pragma omp parallel for schedule(static) if (grid > 2048)
  for (int j = 0; j < grid; ++j) out[j] = std::abs(symbol_at(coefficients, grid, j));
  return out;
}

std::vector<std::vector<double>> section_singular_values(const BandOperator& a, const std::vector<long>& sizes) {
  const long count = static_cast<long>(sizes.size());
  std::vector<std::vector<double>> out(sizes.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < count; ++i) out[i] = gfred::section_singular_values(a, sizes[i]);
  return out;
}

}  // namespace omp

}  // namespace gfred::kernels
