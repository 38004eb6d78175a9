#pragma once

#include <vector>

#include "gfred/band_operator.hpp"
#include "gfred/groupoid.hpp"

// Data-parallel kernels. `serial` is the reference; `omp` must agree with it
// exactly (same arithmetic per output element) and is what the library uses.
namespace gfred::kernels {

/// π_x(f) on the basis source_fiber(x); f holds values by arrow index.
Matrix regular_matrix(const FiniteGroupoid& g, UnitIndex x, const Vector& f);

namespace serial {

Vector convolve(const FiniteGroupoid& g, const Vector& f, const Vector& h);
std::vector<double> regular_norms(const FiniteGroupoid& g, const Vector& f);
std::vector<double> symbol_moduli(const std::vector<Complex>& coefficients, int grid);
std::vector<std::vector<double>> section_singular_values(const BandOperator& a, const std::vector<long>& sizes);

}  // namespace serial

namespace omp {

Vector convolve(const FiniteGroupoid& g, const Vector& f, const Vector& h);
std::vector<double> regular_norms(const FiniteGroupoid& g, const Vector& f);
std::vector<double> symbol_moduli(const std::vector<Complex>& coefficients, int grid);
std::vector<std::vector<double>> section_singular_values(const BandOperator& a, const std::vector<long>& sizes);

}  // namespace omp

}  // namespace gfred::kernels
