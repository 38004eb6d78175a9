#pragma once

#include <string>
#include <vector>

#include "gfred/band_operator.hpp"

namespace gfred {

enum class Geometry { B, Cusp, Scattering };

std::string to_string(Geometry g);
Geometry parse_geometry(const std::string& name);

/// P = Σ_m a_m(x) D^m with D = −i·V, V the model vector field near the
/// boundary x = 0 (b: x∂x, cusp: x^r ∂x, scattering: x²∂x).
/// coefficients[m][p] is the coefficient of x^p in a_m.
struct ModelOperatorSpec {
  Geometry geometry = Geometry::B;
  double r = 2.0;  // cusp exponent
  std::vector<std::vector<double>> coefficients;
  long n = 64;     // grid points carried in the core
  double h = 0.1;  // step in the flattened variable t
};

void validate(const ModelOperatorSpec& spec);

/// Flattened coordinate t(x) with V = −∂_t, and its inverse.
double flatten(const ModelOperatorSpec& spec, double x);
double unflatten(const ModelOperatorSpec& spec, double t);

/// Central differences on t_j = t(1) + j·h. Rows j in [0, n) carry a_m(x(t_j));
/// rows j >= n carry the boundary values a_m(0) (limit at +∞); rows j < 0 are
/// the identity. Throws InputError on an invalid spec.
BandOperator discretize_model(const ModelOperatorSpec& spec);

/// Closed-form boundary symbol at θ: Σ_m a_m(0) s^{m mod 2} q^{⌊m/2⌋} with
/// s = −sin θ / h (first-order stencil) and q = (2 − 2cos θ)/h² (second-order).
Complex model_boundary_symbol(const ModelOperatorSpec& spec, double theta);

}  // namespace gfred
