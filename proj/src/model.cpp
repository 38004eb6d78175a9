#include "gfred/model.hpp"

#include <cmath>

namespace gfred {

std::string to_string(Geometry g) {
  switch (g) {
    case Geometry::B: return "b";
    case Geometry::Cusp: return "cusp";
    case Geometry::Scattering: return "scattering";
  }
  return "?";
}

Geometry parse_geometry(const std::string& name) {
  if (name == "b") return Geometry::B;
  if (name == "cusp") return Geometry::Cusp;
  if (name == "scattering") return Geometry::Scattering;
  throw InputError("unknown geometry '" + name + "' (expected b, cusp or scattering)");
}

void validate(const ModelOperatorSpec& spec) {
  if (spec.geometry == Geometry::Cusp && !(spec.r >= 1.0)) throw InputError("model: cusp exponent r must be >= 1");
  if (spec.n < 16) throw InputError("model: grid size n must be >= 16");
  if (!(spec.h > 0.0) || !std::isfinite(spec.h)) throw InputError("model: step h must be positive");
  if (spec.coefficients.empty()) throw InputError("model: no coefficients");
  for (const auto& poly : spec.coefficients)
    for (double c : poly)
      if (!std::isfinite(c)) throw InputError("model: non-finite coefficient");
}

namespace {

bool logarithmic(const ModelOperatorSpec& spec) {
  return spec.geometry == Geometry::B || (spec.geometry == Geometry::Cusp && spec.r == 1.0);
}

double exponent(const ModelOperatorSpec& spec) { return spec.geometry == Geometry::Scattering ? 2.0 : spec.r; }

double evaluate(const std::vector<double>& poly, double x) {
  double v = 0.0;
  for (auto it = poly.rbegin(); it != poly.rend(); ++it) v = v * x + *it;
  return v;
}

/// Stencil of D^m = (i∂_t)^m: (i δ₁)^{m mod 2} (−δ²)^{⌊m/2⌋}, with δ₁ the central
/// first difference and δ² the second difference.
LaurentSymbol stencil(int m, double h) {
  LaurentSymbol first(1, {-0.5 / h, 0.0, 0.5 / h});
  LaurentSymbol second(1, {1.0 / (h * h), -2.0 / (h * h), 1.0 / (h * h)});
  LaurentSymbol out(0, {1.0});
  for (int p = 0; p < m / 2; ++p) {
    LaurentSymbol minus_second(1, {-second.coefficient(-1), -second.coefficient(0), -second.coefficient(1)});
    out = multiply(out, minus_second);
  }
  if (m % 2 == 1) {
    LaurentSymbol i_first(1, {Complex(0, 1) * first.coefficient(-1), 0.0, Complex(0, 1) * first.coefficient(1)});
    out = multiply(out, i_first);
  }
  return out;
}

}  // namespace

double flatten(const ModelOperatorSpec& spec, double x) {
  if (logarithmic(spec)) return -std::log(x);
  const double r = exponent(spec);
  return std::pow(x, 1.0 - r) / (r - 1.0);
}

double unflatten(const ModelOperatorSpec& spec, double t) {
  if (logarithmic(spec)) return std::exp(-t);
  const double r = exponent(spec);
  return std::pow((r - 1.0) * t, -1.0 / (r - 1.0));
}

BandOperator discretize_model(const ModelOperatorSpec& spec) {
  validate(spec);
  const int orders = static_cast<int>(spec.coefficients.size());
  std::vector<LaurentSymbol> stencils;
  for (int m = 0; m < orders; ++m) stencils.push_back(stencil(m, spec.h));
  const int w = orders / 2;  // ⌈(orders − 1)/2⌉
  BandOperator a(w);
  a.diagonal(0).limit_minus = 1.0;
  const double t0 = flatten(spec, 1.0);
  std::vector<double> x(spec.n);
  for (long j = 0; j < spec.n; ++j) x[j] = unflatten(spec, t0 + static_cast<double>(j) * spec.h);
  for (int m = 0; m < orders; ++m) {
    const auto& poly = spec.coefficients[m];
    if (poly.empty()) continue;
    const LaurentSymbol& s = stencils[m];
    for (int k = -s.bandwidth(); k <= s.bandwidth(); ++k) {
      Diagonal& d = a.diagonal(k);
      d.limit_plus += poly.front() * s.coefficient(k);
      for (long j = 0; j < spec.n; ++j) d.core[j] += evaluate(poly, x[j]) * s.coefficient(k);
    }
  }
  a.normalize();
  return a;
}

Complex model_boundary_symbol(const ModelOperatorSpec& spec, double theta) {
  const double s = -std::sin(theta) / spec.h;
  const double q = (2.0 - 2.0 * std::cos(theta)) / (spec.h * spec.h);
  Complex v = 0.0;
  for (std::size_t m = 0; m < spec.coefficients.size(); ++m) {
    if (spec.coefficients[m].empty()) continue;
    v += spec.coefficients[m].front() * std::pow(q, static_cast<double>(m / 2)) * (m % 2 == 1 ? s : 1.0);
  }
  return v;
}

}  // namespace gfred
