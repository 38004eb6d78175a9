#include "gfred/convolution.hpp"

#include <algorithm>

#include "gfred/kernels.hpp"

namespace gfred {

double operator_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::BDCSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

ArrowFunction::ArrowFunction(const FiniteGroupoid& parent)
    : parent_(&parent), values_(Vector::Zero(parent.num_arrows())) {}

ArrowFunction::ArrowFunction(const FiniteGroupoid& parent, Vector values) : parent_(&parent), values_(std::move(values)) {
  if (values_.size() != parent.num_arrows()) throw InputError("arrow function: value count differs from arrow count");
}

ArrowFunction ArrowFunction::delta(const FiniteGroupoid& parent, ArrowIndex a, Complex value) {
  if (a < 0 || a >= parent.num_arrows()) throw InputError("arrow function: arrow index out of range");
  ArrowFunction f(parent);
  f[a] = value;
  return f;
}

ArrowFunction ArrowFunction::on_units(const FiniteGroupoid& parent, const std::vector<Complex>& weights) {
  if (static_cast<int>(weights.size()) != parent.num_units())
    throw InputError("arrow function: one weight per unit expected");
  ArrowFunction f(parent);
  for (UnitIndex x = 0; x < parent.num_units(); ++x) f[parent.unit_arrow(x)] = weights[x];
  return f;
}

namespace {

void require_same_parent(const ArrowFunction& a, const ArrowFunction& b) {
  if (&a.parent() != &b.parent()) throw InputError("arrow functions live on different groupoids");
}

}  // namespace

ArrowFunction& ArrowFunction::operator+=(const ArrowFunction& other) {
  require_same_parent(*this, other);
  values_ += other.values_;
  return *this;
}

ArrowFunction& ArrowFunction::operator-=(const ArrowFunction& other) {
  require_same_parent(*this, other);
  values_ -= other.values_;
  return *this;
}

ArrowFunction& ArrowFunction::operator*=(Complex s) {
  values_ *= s;
  return *this;
}

std::vector<ArrowIndex> ArrowFunction::support() const {
  std::vector<ArrowIndex> out;
  for (ArrowIndex a = 0; a < values_.size(); ++a)
    if (values_[a] != 0.0) out.push_back(a);
  return out;
}

ArrowFunction operator+(ArrowFunction a, const ArrowFunction& b) { return a += b; }
ArrowFunction operator-(ArrowFunction a, const ArrowFunction& b) { return a -= b; }
ArrowFunction operator*(Complex s, ArrowFunction a) { return a *= s; }

ArrowFunction convolve(const ArrowFunction& f, const ArrowFunction& g) {
  require_same_parent(f, g);
  return ArrowFunction(f.parent(), kernels::omp::convolve(f.parent(), f.values(), g.values()));
}

ArrowFunction involution(const ArrowFunction& f) {
  const FiniteGroupoid& g = f.parent();
  ArrowFunction out(g);
  for (ArrowIndex a = 0; a < g.num_arrows(); ++a) out[a] = std::conj(f[g.inverse(a)]);
  return out;
}

ArrowFunction range_multiplier(const std::vector<Complex>& phi, const ArrowFunction& f) {
  const FiniteGroupoid& g = f.parent();
  if (static_cast<int>(phi.size()) != g.num_units()) throw InputError("multiplier: one value per unit expected");
  ArrowFunction out(g);
  for (ArrowIndex a = 0; a < g.num_arrows(); ++a) out[a] = phi[g.ran(a)] * f[a];
  return out;
}

FiberVector fiber_vector(const FiniteGroupoid& g, UnitIndex x) {
  require_unit(g, x);
  FiberVector v;
  v.base = x;
  v.basis.assign(g.source_fiber(x).begin(), g.source_fiber(x).end());
  v.coefficients = Vector::Zero(static_cast<Eigen::Index>(v.basis.size()));
  return v;
}

FiberVector apply(const ArrowFunction& f, const FiberVector& xi) {
  FiberVector out = xi;
  out.coefficients = kernels::regular_matrix(f.parent(), xi.base, f.values()) * xi.coefficients;
  return out;
}

RepMatrix regular_rep(const FiniteGroupoid& g, UnitIndex x, const ArrowFunction& f) {
  if (&g != &f.parent()) throw InputError("regular representation: function lives on a different groupoid");
  require_unit(g, x);
  RepMatrix r;
  r.base = x;
  r.basis.assign(g.source_fiber(x).begin(), g.source_fiber(x).end());
  r.matrix = kernels::regular_matrix(g, x, f.values());
  return r;
}

double reduced_norm(const ArrowFunction& f) {
  const auto norms = kernels::omp::regular_norms(f.parent(), f.values());
  return norms.empty() ? 0.0 : *std::max_element(norms.begin(), norms.end());
}

}  // namespace gfred
