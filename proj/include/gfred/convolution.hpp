#pragma once

#include <random>
#include <vector>

#include "gfred/groupoid.hpp"

namespace gfred {

/// Complex function on the arrows of a groupoid, stored densely by arrow
/// index. The parent groupoid must outlive the function; two functions are
/// compatible only when they refer to the same groupoid object.
class ArrowFunction {
 public:
  explicit ArrowFunction(const FiniteGroupoid& parent);
  ArrowFunction(const FiniteGroupoid& parent, Vector values);

  static ArrowFunction delta(const FiniteGroupoid& parent, ArrowIndex a, Complex value = 1.0);
  /// Sum of unit arrows with the given weights per unit.
  static ArrowFunction on_units(const FiniteGroupoid& parent, const std::vector<Complex>& weights);

  const FiniteGroupoid& parent() const { return *parent_; }
  const Vector& values() const { return values_; }
  Vector& values() { return values_; }

  Complex operator[](ArrowIndex a) const { return values_[a]; }
  Complex& operator[](ArrowIndex a) { return values_[a]; }

  ArrowFunction& operator+=(const ArrowFunction& other);
  ArrowFunction& operator-=(const ArrowFunction& other);
  ArrowFunction& operator*=(Complex s);

  /// Arrow indices with a nonzero value.
  std::vector<ArrowIndex> support() const;

 private:
  const FiniteGroupoid* parent_;
  Vector values_;
};

ArrowFunction operator+(ArrowFunction a, const ArrowFunction& b);
ArrowFunction operator-(ArrowFunction a, const ArrowFunction& b);
ArrowFunction operator*(Complex s, ArrowFunction a);

/// Vector in ℓ²(𝒢_x) on the ascending basis `source_fiber(base)`.
struct FiberVector {
  UnitIndex base = 0;
  std::vector<ArrowIndex> basis;
  Vector coefficients;
};

/// Matrix of an operator on ℓ²(𝒢_x) in the basis `source_fiber(base)`.
struct RepMatrix {
  UnitIndex base = 0;
  std::vector<ArrowIndex> basis;
  Matrix matrix;
};

/// (f∗g)(a) = Σ_{y ∈ 𝒢_{d(a)}} f(a·y⁻¹) g(y).
ArrowFunction convolve(const ArrowFunction& f, const ArrowFunction& g);

/// f*(a) = conj(f(a⁻¹)).
ArrowFunction involution(const ArrowFunction& f);

/// (φ∘r)·f for a function φ on units.
ArrowFunction range_multiplier(const std::vector<Complex>& phi, const ArrowFunction& f);

FiberVector fiber_vector(const FiniteGroupoid& g, UnitIndex x);

/// ξ ↦ f∗ξ on ℓ²(𝒢_x).
FiberVector apply(const ArrowFunction& f, const FiberVector& xi);

/// π_x(f): entry (g, h) = f(g·h⁻¹).
RepMatrix regular_rep(const FiniteGroupoid& g, UnitIndex x, const ArrowFunction& f);

/// sup over units of ‖π_x(f)‖.
double reduced_norm(const ArrowFunction& f);

/// Random function with independent standard complex normal values on the
/// listed arrows (all arrows when empty).
template <class Rng>
ArrowFunction random_function(const FiniteGroupoid& g, Rng& rng, const std::vector<ArrowIndex>& support = {});

template <class Rng>
ArrowFunction random_function(const FiniteGroupoid& g, Rng& rng, const std::vector<ArrowIndex>& support) {
  std::normal_distribution<double> normal;
  ArrowFunction f(g);
  if (support.empty()) {
    for (ArrowIndex a = 0; a < g.num_arrows(); ++a) f[a] = {normal(rng), normal(rng)};
  } else {
    for (ArrowIndex a : support) f[a] = {normal(rng), normal(rng)};
  }
  return f;
}

}  // namespace gfred
