#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "gfred/common.hpp"

namespace gfred {

/// Coefficient sequence of one diagonal: core values override the limits,
/// otherwise n < 0 reads limit_minus and n >= 0 reads limit_plus.
struct Diagonal {
  Complex limit_minus{0.0};
  Complex limit_plus{0.0};
  std::map<long, Complex> core;

  Complex at(long n) const;
};

/// Bi-infinite band matrix on ℓ²(ℤ) with A[n][n+k] = a_k(n) for |k| <= w.
class BandOperator {
 public:
  explicit BandOperator(int bandwidth = 0);

  static BandOperator identity();
  /// Offsets −1, 0, +1 with values 1, −2, 1 and no core.
  static BandOperator laplacian();

  int bandwidth() const { return bandwidth_; }
  Diagonal& diagonal(int k);
  const Diagonal& diagonal(int k) const;

  Complex entry(long row, long col) const;

  /// Largest |n| over all core indices (0 without a core).
  long core_extent() const;
  /// Smallest and largest core index; (0, 0) without a core.
  std::pair<long, long> core_range() const;

  /// Drops core entries equal to the limit they override.
  void normalize();

 private:
  int bandwidth_;
  std::vector<Diagonal> diagonals_;  // index k + w
};

/// A·B computed exactly on eventually-constant diagonals.
BandOperator compose(const BandOperator& a, const BandOperator& b);
BandOperator scale(const BandOperator& a, Complex s);
BandOperator add(const BandOperator& a, const BandOperator& b);

/// σ(θ) = Σ_k c_k e^{ikθ}, k ∈ [−w, w].
class LaurentSymbol {
 public:
  explicit LaurentSymbol(int bandwidth = 0);
  LaurentSymbol(int bandwidth, std::vector<Complex> coefficients);

  int bandwidth() const { return bandwidth_; }
  Complex coefficient(int k) const;
  void set_coefficient(int k, Complex c);
  const std::vector<Complex>& coefficients() const { return coefficients_; }

  Complex operator()(double theta) const;
  /// Σ |k c_k|, a Lipschitz constant of |σ|.
  double lipschitz() const;

 private:
  int bandwidth_;
  std::vector<Complex> coefficients_;  // index k + w
};

LaurentSymbol multiply(const LaurentSymbol& a, const LaurentSymbol& b);

enum class End { Minus, Plus };

std::string to_string(End e);

LaurentSymbol limit_operator(const BandOperator& a, End end);

enum class Invertibility { Invertible, NotInvertible, Inconclusive };

std::string to_string(Invertibility v);

struct SymbolCheck {
  Invertibility outcome = Invertibility::Inconclusive;
  double min_modulus = 0.0;   // grid minimum, or the refined minimum when not invertible
  double argmin = 0.0;        // θ at min_modulus
  double margin = 0.0;        // grid minimum − L·π/grid
  int grid = 0;
  double tol = 0.0;

  bool invertible() const { return outcome == Invertibility::Invertible; }
};

inline constexpr int kDefaultSymbolGrid = 4096;
inline constexpr double kDefaultSymbolTol = 1e-8;
inline constexpr int kMaxSymbolGrid = 1 << 20;

/// Certified invertibility of the Laurent operator with symbol σ. Invertible
/// when the grid minimum minus the Lipschitz slack exceeds `tol`. Otherwise
/// local grid minima are refined by golden-section search and the symbol is
/// declared not invertible when the refined minimum is <= tol; anything else
/// is Inconclusive. Throws InputError when grid < 4(2w+1) or tol <= 0.
SymbolCheck symbol_invertible(const LaurentSymbol& sigma, int grid = kDefaultSymbolGrid,
                              double tol = kDefaultSymbolTol);

/// Doubles the grid while the outcome is Inconclusive, up to kMaxSymbolGrid.
SymbolCheck symbol_invertible_refined(const LaurentSymbol& sigma, int grid = kDefaultSymbolGrid,
                                      double tol = kDefaultSymbolTol);

/// Smallest power of two >= max(kDefaultSymbolGrid, 64·L): keeps the Lipschitz
/// slack below 5% of the symbol scale.
int auto_grid(const LaurentSymbol& sigma);

struct FredholmVerdict {
  bool fredholm = false;
  bool conclusive = false;
  SymbolCheck minus;
  SymbolCheck plus;
  std::string method = "symbolic";
};

FredholmVerdict fredholm_verdict(const BandOperator& a, int grid = kDefaultSymbolGrid,
                                 double tol = kDefaultSymbolTol);

/// One-sided verdicts on the halves {n <= 0} ∪ {−∞} and {n >= 0} ∪ {+∞}, each
/// decided by the single limit symbol it sees, against the two-sided verdict.
struct LocalityReport {
  FredholmVerdict two_sided;
  SymbolCheck left;
  SymbolCheck right;
  bool left_fredholm = false;
  bool right_fredholm = false;
  bool conclusive = false;
  bool conjunction_holds = false;
};

LocalityReport locality_check(const BandOperator& a, int grid = kDefaultSymbolGrid,
                              double tol = kDefaultSymbolTol);

}  // namespace gfred
