#include "gfred/band_operator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "gfred/kernels.hpp"

namespace gfred {

Complex Diagonal::at(long n) const {
  auto it = core.find(n);
  if (it != core.end()) return it->second;
  return n < 0 ? limit_minus : limit_plus;
}

BandOperator::BandOperator(int bandwidth) : bandwidth_(bandwidth) {
  if (bandwidth < 0) throw InputError("band operator: negative bandwidth");
  diagonals_.resize(2 * static_cast<std::size_t>(bandwidth) + 1);
}

BandOperator BandOperator::identity() {
  BandOperator a(0);
  a.diagonal(0).limit_minus = a.diagonal(0).limit_plus = 1.0;
  return a;
}

BandOperator BandOperator::laplacian() {
  BandOperator a(1);
  a.diagonal(-1).limit_minus = a.diagonal(-1).limit_plus = 1.0;
  a.diagonal(0).limit_minus = a.diagonal(0).limit_plus = -2.0;
  a.diagonal(1).limit_minus = a.diagonal(1).limit_plus = 1.0;
  return a;
}

Diagonal& BandOperator::diagonal(int k) {
  if (k < -bandwidth_ || k > bandwidth_)
    throw InputError("band operator: offset " + std::to_string(k) + " outside the band");
  return diagonals_[k + bandwidth_];
}

const Diagonal& BandOperator::diagonal(int k) const {
  if (k < -bandwidth_ || k > bandwidth_)
    throw InputError("band operator: offset " + std::to_string(k) + " outside the band");
  return diagonals_[k + bandwidth_];
}

Complex BandOperator::entry(long row, long col) const {
  const long k = col - row;
  if (k < -bandwidth_ || k > bandwidth_) return 0.0;
  return diagonals_[k + bandwidth_].at(row);
}

long BandOperator::core_extent() const {
  long extent = 0;
  for (const auto& d : diagonals_)
    for (const auto& [n, v] : d.core) extent = std::max(extent, std::labs(n));
  return extent;
}

std::pair<long, long> BandOperator::core_range() const {
  bool any = false;
  long lo = 0, hi = 0;
  for (const auto& d : diagonals_) {
    if (d.core.empty()) continue;
    const long a = d.core.begin()->first, b = d.core.rbegin()->first;
    lo = any ? std::min(lo, a) : a;
    hi = any ? std::max(hi, b) : b;
    any = true;
  }
  return {lo, hi};
}

void BandOperator::normalize() {
  for (auto& d : diagonals_)
    std::erase_if(d.core, [&](const auto& e) { return e.second == (e.first < 0 ? d.limit_minus : d.limit_plus); });
}

namespace {

std::pair<long, long> joint_range(const BandOperator& a, const BandOperator& b, long pad) {
  const auto [alo, ahi] = a.core_range();
  const auto [blo, bhi] = b.core_range();
  return {std::min({alo, blo, 0L}) - pad, std::max({ahi, bhi, 0L}) + pad};
}

}  // namespace

BandOperator compose(const BandOperator& a, const BandOperator& b) {
  const int wa = a.bandwidth(), wb = b.bandwidth();
  BandOperator c(wa + wb);
  for (int k1 = -wa; k1 <= wa; ++k1)
    for (int k2 = -wb; k2 <= wb; ++k2) {
      Diagonal& d = c.diagonal(k1 + k2);
      d.limit_minus += a.diagonal(k1).limit_minus * b.diagonal(k2).limit_minus;
      d.limit_plus += a.diagonal(k1).limit_plus * b.diagonal(k2).limit_plus;
    }
  const auto [lo, hi] = joint_range(a, b, wa + wb + 1);
  for (long n = lo; n <= hi; ++n)
    for (int k = -(wa + wb); k <= wa + wb; ++k) {
      Complex v = 0.0;
      for (int k1 = std::max(-wa, k - wb); k1 <= std::min(wa, k + wb); ++k1)
        v += a.diagonal(k1).at(n) * b.diagonal(k - k1).at(n + k1);
      c.diagonal(k).core[n] = v;
    }
  c.normalize();
  return c;
}

BandOperator scale(const BandOperator& a, Complex s) {
  BandOperator c = a;
  for (int k = -a.bandwidth(); k <= a.bandwidth(); ++k) {
    Diagonal& d = c.diagonal(k);
    d.limit_minus *= s;
    d.limit_plus *= s;
    for (auto& [n, v] : d.core) v *= s;
  }
  return c;
}

BandOperator add(const BandOperator& a, const BandOperator& b) {
  const int w = std::max(a.bandwidth(), b.bandwidth());
  BandOperator c(w);
  for (int k = -w; k <= w; ++k) {
    Diagonal& d = c.diagonal(k);
    const Diagonal zero;
    const Diagonal& da = std::abs(k) <= a.bandwidth() ? a.diagonal(k) : zero;
    const Diagonal& db = std::abs(k) <= b.bandwidth() ? b.diagonal(k) : zero;
    d.limit_minus = da.limit_minus + db.limit_minus;
    d.limit_plus = da.limit_plus + db.limit_plus;
    for (const auto& [n, v] : da.core) d.core[n] = da.at(n) + db.at(n);
    for (const auto& [n, v] : db.core) d.core[n] = da.at(n) + db.at(n);
  }
  c.normalize();
  return c;
}

LaurentSymbol::LaurentSymbol(int bandwidth)
    : bandwidth_(bandwidth), coefficients_(2 * static_cast<std::size_t>(bandwidth) + 1, 0.0) {
  if (bandwidth < 0) throw InputError("symbol: negative bandwidth");
}

LaurentSymbol::LaurentSymbol(int bandwidth, std::vector<Complex> coefficients)
    : bandwidth_(bandwidth), coefficients_(std::move(coefficients)) {
  if (bandwidth < 0 || coefficients_.size() != 2 * static_cast<std::size_t>(bandwidth) + 1)
    throw InputError("symbol: expected 2w+1 coefficients");
}

Complex LaurentSymbol::coefficient(int k) const {
  if (k < -bandwidth_ || k > bandwidth_) return 0.0;
  return coefficients_[k + bandwidth_];
}

void LaurentSymbol::set_coefficient(int k, Complex c) {
  if (k < -bandwidth_ || k > bandwidth_) throw InputError("symbol: offset outside the band");
  coefficients_[k + bandwidth_] = c;
}

Complex LaurentSymbol::operator()(double theta) const {
  Complex s = 0.0;
  for (int k = -bandwidth_; k <= bandwidth_; ++k) s += coefficients_[k + bandwidth_] * std::polar(1.0, k * theta);
  return s;
}

double LaurentSymbol::lipschitz() const {
  double l = 0.0;
  for (int k = -bandwidth_; k <= bandwidth_; ++k) l += std::abs(k) * std::abs(coefficients_[k + bandwidth_]);
  return l;
}

LaurentSymbol multiply(const LaurentSymbol& a, const LaurentSymbol& b) {
  LaurentSymbol c(a.bandwidth() + b.bandwidth());
  for (int k1 = -a.bandwidth(); k1 <= a.bandwidth(); ++k1)
    for (int k2 = -b.bandwidth(); k2 <= b.bandwidth(); ++k2)
      c.set_coefficient(k1 + k2, c.coefficient(k1 + k2) + a.coefficient(k1) * b.coefficient(k2));
  return c;
}

std::string to_string(End e) { return e == End::Minus ? "-inf" : "+inf"; }

LaurentSymbol limit_operator(const BandOperator& a, End end) {
  LaurentSymbol s(a.bandwidth());
  for (int k = -a.bandwidth(); k <= a.bandwidth(); ++k)
    s.set_coefficient(k, end == End::Minus ? a.diagonal(k).limit_minus : a.diagonal(k).limit_plus);
  return s;
}

std::string to_string(Invertibility v) {
  switch (v) {
    case Invertibility::Invertible: return "invertible";
    case Invertibility::NotInvertible: return "not-invertible";
    case Invertibility::Inconclusive: return "inconclusive";
  }
  return "?";
}

namespace {

/// Minimum of |σ| on [lo, hi] by golden-section search.
std::pair<double, double> golden_minimum(const LaurentSymbol& sigma, double lo, double hi) {
  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - ratio * (b - a), d = a + ratio * (b - a);
  double fc = std::abs(sigma(c)), fd = std::abs(sigma(d));
  for (int it = 0; it < 100 && b - a > 1e-15; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - ratio * (b - a);
      fc = std::abs(sigma(c));
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + ratio * (b - a);
      fd = std::abs(sigma(d));
    }
  }
  return fc < fd ? std::pair{fc, c} : std::pair{fd, d};
}

}  // namespace

SymbolCheck symbol_invertible(const LaurentSymbol& sigma, int grid, double tol) {
  const int w = sigma.bandwidth();
  if (grid < 4 * (2 * w + 1))
    throw InputError("symbol check: grid " + std::to_string(grid) + " is below 4(2w+1) = " +
                     std::to_string(4 * (2 * w + 1)));
  if (!(tol > 0.0)) throw InputError("symbol check: tolerance must be positive");
  const std::vector<double> moduli = kernels::omp::symbol_moduli(sigma.coefficients(), grid);
  const double step = 2.0 * std::numbers::pi / grid;
  const auto min_it = std::min_element(moduli.begin(), moduli.end());
  SymbolCheck out;
  out.grid = grid;
  out.tol = tol;
  out.min_modulus = *min_it;
  out.argmin = step * static_cast<double>(min_it - moduli.begin());
  const double slack = sigma.lipschitz() * std::numbers::pi / grid;
  out.margin = out.min_modulus - slack;
  if (out.margin > tol) {
    out.outcome = Invertibility::Invertible;
    return out;
  }
  double best = out.min_modulus, best_theta = out.argmin;
  for (int j = 0; j < grid; ++j) {
    if (moduli[j] - slack > tol) continue;
    const auto [value, theta] = golden_minimum(sigma, step * (j - 1), step * (j + 1));
    if (value < best) {
      best = value;
      best_theta = theta;
    }
  }
  if (best <= tol) {
    out.outcome = Invertibility::NotInvertible;
    out.min_modulus = best;
    out.argmin = std::remainder(best_theta, 2.0 * std::numbers::pi);
    if (out.argmin < 0) out.argmin += 2.0 * std::numbers::pi;
  } else {
    out.outcome = Invertibility::Inconclusive;
  }
  return out;
}

SymbolCheck symbol_invertible_refined(const LaurentSymbol& sigma, int grid, double tol) {
  SymbolCheck check = symbol_invertible(sigma, grid, tol);
  while (check.outcome == Invertibility::Inconclusive && grid * 2 <= kMaxSymbolGrid) {
    grid *= 2;
    check = symbol_invertible(sigma, grid, tol);
  }
  return check;
}

int auto_grid(const LaurentSymbol& sigma) {
  int grid = kDefaultSymbolGrid;
  while (grid < 64.0 * sigma.lipschitz() && grid < kMaxSymbolGrid) grid *= 2;
  while (grid < 4 * (2 * sigma.bandwidth() + 1)) grid *= 2;
  return grid;
}

FredholmVerdict fredholm_verdict(const BandOperator& a, int grid, double tol) {
  FredholmVerdict v;
  v.minus = symbol_invertible_refined(limit_operator(a, End::Minus), grid, tol);
  v.plus = symbol_invertible_refined(limit_operator(a, End::Plus), grid, tol);
  const bool refuted = v.minus.outcome == Invertibility::NotInvertible ||
                       v.plus.outcome == Invertibility::NotInvertible;
  v.fredholm = v.minus.invertible() && v.plus.invertible();
  v.conclusive = v.fredholm || refuted;
  return v;
}

namespace {

/// A on one closed half-line, the identity on the other.
BandOperator half(const BandOperator& a, End keep) {
  BandOperator h = a;
  for (int k = -a.bandwidth(); k <= a.bandwidth(); ++k) {
    Diagonal& d = h.diagonal(k);
    const Complex one = k == 0 ? 1.0 : 0.0;
    if (keep == End::Minus) {
      d.limit_plus = one;
      std::erase_if(d.core, [](const auto& e) { return e.first > 0; });
      if (a.diagonal(k).at(0) != one) d.core[0] = a.diagonal(k).at(0);
    } else {
      d.limit_minus = one;
      std::erase_if(d.core, [](const auto& e) { return e.first < 0; });
    }
  }
  h.normalize();
  return h;
}

}  // namespace

LocalityReport locality_check(const BandOperator& a, int grid, double tol) {
  LocalityReport r;
  r.two_sided = fredholm_verdict(a, grid, tol);
  const FredholmVerdict left = fredholm_verdict(half(a, End::Minus), grid, tol);
  const FredholmVerdict right = fredholm_verdict(half(a, End::Plus), grid, tol);
  r.left = left.minus;
  r.right = right.plus;
  r.left_fredholm = left.fredholm;
  r.right_fredholm = right.fredholm;
  r.conclusive = r.two_sided.conclusive && left.conclusive && right.conclusive;
  r.conjunction_holds = r.two_sided.fredholm == (r.left_fredholm && r.right_fredholm);
  return r;
}

}  // namespace gfred
