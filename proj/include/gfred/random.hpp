#pragma once

#include <random>
#include <vector>

#include "gfred/band_operator.hpp"
#include "gfred/groupoid.hpp"

namespace gfred {

using Rng = std::mt19937_64;

struct RandomGroupoidOptions {
  int max_units = 12;
  int max_arrows = 60;
};

/// Disjoint union of random components, each either a pair groupoid times a
/// small group or the action groupoid of a small group on a union of coset
/// spaces; units are renamed u0, u1, ... and units and arrows are shuffled,
/// with fresh random arrow ids.
FiniteGroupoid random_groupoid(Rng& rng, const RandomGroupoidOptions& options = {});

/// Same groupoid with units and arrows listed in the given orders and the
/// given new ids. unit_order[i] is the old index of new unit i.
FiniteGroupoid relabel(const FiniteGroupoid& g, const std::vector<UnitIndex>& unit_order,
                       const std::vector<ArrowIndex>& arrow_order, const std::vector<ArrowId>& ids,
                       const std::vector<std::string>& unit_names);

/// Nonempty random subset of the units.
UnitSubset random_subset(const FiniteGroupoid& g, Rng& rng);

/// One to three nonempty subsets whose saturations cover the units.
std::vector<UnitSubset> random_admissible_cover(const FiniteGroupoid& g, Rng& rng);

struct RandomTridiagonal {
  BandOperator op;
  double d_minus = 0.0, d_plus = 0.0;   // diagonal limits
  Complex c_minus{0.0}, c_plus{0.0};    // superdiagonal limits
};

/// Self-adjoint tridiagonal operator with real diagonal limits in [−5, 5],
/// superdiagonal limits of modulus at most 2 and a random Hermitian core on
/// [−core, core]. Limits with ||d| − 2|c|| < 0.05 are redrawn so that every
/// instance sits clearly on one side of the Fredholm boundary. When
/// `fredholm` is set, the draw is restricted to that oracle verdict.
RandomTridiagonal random_selfadjoint_tridiagonal(Rng& rng, long core = 8, int fredholm = -1);

/// Closed-form interval oracle: the limit symbols are d ± 2|c| cos(θ + arg c)
/// with ranges [d − 2|c|, d + 2|c|]; Fredholm iff neither range contains 0.
bool tridiagonal_oracle(const RandomTridiagonal& t);

/// Random band operator with complex limits and core.
BandOperator random_band_operator(Rng& rng, int bandwidth, long core = 6);

/// Replaces the core of `a` by random values on [−core, core].
BandOperator rerandomize_core(const BandOperator& a, Rng& rng, long core = 6);

}  // namespace gfred
