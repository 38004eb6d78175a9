#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gfred/groupoid.hpp"

namespace gfred {

/// Structure-preserving map between two groupoids, held as index tables; the
/// source and target groupoids are passed alongside where needed.
struct GroupoidMorphism {
  std::vector<UnitIndex> unit_map;
  std::vector<ArrowIndex> arrow_map;
};

/// Replays every morphism axiom (dom, ran, inverse, unit arrows, compose) and,
/// when `require_iso`, bijectivity on units and arrows. Empty means valid.
std::vector<std::string> check_morphism(const FiniteGroupoid& source, const FiniteGroupoid& target,
                                        const GroupoidMorphism& phi, bool require_iso = true);

GroupoidMorphism identity_morphism(const FiniteGroupoid& g);
GroupoidMorphism compose_morphisms(const GroupoidMorphism& second, const GroupoidMorphism& first);
GroupoidMorphism invert_morphism(const GroupoidMorphism& phi);

/// Isomorphism search. Unit bijections are enumerated by backtracking with
/// orbit-size and isotropy-order pruning; within each orbit the isotropy
/// groups are matched by generator backtracking and the remaining arrows are
/// transported along chosen connecting arrows.
std::optional<GroupoidMorphism> find_isomorphism(const FiniteGroupoid& g, const FiniteGroupoid& h);

bool isomorphic(const FiniteGroupoid& g, const FiniteGroupoid& h);

struct LocalIsomorphism {
  UnitSubset source_units;  // U ∋ p
  UnitSubset target_units;  // V
  GroupoidMorphism phi;     // 𝒢|_U → ℋ|_V, on the reductions' indices
};

/// Searches U ∋ p largest-first (then lexicographically) and V of equal size
/// lexicographically, returning the first (U, φ, V) with 𝒢|_U ≅ ℋ|_V.
/// Exhaustive over subsets; both groupoids must have at most 20 units.
std::optional<LocalIsomorphism> find_local_isomorphism(const FiniteGroupoid& g, UnitIndex p,
                                                       const FiniteGroupoid& h);

}  // namespace gfred
