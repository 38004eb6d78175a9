#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "gfred/groupoid.hpp"
#include "gfred/isomorphism.hpp"

namespace gfred {

/// Arrow-id correspondence φ_ji : 𝒢_i|_{U_i∩U_j} → 𝒢_j|_{U_i∩U_j}, stored as
/// (id in piece i, id in piece j) pairs.
using IsoTable = std::vector<std::pair<ArrowId, ArrowId>>;

/// Groupoids 𝒢_i over the members U_i of a cover of a common unit set, with
/// isomorphisms on the overlaps. Piece units are matched to X by name.
struct GluingFamily {
  std::vector<std::string> units;                       // X
  std::vector<FiniteGroupoid> pieces;                   // 𝒢_i, units U_i
  std::map<std::pair<std::size_t, std::size_t>, IsoTable> isos;  // key (i, j) holds φ_ji

  /// Unit names of piece i.
  const std::vector<std::string>& cover(std::size_t i) const { return pieces[i].unit_names(); }
};

struct CocycleFailure {
  std::size_t i, j, k;      // for the inverse clause k == i
  ArrowId witness;          // arrow id in piece i
  std::string detail;
};

struct LiftFailure {
  std::size_t i, j;
  ArrowId g;                // in piece i
  ArrowId h;                // in piece j
};

struct GluingReport {
  std::vector<CocycleFailure> cocycle;
  std::vector<LiftFailure> lifting;
  bool clean() const { return cocycle.empty() && lifting.empty(); }
};

/// φ_ji as a morphism between the overlap reductions (indices of the
/// reductions). Throws InputError when the table does not describe an
/// isomorphism over the identity of U_i∩U_j.
GroupoidMorphism overlap_morphism(const GluingFamily& family, std::size_t i, std::size_t j);

/// Checks the cocycle clause (φ_kj φ_ji = φ_ki on triple overlaps, φ_ji = φ_ij⁻¹)
/// and the lifting clause for composable pairs across pieces.
/// Throws InputError for malformed families (cover does not cover X, missing
/// or non-isomorphic overlap tables).
GluingReport check_weak_gluing(const GluingFamily& family);

struct GluedGroupoid {
  FiniteGroupoid groupoid;
  /// embeddings[i][a] = arrow of the glued groupoid represented by arrow a of piece i.
  std::vector<std::vector<ArrowIndex>> embeddings;
};

/// Fibered coproduct: union-find over piece arrows seeded by the overlap
/// tables; cross-piece products are resolved through the first piece (in
/// index order) containing both factors. Refuses (InputError) families whose
/// gluing report is not clean; inconsistent lifts throw InternalError.
GluedGroupoid glue(const GluingFamily& family);

/// Family over X×X' with pieces 𝒢_i × 𝒢'_j and product overlap tables.
GluingFamily product_family(const GluingFamily& a, const GluingFamily& b);

/// Same family with pieces (and tables) listed in the order `perm`.
GluingFamily permute_family(const GluingFamily& family, const std::vector<std::size_t>& perm);

}  // namespace gfred
