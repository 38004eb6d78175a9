#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gfred/common.hpp"
#include "gfred/finite_group.hpp"

namespace gfred {

struct Arrow {
  ArrowId id;
  UnitIndex dom;
  UnitIndex ran;
};

/// A finite groupoid with explicit structure tables.
///
/// Units and arrows are addressed by dense indices; arrows additionally carry
/// stable integer ids that survive reductions, so an arrow of a reduction can
/// be located in its parent by id. The composition table is dense and holds
/// `kNoArrow` where the product is undefined. Construction does not enforce
/// the groupoid axioms; use `validate` for that.
class FiniteGroupoid {
 public:
  FiniteGroupoid() = default;
  FiniteGroupoid(std::vector<std::string> units, std::vector<Arrow> arrows,
                 std::vector<ArrowIndex> unit_arrow, std::vector<ArrowIndex> inverse,
                 std::vector<ArrowIndex> compose);

  int num_units() const { return static_cast<int>(units_.size()); }
  int num_arrows() const { return static_cast<int>(arrows_.size()); }

  const std::string& unit_name(UnitIndex x) const { return units_[x]; }
  const std::vector<std::string>& unit_names() const { return units_; }
  std::optional<UnitIndex> find_unit(const std::string& name) const;
  std::optional<ArrowIndex> find_arrow(ArrowId id) const;

  const Arrow& arrow(ArrowIndex a) const { return arrows_[a]; }
  ArrowId id(ArrowIndex a) const { return arrows_[a].id; }
  UnitIndex dom(ArrowIndex a) const { return arrows_[a].dom; }
  UnitIndex ran(ArrowIndex a) const { return arrows_[a].ran; }

  ArrowIndex unit_arrow(UnitIndex x) const { return unit_arrow_[x]; }
  ArrowIndex inverse(ArrowIndex a) const { return inverse_[a]; }
  /// g·h, or kNoArrow when the table has no entry.
  ArrowIndex compose(ArrowIndex g, ArrowIndex h) const {
    return compose_[static_cast<std::size_t>(g) * arrows_.size() + h];
  }

  /// d⁻¹(x), ascending arrow indices.
  std::span<const ArrowIndex> source_fiber(UnitIndex x) const { return source_fiber_[x]; }
  /// r⁻¹(x), ascending arrow indices.
  std::span<const ArrowIndex> range_fiber(UnitIndex x) const { return range_fiber_[x]; }

  bool is_unit(ArrowIndex a) const { return unit_arrow_[arrows_[a].dom] == a; }

 private:
  std::vector<std::string> units_;
  std::vector<Arrow> arrows_;
  std::vector<ArrowIndex> unit_arrow_;
  std::vector<ArrowIndex> inverse_;
  std::vector<ArrowIndex> compose_;
  std::vector<std::vector<ArrowIndex>> source_fiber_;
  std::vector<std::vector<ArrowIndex>> range_fiber_;
  std::map<ArrowId, ArrowIndex> by_id_;
  std::map<std::string, UnitIndex> by_name_;
};

/// Incremental construction with inference of missing unit arrows (the
/// idempotent arrow at a unit) and inverses (the h with g·h = u(r(g))).
class GroupoidBuilder {
 public:
  UnitIndex add_unit(const std::string& name);
  ArrowIndex add_arrow(ArrowId id, UnitIndex dom, UnitIndex ran);
  void set_compose(ArrowIndex g, ArrowIndex h, ArrowIndex gh);
  void set_inverse(ArrowIndex g, ArrowIndex inv);
  void set_unit_arrow(UnitIndex x, ArrowIndex a);

  int num_units() const { return static_cast<int>(units_.size()); }
  int num_arrows() const { return static_cast<int>(arrows_.size()); }

  FiniteGroupoid build();

 private:
  std::vector<std::string> units_;
  std::vector<Arrow> arrows_;
  std::map<std::pair<ArrowIndex, ArrowIndex>, ArrowIndex> compose_;
  std::map<ArrowIndex, ArrowIndex> inverse_;
  std::map<UnitIndex, ArrowIndex> unit_arrow_;
};

/// Sorted set of unit indices of some groupoid.
class UnitSubset {
 public:
  UnitSubset() = default;
  explicit UnitSubset(std::vector<UnitIndex> members);

  static UnitSubset all(const FiniteGroupoid& g);
  static UnitSubset from_names(const FiniteGroupoid& g, std::span<const std::string> names);

  bool contains(UnitIndex x) const;
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  const std::vector<UnitIndex>& members() const { return members_; }
  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }

  bool is_subset_of(const UnitSubset& other) const;
  UnitSubset united(const UnitSubset& other) const;
  UnitSubset intersected(const UnitSubset& other) const;

  std::vector<std::string> names(const FiniteGroupoid& g) const;

  friend bool operator==(const UnitSubset&, const UnitSubset&) = default;

 private:
  std::vector<UnitIndex> members_;
};

struct Violation {
  std::string axiom;
  std::vector<ArrowId> arrows;
  std::string detail;
};

struct ValidationReport {
  /// At most `kMaxWitnesses` entries per axiom; `counts` holds the totals.
  std::vector<Violation> violations;
  std::map<std::string, std::size_t> counts;

  static constexpr std::size_t kMaxWitnesses = 32;

  bool ok() const { return violations.empty(); }
  bool has(const std::string& axiom) const { return counts.count(axiom) > 0; }
  void add(Violation v);
};

ValidationReport validate(const FiniteGroupoid& g);

/// 𝒢|_A: arrows with both endpoints in A. Unit names and arrow ids are kept.
FiniteGroupoid reduction(const FiniteGroupoid& g, const UnitSubset& a);

/// Arrow indices of g lying in 𝒢|_A, ascending.
std::vector<ArrowIndex> reduction_arrows(const FiniteGroupoid& g, const UnitSubset& a);

/// 𝒢·U = r(d⁻¹(U)).
UnitSubset saturation(const FiniteGroupoid& g, const UnitSubset& u);

bool is_invariant(const FiniteGroupoid& g, const UnitSubset& u);

/// Orbits ordered by their smallest unit.
std::vector<UnitSubset> orbits(const FiniteGroupoid& g);

/// Index into `orbits(g)` for every unit.
std::vector<int> orbit_index(const FiniteGroupoid& g);

/// Arrows with dom = ran = x; the unit arrow comes first.
std::vector<ArrowIndex> isotropy(const FiniteGroupoid& g, UnitIndex x);

void require_unit(const FiniteGroupoid& g, UnitIndex x);
void require_subset(const FiniteGroupoid& g, const UnitSubset& u);

// Canonical constructions.

/// Pair groupoid: arrow (x,y) has ran x, dom y, id = ran·n + dom.
FiniteGroupoid pair_groupoid(const std::vector<std::string>& units);

/// A group viewed as a groupoid over one unit; arrow ids are group elements.
FiniteGroupoid group_groupoid(const FiniteGroup& group, const std::string& unit = "*");

/// Disjoint union. Unit names must differ; ids of `h` are shifted past those of `g`.
FiniteGroupoid disjoint_union(const FiniteGroupoid& g, const FiniteGroupoid& h);

/// Direct product with units named "(x,y)" and arrow ids id_g·|h| + index_h.
FiniteGroupoid direct_product(const FiniteGroupoid& g, const FiniteGroupoid& h);

/// Right action table: act[x * |H| + h] = x·h.
struct RightAction {
  std::vector<std::string> points;
  FiniteGroup group;
  std::vector<int> table;

  int apply(int x, int h) const { return table[static_cast<std::size_t>(x) * group.order() + h]; }
};

/// X ⋊ H with arrows (x,h), d(x,h) = x·h⁻¹, r(x,h) = x and
/// (x,g)(x·g⁻¹,h) = (x,hg). Arrow ids are x·|H| + h.
/// Throws InputError naming the violated action axiom.
FiniteGroupoid action_groupoid(const RightAction& action);

/// Stabilizer of x under the action, ascending group elements.
std::vector<int> stabilizer(const RightAction& action, int x);

/// Orbits of the action, ordered by smallest point.
std::vector<std::vector<int>> action_orbits(const RightAction& action);

/// Right invariance of the counting Haar system: R_g maps 𝒢_{r(g)} onto
/// 𝒢_{d(g)} bijectively for every g. Returns the failing arrow ids.
std::vector<ArrowId> check_right_invariance(const FiniteGroupoid& g);

}  // namespace gfred
