#include "gfred/catalog.hpp"

#include <numeric>

#include "gfred/random.hpp"

namespace gfred::catalog {

namespace {

IsoTable identity_table(const FiniteGroupoid& g) {
  IsoTable t;
  for (ArrowIndex a = 0; a < g.num_arrows(); ++a) t.emplace_back(g.id(a), g.id(a));
  return t;
}

FiniteGroupoid renamed(const FiniteGroupoid& g, const std::vector<std::string>& names) {
  std::vector<UnitIndex> units(g.num_units());
  std::iota(units.begin(), units.end(), 0);
  std::vector<ArrowIndex> arrows(g.num_arrows());
  std::iota(arrows.begin(), arrows.end(), 0);
  std::vector<ArrowId> ids;
  for (ArrowIndex a = 0; a < g.num_arrows(); ++a) ids.push_back(g.id(a));
  return relabel(g, units, arrows, ids, names);
}

}  // namespace

FiniteGroupoid split_example() {
  return disjoint_union(pair_groupoid({"1", "2"}), group_groupoid(FiniteGroup::cyclic(2), "3"));
}

RightAction swap_action() { return {{"a", "b"}, FiniteGroup::cyclic(2), {0, 1, 1, 0}}; }

FiniteGroupoid swap_groupoid() { return action_groupoid(swap_action()); }

RightAction trivial_action() { return {{"p", "q"}, FiniteGroup::cyclic(2), {0, 0, 1, 1}}; }

GluingFamily duplicate_pair_family() {
  GluingFamily f;
  f.units = {"1", "2", "3"};
  const FiniteGroupoid piece = pair_groupoid(f.units);
  f.pieces = {piece, piece};
  f.isos[{0, 1}] = identity_table(piece);
  f.isos[{1, 0}] = identity_table(piece);
  return f;
}

GluingFamily cocycle_fault_family() {
  GluingFamily f;
  f.units = {"1", "2"};
  const FiniteGroupoid piece =
      renamed(direct_product(pair_groupoid(f.units), group_groupoid(FiniteGroup::cyclic(3))), f.units);
  f.pieces = {piece, piece};
  IsoTable inversion;
  for (ArrowIndex a = 0; a < piece.num_arrows(); ++a) {
    const ArrowId id = piece.id(a);
    inversion.emplace_back(id, id - id % 3 + (3 - id % 3) % 3);
  }
  f.isos[{0, 1}] = inversion;
  f.isos[{1, 0}] = identity_table(piece);
  return f;
}

GluingFamily proper_overlap_family() {
  GluingFamily f;
  f.units = {"1", "2", "3"};
  f.pieces = {pair_groupoid({"1", "2"}), pair_groupoid({"2", "3"})};
  // Unit arrow at 2: id 1·2 + 1 in the first piece, 0 in the second.
  f.isos[{0, 1}] = {{3, 0}};
  f.isos[{1, 0}] = {{0, 3}};
  return f;
}

GluingFamily b_model_family() {
  GluingFamily f;
  f.units = {"p", "a", "b", "c"};
  const RightAction chart{{"p", "a", "b"}, FiniteGroup::cyclic(2), {0, 0, 1, 2, 2, 1}};
  f.pieces = {action_groupoid(chart), pair_groupoid({"a", "b", "c"})};
  // Arrow (x, g) of the chart runs from x·g to x; in the pair groupoid that is
  // the arrow with id ran·3 + dom, where a and b have indices 0 and 1.
  IsoTable forward, backward;
  for (int x = 1; x <= 2; ++x)
    for (int g = 0; g < 2; ++g) {
      const ArrowId chart_id = x * 2 + g;
      const ArrowId pair_id = (x - 1) * 3 + (chart.apply(x, g) - 1);
      forward.emplace_back(chart_id, pair_id);
      backward.emplace_back(pair_id, chart_id);
    }
  f.isos[{0, 1}] = forward;
  f.isos[{1, 0}] = backward;
  return f;
}

GluingFamily single_piece_family(const FiniteGroupoid& g) {
  GluingFamily f;
  f.units = g.unit_names();
  f.pieces = {g};
  return f;
}

BandOperator laplacian_with_limits(Complex lm, Complex lp) {
  BandOperator a = BandOperator::laplacian();
  a.diagonal(0).limit_minus += lm;
  a.diagonal(0).limit_plus += lp;
  return a;
}

}  // namespace gfred::catalog
