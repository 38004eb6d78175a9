#include "gfred/random.hpp"

#include <algorithm>
#include <numbers>
#include <numeric>
#include <set>

namespace gfred {

namespace {

int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
double uniform_real(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

FiniteGroup pick_group(Rng& rng, bool for_action) {
  const int choice = uniform_int(rng, 0, for_action ? 5 : 7);
  if (for_action) {
    switch (choice) {
      case 0: return FiniteGroup::cyclic(2);
      case 1: return FiniteGroup::cyclic(3);
      case 2: return FiniteGroup::cyclic(4);
      case 3: return FiniteGroup::product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2));
      case 4: return FiniteGroup::symmetric(3);
      default: return FiniteGroup::dihedral(4);
    }
  }
  switch (choice) {
    case 0: return FiniteGroup::trivial();
    case 1: return FiniteGroup::cyclic(2);
    case 2: return FiniteGroup::cyclic(3);
    case 3: return FiniteGroup::cyclic(4);
    case 4: return FiniteGroup::cyclic(5);
    case 5: return FiniteGroup::cyclic(6);
    case 6: return FiniteGroup::product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2));
    default: return FiniteGroup::symmetric(3);
  }
}

/// Right cosets Kg of a subgroup, each as a sorted element list.
std::vector<std::vector<int>> right_cosets(const FiniteGroup& g, const std::vector<int>& k) {
  std::set<std::vector<int>> seen;
  std::vector<std::vector<int>> out;
  for (int x = 0; x < g.order(); ++x) {
    std::vector<int> coset;
    for (int s : k) coset.push_back(g.multiply(s, x));
    std::sort(coset.begin(), coset.end());
    if (seen.insert(coset).second) out.push_back(coset);
  }
  return out;
}

/// Action of G on a disjoint union of coset spaces K\G by right multiplication.
RightAction coset_action(const FiniteGroup& g, const std::vector<std::vector<int>>& subgroups, int& counter) {
  RightAction act;
  act.group = g;
  std::vector<std::vector<int>> points;
  for (const auto& k : subgroups)
    for (auto& c : right_cosets(g, k)) points.push_back(std::move(c));
  for (std::size_t i = 0; i < points.size(); ++i) act.points.push_back("p" + std::to_string(counter++));
  const std::size_t offset_count = subgroups.size();
  std::vector<std::size_t> block_start;
  std::size_t at = 0;
  for (std::size_t s = 0; s < offset_count; ++s) {
    block_start.push_back(at);
    at += right_cosets(g, subgroups[s]).size();
  }
  block_start.push_back(at);
  act.table.resize(points.size() * g.order());
  for (std::size_t s = 0; s < offset_count; ++s)
    for (std::size_t p = block_start[s]; p < block_start[s + 1]; ++p)
      for (int h = 0; h < g.order(); ++h) {
        std::vector<int> moved;
        for (int e : points[p]) moved.push_back(g.multiply(e, h));
        std::sort(moved.begin(), moved.end());
        for (std::size_t q = block_start[s]; q < block_start[s + 1]; ++q)
          if (points[q] == moved) act.table[p * g.order() + h] = static_cast<int>(q);
      }
  return act;
}

}  // namespace

FiniteGroupoid relabel(const FiniteGroupoid& g, const std::vector<UnitIndex>& unit_order,
                       const std::vector<ArrowIndex>& arrow_order, const std::vector<ArrowId>& ids,
                       const std::vector<std::string>& unit_names) {
  const int n = g.num_units(), m = g.num_arrows();
  std::vector<UnitIndex> new_unit(n);
  for (int i = 0; i < n; ++i) new_unit[unit_order[i]] = i;
  std::vector<ArrowIndex> new_arrow(m);
  for (int j = 0; j < m; ++j) new_arrow[arrow_order[j]] = j;
  auto na = [&](ArrowIndex a) { return a == kNoArrow ? kNoArrow : new_arrow[a]; };
  std::vector<Arrow> arrows;
  for (int j = 0; j < m; ++j) {
    const ArrowIndex old = arrow_order[j];
    arrows.push_back({ids[j], new_unit[g.dom(old)], new_unit[g.ran(old)]});
  }
  std::vector<ArrowIndex> unit_arrow(n), inverse(m);
  for (int i = 0; i < n; ++i) unit_arrow[i] = na(g.unit_arrow(unit_order[i]));
  for (int j = 0; j < m; ++j) inverse[j] = na(g.inverse(arrow_order[j]));
  std::vector<ArrowIndex> compose(static_cast<std::size_t>(m) * m, kNoArrow);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) compose[static_cast<std::size_t>(a) * m + b] = na(g.compose(arrow_order[a], arrow_order[b]));
  return FiniteGroupoid(unit_names, std::move(arrows), std::move(unit_arrow), std::move(inverse), std::move(compose));
}

FiniteGroupoid random_groupoid(Rng& rng, const RandomGroupoidOptions& options) {
  int units_left = options.max_units, arrows_left = options.max_arrows;
  int counter = 0;
  std::optional<FiniteGroupoid> acc;
  for (int attempt = 0; attempt < 12; ++attempt) {
    std::optional<FiniteGroupoid> comp;
    if (uniform_int(rng, 0, 1) == 0) {
      const FiniteGroup h = pick_group(rng, false);
      const int k = uniform_int(rng, 1, 4);
      if (k <= units_left && k * k * h.order() <= arrows_left) {
        std::vector<std::string> names;
        for (int i = 0; i < k; ++i) names.push_back("p" + std::to_string(counter++));
        comp = h.order() == 1 ? pair_groupoid(names) : direct_product(pair_groupoid(names), group_groupoid(h));
      }
    } else {
      const FiniteGroup h = pick_group(rng, true);
      std::vector<std::vector<int>> subgroups;
      const int parts = uniform_int(rng, 1, 2);
      for (int s = 0; s < parts; ++s) subgroups.push_back(h.generated_subgroup({uniform_int(rng, 0, h.order() - 1)}));
      int points = 0;
      for (const auto& k : subgroups) points += h.order() / static_cast<int>(k.size());
      if (points <= units_left && points * h.order() <= arrows_left) comp = action_groupoid(coset_action(h, subgroups, counter));
    }
    if (!comp) continue;
    units_left -= comp->num_units();
    arrows_left -= comp->num_arrows();
    acc = acc ? disjoint_union(*acc, *comp) : *comp;
    if (uniform_int(rng, 0, 2) == 0) break;
  }
  if (!acc) acc = pair_groupoid({"p" + std::to_string(counter++)});
  const int n = acc->num_units(), m = acc->num_arrows();
  std::vector<UnitIndex> unit_order(n);
  std::iota(unit_order.begin(), unit_order.end(), 0);
  std::shuffle(unit_order.begin(), unit_order.end(), rng);
  std::vector<ArrowIndex> arrow_order(m);
  std::iota(arrow_order.begin(), arrow_order.end(), 0);
  std::shuffle(arrow_order.begin(), arrow_order.end(), rng);
  std::vector<ArrowId> pool(1000);
  std::iota(pool.begin(), pool.end(), 0);
  std::shuffle(pool.begin(), pool.end(), rng);
  pool.resize(m);
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back("u" + std::to_string(i));
  return relabel(*acc, unit_order, arrow_order, pool, names);
}

UnitSubset random_subset(const FiniteGroupoid& g, Rng& rng) {
  std::vector<UnitIndex> members;
  for (UnitIndex x = 0; x < g.num_units(); ++x)
    if (uniform_int(rng, 0, 1) == 1) members.push_back(x);
  if (members.empty()) members.push_back(uniform_int(rng, 0, g.num_units() - 1));
  return UnitSubset(members);
}

std::vector<UnitSubset> random_admissible_cover(const FiniteGroupoid& g, Rng& rng) {
  const int count = uniform_int(rng, 1, 3);
  std::vector<std::vector<UnitIndex>> members(count);
  for (auto& m : members) {
    for (UnitIndex x = 0; x < g.num_units(); ++x)
      if (uniform_int(rng, 0, 9) < 3) m.push_back(x);
    if (m.empty()) m.push_back(uniform_int(rng, 0, g.num_units() - 1));
  }
  const auto orbit_of = orbit_index(g);
  const auto orbs = orbits(g);
  std::vector<bool> reached(orbs.size(), false);
  for (const auto& m : members)
    for (UnitIndex x : m) reached[orbit_of[x]] = true;
  for (std::size_t o = 0; o < orbs.size(); ++o) {
    if (reached[o]) continue;
    const auto& units = orbs[o].members();
    const UnitIndex x = units[uniform_int(rng, 0, static_cast<int>(units.size()) - 1)];
    auto& target = members[uniform_int(rng, 0, count - 1)];
    target.push_back(x);
    std::sort(target.begin(), target.end());
  }
  std::vector<UnitSubset> out;
  for (auto& m : members) out.emplace_back(std::move(m));
  return out;
}

namespace {

void draw_end(Rng& rng, double& d, Complex& c) {
  do {
    d = uniform_real(rng, -5.0, 5.0);
    c = std::polar(uniform_real(rng, 0.0, 2.0), uniform_real(rng, 0.0, 2.0 * std::numbers::pi));
  } while (std::abs(std::abs(d) - 2.0 * std::abs(c)) < 0.05);
}

}  // namespace

bool tridiagonal_oracle(const RandomTridiagonal& t) {
  auto excludes_zero = [](double d, Complex c) { return d - 2.0 * std::abs(c) > 0.0 || d + 2.0 * std::abs(c) < 0.0; };
  return excludes_zero(t.d_minus, t.c_minus) && excludes_zero(t.d_plus, t.c_plus);
}

RandomTridiagonal random_selfadjoint_tridiagonal(Rng& rng, long core, int fredholm) {
  RandomTridiagonal t;
  do {
    draw_end(rng, t.d_minus, t.c_minus);
    draw_end(rng, t.d_plus, t.c_plus);
  } while (fredholm >= 0 && tridiagonal_oracle(t) != (fredholm == 1));
  BandOperator a(1);
  a.diagonal(0).limit_minus = t.d_minus;
  a.diagonal(0).limit_plus = t.d_plus;
  a.diagonal(1).limit_minus = t.c_minus;
  a.diagonal(1).limit_plus = t.c_plus;
  a.diagonal(-1).limit_minus = std::conj(t.c_minus);
  a.diagonal(-1).limit_plus = std::conj(t.c_plus);
  for (long n = -core; n <= core; ++n) {
    a.diagonal(0).core[n] = uniform_real(rng, -5.0, 5.0);
    const Complex c = std::polar(uniform_real(rng, 0.0, 2.0), uniform_real(rng, 0.0, 2.0 * std::numbers::pi));
    a.diagonal(1).core[n] = c;
    a.diagonal(-1).core[n + 1] = std::conj(c);
  }
  // Keep A[n+1][n] = conj(A[n][n+1]) across the junction between the limits.
  a.diagonal(-1).core[-core] = std::conj(a.diagonal(1).at(-core - 1));
  a.normalize();
  t.op = std::move(a);
  return t;
}

BandOperator random_band_operator(Rng& rng, int bandwidth, long core) {
  std::normal_distribution<double> normal;
  BandOperator a(bandwidth);
  for (int k = -bandwidth; k <= bandwidth; ++k) {
    Diagonal& d = a.diagonal(k);
    d.limit_minus = {normal(rng), normal(rng)};
    d.limit_plus = {normal(rng), normal(rng)};
    for (long n = -core; n <= core; ++n)
      if (uniform_int(rng, 0, 1) == 1) d.core[n] = {normal(rng), normal(rng)};
  }
  return a;
}

BandOperator rerandomize_core(const BandOperator& a, Rng& rng, long core) {
  std::normal_distribution<double> normal;
  BandOperator out = a;
  for (int k = -a.bandwidth(); k <= a.bandwidth(); ++k) {
    Diagonal& d = out.diagonal(k);
    d.core.clear();
    for (long n = -core; n <= core; ++n) d.core[n] = {normal(rng), normal(rng)};
  }
  return out;
}

}  // namespace gfred
