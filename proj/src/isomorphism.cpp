#include "gfred/isomorphism.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace gfred {

std::vector<std::string> check_morphism(const FiniteGroupoid& s, const FiniteGroupoid& t,
                                        const GroupoidMorphism& phi, bool require_iso) {
  std::vector<std::string> errors;
  if (phi.unit_map.size() != static_cast<std::size_t>(s.num_units()) ||
      phi.arrow_map.size() != static_cast<std::size_t>(s.num_arrows())) {
    errors.push_back("map tables do not match the source groupoid");
    return errors;
  }
  for (UnitIndex u : phi.unit_map)
    if (u < 0 || u >= t.num_units()) {
      errors.push_back("unit map leaves the target");
      return errors;
    }
  for (ArrowIndex a : phi.arrow_map)
    if (a < 0 || a >= t.num_arrows()) {
      errors.push_back("arrow map leaves the target");
      return errors;
    }
  auto name = [&](ArrowIndex a) { return std::to_string(s.id(a)); };
  for (ArrowIndex a = 0; a < s.num_arrows(); ++a) {
    const ArrowIndex fa = phi.arrow_map[a];
    if (t.dom(fa) != phi.unit_map[s.dom(a)]) errors.push_back("dom not preserved at arrow " + name(a));
    if (t.ran(fa) != phi.unit_map[s.ran(a)]) errors.push_back("ran not preserved at arrow " + name(a));
    if (s.inverse(a) != kNoArrow && t.inverse(fa) != phi.arrow_map[s.inverse(a)])
      errors.push_back("inverse not preserved at arrow " + name(a));
  }
  for (UnitIndex x = 0; x < s.num_units(); ++x)
    if (s.unit_arrow(x) != kNoArrow &&
        phi.arrow_map[s.unit_arrow(x)] != t.unit_arrow(phi.unit_map[x]))
      errors.push_back("unit arrow not preserved at unit " + s.unit_name(x));
  for (ArrowIndex a = 0; a < s.num_arrows(); ++a)
    for (ArrowIndex b : s.range_fiber(s.dom(a))) {
      const ArrowIndex ab = s.compose(a, b);
      if (ab == kNoArrow) continue;
      if (t.compose(phi.arrow_map[a], phi.arrow_map[b]) != phi.arrow_map[ab])
        errors.push_back("compose not preserved at (" + name(a) + ", " + name(b) + ")");
    }
  if (require_iso) {
    if (s.num_units() != t.num_units() ||
        std::set<UnitIndex>(phi.unit_map.begin(), phi.unit_map.end()).size() != phi.unit_map.size())
      errors.push_back("unit map is not bijective");
    if (s.num_arrows() != t.num_arrows() ||
        std::set<ArrowIndex>(phi.arrow_map.begin(), phi.arrow_map.end()).size() != phi.arrow_map.size())
      errors.push_back("arrow map is not bijective");
  }
  return errors;
}

GroupoidMorphism identity_morphism(const FiniteGroupoid& g) {
  GroupoidMorphism phi;
  for (UnitIndex x = 0; x < g.num_units(); ++x) phi.unit_map.push_back(x);
  for (ArrowIndex a = 0; a < g.num_arrows(); ++a) phi.arrow_map.push_back(a);
  return phi;
}

GroupoidMorphism compose_morphisms(const GroupoidMorphism& second, const GroupoidMorphism& first) {
  GroupoidMorphism out;
  for (UnitIndex x : first.unit_map) out.unit_map.push_back(second.unit_map.at(x));
  for (ArrowIndex a : first.arrow_map) out.arrow_map.push_back(second.arrow_map.at(a));
  return out;
}

GroupoidMorphism invert_morphism(const GroupoidMorphism& phi) {
  GroupoidMorphism out;
  out.unit_map.assign(phi.unit_map.size(), -1);
  out.arrow_map.assign(phi.arrow_map.size(), kNoArrow);
  for (std::size_t x = 0; x < phi.unit_map.size(); ++x) out.unit_map.at(phi.unit_map[x]) = static_cast<UnitIndex>(x);
  for (std::size_t a = 0; a < phi.arrow_map.size(); ++a)
    out.arrow_map.at(phi.arrow_map[a]) = static_cast<ArrowIndex>(a);
  return out;
}

namespace {

struct OrbitData {
  std::vector<UnitSubset> orbits;
  std::vector<std::vector<ArrowIndex>> isotropy;  // at the orbit's smallest unit
};

OrbitData orbit_data(const FiniteGroupoid& g) {
  OrbitData d;
  d.orbits = orbits(g);
  for (const auto& o : d.orbits) d.isotropy.push_back(isotropy(g, *o.begin()));
  return d;
}

int arrow_order(const FiniteGroupoid& g, ArrowIndex a) {
  const ArrowIndex u = g.unit_arrow(g.dom(a));
  int k = 1;
  for (ArrowIndex p = a; p != u; p = g.compose(p, a)) {
    if (p == kNoArrow || ++k > g.num_arrows() + 1) return -1;
  }
  return k;
}

/// Isomorphism between two isotropy groups given as arrow lists (unit first).
std::optional<std::map<ArrowIndex, ArrowIndex>> match_groups(const FiniteGroupoid& g,
                                                             const std::vector<ArrowIndex>& k1,
                                                             const FiniteGroupoid& h,
                                                             const std::vector<ArrowIndex>& k2) {
  if (k1.size() != k2.size()) return std::nullopt;
  // Greedy generating set of k1.
  std::vector<ArrowIndex> gens;
  std::set<ArrowIndex> span{k1.front()};
  auto close = [&](std::set<ArrowIndex>& s) {
    std::vector<ArrowIndex> frontier(s.begin(), s.end());
    while (!frontier.empty()) {
      const ArrowIndex a = frontier.back();
      frontier.pop_back();
      for (ArrowIndex b : gens) {
        const ArrowIndex ab = g.compose(a, b);
        if (s.insert(ab).second) frontier.push_back(ab);
      }
    }
  };
  for (ArrowIndex a : k1)
    if (!span.count(a)) {
      gens.push_back(a);
      close(span);
    }
  std::vector<int> gen_order;
  for (ArrowIndex a : gens) gen_order.push_back(arrow_order(g, a));
  std::vector<int> order2;
  for (ArrowIndex b : k2) order2.push_back(arrow_order(h, b));

  std::vector<ArrowIndex> images(gens.size());
  std::optional<std::map<ArrowIndex, ArrowIndex>> found;

  auto try_extend = [&]() -> std::optional<std::map<ArrowIndex, ArrowIndex>> {
    std::map<ArrowIndex, ArrowIndex> map{{k1.front(), k2.front()}};
    std::vector<ArrowIndex> frontier{k1.front()};
    while (!frontier.empty()) {
      const ArrowIndex a = frontier.back();
      frontier.pop_back();
      for (std::size_t i = 0; i < gens.size(); ++i) {
        const ArrowIndex ab = g.compose(a, gens[i]);
        const ArrowIndex img = h.compose(map.at(a), images[i]);
        auto [it, inserted] = map.emplace(ab, img);
        if (inserted)
          frontier.push_back(ab);
        else if (it->second != img)
          return std::nullopt;
      }
    }
    std::set<ArrowIndex> image;
    for (auto& kv : map) image.insert(kv.second);
    if (map.size() != k1.size() || image.size() != k2.size()) return std::nullopt;
    for (ArrowIndex a : k1)
      for (ArrowIndex b : k1)
        if (map.at(g.compose(a, b)) != h.compose(map.at(a), map.at(b))) return std::nullopt;
    return map;
  };

  auto rec = [&](auto&& self, std::size_t i) -> bool {
    if (i == gens.size()) {
      found = try_extend();
      return found.has_value();
    }
    for (std::size_t j = 0; j < k2.size(); ++j) {
      if (order2[j] != gen_order[i]) continue;
      images[i] = k2[j];
      if (self(self, i + 1)) return true;
    }
    return false;
  };
  rec(rec, 0);
  return found;
}

}  // namespace

std::optional<GroupoidMorphism> find_isomorphism(const FiniteGroupoid& g, const FiniteGroupoid& h) {
  if (g.num_units() != h.num_units() || g.num_arrows() != h.num_arrows()) return std::nullopt;
  const OrbitData dg = orbit_data(g);
  const OrbitData dh = orbit_data(h);
  if (dg.orbits.size() != dh.orbits.size()) return std::nullopt;
  const std::size_t k = dg.orbits.size();

  std::map<std::pair<std::size_t, std::size_t>, std::optional<std::map<ArrowIndex, ArrowIndex>>> cache;
  auto compatible = [&](std::size_t i, std::size_t j) -> const std::optional<std::map<ArrowIndex, ArrowIndex>>& {
    auto key = std::make_pair(i, j);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    std::optional<std::map<ArrowIndex, ArrowIndex>> r;
    if (dg.orbits[i].size() == dh.orbits[j].size() && dg.isotropy[i].size() == dh.isotropy[j].size())
      r = match_groups(g, dg.isotropy[i], h, dh.isotropy[j]);
    return cache.emplace(key, std::move(r)).first->second;
  };

  std::vector<std::size_t> assign(k);
  std::vector<bool> used(k, false);
  auto rec = [&](auto&& self, std::size_t i) -> bool {
    if (i == k) return true;
    for (std::size_t j = 0; j < k; ++j) {
      if (used[j] || !compatible(i, j)) continue;
      used[j] = true;
      assign[i] = j;
      if (self(self, i + 1)) return true;
      used[j] = false;
    }
    return false;
  };
  if (!rec(rec, 0)) return std::nullopt;

  GroupoidMorphism phi;
  phi.unit_map.assign(g.num_units(), -1);
  phi.arrow_map.assign(g.num_arrows(), kNoArrow);
  for (std::size_t i = 0; i < k; ++i) {
    const auto& og = dg.orbits[i].members();
    const auto& oh = dh.orbits[assign[i]].members();
    for (std::size_t t = 0; t < og.size(); ++t) phi.unit_map[og[t]] = oh[t];
    const auto& alpha = *compatible(i, assign[i]);
    const UnitIndex x = og.front();
    const UnitIndex xh = oh.front();
    // Connecting arrows x → y in both groupoids.
    std::map<UnitIndex, ArrowIndex> tg, th;
    for (ArrowIndex a : g.source_fiber(x)) tg.emplace(g.ran(a), a);
    for (ArrowIndex a : h.source_fiber(xh)) th.emplace(h.ran(a), a);
    tg[x] = g.unit_arrow(x);
    th[xh] = h.unit_arrow(xh);
    for (UnitIndex y : og)
      for (ArrowIndex a : g.source_fiber(y)) {
        const UnitIndex z = g.ran(a);
        // a = t_z · k · t_y⁻¹ with k in the isotropy at x.
        const ArrowIndex kx = g.compose(g.compose(g.inverse(tg.at(z)), a), tg.at(y));
        const ArrowIndex ty = th.at(phi.unit_map[y]);
        const ArrowIndex tz = th.at(phi.unit_map[z]);
        phi.arrow_map[a] = h.compose(h.compose(tz, alpha.at(kx)), h.inverse(ty));
      }
  }
  return phi;
}

bool isomorphic(const FiniteGroupoid& g, const FiniteGroupoid& h) {
  return find_isomorphism(g, h).has_value();
}

namespace {

/// Calls `visit` on every k-subset of `pool` in lexicographic order until it
/// returns true.
template <class Visit>
bool for_each_subset(const std::vector<UnitIndex>& pool, std::size_t k, Visit&& visit) {
  if (k > pool.size()) return false;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    std::vector<UnitIndex> s;
    for (std::size_t i : idx) s.push_back(pool[i]);
    if (visit(s)) return true;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == pool.size() - k + i - 1) --i;
    if (i == 0) return false;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

std::optional<LocalIsomorphism> find_local_isomorphism(const FiniteGroupoid& g, UnitIndex p,
                                                       const FiniteGroupoid& h) {
  require_unit(g, p);
  if (g.num_units() > 20 || h.num_units() > 20)
    throw InputError("find_local_isomorphism: exhaustive search limited to 20 units");
  std::vector<UnitIndex> others;
  for (UnitIndex x = 0; x < g.num_units(); ++x)
    if (x != p) others.push_back(x);
  std::vector<UnitIndex> h_units;
  for (UnitIndex y = 0; y < h.num_units(); ++y) h_units.push_back(y);

  std::optional<LocalIsomorphism> result;
  for (std::size_t size = static_cast<std::size_t>(g.num_units()); size >= 1 && !result; --size) {
    if (size > h_units.size()) continue;
    for_each_subset(others, size - 1, [&](const std::vector<UnitIndex>& rest) {
      std::vector<UnitIndex> members = rest;
      members.push_back(p);
      const UnitSubset u(members);
      const FiniteGroupoid gu = reduction(g, u);
      return for_each_subset(h_units, size, [&](const std::vector<UnitIndex>& vm) {
        const UnitSubset v(vm);
        if (static_cast<int>(reduction_arrows(h, v).size()) != gu.num_arrows()) return false;
        auto phi = find_isomorphism(gu, reduction(h, v));
        if (!phi) return false;
        result = LocalIsomorphism{u, v, std::move(*phi)};
        return true;
      });
    });
  }
  return result;
}

}  // namespace gfred
