#include "gfred/groupoid.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace gfred {

FiniteGroupoid::FiniteGroupoid(std::vector<std::string> units, std::vector<Arrow> arrows,
                               std::vector<ArrowIndex> unit_arrow,
                               std::vector<ArrowIndex> inverse,
                               std::vector<ArrowIndex> compose)
    : units_(std::move(units)),
      arrows_(std::move(arrows)),
      unit_arrow_(std::move(unit_arrow)),
      inverse_(std::move(inverse)),
      compose_(std::move(compose)) {
  const auto n = units_.size();
  const auto m = arrows_.size();
  if (unit_arrow_.size() != n) throw InputError("groupoid: unit_arrow table has wrong size");
  if (inverse_.size() != m) throw InputError("groupoid: inverse table has wrong size");
  if (compose_.size() != m * m) throw InputError("groupoid: compose table has wrong size");

  for (std::size_t x = 0; x < n; ++x)
    if (!by_name_.emplace(units_[x], static_cast<UnitIndex>(x)).second)
      throw InputError("groupoid: duplicate unit '" + units_[x] + "'");
  auto check_arrow = [m](ArrowIndex a, const char* what) {
    if (a != kNoArrow && (a < 0 || static_cast<std::size_t>(a) >= m))
      throw InputError(std::string("groupoid: ") + what + " refers to a nonexistent arrow");
  };
  for (ArrowIndex a : unit_arrow_) check_arrow(a, "unit_arrow");
  for (ArrowIndex a : inverse_) check_arrow(a, "inverse");
  for (ArrowIndex a : compose_) check_arrow(a, "compose");

  source_fiber_.resize(n);
  range_fiber_.resize(n);
  for (std::size_t a = 0; a < m; ++a) {
    const Arrow& arr = arrows_[a];
    if (arr.dom < 0 || static_cast<std::size_t>(arr.dom) >= n || arr.ran < 0 ||
        static_cast<std::size_t>(arr.ran) >= n)
      throw InputError("groupoid: arrow " + std::to_string(arr.id) + " has an unknown endpoint");
    if (!by_id_.emplace(arr.id, static_cast<ArrowIndex>(a)).second)
      throw InputError("groupoid: duplicate arrow id " + std::to_string(arr.id));
    source_fiber_[arr.dom].push_back(static_cast<ArrowIndex>(a));
    range_fiber_[arr.ran].push_back(static_cast<ArrowIndex>(a));
  }
}

std::optional<UnitIndex> FiniteGroupoid::find_unit(const std::string& name) const {
  auto it = by_name_.find(name);
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

std::optional<ArrowIndex> FiniteGroupoid::find_arrow(ArrowId id) const {
  auto it = by_id_.find(id);
  if (it == by_id_.end()) return std::nullopt;
  return it->second;
}

// ---------------------------------------------------------------------------

UnitIndex GroupoidBuilder::add_unit(const std::string& name) {
  units_.push_back(name);
  return static_cast<UnitIndex>(units_.size() - 1);
}

ArrowIndex GroupoidBuilder::add_arrow(ArrowId id, UnitIndex dom, UnitIndex ran) {
  arrows_.push_back({id, dom, ran});
  return static_cast<ArrowIndex>(arrows_.size() - 1);
}

void GroupoidBuilder::set_compose(ArrowIndex g, ArrowIndex h, ArrowIndex gh) {
  compose_[{g, h}] = gh;
}

void GroupoidBuilder::set_inverse(ArrowIndex g, ArrowIndex inv) { inverse_[g] = inv; }

void GroupoidBuilder::set_unit_arrow(UnitIndex x, ArrowIndex a) { unit_arrow_[x] = a; }

FiniteGroupoid GroupoidBuilder::build() {
  const std::size_t n = units_.size();
  const std::size_t m = arrows_.size();
  std::vector<ArrowIndex> compose(m * m, kNoArrow);
  for (const auto& [gh, v] : compose_) {
    const auto [g, h] = gh;
    if (g < 0 || h < 0 || static_cast<std::size_t>(g) >= m || static_cast<std::size_t>(h) >= m)
      throw InputError("groupoid: compose entry refers to a nonexistent arrow");
    compose[static_cast<std::size_t>(g) * m + h] = v;
  }
  std::vector<ArrowIndex> unit_arrow(n, kNoArrow);
  for (const auto& [x, a] : unit_arrow_) {
    if (x < 0 || static_cast<std::size_t>(x) >= n) throw InputError("groupoid: unit_arrow for unknown unit");
    unit_arrow[x] = a;
  }
  for (std::size_t a = 0; a < m; ++a) {
    const Arrow& arr = arrows_[a];
    if (arr.dom != arr.ran || arr.dom < 0 || static_cast<std::size_t>(arr.dom) >= n) continue;
    if (unit_arrow[arr.dom] != kNoArrow) continue;
    if (compose[a * m + a] == static_cast<ArrowIndex>(a)) unit_arrow[arr.dom] = static_cast<ArrowIndex>(a);
  }
  std::vector<ArrowIndex> inverse(m, kNoArrow);
  for (const auto& [g, inv] : inverse_) {
    if (g < 0 || static_cast<std::size_t>(g) >= m) throw InputError("groupoid: inverse for unknown arrow");
    inverse[g] = inv;
  }
  for (std::size_t g = 0; g < m; ++g) {
    if (inverse[g] != kNoArrow) continue;
    const Arrow& ag = arrows_[g];
    if (ag.ran < 0 || static_cast<std::size_t>(ag.ran) >= n) continue;
    const ArrowIndex target = unit_arrow[ag.ran];
    if (target == kNoArrow) continue;
    for (std::size_t h = 0; h < m; ++h)
      if (compose[g * m + h] == target) {
        inverse[g] = static_cast<ArrowIndex>(h);
        break;
      }
  }
  return FiniteGroupoid(units_, arrows_, std::move(unit_arrow), std::move(inverse),
                        std::move(compose));
}

// ---------------------------------------------------------------------------

UnitSubset::UnitSubset(std::vector<UnitIndex> members) : members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

UnitSubset UnitSubset::all(const FiniteGroupoid& g) {
  std::vector<UnitIndex> m(g.num_units());
  std::iota(m.begin(), m.end(), 0);
  return UnitSubset(std::move(m));
}

UnitSubset UnitSubset::from_names(const FiniteGroupoid& g, std::span<const std::string> names) {
  std::vector<UnitIndex> m;
  for (const auto& name : names) {
    auto x = g.find_unit(name);
    if (!x) throw InputError("unit '" + name + "' is not a unit of the groupoid");
    m.push_back(*x);
  }
  return UnitSubset(std::move(m));
}

bool UnitSubset::contains(UnitIndex x) const {
  return std::binary_search(members_.begin(), members_.end(), x);
}

bool UnitSubset::is_subset_of(const UnitSubset& other) const {
  return std::includes(other.members_.begin(), other.members_.end(), members_.begin(),
                       members_.end());
}

UnitSubset UnitSubset::united(const UnitSubset& other) const {
  std::vector<UnitIndex> out;
  std::set_union(members_.begin(), members_.end(), other.members_.begin(), other.members_.end(),
                 std::back_inserter(out));
  return UnitSubset(std::move(out));
}

UnitSubset UnitSubset::intersected(const UnitSubset& other) const {
  std::vector<UnitIndex> out;
  std::set_intersection(members_.begin(), members_.end(), other.members_.begin(),
                        other.members_.end(), std::back_inserter(out));
  return UnitSubset(std::move(out));
}

std::vector<std::string> UnitSubset::names(const FiniteGroupoid& g) const {
  std::vector<std::string> out;
  for (UnitIndex x : members_) out.push_back(g.unit_name(x));
  return out;
}

void require_unit(const FiniteGroupoid& g, UnitIndex x) {
  if (x < 0 || x >= g.num_units())
    throw InputError("unit index " + std::to_string(x) + " is not a unit of the groupoid");
}

void require_subset(const FiniteGroupoid& g, const UnitSubset& u) {
  for (UnitIndex x : u) require_unit(g, x);
}

// ---------------------------------------------------------------------------

void ValidationReport::add(Violation v) {
  auto& c = counts[v.axiom];
  if (c++ < kMaxWitnesses) violations.push_back(std::move(v));
}

ValidationReport validate(const FiniteGroupoid& g) {
  ValidationReport report;
  const int n = g.num_units();
  const int m = g.num_arrows();
  auto ids = [&](std::initializer_list<ArrowIndex> as) {
    std::vector<ArrowId> out;
    for (ArrowIndex a : as)
      if (a != kNoArrow) out.push_back(g.id(a));
    return out;
  };

  for (UnitIndex x = 0; x < n; ++x) {
    const ArrowIndex u = g.unit_arrow(x);
    if (u == kNoArrow) {
      report.add({"unit-missing", {}, "no unit arrow at unit '" + g.unit_name(x) + "'"});
    } else if (g.dom(u) != x || g.ran(u) != x) {
      report.add({"unit-endpoints", ids({u}), "u(" + g.unit_name(x) + ") does not start and end at the unit"});
    }
  }

  for (ArrowIndex a = 0; a < m; ++a)
    for (ArrowIndex b = 0; b < m; ++b) {
      const ArrowIndex ab = g.compose(a, b);
      const bool composable = g.dom(a) == g.ran(b);
      if (composable != (ab != kNoArrow)) {
        report.add({"compose-domain", ids({a, b}),
                    composable ? "composable pair has no product" : "product defined for a non-composable pair"});
      } else if (ab != kNoArrow && (g.dom(ab) != g.dom(b) || g.ran(ab) != g.ran(a))) {
        report.add({"compose-endpoints", ids({a, b, ab}), "dom(gh) != dom(h) or ran(gh) != ran(g)"});
      }
    }

  for (ArrowIndex a = 0; a < m; ++a)
    for (ArrowIndex b : g.range_fiber(g.dom(a)))
      for (ArrowIndex c : g.range_fiber(g.dom(b))) {
        const ArrowIndex ab = g.compose(a, b);
        const ArrowIndex bc = g.compose(b, c);
        const ArrowIndex left = ab == kNoArrow ? kNoArrow : g.compose(ab, c);
        const ArrowIndex right = bc == kNoArrow ? kNoArrow : g.compose(a, bc);
        if (left != right || left == kNoArrow)
          report.add({"associativity", ids({a, b, c}), "(gh)k != g(hk)"});
      }

  for (ArrowIndex a = 0; a < m; ++a) {
    const ArrowIndex inv = g.inverse(a);
    if (inv == kNoArrow) {
      report.add({"inverse-missing", ids({a}), "no inverse"});
      continue;
    }
    if (g.inverse(inv) != a) report.add({"inverse-involution", ids({a, inv}), "inverse of inverse differs"});
    const ArrowIndex ur = g.unit_arrow(g.ran(a));
    const ArrowIndex ud = g.unit_arrow(g.dom(a));
    if (g.compose(a, inv) != ur || ur == kNoArrow)
      report.add({"inverse-right", ids({a, inv}), "g·g⁻¹ != u(ran g)"});
    if (g.compose(inv, a) != ud || ud == kNoArrow)
      report.add({"inverse-left", ids({a, inv}), "g⁻¹·g != u(dom g)"});
  }

  for (ArrowIndex a = 0; a < m; ++a) {
    const ArrowIndex ur = g.unit_arrow(g.ran(a));
    const ArrowIndex ud = g.unit_arrow(g.dom(a));
    if (ur != kNoArrow && g.compose(ur, a) != a) report.add({"unit-left", ids({ur, a}), "u(ran g)·g != g"});
    if (ud != kNoArrow && g.compose(a, ud) != a) report.add({"unit-right", ids({a, ud}), "g·u(dom g) != g"});
  }
  return report;
}

// ---------------------------------------------------------------------------

std::vector<ArrowIndex> reduction_arrows(const FiniteGroupoid& g, const UnitSubset& a) {
  require_subset(g, a);
  std::vector<ArrowIndex> out;
  for (ArrowIndex e = 0; e < g.num_arrows(); ++e)
    if (a.contains(g.dom(e)) && a.contains(g.ran(e))) out.push_back(e);
  return out;
}

FiniteGroupoid reduction(const FiniteGroupoid& g, const UnitSubset& a) {
  const std::vector<ArrowIndex> kept = reduction_arrows(g, a);
  std::vector<UnitIndex> unit_pos(g.num_units(), -1);
  std::vector<std::string> units;
  for (UnitIndex x : a) {
    unit_pos[x] = static_cast<UnitIndex>(units.size());
    units.push_back(g.unit_name(x));
  }
  std::vector<ArrowIndex> arrow_pos(g.num_arrows(), kNoArrow);
  std::vector<Arrow> arrows;
  for (ArrowIndex e : kept) {
    arrow_pos[e] = static_cast<ArrowIndex>(arrows.size());
    arrows.push_back({g.id(e), unit_pos[g.dom(e)], unit_pos[g.ran(e)]});
  }
  auto remap = [&](ArrowIndex e) { return e == kNoArrow ? kNoArrow : arrow_pos[e]; };
  std::vector<ArrowIndex> unit_arrow;
  for (UnitIndex x : a) unit_arrow.push_back(remap(g.unit_arrow(x)));
  std::vector<ArrowIndex> inverse;
  for (ArrowIndex e : kept) inverse.push_back(remap(g.inverse(e)));
  const std::size_t k = kept.size();
  std::vector<ArrowIndex> compose(k * k, kNoArrow);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) compose[i * k + j] = remap(g.compose(kept[i], kept[j]));
  return FiniteGroupoid(std::move(units), std::move(arrows), std::move(unit_arrow),
                        std::move(inverse), std::move(compose));
}

UnitSubset saturation(const FiniteGroupoid& g, const UnitSubset& u) {
  require_subset(g, u);
  std::vector<UnitIndex> out;
  for (UnitIndex x : u)
    for (ArrowIndex e : g.source_fiber(x)) out.push_back(g.ran(e));
  return UnitSubset(std::move(out));
}

bool is_invariant(const FiniteGroupoid& g, const UnitSubset& u) { return saturation(g, u) == u; }

std::vector<int> orbit_index(const FiniteGroupoid& g) {
  const int n = g.num_units();
  std::vector<int> label(n, -1);
  int next = 0;
  for (UnitIndex x = 0; x < n; ++x) {
    if (label[x] >= 0) continue;
    std::vector<UnitIndex> stack{x};
    label[x] = next;
    while (!stack.empty()) {
      const UnitIndex y = stack.back();
      stack.pop_back();
      for (ArrowIndex e : g.source_fiber(y))
        if (label[g.ran(e)] < 0) {
          label[g.ran(e)] = next;
          stack.push_back(g.ran(e));
        }
      for (ArrowIndex e : g.range_fiber(y))
        if (label[g.dom(e)] < 0) {
          label[g.dom(e)] = next;
          stack.push_back(g.dom(e));
        }
    }
    ++next;
  }
  return label;
}

std::vector<UnitSubset> orbits(const FiniteGroupoid& g) {
  const std::vector<int> label = orbit_index(g);
  const int count = label.empty() ? 0 : *std::max_element(label.begin(), label.end()) + 1;
  std::vector<std::vector<UnitIndex>> members(count);
  for (UnitIndex x = 0; x < g.num_units(); ++x) members[label[x]].push_back(x);
  std::vector<UnitSubset> out;
  for (auto& v : members) out.emplace_back(std::move(v));
  return out;
}

std::vector<ArrowIndex> isotropy(const FiniteGroupoid& g, UnitIndex x) {
  require_unit(g, x);
  std::vector<ArrowIndex> out;
  const ArrowIndex u = g.unit_arrow(x);
  if (u != kNoArrow) out.push_back(u);
  for (ArrowIndex e : g.source_fiber(x))
    if (g.ran(e) == x && e != u) out.push_back(e);
  return out;
}

// ---------------------------------------------------------------------------

FiniteGroupoid pair_groupoid(const std::vector<std::string>& units) {
  const int n = static_cast<int>(units.size());
  GroupoidBuilder b;
  for (const auto& u : units) b.add_unit(u);
  // arrow index = ran * n + dom
  for (int r = 0; r < n; ++r)
    for (int d = 0; d < n; ++d) b.add_arrow(r * n + d, d, r);
  for (int r = 0; r < n; ++r)
    for (int d = 0; d < n; ++d) {
      b.set_inverse(r * n + d, d * n + r);
      for (int e = 0; e < n; ++e) b.set_compose(r * n + d, d * n + e, r * n + e);
    }
  for (int x = 0; x < n; ++x) b.set_unit_arrow(x, x * n + x);
  return b.build();
}

FiniteGroupoid group_groupoid(const FiniteGroup& group, const std::string& unit) {
  GroupoidBuilder b;
  b.add_unit(unit);
  const int k = group.order();
  for (int a = 0; a < k; ++a) b.add_arrow(a, 0, 0);
  for (int a = 0; a < k; ++a) {
    b.set_inverse(a, group.inverse(a));
    for (int c = 0; c < k; ++c) b.set_compose(a, c, group.multiply(a, c));
  }
  b.set_unit_arrow(0, group.identity());
  return b.build();
}

FiniteGroupoid disjoint_union(const FiniteGroupoid& g, const FiniteGroupoid& h) {
  ArrowId shift = 0;
  for (ArrowIndex a = 0; a < g.num_arrows(); ++a) shift = std::max(shift, g.id(a) + 1);
  ArrowId min_h = 0;
  for (ArrowIndex a = 0; a < h.num_arrows(); ++a) min_h = std::min(min_h, h.id(a));
  shift -= min_h;

  const int ng = g.num_units(), mg = g.num_arrows(), mh = h.num_arrows();
  std::vector<std::string> units = g.unit_names();
  for (const auto& u : h.unit_names()) units.push_back(u);
  std::vector<Arrow> arrows;
  for (ArrowIndex a = 0; a < mg; ++a) arrows.push_back(g.arrow(a));
  for (ArrowIndex a = 0; a < mh; ++a) arrows.push_back({h.id(a) + shift, h.dom(a) + ng, h.ran(a) + ng});
  auto sh = [mg](ArrowIndex a) { return a == kNoArrow ? kNoArrow : a + mg; };
  std::vector<ArrowIndex> unit_arrow;
  for (UnitIndex x = 0; x < ng; ++x) unit_arrow.push_back(g.unit_arrow(x));
  for (UnitIndex x = 0; x < h.num_units(); ++x) unit_arrow.push_back(sh(h.unit_arrow(x)));
  std::vector<ArrowIndex> inverse;
  for (ArrowIndex a = 0; a < mg; ++a) inverse.push_back(g.inverse(a));
  for (ArrowIndex a = 0; a < mh; ++a) inverse.push_back(sh(h.inverse(a)));
  const std::size_t m = static_cast<std::size_t>(mg + mh);
  std::vector<ArrowIndex> compose(m * m, kNoArrow);
  for (ArrowIndex a = 0; a < mg; ++a)
    for (ArrowIndex b = 0; b < mg; ++b) compose[a * m + b] = g.compose(a, b);
  for (ArrowIndex a = 0; a < mh; ++a)
    for (ArrowIndex b = 0; b < mh; ++b) compose[(a + mg) * m + (b + mg)] = sh(h.compose(a, b));
  return FiniteGroupoid(std::move(units), std::move(arrows), std::move(unit_arrow),
                        std::move(inverse), std::move(compose));
}

FiniteGroupoid direct_product(const FiniteGroupoid& g, const FiniteGroupoid& h) {
  const int ng = g.num_units(), nh = h.num_units();
  const int mg = g.num_arrows(), mh = h.num_arrows();
  auto unit = [nh](UnitIndex x, UnitIndex y) { return x * nh + y; };
  auto arrow = [mh](ArrowIndex a, ArrowIndex b) {
    return (a == kNoArrow || b == kNoArrow) ? kNoArrow : a * mh + b;
  };
  std::vector<std::string> units;
  for (UnitIndex x = 0; x < ng; ++x)
    for (UnitIndex y = 0; y < nh; ++y) units.push_back("(" + g.unit_name(x) + "," + h.unit_name(y) + ")");
  std::vector<Arrow> arrows;
  for (ArrowIndex a = 0; a < mg; ++a)
    for (ArrowIndex b = 0; b < mh; ++b)
      arrows.push_back({g.id(a) * mh + b, unit(g.dom(a), h.dom(b)), unit(g.ran(a), h.ran(b))});
  std::vector<ArrowIndex> unit_arrow;
  for (UnitIndex x = 0; x < ng; ++x)
    for (UnitIndex y = 0; y < nh; ++y) unit_arrow.push_back(arrow(g.unit_arrow(x), h.unit_arrow(y)));
  std::vector<ArrowIndex> inverse;
  for (ArrowIndex a = 0; a < mg; ++a)
    for (ArrowIndex b = 0; b < mh; ++b) inverse.push_back(arrow(g.inverse(a), h.inverse(b)));
  const std::size_t m = static_cast<std::size_t>(mg) * mh;
  std::vector<ArrowIndex> compose(m * m, kNoArrow);
  for (ArrowIndex a = 0; a < mg; ++a)
    for (ArrowIndex b = 0; b < mh; ++b)
      for (ArrowIndex c = 0; c < mg; ++c) {
        const ArrowIndex ac = g.compose(a, c);
        if (ac == kNoArrow) continue;
        for (ArrowIndex d = 0; d < mh; ++d)
          compose[static_cast<std::size_t>(arrow(a, b)) * m + arrow(c, d)] = arrow(ac, h.compose(b, d));
      }
  return FiniteGroupoid(std::move(units), std::move(arrows), std::move(unit_arrow),
                        std::move(inverse), std::move(compose));
}

// ---------------------------------------------------------------------------

namespace {

void validate_action(const RightAction& act) {
  const int n = static_cast<int>(act.points.size());
  const int k = act.group.order();
  if (act.table.size() != static_cast<std::size_t>(n) * k)
    throw InputError("action: table must have |X|·|H| entries");
  for (int v : act.table)
    if (v < 0 || v >= n) throw InputError("action: table entry is not a point of X");
  for (int x = 0; x < n; ++x)
    if (act.apply(x, act.group.identity()) != x)
      throw InputError("action: identity axiom x·e = x fails at x = " + act.points[x]);
  for (int x = 0; x < n; ++x)
    for (int g = 0; g < k; ++g)
      for (int h = 0; h < k; ++h)
        if (act.apply(act.apply(x, g), h) != act.apply(x, act.group.multiply(g, h)))
          throw InputError("action: compatibility axiom (x·g)·h = x·(gh) fails at x = " +
                           act.points[x] + ", g = " + act.group.name(g) + ", h = " +
                           act.group.name(h));
}

}  // namespace

FiniteGroupoid action_groupoid(const RightAction& act) {
  validate_action(act);
  const int n = static_cast<int>(act.points.size());
  const FiniteGroup& grp = act.group;
  const int k = grp.order();
  auto idx = [k](int x, int g) { return x * k + g; };
  GroupoidBuilder b;
  for (const auto& p : act.points) b.add_unit(p);
  for (int x = 0; x < n; ++x)
    for (int g = 0; g < k; ++g) b.add_arrow(idx(x, g), act.apply(x, grp.inverse(g)), x);
  for (int x = 0; x < n; ++x) {
    b.set_unit_arrow(x, idx(x, grp.identity()));
    for (int g = 0; g < k; ++g) {
      const int y = act.apply(x, grp.inverse(g));
      b.set_inverse(idx(x, g), idx(y, grp.inverse(g)));
      for (int h = 0; h < k; ++h) b.set_compose(idx(x, g), idx(y, h), idx(x, grp.multiply(h, g)));
    }
  }
  return b.build();
}

std::vector<int> stabilizer(const RightAction& act, int x) {
  std::vector<int> out;
  for (int g = 0; g < act.group.order(); ++g)
    if (act.apply(x, g) == x) out.push_back(g);
  return out;
}

std::vector<std::vector<int>> action_orbits(const RightAction& act) {
  const int n = static_cast<int>(act.points.size());
  std::vector<bool> seen(n, false);
  std::vector<std::vector<int>> out;
  for (int x = 0; x < n; ++x) {
    if (seen[x]) continue;
    std::vector<int> orbit;
    for (int g = 0; g < act.group.order(); ++g) orbit.push_back(act.apply(x, g));
    std::sort(orbit.begin(), orbit.end());
    orbit.erase(std::unique(orbit.begin(), orbit.end()), orbit.end());
    for (int y : orbit) seen[y] = true;
    out.push_back(std::move(orbit));
  }
  return out;
}

std::vector<ArrowId> check_right_invariance(const FiniteGroupoid& g) {
  std::vector<ArrowId> failing;
  for (ArrowIndex a = 0; a < g.num_arrows(); ++a) {
    auto from = g.source_fiber(g.ran(a));
    auto to = g.source_fiber(g.dom(a));
    std::set<ArrowIndex> image;
    bool ok = from.size() == to.size();
    for (ArrowIndex h : from) {
      const ArrowIndex ha = g.compose(h, a);
      if (ha == kNoArrow || g.dom(ha) != g.dom(a)) {
        ok = false;
        break;
      }
      image.insert(ha);
    }
    if (!ok || image.size() != to.size()) failing.push_back(g.id(a));
  }
  return failing;
}

}  // namespace gfred
