#include "gfred/gluing.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace gfred {

namespace {

std::vector<std::string> overlap_names(const GluingFamily& f, std::size_t i, std::size_t j) {
  std::set<std::string> a(f.cover(i).begin(), f.cover(i).end());
  std::vector<std::string> out;
  for (const auto& n : f.cover(j))
    if (a.count(n)) out.push_back(n);
  return out;
}

UnitSubset names_in(const FiniteGroupoid& g, const std::vector<std::string>& names) {
  return UnitSubset::from_names(g, names);
}

bool has_units(const FiniteGroupoid& g, ArrowIndex a, const std::set<std::string>& names) {
  return names.count(g.unit_name(g.dom(a))) && names.count(g.unit_name(g.ran(a)));
}

/// φ_ji as id → id; identity when i == j and no table was given.
std::map<ArrowId, ArrowId> id_map(const GluingFamily& f, std::size_t i, std::size_t j) {
  std::map<ArrowId, ArrowId> out;
  auto it = f.isos.find({i, j});
  if (it == f.isos.end()) {
    if (i == j)
      for (ArrowIndex a = 0; a < f.pieces[i].num_arrows(); ++a) out[f.pieces[i].id(a)] = f.pieces[i].id(a);
    return out;
  }
  for (const auto& [a, b] : it->second) out[a] = b;
  return out;
}

void check_cover(const GluingFamily& f) {
  std::set<std::string> x(f.units.begin(), f.units.end());
  if (x.size() != f.units.size()) throw InputError("gluing: duplicate unit in X");
  std::set<std::string> covered;
  for (std::size_t i = 0; i < f.pieces.size(); ++i) {
    for (const auto& n : f.cover(i)) {
      if (!x.count(n)) throw InputError("gluing: piece " + std::to_string(i) + " has unit '" + n + "' outside X");
      covered.insert(n);
    }
    const ValidationReport r = validate(f.pieces[i]);
    if (!r.ok())
      throw InputError("gluing: piece " + std::to_string(i) + " is not a groupoid (" +
                       r.violations.front().axiom + ")");
  }
  if (covered != x) throw InputError("gluing: the pieces' unit sets do not cover X");
  for (const auto& [key, table] : f.isos)
    if (key.first >= f.pieces.size() || key.second >= f.pieces.size())
      throw InputError("gluing: iso table refers to a nonexistent piece");
}

}  // namespace

GroupoidMorphism overlap_morphism(const GluingFamily& f, std::size_t i, std::size_t j) {
  const auto names = overlap_names(f, i, j);
  const FiniteGroupoid ri = reduction(f.pieces[i], names_in(f.pieces[i], names));
  const FiniteGroupoid rj = reduction(f.pieces[j], names_in(f.pieces[j], names));
  GroupoidMorphism phi;
  for (UnitIndex x = 0; x < ri.num_units(); ++x) phi.unit_map.push_back(*rj.find_unit(ri.unit_name(x)));
  phi.arrow_map.assign(ri.num_arrows(), kNoArrow);
  const std::string where = "gluing: iso table (" + std::to_string(i) + " -> " + std::to_string(j) + ")";
  if (names.empty()) return phi;
  auto it = f.isos.find({i, j});
  if (it == f.isos.end()) {
    if (i != j) throw InputError(where + " is missing for a nonempty overlap");
    return identity_morphism(ri);
  }
  for (const auto& [a, b] : it->second) {
    auto ai = ri.find_arrow(a);
    auto bj = rj.find_arrow(b);
    if (!ai || !bj)
      throw InputError(where + " maps arrow " + std::to_string(a) + " -> " + std::to_string(b) +
                       " outside the overlap reductions");
    if (phi.arrow_map[*ai] != kNoArrow) throw InputError(where + " maps arrow " + std::to_string(a) + " twice");
    phi.arrow_map[*ai] = *bj;
  }
  for (ArrowIndex a = 0; a < ri.num_arrows(); ++a)
    if (phi.arrow_map[a] == kNoArrow)
      throw InputError(where + " does not map arrow " + std::to_string(ri.id(a)));
  const auto errors = check_morphism(ri, rj, phi, true);
  if (!errors.empty())
    throw InputError(where + " is not an isomorphism over the identity of the overlap: " + errors.front());
  return phi;
}

GluingReport check_weak_gluing(const GluingFamily& f) {
  check_cover(f);
  const std::size_t n = f.pieces.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) overlap_morphism(f, i, j);

  GluingReport report;
  std::map<std::pair<std::size_t, std::size_t>, std::map<ArrowId, ArrowId>> maps;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) maps[{i, j}] = id_map(f, i, j);

  for (std::size_t i = 0; i < n; ++i) {
    const auto& g = f.pieces[i];
    for (ArrowIndex a = 0; a < g.num_arrows(); ++a) {
      const ArrowId id = g.id(a);
      if (maps[{i, i}].at(id) != id) report.cocycle.push_back({i, i, i, id, "phi_ii is not the identity"});
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      const auto& ji = maps[{i, j}];
      const auto& ij = maps[{j, i}];
      for (const auto& [a, b] : ji) {
        auto back = ij.find(b);
        if (back == ij.end() || back->second != a)
          report.cocycle.push_back({i, j, i, a, "phi_ji != inverse of phi_ij"});
      }
      for (std::size_t k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        std::set<std::string> triple;
        for (const auto& name : overlap_names(f, i, j))
          if (std::find(f.cover(k).begin(), f.cover(k).end(), name) != f.cover(k).end()) triple.insert(name);
        if (triple.empty()) continue;
        const auto& kj = maps[{j, k}];
        const auto& ki = maps[{i, k}];
        for (ArrowIndex a = 0; a < g.num_arrows(); ++a) {
          if (!has_units(g, a, triple)) continue;
          const ArrowId id = g.id(a);
          if (kj.at(ji.at(id)) != ki.at(id))
            report.cocycle.push_back({i, j, k, id, "phi_kj phi_ji != phi_ki"});
        }
      }
    }
  }

  std::vector<std::set<std::string>> cover_sets;
  for (std::size_t i = 0; i < n; ++i) cover_sets.emplace_back(f.cover(i).begin(), f.cover(i).end());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const auto& gi = f.pieces[i];
      const auto& gj = f.pieces[j];
      for (ArrowIndex a = 0; a < gi.num_arrows(); ++a) {
        const std::string& mid = gi.unit_name(gi.dom(a));
        auto y = gj.find_unit(mid);
        if (!y) continue;
        for (ArrowIndex b : gj.range_fiber(*y)) {
          const std::string& top = gi.unit_name(gi.ran(a));
          const std::string& bottom = gj.unit_name(gj.dom(b));
          const bool lifted = std::any_of(cover_sets.begin(), cover_sets.end(), [&](const auto& uk) {
            return uk.count(top) && uk.count(mid) && uk.count(bottom);
          });
          if (!lifted) report.lifting.push_back({i, j, gi.id(a), gj.id(b)});
        }
      }
    }
  return report;
}

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace

GluedGroupoid glue(const GluingFamily& f) {
  const GluingReport report = check_weak_gluing(f);
  if (!report.clean()) {
    std::ostringstream os;
    os << "glue: family fails the weak gluing condition (" << report.cocycle.size()
       << " cocycle failures, " << report.lifting.size() << " unliftable composable pairs";
    if (!report.lifting.empty())
      os << "; first: arrows " << report.lifting.front().g << " (piece " << report.lifting.front().i
         << ") and " << report.lifting.front().h << " (piece " << report.lifting.front().j << ")";
    os << ")";
    throw InputError(os.str());
  }
  const std::size_t n = f.pieces.size();
  std::vector<std::size_t> offset(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) offset[i + 1] = offset[i] + f.pieces[i].num_arrows();
  UnionFind uf(offset[n]);
  for (const auto& [key, table] : f.isos) {
    const auto [i, j] = key;
    for (const auto& [a, b] : table)
      uf.unite(offset[i] + *f.pieces[i].find_arrow(a), offset[j] + *f.pieces[j].find_arrow(b));
  }

  std::map<std::string, UnitIndex> unit_of;
  for (std::size_t x = 0; x < f.units.size(); ++x) unit_of[f.units[x]] = static_cast<UnitIndex>(x);

  std::map<std::size_t, ArrowIndex> class_of_root;
  std::vector<std::map<std::size_t, ArrowIndex>> members;  // class → piece → arrow
  std::vector<Arrow> arrows;
  GluedGroupoid out;
  out.embeddings.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& g = f.pieces[i];
    for (ArrowIndex a = 0; a < g.num_arrows(); ++a) {
      const std::size_t root = uf.find(offset[i] + a);
      auto [it, inserted] = class_of_root.emplace(root, static_cast<ArrowIndex>(arrows.size()));
      const UnitIndex dom = unit_of.at(g.unit_name(g.dom(a)));
      const UnitIndex ran = unit_of.at(g.unit_name(g.ran(a)));
      if (inserted) {
        arrows.push_back({static_cast<ArrowId>(arrows.size()), dom, ran});
        members.emplace_back();
      } else if (arrows[it->second].dom != dom || arrows[it->second].ran != ran) {
        throw InternalError("glue: identified arrows have different endpoints");
      }
      if (!members[it->second].emplace(i, a).second)
        throw InternalError("glue: two arrows of one piece were identified");
      out.embeddings[i].push_back(it->second);
    }
  }

  const std::size_t m = arrows.size();
  std::vector<ArrowIndex> unit_arrow(f.units.size(), kNoArrow);
  std::vector<ArrowIndex> inverse(m, kNoArrow);
  std::vector<ArrowIndex> compose(m * m, kNoArrow);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& g = f.pieces[i];
    for (UnitIndex x = 0; x < g.num_units(); ++x)
      unit_arrow[unit_of.at(g.unit_name(x))] = out.embeddings[i][g.unit_arrow(x)];
    for (ArrowIndex a = 0; a < g.num_arrows(); ++a) inverse[out.embeddings[i][a]] = out.embeddings[i][g.inverse(a)];
  }
  for (std::size_t c1 = 0; c1 < m; ++c1)
    for (std::size_t c2 = 0; c2 < m; ++c2) {
      if (arrows[c1].dom != arrows[c2].ran) continue;
      ArrowIndex result = kNoArrow;
      for (const auto& [piece, a] : members[c1]) {
        auto b = members[c2].find(piece);
        if (b == members[c2].end()) continue;
        const ArrowIndex ab = out.embeddings[piece][f.pieces[piece].compose(a, b->second)];
        if (result == kNoArrow)
          result = ab;
        else if (result != ab)
          throw InternalError("glue: lifts through different pieces give different products for glued arrows " +
                              std::to_string(c1) + " and " + std::to_string(c2));
      }
      if (result == kNoArrow)
        throw InternalError("glue: composable glued arrows " + std::to_string(c1) + " and " +
                            std::to_string(c2) + " have no common piece");
      compose[c1 * m + c2] = result;
    }
  out.groupoid = FiniteGroupoid(f.units, std::move(arrows), std::move(unit_arrow), std::move(inverse),
                                std::move(compose));
  return out;
}

namespace {

IsoTable table_or_identity(const GluingFamily& f, std::size_t i, std::size_t j) {
  auto it = f.isos.find({i, j});
  if (it != f.isos.end()) return it->second;
  IsoTable t;
  if (i == j)
    for (ArrowIndex a = 0; a < f.pieces[i].num_arrows(); ++a) t.emplace_back(f.pieces[i].id(a), f.pieces[i].id(a));
  return t;
}

}  // namespace

GluingFamily product_family(const GluingFamily& a, const GluingFamily& b) {
  GluingFamily out;
  for (const auto& x : a.units)
    for (const auto& y : b.units) out.units.push_back("(" + x + "," + y + ")");
  const std::size_t na = a.pieces.size(), nb = b.pieces.size();
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < nb; ++j) out.pieces.push_back(direct_product(a.pieces[i], b.pieces[j]));
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < nb; ++j)
      for (std::size_t k = 0; k < na; ++k)
        for (std::size_t l = 0; l < nb; ++l) {
          const IsoTable ta = table_or_identity(a, i, k);
          const IsoTable tb = table_or_identity(b, j, l);
          if (ta.empty() || tb.empty()) continue;
          const auto& bj = b.pieces[j];
          const auto& bl = b.pieces[l];
          IsoTable t;
          for (const auto& [x1, x2] : ta)
            for (const auto& [y1, y2] : tb)
              t.emplace_back(x1 * bj.num_arrows() + *bj.find_arrow(y1), x2 * bl.num_arrows() + *bl.find_arrow(y2));
          out.isos[{i * nb + j, k * nb + l}] = std::move(t);
        }
  return out;
}

GluingFamily permute_family(const GluingFamily& f, const std::vector<std::size_t>& perm) {
  GluingFamily out;
  out.units = f.units;
  std::vector<std::size_t> where(perm.size());
  for (std::size_t p = 0; p < perm.size(); ++p) {
    out.pieces.push_back(f.pieces.at(perm[p]));
    where[perm[p]] = p;
  }
  for (const auto& [key, table] : f.isos) out.isos[{where[key.first], where[key.second]}] = table;
  return out;
}

}  // namespace gfred
