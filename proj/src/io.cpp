#include "gfred/io.hpp"

#include <fstream>
#include <set>

namespace gfred::io {

namespace {

/// Runs `body`, turning JSON access errors into InputError with `where`.
template <class F>
auto guarded(const std::string& where, F&& body) {
  try {
    return body();
  } catch (const Json::exception& e) {
    throw InputError(where + ": " + e.what());
  }
}

UnitIndex unit_by_name(const std::map<std::string, UnitIndex>& names, const std::string& name,
                       const std::string& where) {
  auto it = names.find(name);
  if (it == names.end()) throw InputError(where + ": unknown unit '" + name + "'");
  return it->second;
}

ArrowIndex arrow_by_id(const std::map<ArrowId, ArrowIndex>& ids, ArrowId id, const std::string& where) {
  auto it = ids.find(id);
  if (it == ids.end()) throw InputError(where + ": unknown arrow id " + std::to_string(id));
  return it->second;
}

Complex complex_from_json(const Json& v, const std::string& where) {
  if (v.is_number()) return v.get<double>();
  if (v.is_array() && v.size() == 2) return {v[0].get<double>(), v[1].get<double>()};
  throw InputError(where + ": expected a number or [re, im]");
}

}  // namespace

Json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path.string() + ": cannot open");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

FiniteGroupoid groupoid_from_json(const Json& doc) {
  return guarded("groupoid", [&] {
    GroupoidBuilder b;
    std::map<std::string, UnitIndex> names;
    for (const auto& u : doc.at("units")) {
      const auto name = u.get<std::string>();
      if (names.count(name)) throw InputError("groupoid: duplicate unit '" + name + "'");
      names[name] = b.add_unit(name);
    }
    std::map<ArrowId, ArrowIndex> ids;
    for (std::size_t i = 0; i < doc.at("arrows").size(); ++i) {
      const auto& a = doc.at("arrows")[i];
      const std::string where = "groupoid: arrows[" + std::to_string(i) + "]";
      const auto id = a.at("id").get<ArrowId>();
      if (ids.count(id)) throw InputError(where + ": duplicate id " + std::to_string(id));
      ids[id] = b.add_arrow(id, unit_by_name(names, a.at("dom").get<std::string>(), where),
                            unit_by_name(names, a.at("ran").get<std::string>(), where));
    }
    if (doc.contains("inverse"))
      for (const auto& p : doc.at("inverse")) {
        if (p.size() != 2) throw InputError("groupoid: inverse entries are [g, g_inverse]");
        b.set_inverse(arrow_by_id(ids, p[0].get<ArrowId>(), "groupoid: inverse"),
                      arrow_by_id(ids, p[1].get<ArrowId>(), "groupoid: inverse"));
      }
    if (doc.contains("compose"))
      for (const auto& t : doc.at("compose")) {
        if (t.size() != 3) throw InputError("groupoid: compose entries are [g, h, gh]");
        b.set_compose(arrow_by_id(ids, t[0].get<ArrowId>(), "groupoid: compose"),
                      arrow_by_id(ids, t[1].get<ArrowId>(), "groupoid: compose"),
                      arrow_by_id(ids, t[2].get<ArrowId>(), "groupoid: compose"));
      }
    if (doc.contains("unit_arrows"))
      for (const auto& [name, id] : doc.at("unit_arrows").items())
        b.set_unit_arrow(unit_by_name(names, name, "groupoid: unit_arrows"),
                         arrow_by_id(ids, id.get<ArrowId>(), "groupoid: unit_arrows"));
    return b.build();
  });
}

OrderedJson groupoid_to_json(const FiniteGroupoid& g) {
  OrderedJson doc;
  doc["units"] = g.unit_names();
  doc["arrows"] = OrderedJson::array();
  for (ArrowIndex a = 0; a < g.num_arrows(); ++a)
    doc["arrows"].push_back({{"id", g.id(a)}, {"dom", g.unit_name(g.dom(a))}, {"ran", g.unit_name(g.ran(a))}});
  doc["unit_arrows"] = OrderedJson::object();
  for (UnitIndex x = 0; x < g.num_units(); ++x)
    if (g.unit_arrow(x) != kNoArrow) doc["unit_arrows"][g.unit_name(x)] = g.id(g.unit_arrow(x));
  doc["inverse"] = OrderedJson::array();
  for (ArrowIndex a = 0; a < g.num_arrows(); ++a)
    if (g.inverse(a) != kNoArrow) doc["inverse"].push_back({g.id(a), g.id(g.inverse(a))});
  doc["compose"] = OrderedJson::array();
  for (ArrowIndex a = 0; a < g.num_arrows(); ++a)
    for (ArrowIndex b = 0; b < g.num_arrows(); ++b)
      if (g.compose(a, b) != kNoArrow) doc["compose"].push_back({g.id(a), g.id(b), g.id(g.compose(a, b))});
  return doc;
}

FiniteGroupoid load_groupoid(const std::filesystem::path& path) {
  try {
    return groupoid_from_json(read_json(path));
  } catch (const InputError& e) {
    const std::string what = e.what();
    if (what.rfind(path.string(), 0) == 0) throw;
    throw InputError(path.string() + ": " + what);
  }
}

ArrowFunction function_from_json(const FiniteGroupoid& g, const Json& doc) {
  return guarded("function", [&] {
    ArrowFunction f(g);
    if (!doc.is_array()) throw InputError("function: expected [[id, re, im], ...]");
    for (const auto& t : doc) {
      if (t.size() != 3) throw InputError("function: entries are [id, re, im]");
      const auto id = t[0].get<ArrowId>();
      const auto a = g.find_arrow(id);
      if (!a) throw InputError("function: unknown arrow id " + std::to_string(id));
      f[*a] += Complex(t[1].get<double>(), t[2].get<double>());
    }
    return f;
  });
}

OrderedJson function_to_json(const ArrowFunction& f) {
  OrderedJson doc = OrderedJson::array();
  for (ArrowIndex a : f.support()) doc.push_back({f.parent().id(a), f[a].real(), f[a].imag()});
  return doc;
}

BandOperator band_from_json(const Json& doc) {
  return guarded("band operator", [&] {
    const int w = doc.at("bandwidth").get<int>();
    if (w < 0) throw InputError("band operator: negative bandwidth");
    BandOperator a(w);
    std::set<int> seen;
    for (const auto& d : doc.at("diagonals")) {
      const int k = d.at("offset").get<int>();
      const std::string where = "band operator: diagonal " + std::to_string(k);
      if (k < -w || k > w) throw InputError(where + ": offset outside the bandwidth");
      if (!seen.insert(k).second) throw InputError(where + ": listed twice");
      Diagonal& diag = a.diagonal(k);
      if (d.contains("limit_minus")) diag.limit_minus = complex_from_json(d.at("limit_minus"), where);
      if (d.contains("limit_plus")) diag.limit_plus = complex_from_json(d.at("limit_plus"), where);
      if (d.contains("core"))
        for (const auto& t : d.at("core")) {
          if (t.size() != 3) throw InputError(where + ": core entries are [index, re, im]");
          diag.core[t[0].get<long>()] = {t[1].get<double>(), t[2].get<double>()};
        }
    }
    return a;
  });
}

OrderedJson complex_to_json(Complex z) {
  if (z.imag() == 0.0) return z.real();
  return OrderedJson::array({z.real(), z.imag()});
}

OrderedJson band_to_json(const BandOperator& a) {
  OrderedJson doc;
  doc["bandwidth"] = a.bandwidth();
  doc["diagonals"] = OrderedJson::array();
  for (int k = -a.bandwidth(); k <= a.bandwidth(); ++k) {
    const Diagonal& d = a.diagonal(k);
    OrderedJson entry;
    entry["offset"] = k;
    entry["limit_minus"] = complex_to_json(d.limit_minus);
    entry["limit_plus"] = complex_to_json(d.limit_plus);
    entry["core"] = OrderedJson::array();
    for (const auto& [n, v] : d.core) entry["core"].push_back({n, v.real(), v.imag()});
    doc["diagonals"].push_back(entry);
  }
  return doc;
}

BandOperator load_band(const std::filesystem::path& path) {
  try {
    return band_from_json(read_json(path));
  } catch (const InputError& e) {
    const std::string what = e.what();
    if (what.rfind(path.string(), 0) == 0) throw;
    throw InputError(path.string() + ": " + what);
  }
}

std::vector<UnitSubset> cover_from_json(const FiniteGroupoid& g, const Json& doc) {
  return guarded("cover", [&] {
    std::vector<UnitSubset> cover;
    for (const auto& member : doc.at("cover")) {
      const auto names = member.get<std::vector<std::string>>();
      for (const auto& n : names)
        if (!g.find_unit(n)) throw InputError("cover: unknown unit '" + n + "'");
      cover.push_back(UnitSubset::from_names(g, names));
    }
    return cover;
  });
}

std::vector<UnitSubset> load_cover(const FiniteGroupoid& g, const std::filesystem::path& path) {
  try {
    return cover_from_json(g, read_json(path));
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

GluingFamily family_from_json(const Json& doc, const std::filesystem::path& base) {
  return guarded("family", [&] {
    GluingFamily f;
    f.units = doc.at("units").get<std::vector<std::string>>();
    for (const auto& p : doc.at("pieces"))
      f.pieces.push_back(p.is_string() ? load_groupoid(base / p.get<std::string>()) : groupoid_from_json(p));
    if (doc.contains("isos"))
      for (const auto& iso : doc.at("isos")) {
        const auto i = iso.at("from").get<std::size_t>(), j = iso.at("to").get<std::size_t>();
        if (i >= f.pieces.size() || j >= f.pieces.size())
          throw InputError("family: iso (" + std::to_string(i) + ", " + std::to_string(j) + ") names a missing piece");
        IsoTable table;
        for (const auto& pr : iso.at("arrows")) {
          if (pr.size() != 2) throw InputError("family: iso arrows are [id in from, id in to]");
          table.emplace_back(pr[0].get<ArrowId>(), pr[1].get<ArrowId>());
        }
        if (!f.isos.emplace(std::make_pair(i, j), std::move(table)).second)
          throw InputError("family: iso (" + std::to_string(i) + ", " + std::to_string(j) + ") listed twice");
      }
    return f;
  });
}

OrderedJson family_to_json(const GluingFamily& f) {
  OrderedJson doc;
  doc["units"] = f.units;
  doc["pieces"] = OrderedJson::array();
  for (const auto& p : f.pieces) doc["pieces"].push_back(groupoid_to_json(p));
  doc["isos"] = OrderedJson::array();
  for (const auto& [key, table] : f.isos) {
    OrderedJson arrows = OrderedJson::array();
    for (const auto& [a, b] : table) arrows.push_back({a, b});
    doc["isos"].push_back({{"from", key.first}, {"to", key.second}, {"arrows", arrows}});
  }
  return doc;
}

GluingFamily load_family(const std::filesystem::path& path) {
  try {
    return family_from_json(read_json(path), path.parent_path());
  } catch (const InputError& e) {
    const std::string what = e.what();
    if (what.rfind(path.string(), 0) == 0) throw;
    throw InputError(path.string() + ": " + what);
  }
}

OrderedJson report_header(const std::string& command) {
  OrderedJson doc;
  doc["schema"] = kReportSchema;
  doc["command"] = command;
  return doc;
}

}  // namespace gfred::io
