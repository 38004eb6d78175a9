#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "gfred/convolution.hpp"
#include "gfred/spectrum.hpp"

namespace gfred {

namespace {

bool annihilates(const BlockDecomposition& d, std::size_t block, const std::vector<ArrowIndex>& arrows, double tol) {
  for (ArrowIndex a : arrows)
    if (d.block_generator(block, a).norm() > tol) return false;
  return true;
}

std::vector<ArrowIndex> arrows_with_domain_in(const FiniteGroupoid& g, const UnitSubset& u) {
  std::vector<ArrowIndex> out;
  for (ArrowIndex a = 0; a < g.num_arrows(); ++a)
    if (u.contains(g.dom(a))) out.push_back(a);
  return out;
}

SpectrumSubset all_blocks(const BlockDecomposition& d) {
  SpectrumSubset out(d.size());
  std::iota(out.begin(), out.end(), 0);
  return out;
}

SpectrumSubset complement(const BlockDecomposition& d, const SpectrumSubset& s) {
  SpectrumSubset out;
  for (std::size_t b = 0; b < d.size(); ++b)
    if (!std::binary_search(s.begin(), s.end(), b)) out.push_back(b);
  return out;
}

SpectrumSubset sorted_unique(std::vector<std::size_t> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

/// Unit subset of `g` named like the units of `reduced`.
UnitSubset units_of(const FiniteGroupoid& g, const FiniteGroupoid& reduced) {
  return UnitSubset::from_names(g, reduced.unit_names());
}

}  // namespace

PrimPartition prim_partition(const BlockDecomposition& d, const UnitSubset& u, double tol) {
  const FiniteGroupoid& g = d.groupoid();
  require_subset(g, u);
  const auto inside = reduction_arrows(g, u);
  const auto from_u = arrows_with_domain_in(g, u);
  const auto from_w = arrows_with_domain_in(g, saturation(g, u));
  PrimPartition p;
  for (std::size_t b = 0; b < d.size(); ++b) {
    if (annihilates(d, b, inside, tol)) p.lower.push_back(b);
    if (annihilates(d, b, from_u, tol)) p.via_domain.push_back(b);
    if (annihilates(d, b, from_w, tol)) p.via_saturation.push_back(b);
  }
  p.upper = complement(d, p.lower);
  p.consistent = p.lower == p.via_domain && p.lower == p.via_saturation;
  return p;
}

std::vector<ArrowIndex> corner_embedding(const FiniteGroupoid& parent, const FiniteGroupoid& reduced) {
  std::vector<ArrowIndex> out(reduced.num_arrows());
  for (ArrowIndex a = 0; a < reduced.num_arrows(); ++a) {
    const auto p = parent.find_arrow(reduced.id(a));
    if (!p || parent.unit_name(parent.dom(*p)) != reduced.unit_name(reduced.dom(a)) ||
        parent.unit_name(parent.ran(*p)) != reduced.unit_name(reduced.ran(a)))
      throw InputError("corner embedding: arrow " + std::to_string(reduced.id(a)) + " is not an arrow of the parent");
    out[a] = *p;
  }
  return out;
}

InductionMap induction_map(const BlockDecomposition& full, const BlockDecomposition& reduced, const UnitSubset& u) {
  const FiniteGroupoid& g = full.groupoid();
  const FiniteGroupoid& r = reduced.groupoid();
  if (!(units_of(g, r) == u)) throw InputError("induction: reduced groupoid does not live over U");
  const auto emb = corner_embedding(g, r);
  if (static_cast<int>(emb.size()) != static_cast<int>(reduction_arrows(g, u).size()))
    throw InputError("induction: reduced groupoid is not the full reduction to U");
  const PrimPartition part = prim_partition(full, u);
  InductionMap map;
  for (std::size_t b = 0; b < full.size(); ++b) {
    std::vector<Matrix> images(r.num_arrows());
    for (ArrowIndex a = 0; a < r.num_arrows(); ++a) images[a] = full.block_generator(b, emb[a]);
    map.multiplicity.push_back(block_multiplicities(reduced, images));
  }
  for (std::size_t j = 0; j < reduced.size(); ++j) {
    std::vector<std::size_t> hits;
    for (std::size_t b : part.upper)
      if (map.multiplicity[b][j] >= 1) hits.push_back(b);
    if (hits.size() != 1) {
      std::ostringstream os;
      os << "induction: block " << reduced.blocks[j].label << " of the reduction is contained in " << hits.size()
         << " blocks of Prim^U";
      throw InternalError(os.str());
    }
    map.target.push_back(hits.front());
  }
  map.bijective_onto_upper = sorted_unique(map.target) == part.upper && map.target.size() == part.upper.size();
  return map;
}

std::size_t induce(const BlockDecomposition& full, const BlockDecomposition& reduced, const UnitSubset& u,
                   std::size_t j) {
  if (j >= reduced.size()) throw InputError("induce: block index out of range");
  return induction_map(full, reduced, u).target[j];
}

std::vector<Matrix> induced_representation(const FiniteGroupoid& g, const FiniteGroupoid& reduced,
                                           const std::vector<Matrix>& reduced_images) {
  const auto emb = corner_embedding(g, reduced);
  if (static_cast<int>(reduced_images.size()) != reduced.num_arrows())
    throw InputError("induced representation: one image per reduced arrow expected");
  std::map<ArrowIndex, ArrowIndex> to_reduced;
  for (ArrowIndex a = 0; a < reduced.num_arrows(); ++a) to_reduced[emb[a]] = a;
  const UnitSubset u = units_of(g, reduced);
  const auto z = arrows_with_domain_in(g, u);
  std::map<ArrowIndex, Eigen::Index> slot;
  for (std::size_t i = 0; i < z.size(); ++i) slot[z[i]] = static_cast<Eigen::Index>(i);
  const Eigen::Index k = reduced_images.empty() ? 0 : reduced_images.front().rows();
  const Eigen::Index n = static_cast<Eigen::Index>(z.size()) * k;
  // ⟨δ_a ⊗ v, δ_b ⊗ w⟩ = ⟨ρ(δ_{b⁻¹a}) v, w⟩ when r(a) = r(b).
  Matrix q = Matrix::Zero(n, n);
  for (ArrowIndex a : z)
    for (ArrowIndex b : z) {
      if (g.ran(a) != g.ran(b)) continue;
      const ArrowIndex c = g.compose(g.inverse(b), a);
      q.block(slot[b] * k, slot[a] * k, k, k) = reduced_images[to_reduced.at(c)];
    }
  Eigen::SelfAdjointEigenSolver<Matrix> eig(q);
  const double top = eig.eigenvalues().size() ? eig.eigenvalues().cwiseAbs().maxCoeff() : 0.0;
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < n; ++i)
    if (eig.eigenvalues()[i] > 1e-9 * std::max(1.0, top)) keep.push_back(i);
  Matrix e(n, static_cast<Eigen::Index>(keep.size()));
  for (std::size_t i = 0; i < keep.size(); ++i)
    e.col(static_cast<Eigen::Index>(i)) = eig.eigenvectors().col(keep[i]) / std::sqrt(eig.eigenvalues()[keep[i]]);
  const Matrix eq = e.adjoint() * q;
  std::vector<Matrix> out(g.num_arrows());
  for (ArrowIndex h = 0; h < g.num_arrows(); ++h) {
    // Left translation δ_a ⊗ v ↦ δ_{ha} ⊗ v.
    Matrix le = Matrix::Zero(n, e.cols());
    for (ArrowIndex a : z)
      if (g.dom(h) == g.ran(a)) le.middleRows(slot[g.compose(h, a)] * k, k) += e.middleRows(slot[a] * k, k);
    out[h] = eq * le;
  }
  return out;
}

PhiReport check_phi_isometry(const FiniteGroupoid& g, const UnitSubset& u, UnitIndex x) {
  require_subset(g, u);
  require_unit(g, x);
  if (!u.contains(x)) throw InputError("phi isometry: x must lie in U");
  const auto z = arrows_with_domain_in(g, u);
  std::vector<ArrowIndex> hs;
  for (ArrowIndex h : g.source_fiber(x))
    if (u.contains(g.ran(h))) hs.push_back(h);
  const auto fiber = g.source_fiber(x);
  std::map<ArrowIndex, Eigen::Index> pos;
  for (std::size_t i = 0; i < fiber.size(); ++i) pos[fiber[i]] = static_cast<Eigen::Index>(i);
  const Eigen::Index nh = static_cast<Eigen::Index>(hs.size());
  const Eigen::Index n = static_cast<Eigen::Index>(z.size()) * nh;
  auto index = [&](std::size_t ia, std::size_t ih) { return static_cast<Eigen::Index>(ia) * nh + static_cast<Eigen::Index>(ih); };

  PhiReport report;
  report.tensor_dimension = static_cast<std::size_t>(n);
  report.fiber_size = fiber.size();

  Matrix phi = Matrix::Zero(static_cast<Eigen::Index>(fiber.size()), n);
  for (std::size_t ia = 0; ia < z.size(); ++ia)
    for (std::size_t ih = 0; ih < hs.size(); ++ih) {
      const ArrowFunction prod = convolve(ArrowFunction::delta(g, z[ia]), ArrowFunction::delta(g, hs[ih]));
      for (std::size_t i = 0; i < fiber.size(); ++i) phi(static_cast<Eigen::Index>(i), index(ia, ih)) = prod[fiber[i]];
    }

  // Gram of the balanced inner product ⟨δ_a⊗δ_h, δ_b⊗δ_k⟩ = ⟨π_x^U(δ_b* ∗ δ_a) δ_h, δ_k⟩.
  Matrix gram = Matrix::Zero(n, n);
  std::map<ArrowIndex, std::size_t> hpos;
  for (std::size_t i = 0; i < hs.size(); ++i) hpos[hs[i]] = i;
  for (std::size_t ia = 0; ia < z.size(); ++ia)
    for (std::size_t ib = 0; ib < z.size(); ++ib) {
      if (g.ran(z[ia]) != g.ran(z[ib])) continue;
      const ArrowIndex c = g.compose(g.inverse(z[ib]), z[ia]);
      for (std::size_t ih = 0; ih < hs.size(); ++ih) {
        if (g.ran(hs[ih]) != g.dom(c)) continue;
        gram(index(ib, hpos.at(g.compose(c, hs[ih]))), index(ia, ih)) = 1.0;
      }
    }
  report.isometry_residual = n ? (phi.adjoint() * phi - gram).cwiseAbs().maxCoeff() : 0.0;

  if (phi.size()) {
    Eigen::BDCSVD<Matrix> svd(phi);
    const auto& s = svd.singularValues();
    for (Eigen::Index i = 0; i < s.size(); ++i)
      if (s[i] > 1e-9 * std::max(1.0, s[0])) ++report.rank;
  }
  report.surjective = report.rank == fiber.size();

  double worst = 0.0;
  for (ArrowIndex h = 0; h < g.num_arrows(); ++h) {
    Matrix shifted = Matrix::Zero(phi.rows(), n);  // Φ ∘ (δ_h ∗ ·) ⊗ 1
    std::map<ArrowIndex, std::size_t> zpos;
    for (std::size_t i = 0; i < z.size(); ++i) zpos[z[i]] = i;
    for (std::size_t ia = 0; ia < z.size(); ++ia) {
      if (g.dom(h) != g.ran(z[ia])) continue;
      const std::size_t target = zpos.at(g.compose(h, z[ia]));
      for (std::size_t ih = 0; ih < hs.size(); ++ih) shifted.col(index(ia, ih)) = phi.col(index(target, ih));
    }
    const Matrix lhs = regular_rep(g, x, ArrowFunction::delta(g, h)).matrix * phi;
    if (lhs.size()) worst = std::max(worst, (lhs - shifted).cwiseAbs().maxCoeff());
  }
  report.intertwining_residual = worst;
  return report;
}

NormReport check_norm_estimates(const BlockDecomposition& full, const BlockDecomposition& reduced,
                                const UnitSubset& u, std::size_t trials, std::mt19937_64& rng) {
  const FiniteGroupoid& g = full.groupoid();
  const FiniteGroupoid& r = reduced.groupoid();
  const auto emb = corner_embedding(g, r);
  const InductionMap ind = induction_map(full, reduced, u);
  NormReport report;
  report.trials = trials;
  report.min_slack = INFINITY;
  for (std::size_t t = 0; t < trials; ++t) {
    const ArrowFunction f = random_function(r, rng);
    Vector lifted = Vector::Zero(g.num_arrows());
    for (ArrowIndex a = 0; a < r.num_arrows(); ++a) lifted[emb[a]] = f[a];
    std::vector<double> small(reduced.size());
    double norm_reduced = 0.0, norm_full = 0.0;
    for (std::size_t j = 0; j < reduced.size(); ++j) {
      small[j] = operator_norm(reduced.block_map(j, f.values()));
      norm_reduced = std::max(norm_reduced, small[j]);
    }
    std::vector<double> big(full.size());
    for (std::size_t b = 0; b < full.size(); ++b) {
      big[b] = operator_norm(full.block_map(b, lifted));
      norm_full = std::max(norm_full, big[b]);
    }
    report.max_corner_delta = std::max(report.max_corner_delta, std::abs(norm_reduced - norm_full));
    for (std::size_t j = 0; j < reduced.size(); ++j)
      report.min_slack = std::min(report.min_slack, big[ind.target[j]] - small[j]);
  }
  return report;
}

DecompositionReport verify_spectrum_decomposition(const BlockDecomposition& d, const std::vector<UnitSubset>& cover,
                                                  const SpectrumOptions& options) {
  const FiniteGroupoid& g = d.groupoid();
  if (cover.empty()) throw InputError("spectrum decomposition: empty cover");
  UnitSubset reached;
  for (const auto& u : cover) {
    require_subset(g, u);
    if (u.empty()) throw InputError("spectrum decomposition: empty cover member");
    reached = reached.united(saturation(g, u));
  }
  if (!(reached == UnitSubset::all(g))) {
    std::string missing;
    for (UnitIndex x = 0; x < g.num_units(); ++x)
      if (!reached.contains(x)) missing += (missing.empty() ? "" : ", ") + g.unit_name(x);
    throw InputError("spectrum decomposition: saturations of the cover miss units {" + missing + "}");
  }
  DecompositionReport report;
  report.total_blocks = d.size();
  std::vector<std::size_t> all;
  for (const auto& u : cover) {
    const BlockDecomposition rd = decompose(reduction(g, u), options);
    const InductionMap map = induction_map(d, rd, u);
    CoverEntry e;
    e.u = u;
    e.reduced_blocks = rd.size();
    e.image = sorted_unique(map.target);
    e.upper = prim_partition(d, u).upper;
    e.image_is_upper = e.image == e.upper && map.bijective_onto_upper;
    all.insert(all.end(), e.image.begin(), e.image.end());
    report.entries.push_back(std::move(e));
  }
  report.union_of_images = sorted_unique(all);
  report.equality = report.union_of_images == all_blocks(d);
  return report;
}

FamilyReport check_families(const BlockDecomposition& d, const std::vector<FamilyMember>& family,
                            const SpectrumOptions& options) {
  const FiniteGroupoid& g = d.groupoid();
  FamilyReport report;
  std::vector<std::size_t> covered;
  UnitSubset complete_reach;  // units reached by members carrying a faithful representation of their piece
  for (const auto& m : family) {
    MemberReport mr;
    if (m.kind == FamilyMember::Kind::Regular) {
      require_unit(g, m.unit);
      std::vector<Matrix> images(g.num_arrows());
      for (ArrowIndex a = 0; a < g.num_arrows(); ++a) images[a] = regular_rep(g, m.unit, ArrowFunction::delta(g, a)).matrix;
      mr.support = representation_support(d, images);
      complete_reach = complete_reach.united(saturation(g, UnitSubset({m.unit})));
    } else {
      require_subset(g, m.u);
      if (m.u.empty()) throw InputError("families: empty U");
      const FiniteGroupoid r = reduction(g, m.u);
      const BlockDecomposition rd = decompose(r, options);
      std::vector<std::size_t> selected;
      for (const auto& label : m.blocks) {
        const auto j = rd.find(label);
        if (!j) throw InputError("families: unknown block '" + label + "' of the reduction");
        selected.push_back(*j);
      }
      selected = sorted_unique(selected);
      if (selected.empty()) throw InputError("families: induced member selects no block");
      std::vector<Matrix> images(r.num_arrows());
      Eigen::Index dim = 0;
      for (std::size_t j : selected) dim += rd.blocks[j].dim;
      for (ArrowIndex a = 0; a < r.num_arrows(); ++a) {
        images[a] = Matrix::Zero(dim, dim);
        Eigen::Index at = 0;
        for (std::size_t j : selected) {
          const Eigen::Index n = rd.blocks[j].dim;
          images[a].block(at, at, n, n) = rd.block_generator(j, a);
          at += n;
        }
      }
      mr.support = representation_support(d, induced_representation(g, r, images));
      const InductionMap map = induction_map(d, rd, m.u);
      std::vector<std::size_t> targets;
      for (std::size_t j : selected) targets.push_back(map.target[j]);
      mr.induced_support = sorted_unique(targets);
      mr.inclusion_holds = std::includes(mr.support.begin(), mr.support.end(), mr.induced_support.begin(),
                                         mr.induced_support.end());
      mr.equality_holds = mr.support == mr.induced_support;
      if (selected.size() == rd.size()) complete_reach = complete_reach.united(saturation(g, m.u));
    }
    covered.insert(covered.end(), mr.support.begin(), mr.support.end());
    report.members.push_back(std::move(mr));
  }
  report.covered = sorted_unique(covered);
  report.exhaustive = report.covered == all_blocks(d);
  const bool premise = complete_reach == UnitSubset::all(g);
  report.corollary_holds = !premise || report.exhaustive;
  return report;
}

namespace {

class Classes {
 public:
  explicit Classes(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

 private:
  std::vector<std::size_t> parent_;
};

/// Whether `label` is constant on classes and induces a bijection onto `target`.
bool quotient_bijective(Classes& classes, const std::vector<ArrowIndex>& z, const std::vector<UnitIndex>& label,
                        const UnitSubset& target) {
  std::map<std::size_t, UnitIndex> value;
  for (std::size_t i = 0; i < z.size(); ++i) {
    auto [it, inserted] = value.emplace(classes.find(i), label[i]);
    if (!inserted && it->second != label[i]) return false;
  }
  std::vector<UnitIndex> image;
  for (const auto& [root, x] : value) image.push_back(x);
  std::sort(image.begin(), image.end());
  if (std::adjacent_find(image.begin(), image.end()) != image.end()) return false;
  return image == target.members();
}

}  // namespace

MoritaReport check_morita(const FiniteGroupoid& g, const UnitSubset& u) {
  require_subset(g, u);
  const UnitSubset w = saturation(g, u);
  const auto z = arrows_with_domain_in(g, u);
  std::map<ArrowIndex, std::size_t> zpos;
  for (std::size_t i = 0; i < z.size(); ++i) zpos[z[i]] = i;
  MoritaReport r;
  r.bimodule_size = z.size();
  r.left_free = r.right_free = r.actions_commute = true;
  Classes left(z.size()), right(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) {
    const ArrowIndex zi = z[i];
    // Left: arrows of 𝒢_W with d(k) = r(z).
    for (ArrowIndex k : g.source_fiber(g.ran(zi))) {
      if (!w.contains(g.dom(k))) continue;
      const ArrowIndex kz = g.compose(k, zi);
      if (kz == kNoArrow || !zpos.count(kz)) {
        r.left_free = false;
        continue;
      }
      if (kz == zi && !g.is_unit(k)) r.left_free = false;
      left.unite(i, zpos[kz]);
      // Right: arrows of 𝒢|_U with r(h) = d(z).
      for (ArrowIndex h : g.range_fiber(g.dom(zi))) {
        if (!u.contains(g.dom(h))) continue;
        const ArrowIndex zh = g.compose(zi, h);
        if (g.compose(kz, h) != g.compose(k, zh)) r.actions_commute = false;
      }
    }
    for (ArrowIndex h : g.range_fiber(g.dom(zi))) {
      if (!u.contains(g.dom(h))) continue;
      const ArrowIndex zh = g.compose(zi, h);
      if (zh == kNoArrow || !zpos.count(zh)) {
        r.right_free = false;
        continue;
      }
      if (zh == zi && !g.is_unit(h)) r.right_free = false;
      right.unite(i, zpos[zh]);
    }
  }
  std::vector<UnitIndex> doms, rans;
  for (ArrowIndex a : z) {
    doms.push_back(g.dom(a));
    rans.push_back(g.ran(a));
  }
  r.left_quotient_bijective = quotient_bijective(left, z, doms, u);
  r.right_quotient_bijective = quotient_bijective(right, z, rans, w);
  return r;
}

}  // namespace gfred
