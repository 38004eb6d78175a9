#include "gfred/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

namespace gfred {

Matrix ConcreteAlgebra::generator(ArrowIndex a) const {
  Matrix m = Matrix::Zero(dimension, dimension);
  for (const auto& [r, c] : generators[a]) m(r, c) = 1.0;
  return m;
}

Matrix ConcreteAlgebra::represent(const Vector& f) const {
  Matrix m = Matrix::Zero(dimension, dimension);
  for (ArrowIndex a = 0; a < static_cast<ArrowIndex>(generators.size()); ++a) {
    if (f[a] == 0.0) continue;
    for (const auto& [r, c] : generators[a]) m(r, c) += f[a];
  }
  return m;
}

ConcreteAlgebra concrete_algebra(const FiniteGroupoid& g) {
  const ValidationReport report = validate(g);
  if (!report.ok())
    throw InputError("concrete algebra: groupoid fails validation (" + report.violations.front().axiom + ")");
  ConcreteAlgebra a;
  a.groupoid = g;
  const auto orbs = orbits(g);
  const auto orbit_of_unit = orbit_index(g);
  std::vector<int> position(g.num_arrows(), -1);
  for (const auto& orbit : orbs) {
    const UnitIndex x = orbit.members().front();
    a.base_points.push_back(x);
    a.offsets.push_back(a.dimension);
    int k = 0;
    for (ArrowIndex h : g.source_fiber(x)) position[h] = a.dimension + k++;
    a.dimension += k;
  }
  a.orbit_of_arrow.resize(g.num_arrows());
  a.generators.resize(g.num_arrows());
  std::set<std::pair<int, int>> seen;
  for (ArrowIndex arrow = 0; arrow < g.num_arrows(); ++arrow) {
    const int o = orbit_of_unit[g.dom(arrow)];
    a.orbit_of_arrow[arrow] = o;
    for (ArrowIndex h : g.source_fiber(a.base_points[o])) {
      if (g.ran(h) != g.dom(arrow)) continue;
      a.generators[arrow].emplace_back(position[g.compose(arrow, h)], position[h]);
    }
    if (a.generators[arrow].empty())
      throw InternalError("concrete algebra: δ of arrow " + std::to_string(g.id(arrow)) + " acts as zero");
    for (const auto& e : a.generators[arrow])
      if (!seen.insert(e).second) throw InternalError("concrete algebra: generator supports overlap");
  }
  return a;
}

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n), zero_(n, false) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a > b) std::swap(a, b);
    parent_[b] = a;
    zero_[a] = zero_[a] || zero_[b];
  }
  void set_zero(std::size_t a) { zero_[find(a)] = true; }
  bool zero(std::size_t a) { return zero_[find(a)]; }

 private:
  std::vector<std::size_t> parent_;
  std::vector<bool> zero_;
};

/// Local partial permutation of arrow a on one orbit summand: image[c] = row or −1.
std::vector<int> local_action(const ConcreteAlgebra& a, ArrowIndex arrow, int orbit, int size) {
  std::vector<int> image(size, -1);
  const int off = a.offsets[orbit];
  for (const auto& [r, c] : a.generators[arrow]) image[c - off] = r - off;
  return image;
}

int summand_size(const ConcreteAlgebra& a, int orbit) {
  const int next = orbit + 1 < static_cast<int>(a.offsets.size()) ? a.offsets[orbit + 1] : a.dimension;
  return next - a.offsets[orbit];
}

std::vector<ArrowIndex> orbit_arrows(const ConcreteAlgebra& a, int orbit) {
  std::vector<ArrowIndex> out;
  for (ArrowIndex arrow = 0; arrow < static_cast<ArrowIndex>(a.orbit_of_arrow.size()); ++arrow)
    if (a.orbit_of_arrow[arrow] == orbit) out.push_back(arrow);
  return out;
}

/// Classes of matrix positions (p·n + q) of the commutant; zero classes dropped.
std::vector<std::vector<std::size_t>> commutant_classes(const ConcreteAlgebra& a, int orbit) {
  const int n = summand_size(a, orbit);
  const std::size_t nn = static_cast<std::size_t>(n) * n;
  UnionFind uf(nn);
  const FiniteGroupoid& g = a.groupoid;
  for (ArrowIndex arrow : orbit_arrows(a, orbit)) {
    // X·P_a = P_a·X entrywise at (p, c):
    //   [c ∈ dom P_a] X(p, a·c) = [p ∈ ran P_a] X(a⁻¹·p, c).
    const auto fwd = local_action(a, arrow, orbit, n);
    const auto back = local_action(a, g.inverse(arrow), orbit, n);
    for (int p = 0; p < n; ++p)
      for (int c = 0; c < n; ++c) {
        const bool left = fwd[c] >= 0, right = back[p] >= 0;
        if (left && right)
          uf.unite(static_cast<std::size_t>(p) * n + fwd[c], static_cast<std::size_t>(back[p]) * n + c);
        else if (left)
          uf.set_zero(static_cast<std::size_t>(p) * n + fwd[c]);
        else if (right)
          uf.set_zero(static_cast<std::size_t>(back[p]) * n + c);
      }
  }
  std::map<std::size_t, std::vector<std::size_t>> classes;
  for (std::size_t k = 0; k < nn; ++k)
    if (!uf.zero(k)) classes[uf.find(k)].push_back(k);
  std::vector<std::vector<std::size_t>> out;
  for (auto& [root, members] : classes) out.push_back(std::move(members));
  return out;
}

struct Piece {
  Matrix basis;        // summand-local, orthonormal columns
  Vector character;    // on orbit arrows, in orbit_arrows order
};

Vector piece_character(const ConcreteAlgebra& a, const std::vector<ArrowIndex>& arrows, int orbit,
                       const Matrix& w) {
  const int off = a.offsets[orbit];
  Vector chi(static_cast<Eigen::Index>(arrows.size()));
  for (std::size_t i = 0; i < arrows.size(); ++i) {
    Complex t = 0.0;
    for (const auto& [r, c] : a.generators[arrows[i]]) t += w.row(r - off).conjugate().cwiseProduct(w.row(c - off)).sum();
    chi[static_cast<Eigen::Index>(i)] = t;
  }
  return chi;
}

Matrix local_image(const ConcreteAlgebra& a, ArrowIndex arrow, int orbit, const Matrix& w) {
  const int off = a.offsets[orbit];
  Matrix pw = Matrix::Zero(w.rows(), w.cols());
  for (const auto& [r, c] : a.generators[arrow]) pw.row(r - off) += w.row(c - off);
  return pw;
}

int numerical_rank(const Matrix& m, double tol) {
  if (m.size() == 0) return 0;
  Eigen::BDCSVD<Matrix> svd(m);
  const auto& s = svd.singularValues();
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s[i] > tol * std::max(1.0, s[0])) ++r;
  return r;
}

struct SortKey {
  int orbit;
  int dim;
  std::vector<std::pair<double, double>> isotropy;
};

double rounded(double v) { return std::round(v * 1e6) / 1e6 + 0.0; }

}  // namespace

std::vector<Matrix> commutant_basis(const ConcreteAlgebra& a, int orbit) {
  const int n = summand_size(a, orbit);
  std::vector<Matrix> out;
  for (const auto& members : commutant_classes(a, orbit)) {
    Matrix e = Matrix::Zero(n, n);
    for (std::size_t k : members) e(static_cast<Eigen::Index>(k / n), static_cast<Eigen::Index>(k % n)) = 1.0;
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<Matrix> commutant_basis_dense(const std::vector<Matrix>& generators, double tol) {
  if (generators.empty()) return {};
  const Eigen::Index n = generators.front().rows();
  const Eigen::Index nn = n * n;
  const Matrix id = Matrix::Identity(n, n);
  Matrix gram = Matrix::Zero(nn, nn);
  for (const auto& p : generators) {
    // vec(XP − PX) = (Pᵀ ⊗ I − I ⊗ P) vec(X), column-major vec.
    Matrix k = Matrix::Zero(nn, nn);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) {
        k.block(i * n, j * n, n, n) += p(j, i) * id;
        if (i == j) k.block(i * n, j * n, n, n) -= p;
      }
    gram += k.adjoint() * k;
  }
  Eigen::SelfAdjointEigenSolver<Matrix> eig(gram);
  const double scale = std::max(1.0, eig.eigenvalues().cwiseAbs().maxCoeff());
  std::vector<Matrix> out;
  for (Eigen::Index i = 0; i < nn; ++i) {
    if (eig.eigenvalues()[i] > tol * scale) break;
    out.push_back(Eigen::Map<const Matrix>(eig.eigenvectors().col(i).data(), n, n));
  }
  return out;
}

BlockDecomposition wedderburn(const ConcreteAlgebra& a, const SpectrumOptions& options) {
  if (!(options.cluster_tol > 0.0) || options.cluster_tol >= kAmbiguousGap)
    throw InputError("wedderburn: cluster tolerance must lie in (0, 1e-6)");
  const FiniteGroupoid& g = a.groupoid;
  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> normal;
  BlockDecomposition out;
  out.algebra = a;
  std::vector<SortKey> keys;
  for (int o = 0; o < static_cast<int>(a.base_points.size()); ++o) {
    const int n = summand_size(a, o);
    const auto arrows = orbit_arrows(a, o);
    const auto classes = commutant_classes(a, o);
    Matrix x = Matrix::Zero(n, n);
    for (const auto& members : classes) {
      const Complex c(normal(rng), normal(rng));
      for (std::size_t k : members) x(static_cast<Eigen::Index>(k / n), static_cast<Eigen::Index>(k % n)) = c;
    }
    const Matrix h = x + x.adjoint();
    Eigen::SelfAdjointEigenSolver<Matrix> eig(h);
    const auto& lambda = eig.eigenvalues();
    std::vector<std::pair<int, int>> clusters;  // [begin, end)
    int begin = 0;
    for (int i = 1; i <= n; ++i) {
      if (i < n) {
        const double gap = lambda[i] - lambda[i - 1];
        if (gap <= options.cluster_tol) continue;
        if (gap < kAmbiguousGap) {
          std::ostringstream os;
          os << "wedderburn: eigenvalue gap " << gap << " in orbit " << o << " is ambiguous (between "
             << options.cluster_tol << " and " << kAmbiguousGap << "); rerun with a different seed";
          throw InternalError(os.str());
        }
      }
      clusters.emplace_back(begin, i);
      begin = i;
    }
    std::vector<Piece> pieces;
    for (const auto& [b, e] : clusters) {
      Piece p;
      p.basis = eig.eigenvectors().middleCols(b, e - b);
      p.character = piece_character(a, arrows, o, p.basis);
      for (ArrowIndex arrow : arrows) {
        const Matrix pw = local_image(a, arrow, o, p.basis);
        const Matrix img = p.basis.adjoint() * pw;
        if ((pw - p.basis * img).norm() > 1e-8)
          throw InternalError("wedderburn: eigenspace is not invariant; rerun with a different seed");
      }
      pieces.push_back(std::move(p));
    }
    // Group equivalent pieces by character.
    std::vector<std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
      bool placed = false;
      for (auto& grp : groups) {
        const Piece& rep = pieces[grp.front()];
        if (rep.basis.cols() == pieces[i].basis.cols() &&
            (rep.character - pieces[i].character).cwiseAbs().maxCoeff() <= 1e-6 * std::max<double>(1, rep.basis.cols())) {
          grp.push_back(i);
          placed = true;
          break;
        }
      }
      if (!placed) groups.push_back({i});
    }
    int sum_sq = 0, sum_dim = 0;
    const auto iso = isotropy(g, a.base_points[o]);
    for (const auto& grp : groups) {
      const Piece& rep = pieces[grp.front()];
      const int dim = static_cast<int>(rep.basis.cols());
      sum_sq += dim * dim;
      sum_dim += dim * static_cast<int>(grp.size());
      Matrix stacked(static_cast<Eigen::Index>(dim) * dim, static_cast<Eigen::Index>(arrows.size()));
      for (std::size_t i = 0; i < arrows.size(); ++i) {
        const Matrix img = rep.basis.adjoint() * local_image(a, arrows[i], o, rep.basis);
        stacked.col(static_cast<Eigen::Index>(i)) = Eigen::Map<const Vector>(img.data(), img.size());
      }
      if (numerical_rank(stacked, 1e-8) != dim * dim)
        throw InternalError("wedderburn: a block of orbit " + std::to_string(o) + " is reducible; rerun with a different seed");
      Block block;
      block.dim = dim;
      block.multiplicity = static_cast<int>(grp.size());
      block.orbit = o;
      block.isometry = Matrix::Zero(a.dimension, dim);
      block.isometry.middleRows(a.offsets[o], n) = rep.basis;
      block.character = Vector::Zero(g.num_arrows());
      for (std::size_t i = 0; i < arrows.size(); ++i) block.character[arrows[i]] = rep.character[static_cast<Eigen::Index>(i)];
      SortKey key{o, dim, {}};
      for (ArrowIndex s : iso) key.isotropy.emplace_back(rounded(block.character[s].real()), rounded(block.character[s].imag()));
      keys.push_back(std::move(key));
      out.blocks.push_back(std::move(block));
    }
    if (sum_sq != static_cast<int>(arrows.size()) || sum_dim != n) {
      std::ostringstream os;
      os << "wedderburn: orbit " << o << " census failed (Σ n² = " << sum_sq << " vs " << arrows.size()
         << " arrows, Σ n·mult = " << sum_dim << " vs " << n << ")";
      throw InternalError(os.str());
    }
  }
  std::vector<std::size_t> order(out.blocks.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    if (keys[i].orbit != keys[j].orbit) return keys[i].orbit < keys[j].orbit;
    if (keys[i].dim != keys[j].dim) return keys[i].dim < keys[j].dim;
    return keys[i].isotropy > keys[j].isotropy;
  });
  std::vector<Block> sorted;
  std::map<int, int> counter;
  for (std::size_t i : order) {
    Block b = std::move(out.blocks[i]);
    b.label = "O" + std::to_string(b.orbit) + "." + std::to_string(counter[b.orbit]++);
    sorted.push_back(std::move(b));
  }
  out.blocks = std::move(sorted);
  return out;
}

BlockDecomposition decompose(const FiniteGroupoid& g, const SpectrumOptions& options) {
  return wedderburn(concrete_algebra(g), options);
}

Matrix BlockDecomposition::block_map(std::size_t block, const Vector& f) const {
  const Matrix& v = blocks.at(block).isometry;
  Matrix pv = Matrix::Zero(v.rows(), v.cols());
  for (ArrowIndex a = 0; a < static_cast<ArrowIndex>(algebra.generators.size()); ++a) {
    if (f[a] == 0.0) continue;
    for (const auto& [r, c] : algebra.generators[a]) pv.row(r) += f[a] * v.row(c);
  }
  return v.adjoint() * pv;
}

Matrix BlockDecomposition::block_generator(std::size_t block, ArrowIndex a) const {
  const Matrix& v = blocks.at(block).isometry;
  Matrix pv = Matrix::Zero(v.rows(), v.cols());
  for (const auto& [r, c] : algebra.generators[a]) pv.row(r) += v.row(c);
  return v.adjoint() * pv;
}

std::optional<std::size_t> BlockDecomposition::find(const std::string& label) const {
  for (std::size_t i = 0; i < blocks.size(); ++i)
    if (blocks[i].label == label) return i;
  return std::nullopt;
}

std::vector<std::string> BlockDecomposition::labels(const std::vector<std::size_t>& which) const {
  std::vector<std::string> out;
  for (std::size_t i : which) out.push_back(blocks.at(i).label);
  return out;
}

std::vector<int> block_multiplicities(const BlockDecomposition& d, const std::vector<Matrix>& images) {
  const int m = d.groupoid().num_arrows();
  if (static_cast<int>(images.size()) != m) throw InputError("block multiplicities: one image per arrow expected");
  Matrix chars(m, static_cast<Eigen::Index>(d.size()));
  for (std::size_t b = 0; b < d.size(); ++b) chars.col(static_cast<Eigen::Index>(b)) = d.blocks[b].character;
  Vector chi(m);
  for (int a = 0; a < m; ++a) chi[a] = images[a].size() ? images[a].trace() : Complex(0.0);
  const Vector sol = chars.colPivHouseholderQr().solve(chi);
  std::vector<int> out(d.size());
  Vector rounded_sol(static_cast<Eigen::Index>(d.size()));
  for (std::size_t b = 0; b < d.size(); ++b) {
    const Complex s = sol[static_cast<Eigen::Index>(b)];
    const double r = std::round(s.real());
    if (std::abs(s - r) > 1e-6 || r < 0)
      throw InternalError("block multiplicities: non-integral multiplicity " + std::to_string(s.real()) + " for block " +
                          d.blocks[b].label);
    out[b] = static_cast<int>(r);
    rounded_sol[static_cast<Eigen::Index>(b)] = r;
  }
  if ((chars * rounded_sol - chi).norm() > 1e-6 * (1.0 + chi.norm()))
    throw InternalError("block multiplicities: character does not decompose over the blocks");
  return out;
}

SpectrumSubset representation_support(const BlockDecomposition& d, const std::vector<Matrix>& images) {
  const auto mult = block_multiplicities(d, images);
  SpectrumSubset out;
  for (std::size_t b = 0; b < mult.size(); ++b)
    if (mult[b] > 0) out.push_back(b);
  return out;
}

}  // namespace gfred
