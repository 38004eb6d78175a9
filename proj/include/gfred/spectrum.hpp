#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "gfred/groupoid.hpp"

namespace gfred {

/// Faithful finite-dimensional model of C*(𝒢): the direct sum of one regular
/// representation per orbit, taken at the orbit's smallest unit. Every π(δ_a)
/// is a partial permutation matrix, stored as its (row, column) pairs.
struct ConcreteAlgebra {
  FiniteGroupoid groupoid;
  std::vector<UnitIndex> base_points;      // one per orbit
  std::vector<int> offsets;                // start of each orbit's summand
  std::vector<int> orbit_of_arrow;
  int dimension = 0;                       // Σ |𝒢_x| over base points
  std::vector<std::vector<std::pair<int, int>>> generators;  // per arrow

  Matrix generator(ArrowIndex a) const;
  /// Σ_a f[a] π(δ_a); f is indexed by arrow.
  Matrix represent(const Vector& f) const;
};

/// Throws InputError unless validate(g) is clean, InternalError if the
/// generators fail to be linearly independent.
ConcreteAlgebra concrete_algebra(const FiniteGroupoid& g);

struct SpectrumOptions {
  std::uint64_t seed = 1;
  double cluster_tol = 1e-9;
};

/// Gaps between eigenvalues of the sampled commutant element that fall in
/// (cluster_tol, kAmbiguousGap) cannot be classified and abort the run.
inline constexpr double kAmbiguousGap = 1e-6;

/// One simple summand M_n(ℂ) of C*(𝒢), i.e. one primitive ideal.
struct Block {
  std::string label;
  int dim = 0;
  int multiplicity = 0;   // copies inside the concrete representation
  int orbit = 0;
  Matrix isometry;        // dimension × dim, spans one irreducible copy
  Vector character;       // tr of the block map on each δ_a
};

struct BlockDecomposition {
  ConcreteAlgebra algebra;
  std::vector<Block> blocks;

  const FiniteGroupoid& groupoid() const { return algebra.groupoid; }
  std::size_t size() const { return blocks.size(); }
  /// Block map applied to Σ f[a] δ_a.
  Matrix block_map(std::size_t block, const Vector& f) const;
  Matrix block_generator(std::size_t block, ArrowIndex a) const;
  std::optional<std::size_t> find(const std::string& label) const;
  std::vector<std::string> labels(const std::vector<std::size_t>& blocks) const;
};

/// Basis of the commutant of the generators of one orbit summand, solved
/// exactly: the commutation equations only identify two matrix positions or
/// force one to vanish, so the solution classes come from union-find. Each
/// basis element is the indicator of one class (dimension of the summand).
std::vector<Matrix> commutant_basis(const ConcreteAlgebra& a, int orbit);

/// Dense null space of X ↦ (X P − P X)_P for arbitrary generators, via the
/// eigen-decomposition of the Gram operator. Small dimensions only.
std::vector<Matrix> commutant_basis_dense(const std::vector<Matrix>& generators, double tol = 1e-9);

/// Splits every orbit summand by the eigenspaces of a random self-adjoint
/// element of its commutant, groups equivalent pieces by character, and
/// checks Σ n² = |arrows|, Σ n·multiplicity = dimension and irreducibility.
/// Blocks are ordered by orbit, dimension, then isotropy character at the
/// base point, and labelled "O<orbit>.<k>".
BlockDecomposition wedderburn(const ConcreteAlgebra& a, const SpectrumOptions& options = {});
BlockDecomposition decompose(const FiniteGroupoid& g, const SpectrumOptions& options = {});

/// Sorted block indices of one decomposition.
using SpectrumSubset = std::vector<std::size_t>;

/// Multiplicity of every block in a representation given by its matrices on
/// the δ_a, obtained by character least squares. Throws InternalError when
/// the multiplicities are not integral.
std::vector<int> block_multiplicities(const BlockDecomposition& d, const std::vector<Matrix>& images);
SpectrumSubset representation_support(const BlockDecomposition& d, const std::vector<Matrix>& images);

struct PrimPartition {
  SpectrumSubset lower;   // blocks vanishing on C*(𝒢|_U): Prim_U
  SpectrumSubset upper;   // complement: Prim^U
  SpectrumSubset via_domain;      // same test on d⁻¹(U)
  SpectrumSubset via_saturation;  // same test on 𝒢_W, W = saturation of U
  bool consistent = false;        // all three agree
};

PrimPartition prim_partition(const BlockDecomposition& d, const UnitSubset& u, double tol = 1e-8);

/// Arrow index in the parent for every arrow of a reduction (matched by id).
std::vector<ArrowIndex> corner_embedding(const FiniteGroupoid& parent, const FiniteGroupoid& reduced);

struct InductionMap {
  /// multiplicity[B][j]: copies of block j of C*(𝒢|_U) in block B of C*(𝒢)
  /// restricted to the corner.
  std::vector<std::vector<int>> multiplicity;
  std::vector<std::size_t> target;   // j ↦ Ind_U(j)
  bool bijective_onto_upper = false;
};

/// Ind_U(j) is the unique block of Prim^U whose restriction to the corner
/// contains j. Throws InternalError when no block or several blocks qualify.
InductionMap induction_map(const BlockDecomposition& full, const BlockDecomposition& reduced, const UnitSubset& u);
std::size_t induce(const BlockDecomposition& full, const BlockDecomposition& reduced, const UnitSubset& u,
                   std::size_t j);

/// Ind_U of the representation ρ of C*(𝒢|_U) given by `reduced_images` (one
/// matrix per arrow of the reduction), realised on ℓ²(𝒢_U) ⊗ H_ρ modulo the
/// null space of the balanced inner product. Returns one matrix per arrow of
/// the full groupoid.
std::vector<Matrix> induced_representation(const FiniteGroupoid& g, const FiniteGroupoid& reduced,
                                           const std::vector<Matrix>& reduced_images);

struct PhiReport {
  std::size_t tensor_dimension = 0;  // |𝒢_U| · |(𝒢|_U)_x|
  std::size_t fiber_size = 0;        // |𝒢_x|
  std::size_t rank = 0;
  double isometry_residual = 0.0;    // ‖ΦᴴΦ − Gram‖
  double intertwining_residual = 0.0;
  bool surjective = false;
};

/// Φ(δ_a ⊗ δ_h) = δ_a ∗ δ_h from ℰ_U ⊗ ℓ²((𝒢|_U)_x) onto ℓ²(𝒢_x).
PhiReport check_phi_isometry(const FiniteGroupoid& g, const UnitSubset& u, UnitIndex x);

struct NormReport {
  std::size_t trials = 0;
  double max_corner_delta = 0.0;  // max |‖f‖_{C*(𝒢|_U)} − ‖f‖_{C*(𝒢)}|
  double min_slack = 0.0;         // min over blocks j of ‖Ind(j)(f)‖ − ‖j(f)‖
};

NormReport check_norm_estimates(const BlockDecomposition& full, const BlockDecomposition& reduced,
                                const UnitSubset& u, std::size_t trials, std::mt19937_64& rng);

struct CoverEntry {
  UnitSubset u;
  std::size_t reduced_blocks = 0;
  SpectrumSubset image;   // Ind_U(Prim C*(𝒢|_U))
  SpectrumSubset upper;   // Prim^U
  bool image_is_upper = false;
};

struct DecompositionReport {
  std::vector<CoverEntry> entries;
  SpectrumSubset union_of_images;
  std::size_t total_blocks = 0;
  bool equality = false;
};

/// Throws InputError when the saturations of the cover miss a unit.
DecompositionReport verify_spectrum_decomposition(const BlockDecomposition& d, const std::vector<UnitSubset>& cover,
                                                  const SpectrumOptions& options = {});

struct FamilyMember {
  enum class Kind { Regular, Induced } kind = Kind::Regular;
  UnitIndex unit = 0;                   // Regular: π_x of C*(𝒢)
  UnitSubset u;                         // Induced: Ind_U of ⊕ selected blocks
  std::vector<std::string> blocks;      // labels in the decomposition of 𝒢|_U
};

struct MemberReport {
  SpectrumSubset support;          // supp of the member as a representation of C*(𝒢)
  SpectrumSubset induced_support;  // Ind_U(supp ρ), Induced members only
  bool inclusion_holds = true;     // Ind_U(supp ρ) ⊆ supp(Ind_U ρ)
  bool equality_holds = true;
};

struct FamilyReport {
  std::vector<MemberReport> members;
  SpectrumSubset covered;
  bool exhaustive = false;   // equals faithful on finite spectra
  bool corollary_holds = true;
};

FamilyReport check_families(const BlockDecomposition& d, const std::vector<FamilyMember>& family,
                            const SpectrumOptions& options = {});

struct MoritaReport {
  std::size_t bimodule_size = 0;   // |𝒢_U|
  bool left_free = false;          // 𝒢_W acting by r
  bool right_free = false;         // 𝒢|_U acting by d
  bool actions_commute = false;
  bool left_quotient_bijective = false;   // 𝒢_W \ 𝒢_U → U via d
  bool right_quotient_bijective = false;  // 𝒢_U / 𝒢|_U → W via r
  bool ok() const {
    return left_free && right_free && actions_commute && left_quotient_bijective && right_quotient_bijective;
  }
};

MoritaReport check_morita(const FiniteGroupoid& g, const UnitSubset& u);

}  // namespace gfred
