#include "gfred/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "gfred/catalog.hpp"
#include "gfred/convolution.hpp"
#include "gfred/finite_section.hpp"
#include "gfred/isomorphism.hpp"
#include "gfred/model.hpp"
#include "gfred/random.hpp"
#include "gfred/spectrum.hpp"

namespace gfred::acceptance {

namespace {

using Clock = std::chrono::steady_clock;

/// Independent stream per criterion.
Rng stream(std::uint64_t seed, int id) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(id)};
  return Rng(seq);
}

std::string fmt(const char* format, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

template <class M>
double max_abs(const Eigen::MatrixBase<M>& m) {
  return m.size() ? m.cwiseAbs().maxCoeff() : 0.0;
}

/// Times `body` and fills the bookkeeping fields.
CriterionResult timed(int id, const std::string& name, const std::function<void(CriterionResult&)>& body) {
  CriterionResult r;
  r.id = id;
  r.name = name;
  const auto start = Clock::now();
  try {
    body(r);
  } catch (const std::exception& e) {
    r.passed = false;
    r.summary = std::string("aborted: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return r;
}

UnitIndex random_member(const UnitSubset& u, Rng& rng) {
  const auto& m = u.members();
  return m[std::uniform_int_distribution<std::size_t>(0, m.size() - 1)(rng)];
}

}  // namespace

CriterionResult algebra_axioms(std::uint64_t seed) {
  auto result = timed(1, "algebra-axioms", [&](CriterionResult& r) {
    Rng rng = stream(seed, 1);
    constexpr int kInstances = 200;
    double assoc = 0.0, anti = 0.0, mult = 0.0, adj = 0.0, cstar = 0.0;
    int invalid = 0, haar = 0;
    for (int i = 0; i < kInstances; ++i) {
      const FiniteGroupoid g = random_groupoid(rng);
      if (!validate(g).ok()) ++invalid;
      if (!check_right_invariance(g).empty()) ++haar;
      const ArrowFunction f = random_function(g, rng), h = random_function(g, rng), k = random_function(g, rng);
      assoc = std::max(assoc, max_abs((convolve(convolve(f, h), k) - convolve(f, convolve(h, k))).values()));
      anti = std::max(anti, max_abs((involution(convolve(f, h)) - convolve(involution(h), involution(f))).values()));
      const ArrowFunction fh = convolve(f, h), fstar = involution(f);
      for (UnitIndex x = 0; x < g.num_units(); ++x) {
        const Matrix pf = regular_rep(g, x, f).matrix;
        mult = std::max(mult, max_abs(regular_rep(g, x, fh).matrix - pf * regular_rep(g, x, h).matrix));
        adj = std::max(adj, max_abs(regular_rep(g, x, fstar).matrix - pf.adjoint()));
      }
      const double nf = reduced_norm(f);
      cstar = std::max(cstar, std::abs(reduced_norm(convolve(fstar, f)) - nf * nf));
    }
    const double worst = std::max({assoc, anti, mult, adj, cstar});
    r.passed = invalid == 0 && haar == 0 && worst < kAlgebraResidual;
    r.summary = fmt("%d groupoids, max residual %.2e (limit %.0e)", kInstances, worst, kAlgebraResidual);
    r.details = {{"instances", kInstances},       {"invalid", invalid},       {"haar_failures", haar},
                 {"associativity", assoc},        {"anti_multiplicativity", anti},
                 {"multiplicativity", mult},      {"adjoint", adj},           {"c_star_identity", cstar}};
  });
  result.passed = result.passed && result.seconds < kFastBudgetSeconds;
  return result;
}

CriterionResult spectrum_decomposition(std::uint64_t seed) {
  auto result = timed(2, "spectrum-decomposition", [&](CriterionResult& r) {
    Rng rng = stream(seed, 2);
    constexpr int kInstances = 50;
    int equal = 0, upper = 0;
    std::size_t blocks = 0;
    for (int i = 0; i < kInstances; ++i) {
      const FiniteGroupoid g = random_groupoid(rng);
      const auto cover = random_admissible_cover(g, rng);
      const SpectrumOptions opts{rng(), 1e-9};
      const BlockDecomposition d = decompose(g, opts);
      const DecompositionReport rep = verify_spectrum_decomposition(d, cover, opts);
      blocks += rep.total_blocks;
      if (rep.equality) ++equal;
      bool all_upper = true;
      for (const auto& e : rep.entries) all_upper = all_upper && e.image_is_upper;
      if (all_upper) ++upper;
    }
    struct Fixture {
      std::string name;
      FiniteGroupoid g;
      std::vector<std::vector<std::string>> cover;
      std::size_t blocks;
    };
    const std::vector<Fixture> fixtures = {
        {"split", catalog::split_example(), {{"1", "2"}, {"3"}}, 3},
        {"pair3", pair_groupoid({"1", "2", "3"}), {{"1"}, {"2"}}, 1},
        {"whole", catalog::split_example(), {{"1", "2", "3"}}, 3},
    };
    io::OrderedJson fx = io::OrderedJson::array();
    int fixtures_ok = 0;
    for (const auto& f : fixtures) {
      std::vector<UnitSubset> cover;
      for (const auto& names : f.cover) cover.push_back(UnitSubset::from_names(f.g, names));
      const BlockDecomposition d = decompose(f.g, {seed, 1e-9});
      const DecompositionReport rep = verify_spectrum_decomposition(d, cover, {seed, 1e-9});
      const bool ok = rep.equality && rep.total_blocks == f.blocks;
      fixtures_ok += ok;
      fx.push_back({{"name", f.name}, {"blocks", rep.total_blocks}, {"equality", rep.equality}});
    }
    r.passed = equal == kInstances && upper == kInstances && fixtures_ok == 3;
    r.summary = fmt("%d/%d random covers equal, %d/%d with image = complement, fixtures %d/3", equal, kInstances,
                    upper, kInstances, fixtures_ok);
    r.details = {{"instances", kInstances}, {"equal", equal}, {"image_is_upper", upper},
                 {"total_blocks", blocks},  {"fixtures", fx}};
  });
  result.passed = result.passed && result.seconds < kFastBudgetSeconds;
  return result;
}

CriterionResult phi_isometry(std::uint64_t seed) {
  return timed(3, "phi-isometry", [&](CriterionResult& r) {
    Rng rng = stream(seed, 3);
    constexpr int kInstances = 50;
    double iso = 0.0, inter = 0.0;
    int surjective = 0;
    for (int i = 0; i < kInstances; ++i) {
      const FiniteGroupoid g = random_groupoid(rng);
      const UnitSubset u = random_subset(g, rng);
      const PhiReport rep = check_phi_isometry(g, u, random_member(u, rng));
      iso = std::max(iso, rep.isometry_residual);
      inter = std::max(inter, rep.intertwining_residual);
      surjective += rep.surjective;
    }
    r.passed = iso < kPhiResidual && inter < kPhiResidual && surjective == kInstances;
    r.summary = fmt("%d instances, isometry %.2e, intertwining %.2e, surjective %d/%d", kInstances, iso, inter,
                    surjective, kInstances);
    r.details = {{"instances", kInstances}, {"isometry_residual", iso}, {"intertwining_residual", inter},
                 {"surjective", surjective}};
  });
}

CriterionResult norm_estimates(std::uint64_t seed) {
  return timed(4, "norm-estimates", [&](CriterionResult& r) {
    Rng rng = stream(seed, 4);
    constexpr int kInstances = 20;
    constexpr std::size_t kTrials = 5;
    double delta = 0.0, slack = INFINITY;
    for (int i = 0; i < kInstances; ++i) {
      const FiniteGroupoid g = random_groupoid(rng);
      const UnitSubset u = random_subset(g, rng);
      const BlockDecomposition full = decompose(g, {rng(), 1e-9});
      const BlockDecomposition reduced = decompose(reduction(g, u), {rng(), 1e-9});
      const NormReport rep = check_norm_estimates(full, reduced, u, kTrials, rng);
      delta = std::max(delta, rep.max_corner_delta);
      slack = std::min(slack, rep.min_slack);
    }
    r.passed = delta < kCornerDelta && slack >= -kNormSlack;
    r.summary = fmt("%d functions, corner |delta| %.2e, min slack %.2e", kInstances * static_cast<int>(kTrials),
                    delta, slack);
    r.details = {{"instances", kInstances}, {"functions", kInstances * kTrials}, {"max_corner_delta", delta},
                 {"min_slack", slack}};
  });
}

CriterionResult morita_data(std::uint64_t seed) {
  return timed(5, "morita-data", [&](CriterionResult& r) {
    Rng rng = stream(seed, 5);
    constexpr int kInstances = 50;
    int ok = 0;
    std::size_t bimodule = 0;
    for (int i = 0; i < kInstances; ++i) {
      const FiniteGroupoid g = random_groupoid(rng);
      const MoritaReport rep = check_morita(g, random_subset(g, rng));
      ok += rep.ok();
      bimodule += rep.bimodule_size;
    }
    r.passed = ok == kInstances;
    r.summary = fmt("%d/%d instances free with bijective quotients", ok, kInstances);
    r.details = {{"instances", kInstances}, {"verified", ok}, {"bimodule_arrows", bimodule}};
  });
}

CriterionResult limit_operator_verdicts(std::uint64_t seed) {
  return timed(6, "limit-operator-verdicts", [&](CriterionResult& r) {
    Rng rng = stream(seed, 6);
    constexpr int kInstances = 100;
    int agree = 0, local = 0, fredholm = 0;
    for (int i = 0; i < kInstances; ++i) {
      const RandomTridiagonal t = random_selfadjoint_tridiagonal(rng);
      const bool oracle = tridiagonal_oracle(t);
      const LocalityReport loc = locality_check(t.op);
      agree += loc.two_sided.conclusive && loc.two_sided.fredholm == oracle;
      local += loc.conclusive && loc.conjunction_holds;
      fredholm += oracle;
    }
    r.passed = agree == kInstances && local == kInstances;
    r.summary = fmt("oracle agreement %d/%d, locality %d/%d (%d Fredholm)", agree, kInstances, local, kInstances,
                    fredholm);
    r.details = {{"instances", kInstances}, {"oracle_agreement", agree}, {"locality", local},
                 {"oracle_fredholm", fredholm}};
  });
}

CriterionResult finite_sections(std::uint64_t seed) {
  auto result = timed(7, "finite-sections", [&](CriterionResult& r) {
    Rng rng = stream(seed, 7);
    constexpr int kPerClass = 20;
    const std::vector<long> sizes = {256, 512, 1024};
    std::vector<RandomTridiagonal> instances;
    for (int i = 0; i < kPerClass; ++i) instances.push_back(random_selfadjoint_tridiagonal(rng, 8, 1));
    for (int i = 0; i < kPerClass; ++i) instances.push_back(random_selfadjoint_tridiagonal(rng, 8, 0));
    int consistent = 0, opposite = 0, inconclusive = 0;
    io::OrderedJson rows = io::OrderedJson::array();
    for (const auto& t : instances) {
      const FredholmVerdict v = fredholm_verdict(t.op);
      const FiniteSectionReport rep = finite_section_analysis(t.op, sizes, 1e-6);
      const bool says_fredholm = rep.outcome == SectionOutcome::ConsistentFredholm;
      if (rep.outcome == SectionOutcome::Inconclusive) ++inconclusive;
      else if (says_fredholm == v.fredholm) ++consistent;
      else ++opposite;
      rows.push_back({{"symbolic", v.fredholm}, {"outcome", to_string(rep.outcome)}, {"ratio", rep.decay_ratio}});
    }
    const int total = 2 * kPerClass;
    r.passed = consistent >= kSectionConsistentShare * total && opposite == 0;
    r.summary = fmt("%d/%d consistent, %d opposite, %d inconclusive", consistent, total, opposite, inconclusive);
    r.details = {{"instances", total}, {"consistent", consistent}, {"opposite", opposite},
                 {"inconclusive", inconclusive}, {"runs", rows}};
  });
  result.passed = result.passed && result.seconds < kSectionBudgetSeconds;
  return result;
}

CriterionResult model_geometries(std::uint64_t) {
  return timed(8, "model-geometries", [&](CriterionResult& r) {
    ModelOperatorSpec shifted{Geometry::B, 2.0, {{1.0}, {0.0}, {1.0}}, 64, 0.1};
    ModelOperatorSpec bare = shifted;
    bare.coefficients = {{0.0}, {0.0}, {1.0}};
    ModelOperatorSpec cusp = shifted;
    cusp.geometry = Geometry::Cusp;

    const BandOperator a = discretize_model(shifted);
    const LaurentSymbol boundary = limit_operator(a, End::Plus);
    const FredholmVerdict vs = fredholm_verdict(a, auto_grid(boundary));
    const BandOperator b = discretize_model(bare);
    const FredholmVerdict vb = fredholm_verdict(b, auto_grid(limit_operator(b, End::Plus)));
    const LaurentSymbol cusp_boundary = limit_operator(discretize_model(cusp), End::Plus);

    double match = 0.0, closed = 0.0;
    for (int k = -boundary.bandwidth(); k <= boundary.bandwidth(); ++k)
      match = std::max(match, std::abs(boundary.coefficient(k) - cusp_boundary.coefficient(k)));
    for (int j = 0; j < 256; ++j) {
      const double theta = 2.0 * M_PI * j / 256.0;
      closed = std::max(closed, std::abs(cusp_boundary(theta) - model_boundary_symbol(shifted, theta)));
      match = std::max(match, std::abs(cusp_boundary(theta) - boundary(theta)));
    }
    const bool shifted_ok = vs.fredholm && vs.plus.margin >= kModelMargin;
    const bool bare_ok = vb.conclusive && !vb.fredholm && vb.plus.outcome == Invertibility::NotInvertible;
    r.passed = shifted_ok && bare_ok && match < kModelSymbolMatch && closed < kModelSymbolMatch;
    r.summary = fmt("shifted margin %.4f (grid %d), unshifted %s, cusp/b symbol gap %.1e", vs.plus.margin, vs.plus.grid,
                    vb.fredholm ? "Fredholm" : "not Fredholm", match);
    r.details = {{"shifted_fredholm", vs.fredholm},   {"shifted_min_modulus", vs.plus.min_modulus},
                 {"shifted_margin", vs.plus.margin},  {"grid", vs.plus.grid},
                 {"unshifted_fredholm", vb.fredholm}, {"unshifted_min_modulus", vb.plus.min_modulus},
                 {"cusp_vs_b", match},                {"cusp_vs_closed_form", closed}};
  });
}

CriterionResult gluing_fixtures(std::uint64_t) {
  return timed(9, "gluing-fixtures", [&](CriterionResult& r) {
    struct Case {
      std::string name;
      GluingFamily family;
      bool clean;
    };
    const std::vector<Case> cases = {
        {"duplicate-pair", catalog::duplicate_pair_family(), true},
        {"cocycle-fault", catalog::cocycle_fault_family(), false},
        {"proper-overlap", catalog::proper_overlap_family(), false},
        {"b-model", catalog::b_model_family(), true},
        {"single-piece", catalog::single_piece_family(catalog::split_example()), true},
    };
    int expected = 0, replayed = 0, glued = 0;
    io::OrderedJson rows = io::OrderedJson::array();
    for (const auto& c : cases) {
      const GluingReport rep = check_weak_gluing(c.family);
      bool ok = rep.clean() == c.clean;
      if (c.name == "cocycle-fault") ok = ok && !rep.cocycle.empty();
      if (c.name == "proper-overlap") ok = ok && rep.cocycle.empty() && !rep.lifting.empty();
      io::OrderedJson row{{"name", c.name},
                          {"cocycle_failures", rep.cocycle.size()},
                          {"lift_failures", rep.lifting.size()}};
      if (rep.clean()) {
        ++glued;
        const GluedGroupoid out = glue(c.family);
        bool all = validate(out.groupoid).ok();
        for (const auto& piece : c.family.pieces) {
          const FiniteGroupoid red =
              reduction(out.groupoid, UnitSubset::from_names(out.groupoid, piece.unit_names()));
          const auto phi = find_isomorphism(red, piece);
          all = all && phi && check_morphism(red, piece, *phi).empty();
        }
        replayed += all;
        row["arrows"] = out.groupoid.num_arrows();
        row["reductions_isomorphic"] = all;
      } else {
        bool refused = false;
        try {
          glue(c.family);
        } catch (const InputError&) {
          refused = true;
        }
        ok = ok && refused;
        row["refused"] = refused;
      }
      expected += ok;
      rows.push_back(row);
    }
    const int n = static_cast<int>(cases.size());
    r.passed = expected == n && replayed == glued;
    r.summary = fmt("%d/%d reports as expected, %d/%d glued groupoids replay", expected, n, replayed, glued);
    r.details = {{"cases", rows}};
  });
}

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all = {
      {1, algebra_axioms},   {2, spectrum_decomposition}, {3, phi_isometry},
      {4, norm_estimates},   {5, morita_data},            {6, limit_operator_verdicts},
      {7, finite_sections},  {8, model_geometries},       {9, gluing_fixtures},
  };
  return all;
}

std::vector<CriterionResult> run_all(std::uint64_t seed, const std::vector<int>& only) {
  std::vector<CriterionResult> out;
  for (const auto& c : criteria())
    if (only.empty() || std::find(only.begin(), only.end(), c.id) != only.end()) out.push_back(c.run(seed));
  return out;
}

std::string format_line(const CriterionResult& r) {
  std::ostringstream s;
  s << (r.passed ? "[PASS] " : "[FAIL] ") << r.id << ' ' << r.name << ": " << r.summary
    << fmt(" (%.2fs)", r.seconds);
  return s.str();
}

io::OrderedJson to_json(const CriterionResult& r) {
  return {{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"summary", r.summary}, {"details", r.details}};
}

}  // namespace gfred::acceptance
