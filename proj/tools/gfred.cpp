// gfred: verification runs over finite groupoids and band operators.
//
// Exit status: 0 all checks pass, 1 a verification failed, 2 bad input or an
// unmet precondition (including symbol checks that need a finer grid).

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include "gfred/acceptance.hpp"
#include "gfred/convolution.hpp"
#include "gfred/finite_section.hpp"
#include "gfred/io.hpp"
#include "gfred/isomorphism.hpp"
#include "gfred/model.hpp"
#include "gfred/spectrum.hpp"

namespace fs = std::filesystem;
using namespace gfred;
using io::OrderedJson;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitInput = 2;

struct RunConfig {
  std::uint64_t seed = 1;
  double tol_norm = 1e-9;
  double tol_eig = 1e-9;
  double tol_symbol = kDefaultSymbolTol;
  double eps = 1e-6;
  int grid = 0;  // 0: default for band operators, automatic for models
  std::vector<long> sizes = {64, 128, 256};
  std::string out;
  std::string data_out;
  std::vector<std::string> inputs;
  std::vector<std::string> subset;
  std::size_t trials = 10;
  std::vector<int> only;
  // model
  std::string geometry = "b";
  double r = 2.0;
  std::vector<std::string> coeffs;
  long n = 64;
  double h = 0.1;
};

void check_config(const RunConfig& c) {
  if (!(c.tol_norm > 0) || !(c.tol_eig > 0) || !(c.tol_symbol > 0) || !(c.eps > 0))
    throw InputError("tolerances must be positive");
  if (c.grid < 0) throw InputError("--grid must be positive");
}

/// Resolves an input path, falling back to $GFRED_FIXTURES for relative paths.
fs::path resolve(const std::string& name) {
  fs::path p(name);
  if (fs::exists(p) || p.is_absolute()) return p;
  if (const char* dir = std::getenv("GFRED_FIXTURES")) {
    fs::path q = fs::path(dir) / p;
    if (fs::exists(q)) return q;
  }
  return p;
}

/// Report to --out (plus a one-line note on stdout) or to stdout.
void emit(const RunConfig& c, const OrderedJson& report) {
  const std::string text = report.dump(2) + "\n";
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(c.out);
  if (!f) throw InputError(c.out + ": cannot write report");
  f << text;
  std::cout << "report written to " << c.out << "\n";
}

int verdict_exit(const RunConfig& c, bool ok) {
  if (ok) return kExitOk;
  std::cerr << "verification failed; see " << (c.out.empty() ? "the report above" : c.out) << "\n";
  return kExitFailed;
}

void write_data(const RunConfig& c, const std::string& text) {
  if (c.data_out.empty()) return;
  std::ofstream f(c.data_out);
  if (!f) throw InputError(c.data_out + ": cannot write data file");
  f << text;
}

OrderedJson subset_json(const FiniteGroupoid& g, const UnitSubset& u) { return u.names(g); }

OrderedJson labels_json(const BlockDecomposition& d, const SpectrumSubset& s) { return d.labels(s); }

UnitSubset subset_from_names(const FiniteGroupoid& g, const std::vector<std::string>& names) {
  if (names.empty()) throw InputError("--subset needs at least one unit");
  return UnitSubset::from_names(g, names);
}

SpectrumOptions spectrum_options(const RunConfig& c) { return {c.seed, c.tol_eig}; }

// ---------------------------------------------------------------------------

int cmd_validate(const RunConfig& c) {
  const FiniteGroupoid g = io::load_groupoid(resolve(c.inputs.at(0)));
  const ValidationReport rep = validate(g);
  OrderedJson doc = io::report_header("validate");
  doc["units"] = g.num_units();
  doc["arrows"] = g.num_arrows();
  doc["valid"] = rep.ok();
  doc["counts"] = rep.counts;
  doc["violations"] = OrderedJson::array();
  for (const auto& v : rep.violations)
    doc["violations"].push_back({{"axiom", v.axiom}, {"arrows", v.arrows}, {"detail", v.detail}});
  emit(c, doc);
  return verdict_exit(c, rep.ok());
}

int cmd_spectrum(const RunConfig& c) {
  const FiniteGroupoid g = io::load_groupoid(resolve(c.inputs.at(0)));
  const BlockDecomposition d = decompose(g, spectrum_options(c));
  OrderedJson doc = io::report_header("spectrum");
  doc["seed"] = c.seed;
  doc["units"] = g.num_units();
  doc["arrows"] = g.num_arrows();
  std::size_t census = 0;
  doc["blocks"] = OrderedJson::array();
  for (const auto& b : d.blocks) {
    census += static_cast<std::size_t>(b.dim) * b.dim;
    doc["blocks"].push_back({{"label", b.label}, {"dim", b.dim}, {"orbit", b.orbit}, {"multiplicity", b.multiplicity}});
  }
  doc["census"] = {{"sum_of_squares", census}, {"arrows", g.num_arrows()}};
  // Prim table: blocks in the support of each regular representation.
  doc["regular_supports"] = OrderedJson::object();
  for (UnitIndex x = 0; x < g.num_units(); ++x) {
    std::vector<Matrix> images(g.num_arrows());
    for (ArrowIndex a = 0; a < g.num_arrows(); ++a) images[a] = regular_rep(g, x, ArrowFunction::delta(g, a)).matrix;
    doc["regular_supports"][g.unit_name(x)] = labels_json(d, representation_support(d, images));
  }
  bool ok = census == static_cast<std::size_t>(g.num_arrows());
  if (!c.subset.empty()) {
    const UnitSubset u = subset_from_names(g, c.subset);
    const PrimPartition p = prim_partition(d, u, c.tol_norm);
    doc["partition"] = {{"subset", subset_json(g, u)},
                        {"lower", labels_json(d, p.lower)},
                        {"upper", labels_json(d, p.upper)},
                        {"consistent", p.consistent}};
    ok = ok && p.consistent;
  }
  emit(c, doc);
  return verdict_exit(c, ok);
}

int cmd_verify_decomposition(const RunConfig& c) {
  if (c.inputs.size() < 2) throw InputError("verify-decomposition needs a groupoid file and a cover file");
  const FiniteGroupoid g = io::load_groupoid(resolve(c.inputs[0]));
  const auto cover = io::load_cover(g, resolve(c.inputs[1]));
  const BlockDecomposition d = decompose(g, spectrum_options(c));
  const DecompositionReport rep = verify_spectrum_decomposition(d, cover, spectrum_options(c));
  OrderedJson doc = io::report_header("verify-decomposition");
  doc["seed"] = c.seed;
  doc["total_blocks"] = rep.total_blocks;
  doc["entries"] = OrderedJson::array();
  bool ok = rep.equality;
  for (const auto& e : rep.entries) {
    doc["entries"].push_back({{"subset", subset_json(g, e.u)},
                              {"reduced_blocks", e.reduced_blocks},
                              {"image", labels_json(d, e.image)},
                              {"complement_of_vanishing", labels_json(d, e.upper)},
                              {"image_is_complement", e.image_is_upper}});
    ok = ok && e.image_is_upper;
  }
  doc["union_of_images"] = labels_json(d, rep.union_of_images);
  doc["equality"] = rep.equality;
  emit(c, doc);
  return verdict_exit(c, ok);
}

int cmd_induction_checks(const RunConfig& c) {
  const FiniteGroupoid g = io::load_groupoid(resolve(c.inputs.at(0)));
  const UnitSubset u = subset_from_names(g, c.subset);
  const BlockDecomposition full = decompose(g, spectrum_options(c));
  const BlockDecomposition reduced = decompose(reduction(g, u), spectrum_options(c));
  OrderedJson doc = io::report_header("induction-checks");
  doc["seed"] = c.seed;
  doc["subset"] = subset_json(g, u);

  const PrimPartition p = prim_partition(full, u, c.tol_norm);
  doc["partition"] = {{"lower", labels_json(full, p.lower)},
                      {"upper", labels_json(full, p.upper)},
                      {"consistent", p.consistent}};

  const InductionMap map = induction_map(full, reduced, u);
  OrderedJson targets = OrderedJson::object();
  for (std::size_t j = 0; j < reduced.size(); ++j) targets[reduced.blocks[j].label] = full.blocks[map.target[j]].label;
  doc["induction"] = {{"targets", targets}, {"bijective_onto_complement", map.bijective_onto_upper}};

  double iso = 0.0, inter = 0.0;
  bool surjective = true;
  doc["phi"] = OrderedJson::array();
  for (UnitIndex x : u) {
    const PhiReport r = check_phi_isometry(g, u, x);
    iso = std::max(iso, r.isometry_residual);
    inter = std::max(inter, r.intertwining_residual);
    surjective = surjective && r.surjective;
    doc["phi"].push_back({{"unit", g.unit_name(x)},
                          {"tensor_dimension", r.tensor_dimension},
                          {"fiber_size", r.fiber_size},
                          {"rank", r.rank},
                          {"isometry_residual", r.isometry_residual},
                          {"intertwining_residual", r.intertwining_residual}});
  }

  std::mt19937_64 rng(c.seed);
  const NormReport norms = check_norm_estimates(full, reduced, u, c.trials, rng);
  doc["norms"] = {{"trials", norms.trials}, {"max_corner_delta", norms.max_corner_delta}, {"min_slack", norms.min_slack}};

  const MoritaReport morita = check_morita(g, u);
  doc["morita"] = {{"bimodule_size", morita.bimodule_size},
                   {"left_free", morita.left_free},
                   {"right_free", morita.right_free},
                   {"actions_commute", morita.actions_commute},
                   {"left_quotient_bijective", morita.left_quotient_bijective},
                   {"right_quotient_bijective", morita.right_quotient_bijective}};

  // Regular representations at one unit per orbit, and Ind_U of all blocks of the reduction.
  std::vector<FamilyMember> family;
  for (const auto& orbit : orbits(g)) family.push_back({FamilyMember::Kind::Regular, orbit.members().front(), {}, {}});
  FamilyMember induced{FamilyMember::Kind::Induced, 0, u, {}};
  for (const auto& b : reduced.blocks) induced.blocks.push_back(b.label);
  family.push_back(induced);
  const FamilyReport fam = check_families(full, family, spectrum_options(c));
  const MemberReport& last = fam.members.back();
  doc["families"] = {{"covered", labels_json(full, fam.covered)},
                     {"exhaustive", fam.exhaustive},
                     {"corollary_holds", fam.corollary_holds},
                     {"induced_support", labels_json(full, last.support)},
                     {"induction_of_support", labels_json(full, last.induced_support)},
                     {"inclusion_holds", last.inclusion_holds},
                     {"equality_holds", last.equality_holds}};

  const bool ok = p.consistent && map.bijective_onto_upper && iso < c.tol_norm && inter < c.tol_norm && surjective &&
                  norms.max_corner_delta < c.tol_norm && norms.min_slack >= -c.tol_norm && morita.ok() &&
                  fam.exhaustive && fam.corollary_holds && last.inclusion_holds;
  doc["passed"] = ok;
  emit(c, doc);
  return verdict_exit(c, ok);
}

int cmd_glue(const RunConfig& c) {
  const GluingFamily f = io::load_family(resolve(c.inputs.at(0)));
  const GluingReport rep = check_weak_gluing(f);
  OrderedJson doc = io::report_header("glue");
  doc["clean"] = rep.clean();
  doc["cocycle_failures"] = OrderedJson::array();
  for (const auto& e : rep.cocycle)
    doc["cocycle_failures"].push_back({{"pieces", {e.i, e.j, e.k}}, {"witness", e.witness}, {"detail", e.detail}});
  doc["lift_failures"] = OrderedJson::array();
  for (const auto& e : rep.lifting)
    doc["lift_failures"].push_back({{"pieces", {e.i, e.j}}, {"g", e.g}, {"h", e.h}});
  bool ok = rep.clean();
  if (ok) {
    const GluedGroupoid out = glue(f);
    bool replay = validate(out.groupoid).ok();
    doc["replay"] = OrderedJson::array();
    for (std::size_t i = 0; i < f.pieces.size(); ++i) {
      const FiniteGroupoid red =
          reduction(out.groupoid, UnitSubset::from_names(out.groupoid, f.pieces[i].unit_names()));
      const auto phi = find_isomorphism(red, f.pieces[i]);
      const bool iso = phi && check_morphism(red, f.pieces[i], *phi).empty();
      replay = replay && iso;
      doc["replay"].push_back({{"piece", i}, {"reduction_isomorphic", iso}});
    }
    doc["glued"] = io::groupoid_to_json(out.groupoid);
    ok = replay;
  }
  emit(c, doc);
  return verdict_exit(c, ok);
}

OrderedJson symbol_json(const SymbolCheck& s) {
  return {{"outcome", to_string(s.outcome)},
          {"min_modulus", s.min_modulus},
          {"argmin", s.argmin},
          {"margin", s.margin},
          {"grid", s.grid}};
}

int inconclusive_exit() {
  std::cerr << "symbol check inconclusive even on the finest grid; refine grid (--grid) or loosen --tol-symbol\n";
  return kExitInput;
}

std::string symbol_trace(const BandOperator& a, int points) {
  const LaurentSymbol lm = limit_operator(a, End::Minus), lp = limit_operator(a, End::Plus);
  std::ostringstream s;
  s << "# theta abs_sigma_minus abs_sigma_plus\n";
  for (int j = 0; j < points; ++j) {
    const double t = 2.0 * std::numbers::pi * j / points;
    s << t << ' ' << std::abs(lm(t)) << ' ' << std::abs(lp(t)) << '\n';
  }
  return s.str();
}

int cmd_fredholm(const RunConfig& c) {
  const BandOperator a = io::load_band(resolve(c.inputs.at(0)));
  const int grid = c.grid ? c.grid : kDefaultSymbolGrid;
  const LocalityReport loc = locality_check(a, grid, c.tol_symbol);
  const FredholmVerdict& v = loc.two_sided;
  const FiniteSectionReport fs = finite_section_analysis(a, c.sizes, c.eps);
  OrderedJson doc = io::report_header("fredholm");
  doc["bandwidth"] = a.bandwidth();
  doc["verdict"] = {{"fredholm", v.fredholm},
                    {"conclusive", v.conclusive},
                    {"method", v.method},
                    {"minus", symbol_json(v.minus)},
                    {"plus", symbol_json(v.plus)}};
  doc["locality"] = {{"left_fredholm", loc.left_fredholm},
                     {"right_fredholm", loc.right_fredholm},
                     {"two_sided", v.fredholm},
                     {"conjunction_holds", loc.conjunction_holds}};
  OrderedJson samples = OrderedJson::array();
  for (const auto& s : fs.samples)
    samples.push_back({{"n", s.n}, {"count_below_eps", s.count_below_eps}, {"statistic", s.statistic}});
  doc["finite_section"] = {{"eps", fs.eps},
                           {"samples", samples},
                           {"decay_ratio", fs.decay_ratio},
                           {"decay_threshold", fs.decay_threshold},
                           {"outcome", to_string(fs.outcome)},
                           {"reason", fs.reason}};
  std::ostringstream data;
  data << "# n k singular_value\n";
  for (const auto& s : fs.samples)
    for (std::size_t k = 0; k < s.profile.size(); ++k) data << s.n << ' ' << k << ' ' << s.profile[k] << '\n';
  data << symbol_trace(a, 512);
  write_data(c, data.str());
  emit(c, doc);
  if (!loc.conclusive) return inconclusive_exit();
  const bool contradicted = fs.outcome != SectionOutcome::Inconclusive &&
                            (fs.outcome == SectionOutcome::ConsistentFredholm) != v.fredholm;
  return verdict_exit(c, loc.conjunction_holds && !contradicted);
}

std::vector<double> parse_polynomial(const std::string& text) {
  std::vector<double> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      throw InputError("--coeffs: cannot parse '" + item + "' as a number");
    }
  }
  return out;
}

int cmd_model(const RunConfig& c) {
  ModelOperatorSpec spec;
  spec.geometry = parse_geometry(c.geometry);
  spec.r = c.r;
  spec.n = c.n;
  spec.h = c.h;
  for (const auto& p : c.coeffs) spec.coefficients.push_back(parse_polynomial(p));
  const BandOperator a = discretize_model(spec);
  const LaurentSymbol boundary = limit_operator(a, End::Plus);
  const int grid = c.grid ? c.grid : auto_grid(boundary);
  const FredholmVerdict v = fredholm_verdict(a, grid, c.tol_symbol);
  double closed = 0.0;
  for (int j = 0; j < 256; ++j) {
    const double t = 2.0 * std::numbers::pi * j / 256;
    closed = std::max(closed, std::abs(boundary(t) - model_boundary_symbol(spec, t)));
  }
  OrderedJson doc = io::report_header("model");
  doc["geometry"] = to_string(spec.geometry);
  if (spec.geometry == Geometry::Cusp) doc["r"] = spec.r;
  doc["n"] = spec.n;
  doc["h"] = spec.h;
  doc["coefficients"] = spec.coefficients;
  doc["bandwidth"] = a.bandwidth();
  OrderedJson coeffs = OrderedJson::array();
  for (int k = -boundary.bandwidth(); k <= boundary.bandwidth(); ++k)
    coeffs.push_back(io::complex_to_json(boundary.coefficient(k)));
  doc["boundary_symbol"] = {{"coefficients", coeffs}, {"closed_form_deviation", closed}};
  doc["boundary_fredholm"] = v.plus.invertible();
  doc["verdict"] = {{"fredholm", v.fredholm},
                    {"conclusive", v.conclusive},
                    {"boundary", symbol_json(v.plus)},
                    {"interior_end", symbol_json(v.minus)}};
  write_data(c, symbol_trace(a, 512));
  emit(c, doc);
  if (!v.conclusive) return inconclusive_exit();
  return verdict_exit(c, closed < 1e-10);
}

int cmd_suite(const RunConfig& c) {
  const auto results = acceptance::run_all(c.seed, c.only);
  OrderedJson doc = io::report_header("suite");
  doc["seed"] = c.seed;
  doc["criteria"] = OrderedJson::array();
  bool ok = true;
  for (const auto& r : results) {
    std::cerr << acceptance::format_line(r) << "\n";
    doc["criteria"].push_back(acceptance::to_json(r));
    ok = ok && r.passed;
  }
  doc["passed"] = ok;
  emit(c, doc);
  return verdict_exit(c, ok);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verification runs for finite groupoid C*-algebras and band-operator Fredholm models"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig c;
  app.add_option("--seed", c.seed, "Seed for all randomness")->capture_default_str();
  app.add_option("--tol-norm", c.tol_norm, "Norm and residual tolerance")->capture_default_str();
  app.add_option("--tol-eig", c.tol_eig, "Eigenvalue cluster tolerance")->capture_default_str();
  app.add_option("--tol-symbol", c.tol_symbol, "Symbol invertibility tolerance")->capture_default_str();
  app.add_option("--eps", c.eps, "Finite-section singular value threshold")->capture_default_str();
  app.add_option("--grid", c.grid, "Symbol grid (default 4096; automatic for models)");
  app.add_option("--sizes", c.sizes, "Finite-section sizes N (truncation to [-N, N])")->delimiter(',');
  app.add_option("--out", c.out, "Report file (default stdout)");
  app.add_option("--data-out", c.data_out, "Columnar data file for plotting");

  auto* validate_cmd = app.add_subcommand("validate", "Check the groupoid axioms");
  validate_cmd->add_option("groupoid", c.inputs, "Groupoid file")->required()->expected(1);

  auto* spectrum_cmd = app.add_subcommand("spectrum", "Block decomposition and Prim table");
  spectrum_cmd->add_option("groupoid", c.inputs, "Groupoid file")->required()->expected(1);
  spectrum_cmd->add_option("--subset", c.subset, "Units of U for the Prim_U / Prim^U split")->delimiter(',');

  auto* decomp_cmd = app.add_subcommand("verify-decomposition", "Prim C*(G) as the union of induced spectra");
  decomp_cmd->add_option("files", c.inputs, "Groupoid file and cover file")->required()->expected(2);

  auto* induction_cmd = app.add_subcommand("induction-checks", "Induction, Phi, norm, Morita and family checks");
  induction_cmd->add_option("groupoid", c.inputs, "Groupoid file")->required()->expected(1);
  induction_cmd->add_option("--subset", c.subset, "Units of U")->delimiter(',')->required();
  induction_cmd->add_option("--trials", c.trials, "Random functions for the norm estimates")->capture_default_str();

  auto* glue_cmd = app.add_subcommand("glue", "Weak gluing check and fibered coproduct");
  glue_cmd->add_option("family", c.inputs, "Gluing family file")->required()->expected(1);

  auto* fredholm_cmd = app.add_subcommand("fredholm", "Symbolic verdict, locality and finite sections");
  fredholm_cmd->add_option("operator", c.inputs, "Band operator file")->required()->expected(1);

  auto* model_cmd = app.add_subcommand("model", "Discretize a model geometry and decide Fredholmness");
  model_cmd->add_option("--geometry", c.geometry, "b, cusp or scattering")->capture_default_str();
  model_cmd->add_option("--r", c.r, "Cusp exponent")->capture_default_str();
  model_cmd->add_option("--coeffs", c.coeffs,
                        "Coefficient polynomial of D^m in x, comma-separated ascending powers; repeat for m = 0, 1, ...")
      ->required();
  model_cmd->add_option("--points", c.n, "Interior grid points")->capture_default_str();
  model_cmd->add_option("--step", c.h, "Step in the flattened variable")->capture_default_str();

  auto* suite_cmd = app.add_subcommand("suite", "Seeded randomized acceptance run");
  suite_cmd->add_option("--only", c.only, "Criterion ids to run")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    check_config(c);
    if (*validate_cmd) return cmd_validate(c);
    if (*spectrum_cmd) return cmd_spectrum(c);
    if (*decomp_cmd) return cmd_verify_decomposition(c);
    if (*induction_cmd) return cmd_induction_checks(c);
    if (*glue_cmd) return cmd_glue(c);
    if (*fredholm_cmd) return cmd_fredholm(c);
    if (*model_cmd) return cmd_model(c);
    if (*suite_cmd) return cmd_suite(c);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const InternalError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitFailed;
  }
  return kExitInput;
}
