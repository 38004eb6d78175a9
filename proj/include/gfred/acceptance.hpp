#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "gfred/io.hpp"

// The seeded end-to-end checks shared by the acceptance test and `gfred suite`.
namespace gfred::acceptance {

inline constexpr std::uint64_t kDefaultSeed = 20240611;

// Pinned thresholds.
inline constexpr double kAlgebraResidual = 1e-9;
inline constexpr double kPhiResidual = 1e-8;
inline constexpr double kNormSlack = 1e-9;
inline constexpr double kCornerDelta = 1e-9;
inline constexpr double kModelMargin = 0.9;
inline constexpr double kModelSymbolMatch = 1e-10;
inline constexpr double kSectionConsistentShare = 0.95;
inline constexpr double kFastBudgetSeconds = 60.0;
inline constexpr double kSectionBudgetSeconds = 300.0;

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string summary;
  double seconds = 0.0;
  io::OrderedJson details;
};

CriterionResult algebra_axioms(std::uint64_t seed);          // 200 random groupoids
CriterionResult spectrum_decomposition(std::uint64_t seed);  // 50 covers + fixtures
CriterionResult phi_isometry(std::uint64_t seed);            // 50 (G, U, x)
CriterionResult norm_estimates(std::uint64_t seed);          // 20 instances × 5 functions
CriterionResult morita_data(std::uint64_t seed);             // 50 instances
CriterionResult limit_operator_verdicts(std::uint64_t seed); // 100 tridiagonals
CriterionResult finite_sections(std::uint64_t seed);         // 20 + 20 tridiagonals
CriterionResult model_geometries(std::uint64_t seed);
CriterionResult gluing_fixtures(std::uint64_t seed);

struct Criterion {
  int id;
  std::function<CriterionResult(std::uint64_t)> run;
};

const std::vector<Criterion>& criteria();

std::vector<CriterionResult> run_all(std::uint64_t seed, const std::vector<int>& only = {});

/// "[PASS] 3 phi-isometry: ..." style line.
std::string format_line(const CriterionResult& r);

io::OrderedJson to_json(const CriterionResult& r);

}  // namespace gfred::acceptance
