#pragma once

#include <string>
#include <vector>

#include "gfred/band_operator.hpp"

namespace gfred {

/// Ascending singular values of the truncation of A to rows and columns [−N, N].
/// Computed as the nonnegative half of the spectrum of the Hermitian dilation
/// [[0, A], [Aᴴ, 0]], interleaved so that it is banded with 2w+1
/// superdiagonals.
std::vector<double> section_singular_values(const BandOperator& a, long n);

enum class SectionOutcome { ConsistentFredholm, ConsistentNonFredholm, Inconclusive };

std::string to_string(SectionOutcome o);

struct SectionSample {
  long n = 0;
  std::size_t count_below_eps = 0;
  /// Fourth singular value above the near-zero cluster.
  double statistic = 0.0;
  /// The smallest singular values, ascending (up to kProfileLength).
  std::vector<double> profile;
};

struct FiniteSectionReport {
  std::vector<SectionSample> samples;
  double eps = 0.0;
  double decay_ratio = 0.0;   // statistic(first) / statistic(last)
  double decay_threshold = 0.0;
  SectionOutcome outcome = SectionOutcome::Inconclusive;
  std::string reason;
};

inline constexpr std::size_t kProfileLength = 16;
inline constexpr std::size_t kStatisticOffset = 4;
inline constexpr double kBoundedRatio = 1.25;

/// Heuristic three-valued cross-check of the symbolic verdict.
///
/// Counts that grow strictly with N mean non-Fredholm. With bounded counts the
/// lowest singular values above the near-zero cluster decide: for a
/// non-Fredholm operator they approach 0 at least like 1/N, so their ratio
/// between the smallest and largest N is at least sqrt(N_last/N_first); for a
/// Fredholm operator they settle and the ratio stays below kBoundedRatio.
/// Throws InputError unless sizes increase and each exceeds
/// 4·(core extent + bandwidth).
FiniteSectionReport finite_section_analysis(const BandOperator& a, const std::vector<long>& sizes,
                                            double eps = 1e-6);

}  // namespace gfred
