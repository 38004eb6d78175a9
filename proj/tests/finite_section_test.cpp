#include <gtest/gtest.h>

#include <algorithm>

#include "gfred/catalog.hpp"
#include "gfred/finite_section.hpp"
#include "gfred/random.hpp"

using namespace gfred;

namespace {

const std::vector<long> kSizes = {64, 128, 256};

// Oracle: dense truncation and Eigen's SVD.
std::vector<double> dense_singular_values(const BandOperator& a, long n) {
  const long d = 2 * n + 1;
  Matrix m = Matrix::Zero(d, d);
  for (long i = -n; i <= n; ++i)
    for (long j = std::max(-n, i - a.bandwidth()); j <= std::min(n, i + a.bandwidth()); ++j) m(i + n, j + n) = a.entry(i, j);
  Eigen::JacobiSVD<Matrix> svd(m);
  std::vector<double> s(svd.singularValues().data(), svd.singularValues().data() + d);
  std::sort(s.begin(), s.end());
  return s;
}

}  // namespace

TEST(SectionSingularValues, MatchDenseSvd) {
  Rng rng(31);
  for (int w : {1, 2}) {
    const BandOperator a = random_band_operator(rng, w, 4);
    const std::vector<double> banded = section_singular_values(a, 20);
    const std::vector<double> dense = dense_singular_values(a, 20);
    ASSERT_EQ(banded.size(), dense.size());
    for (std::size_t i = 0; i < dense.size(); ++i) EXPECT_NEAR(banded[i], dense[i], 1e-9 * (1 + dense.back()));
  }
}

TEST(FiniteSection, IdentityIsConsistentFredholm) {
  const FiniteSectionReport r = finite_section_analysis(BandOperator::identity(), kSizes);
  ASSERT_EQ(r.samples.size(), 3u);
  for (const auto& s : r.samples) EXPECT_EQ(s.count_below_eps, 0u);
  EXPECT_EQ(r.outcome, SectionOutcome::ConsistentFredholm);
}

TEST(FiniteSection, FreeLaplacianIsConsistentNonFredholm) {
  // The near-zero count stays at zero at eps 1e-6 (the lowest singular value of
  // the N-section is of order 1/N²); the decay of the lowest values decides.
  const FiniteSectionReport r = finite_section_analysis(BandOperator::laplacian(), kSizes);
  EXPECT_EQ(r.outcome, SectionOutcome::ConsistentNonFredholm);
  EXPECT_GE(r.decay_ratio, r.decay_threshold);
  // Oracle: the N-section is −4 sin²(πk / (2(2N+2))) for k = 1..2N+1, so the
  // smallest singular value is 4 sin²(π / (4N+4)).
  for (const auto& s : r.samples) {
    const double expected = 4 * std::pow(std::sin(std::acos(-1.0) / (4.0 * s.n + 4.0)), 2);
    EXPECT_NEAR(s.profile.front(), expected, 1e-9);
  }
}

TEST(FiniteSection, ShiftedLaplacianHasBoundedCount) {
  BandOperator a = catalog::laplacian_with_limits(-1.0, 5.0);
  a.diagonal(0).core[0] = -3.0;
  const FiniteSectionReport r = finite_section_analysis(a, kSizes);
  for (std::size_t i = 1; i < r.samples.size(); ++i)
    EXPECT_LE(r.samples[i].count_below_eps, r.samples[i - 1].count_below_eps);
  EXPECT_EQ(r.outcome, SectionOutcome::ConsistentFredholm);
}

TEST(FiniteSection, SizesAreChecked) {
  const BandOperator a = catalog::laplacian_with_limits(-1.0, 5.0);
  EXPECT_THROW(finite_section_analysis(a, {4, 8}), InputError);
  EXPECT_THROW(finite_section_analysis(a, {128, 64}), InputError);
  EXPECT_THROW(finite_section_analysis(a, {64}), InputError);
  EXPECT_THROW(finite_section_analysis(a, kSizes, 0.0), InputError);
}

class SectionProperties : public ::testing::TestWithParam<int> {};

TEST_P(SectionProperties, OutcomeNeverContradictsTheVerdict) {
  Rng rng(3100 + GetParam());
  const RandomTridiagonal t = random_selfadjoint_tridiagonal(rng, 8, GetParam() % 2);
  const bool fredholm = fredholm_verdict(t.op).fredholm;
  const FiniteSectionReport r = finite_section_analysis(t.op, kSizes);
  if (fredholm) EXPECT_NE(r.outcome, SectionOutcome::ConsistentNonFredholm) << r.reason;
  else EXPECT_NE(r.outcome, SectionOutcome::ConsistentFredholm) << r.reason;
}

INSTANTIATE_TEST_SUITE_P(Seeds, SectionProperties, ::testing::Range(0, 10));
