#include "gfred/finite_section.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include "gfred/kernels.hpp"

namespace gfred {

std::vector<double> section_singular_values(const BandOperator& a, long n) {
  if (n < 1) throw InputError("finite section: size must be positive");
  const long m = 2 * n + 1;          // rows/columns of the truncation
  const lapack_int dim = static_cast<lapack_int>(2 * m);
  const lapack_int kd = 2 * a.bandwidth() + 1;
  const lapack_int ldab = kd + 1;
  // Upper band storage, column major: ab[kd + i - j + j*ldab] = H(i, j) for i <= j.
  // Basis order e_0, f_0, e_1, f_1, ... with H(e_i, f_j) = A(i, j).
  std::vector<lapack_complex_double> ab(static_cast<std::size_t>(ldab) * dim, Complex(0.0, 0.0));
  auto set = [&](lapack_int i, lapack_int j, Complex v) {
    if (i > j) {
      std::swap(i, j);
      v = std::conj(v);
    }
    ab[static_cast<std::size_t>(kd + i - j) + static_cast<std::size_t>(j) * ldab] = v;
  };
  const int w = a.bandwidth();
  for (long i = 0; i < m; ++i)
    for (long j = std::max(0L, i - w); j <= std::min(m - 1, i + w); ++j) {
      const Complex v = a.entry(i - n, j - n);
      if (v != 0.0) set(static_cast<lapack_int>(2 * i), static_cast<lapack_int>(2 * j + 1), v);
    }
  std::vector<double> eig(dim);
  const lapack_int info =
      LAPACKE_zhbev(LAPACK_COL_MAJOR, 'N', 'U', dim, kd, ab.data(), ldab, eig.data(), nullptr, 1);
  if (info != 0) throw InternalError("finite section: zhbev failed with info " + std::to_string(info));
  // Eigenvalues come in ± pairs; the upper half are the singular values.
  std::vector<double> sv(eig.begin() + m, eig.end());
  for (double& s : sv) s = std::abs(s);
  std::sort(sv.begin(), sv.end());
  return sv;
}

std::string to_string(SectionOutcome o) {
  switch (o) {
    case SectionOutcome::ConsistentFredholm: return "CONSISTENT-FREDHOLM";
    case SectionOutcome::ConsistentNonFredholm: return "CONSISTENT-NONFREDHOLM";
    case SectionOutcome::Inconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

FiniteSectionReport finite_section_analysis(const BandOperator& a, const std::vector<long>& sizes, double eps) {
  if (sizes.size() < 2) throw InputError("finite section: need at least two sizes");
  if (!(eps > 0.0)) throw InputError("finite section: eps must be positive");
  const long floor = 4 * (a.core_extent() + a.bandwidth());
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (sizes[i] <= floor)
      throw InputError("finite section: size " + std::to_string(sizes[i]) + " must exceed 4(core extent + bandwidth) = " +
                       std::to_string(floor));
    if (i > 0 && sizes[i] <= sizes[i - 1]) throw InputError("finite section: sizes must increase");
  }
  FiniteSectionReport report;
  report.eps = eps;
  const auto spectra = kernels::omp::section_singular_values(a, sizes);
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    const auto& sv = spectra[i];
    SectionSample s;
    s.n = sizes[i];
    s.count_below_eps = static_cast<std::size_t>(std::lower_bound(sv.begin(), sv.end(), eps) - sv.begin());
    const std::size_t at = std::min(sv.size() - 1, s.count_below_eps + kStatisticOffset - 1);
    s.statistic = sv[at];
    s.profile.assign(sv.begin(), sv.begin() + std::min(sv.size(), kProfileLength));
    report.samples.push_back(std::move(s));
  }
  const auto& first = report.samples.front();
  const auto& last = report.samples.back();
  bool growing = true, bounded = true;
  for (std::size_t i = 1; i < report.samples.size(); ++i) {
    growing = growing && report.samples[i].count_below_eps > report.samples[i - 1].count_below_eps;
    bounded = bounded && report.samples[i].count_below_eps <= report.samples[i - 1].count_below_eps;
  }
  report.decay_threshold = std::sqrt(static_cast<double>(last.n) / static_cast<double>(first.n));
  report.decay_ratio = last.statistic > 0.0 ? first.statistic / last.statistic : INFINITY;
  std::ostringstream why;
  if (growing) {
    report.outcome = SectionOutcome::ConsistentNonFredholm;
    why << "near-zero count grows strictly with N";
  } else if (!bounded) {
    report.outcome = SectionOutcome::Inconclusive;
    why << "near-zero count neither bounded nor strictly growing";
  } else if (report.decay_ratio >= report.decay_threshold) {
    report.outcome = SectionOutcome::ConsistentNonFredholm;
    why << "bounded count, lowest singular values decay (ratio " << report.decay_ratio << " >= "
        << report.decay_threshold << ")";
  } else if (report.decay_ratio <= kBoundedRatio) {
    report.outcome = SectionOutcome::ConsistentFredholm;
    why << "bounded count, lowest singular values settle (ratio " << report.decay_ratio << " <= " << kBoundedRatio
        << ")";
  } else {
    report.outcome = SectionOutcome::Inconclusive;
    why << "bounded count, decay ratio " << report.decay_ratio << " between " << kBoundedRatio << " and "
        << report.decay_threshold;
  }
  report.reason = why.str();
  return report;
}

}  // namespace gfred
