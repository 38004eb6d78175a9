#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace gfred {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

using UnitIndex = std::int32_t;
using ArrowIndex = std::int32_t;
using ArrowId = std::int64_t;

inline constexpr ArrowIndex kNoArrow = -1;

/// Malformed input or a violated precondition. The CLI maps this to exit 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A result the theory guarantees did not materialise, e.g. an ambiguous
/// induction target. Indicates a numerical failure upstream.
class InternalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Largest singular value.
double operator_norm(const Matrix& m);

}  // namespace gfred
