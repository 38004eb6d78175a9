#pragma once

#include "gfred/band_operator.hpp"
#include "gfred/gluing.hpp"
#include "gfred/groupoid.hpp"

// Small named instances used by the tests, the fixtures and the CLI suite.
namespace gfred::catalog {

/// Pair groupoid on {1, 2} disjoint from ℤ/2 over the unit 3.
FiniteGroupoid split_example();

/// ℤ/2 swapping the points a and b.
RightAction swap_action();
FiniteGroupoid swap_groupoid();

/// ℤ/2 acting trivially on p and q.
RightAction trivial_action();

/// Two copies of the pair groupoid on {1, 2, 3} over the same units, glued
/// by the identity.
GluingFamily duplicate_pair_family();

/// Two copies of (pair on {1, 2}) × ℤ/3. The table from piece 0 to piece 1
/// inverts the group part while the table back is the identity.
GluingFamily cocycle_fault_family();

/// Pair groupoids on {1, 2} and {2, 3} sharing the unit 2.
GluingFamily proper_overlap_family();

/// ℤ/2 acting on {p, a, b} with p fixed and a, b swapped (the truncated
/// boundary chart) and the pair groupoid on {a, b, c} (the interior), matched
/// over {a, b}.
GluingFamily b_model_family();

/// Cover {X} with the given groupoid as its only piece.
GluingFamily single_piece_family(const FiniteGroupoid& g);

/// Discrete Laplacian plus a potential with limits lm at −∞ and lp at +∞.
BandOperator laplacian_with_limits(Complex lm, Complex lp);

}  // namespace gfred::catalog
