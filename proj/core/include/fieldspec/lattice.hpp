#pragma once

#include <cstdint>

#include "fieldspec/partition.hpp"
#include "fieldspec/rational.hpp"

namespace fieldspec {

// Number of l in {0..N}^p satisfying every block constraint of tau.
//
// Reading variable l_m as the flow on the walk edge P_{b(m-1)} -> P_{b(m)},
// the constraints say each block has zero net flow, so the count is the
// number of circulations with capacities N. Edges are scanned in order
// while the net flow of every open block is tracked; a block is closed (its
// balance forced to zero) after its last incident edge, and states that can
// no longer balance are pruned. Counts are accumulated in 64-bit arithmetic
// and recomputed with arbitrary precision on overflow.
BigInt count_lattice_points(const SetPartition& tau, std::uint64_t N);

// Same count by exact elimination: the p-k+1 free variables range over
// {0..N} and the dependent ones are solved for and checked for integrality
// and box membership. Cost (N+1)^(p-k+1); meant for cross-checking.
BigInt count_lattice_points_by_elimination(const SetPartition& tau, std::uint64_t N);

// zeta_N(tau) as a polynomial in N of degree p-k+1, interpolated exactly
// through N = 0..p-k+1 and verified at the guard node N = p-k+2. Throws
// InterpolationGuardError on mismatch.
RationalPolynomial zeta_polynomial(const SetPartition& tau);

// Leading coefficient of zeta_polynomial: the volume of the constraint
// polytope inside [0,1]^p.
Rational volume_coefficient(const SetPartition& tau);

}  // namespace fieldspec
