#pragma once

#include <vector>

#include "fieldspec/partition.hpp"
#include "fieldspec/rational.hpp"

namespace fieldspec {

using IntMatrix = std::vector<std::vector<int>>;

// Block balance constraints of a partition tau = {P_1..P_k} of {1..p}:
//   sum_{i in P_j} (l_i - l_[i+1]) = 0,   j = 1..k,
// written as A l = 0 with A = A' - A'' where A'(j,i) = [i in P_j] and
// A''(j,i) = [[i-1] in P_j]. Each column of A holds one +1 and one -1 (or
// cancels to zero), so A is the incidence matrix of the closed walk
// P_{b(1)} -> P_{b(2)} -> ... -> P_{b(p)} -> P_{b(1)} through the blocks.
struct ConstraintSystem {
  int p = 0;
  int k = 0;
  IntMatrix A;  // k x p
  int rank = 0;
};

// Throws InvariantViolation if the computed rank differs from k - 1.
ConstraintSystem build_constraints(const SetPartition& tau);

IntMatrix constraint_matrix(const SetPartition& tau);
IntMatrix block_indicator_matrix(const SetPartition& tau);    // A'
IntMatrix shifted_indicator_matrix(const SetPartition& tau);  // A''
IntMatrix right_shift_matrix(int p);                          // Z: row i has a 1 at [i+1]
IntMatrix multiply(const IntMatrix& a, const IntMatrix& b);

// Rank by fraction-free (Bareiss) elimination over the integers.
int integer_rank(const IntMatrix& m);

// Reduced row echelon form over Q: l_pivot[r] = sum_f coeff[r][f] * l_free[f].
struct EliminatedSystem {
  std::vector<int> pivot_columns;               // 0-based
  std::vector<int> free_columns;                // 0-based
  std::vector<std::vector<Rational>> dependent; // per pivot, coefficients on free vars
};

EliminatedSystem eliminate(const IntMatrix& m);

}  // namespace fieldspec
