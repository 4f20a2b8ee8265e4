#include "fieldspec/constraints.hpp"

#include <sstream>

#include "fieldspec/error.hpp"

namespace fieldspec {

IntMatrix block_indicator_matrix(const SetPartition& tau) {
  IntMatrix a(static_cast<std::size_t>(tau.k()),
              std::vector<int>(static_cast<std::size_t>(tau.p()), 0));
  for (int i = 1; i <= tau.p(); ++i) {
    a[static_cast<std::size_t>(tau.block_of(i))][static_cast<std::size_t>(i - 1)] = 1;
  }
  return a;
}

IntMatrix shifted_indicator_matrix(const SetPartition& tau) {
  const int p = tau.p();
  IntMatrix a(static_cast<std::size_t>(tau.k()), std::vector<int>(static_cast<std::size_t>(p), 0));
  for (int i = 1; i <= p; ++i) {
    const int prev = cyclic_index(i - 1, p);
    a[static_cast<std::size_t>(tau.block_of(prev))][static_cast<std::size_t>(i - 1)] = 1;
  }
  return a;
}

IntMatrix right_shift_matrix(int p) {
  IntMatrix z(static_cast<std::size_t>(p), std::vector<int>(static_cast<std::size_t>(p), 0));
  for (int i = 1; i <= p; ++i) {
    z[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(cyclic_index(i + 1, p) - 1)] = 1;
  }
  return z;
}

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
  if (a.empty() || b.empty()) return {};
  const std::size_t n = a.size(), m = b.size(), q = b[0].size();
  if (a[0].size() != m) throw InvalidArgument("matrix dimensions do not conform");
  IntMatrix c(n, std::vector<int>(q, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < m; ++l)
      if (a[i][l] != 0)
        for (std::size_t j = 0; j < q; ++j) c[i][j] += a[i][l] * b[l][j];
  return c;
}

IntMatrix constraint_matrix(const SetPartition& tau) {
  const int p = tau.p();
  IntMatrix a(static_cast<std::size_t>(tau.k()), std::vector<int>(static_cast<std::size_t>(p), 0));
  // Row j accumulates +l_i and -l_[i+1] for every i in P_j.
  for (int i = 1; i <= p; ++i) {
    auto& row = a[static_cast<std::size_t>(tau.block_of(i))];
    row[static_cast<std::size_t>(i - 1)] += 1;
    row[static_cast<std::size_t>(cyclic_index(i + 1, p) - 1)] -= 1;
  }
  return a;
}

int integer_rank(const IntMatrix& m) {
  if (m.empty()) return 0;
  const std::size_t rows = m.size();
  const std::size_t cols = m[0].size();
  std::vector<std::vector<BigInt>> a(rows, std::vector<BigInt>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    if (m[i].size() != cols) throw InvalidArgument("ragged matrix");
    for (std::size_t j = 0; j < cols; ++j) a[i][j] = m[i][j];
  }
  BigInt prev_pivot = 1;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t piv = rank;
    while (piv < rows && a[piv][col] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[rank]);
    for (std::size_t i = rank + 1; i < rows; ++i) {
      for (std::size_t j = col + 1; j < cols; ++j) {
        a[i][j] = (a[rank][col] * a[i][j] - a[i][col] * a[rank][j]) / prev_pivot;
      }
      a[i][col] = 0;
    }
    prev_pivot = a[rank][col];
    ++rank;
  }
  return static_cast<int>(rank);
}

EliminatedSystem eliminate(const IntMatrix& m) {
  EliminatedSystem out;
  if (m.empty()) return out;
  const std::size_t rows = m.size();
  const std::size_t cols = m[0].size();
  std::vector<std::vector<Rational>> a(rows, std::vector<Rational>(cols));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) a[i][j] = m[i][j];

  std::size_t rank = 0;
  std::vector<bool> is_pivot(cols, false);
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t piv = rank;
    while (piv < rows && a[piv][col] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[rank]);
    const Rational lead = a[rank][col];
    for (auto& v : a[rank]) v /= lead;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == rank || a[i][col] == 0) continue;
      const Rational f = a[i][col];
      for (std::size_t j = 0; j < cols; ++j) a[i][j] -= f * a[rank][j];
    }
    out.pivot_columns.push_back(static_cast<int>(col));
    is_pivot[col] = true;
    ++rank;
  }
  for (std::size_t j = 0; j < cols; ++j)
    if (!is_pivot[j]) out.free_columns.push_back(static_cast<int>(j));
  for (std::size_t r = 0; r < rank; ++r) {
    std::vector<Rational> coeffs;
    for (int f : out.free_columns) coeffs.push_back(-a[r][static_cast<std::size_t>(f)]);
    out.dependent.push_back(std::move(coeffs));
  }
  return out;
}

ConstraintSystem build_constraints(const SetPartition& tau) {
  ConstraintSystem sys;
  sys.p = tau.p();
  sys.k = tau.k();
  sys.A = constraint_matrix(tau);
  sys.rank = integer_rank(sys.A);
  if (sys.rank != sys.k - 1) {
    std::ostringstream msg;
    msg << "constraint rank " << sys.rank << " != k-1 = " << sys.k - 1 << " for "
        << tau.to_string();
    throw InvariantViolation(msg.str());
  }
  return sys;
}

}  // namespace fieldspec
