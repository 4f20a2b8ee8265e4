#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fieldspec/rational.hpp"

namespace fieldspec {

// Sums of zeta polynomials over all partitions of {1..p}, grouped by block
// count: by_k[k-1](N) = sum_{tau with k blocks} zeta_N(tau).
struct ZetaTable {
  int p = 0;
  std::vector<RationalPolynomial> by_k;
  std::vector<std::uint64_t> partitions_by_k;  // S(p, k)
  std::size_t orbit_classes = 0;  // distinct dihedral classes evaluated
};

// Streams the partitions of {1..p}, groups them into dihedral classes, and
// evaluates one zeta polynomial per class (in parallel). 1 <= p <= 12; cost
// grows steeply with p, so p = 12 is a long-running computation.
ZetaTable zeta_table(int p, unsigned threads = 0);

// Process-wide memoized zeta_table.
const ZetaTable& cached_zeta_table(int p, unsigned threads = 0);

// Limiting moment E[lambda^p] = sum_{k=1..p} c_k beta^(p-k), with
// c_k = sum over k-block partitions of the volume coefficient v(tau).
struct MomentPolynomial {
  int p = 0;
  std::vector<Rational> coeffs;  // coeffs[k-1] = c_k

  Rational coefficient_of_beta_power(int power) const;
  Rational evaluate(const Rational& beta) const;
  double evaluate(double beta) const;
  // As a polynomial in beta, ascending powers.
  RationalPolynomial in_beta() const;
  std::string to_string() const;  // e.g. "1 + 6*beta + 20/3*beta^2 + beta^3"
};

MomentPolynomial moment_polynomial(const ZetaTable& table);
MomentPolynomial moment_polynomial(int p, unsigned threads = 0);

// Exact pre-limit moment
//   E[(1/(2M+1)) tr T^p] = (1/((2M+1) r^p)) sum_tau r!/(r-k)! zeta_{2M}(tau),
// with the falling factorial zero when k > r.
Rational finite_moment_exact(const ZetaTable& table, std::uint64_t M, std::uint64_t r);
double finite_moment(int p, std::uint64_t M, std::uint64_t r, unsigned threads = 0);

// Truncated moment generating function sum_{p=0..p_max} E[lambda^p] s^p / p!
// with E[lambda^0] = 1. Not the full series.
double mgf_partial(double beta, double s, int p_max, unsigned threads = 0);
double mgf_partial(std::span<const MomentPolynomial> moments, double beta, double s);

}  // namespace fieldspec
