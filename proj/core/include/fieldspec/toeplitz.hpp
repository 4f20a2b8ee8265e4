#pragma once

#include <Eigen/Dense>
#include <complex>
#include <span>
#include <string>
#include <vector>

#include "fieldspec/signal.hpp"

namespace fieldspec {

// Hermitian Toeplitz normal-equation system of order n = 2M+1.
//
// The matrix T has entries T(k, m) = r_{k-m} for k, m = -M..M, with
//   r_l = sum_q omega_q exp(2 pi i l t_q),   l = -2M..2M,
// where omega_q = 1/r (plain) or the circular gap weights w_q (weighted).
// The right-hand side is b_k = sum_q omega_q p(t_q) exp(-2 pi i k t_q), and
// the least-squares coefficients satisfy T^T a = b (T^T = conj(T) shares the
// spectrum of T).
class ToeplitzSystem {
 public:
  ToeplitzSystem(int M, std::size_t r, std::vector<cdouble> generators,
                 std::vector<cdouble> rhs, bool weighted);

  int M() const noexcept { return M_; }
  int order() const noexcept { return 2 * M_ + 1; }
  std::size_t sample_count() const noexcept { return r_; }
  bool weighted() const noexcept { return weighted_; }

  // Generators in order l = -2M..2M.
  const std::vector<cdouble>& generators() const noexcept { return generators_; }
  cdouble generator(int l) const {
    return generators_.at(static_cast<std::size_t>(l + 2 * M_));
  }
  const std::vector<cdouble>& rhs() const noexcept { return rhs_; }

 private:
  int M_;
  std::size_t r_;
  std::vector<cdouble> generators_;
  std::vector<cdouble> rhs_;
  bool weighted_;
};

// r_l for l = -2M..2M from positions and per-sample weights.
std::vector<cdouble> toeplitz_generators(std::span<const double> positions,
                                         std::span<const double> weights, int M);

// Plain generators (weights 1/r) without a right-hand side.
std::vector<cdouble> toeplitz_generators(std::span<const double> positions, int M);

// Weighted systems require at least two samples (gap weights are undefined
// for a single point).
ToeplitzSystem build_system(const SampleSet& samples, int M, bool weighted);

// Dense T, materialized only on request.
Eigen::MatrixXcd dense_matrix(int M, std::span<const cdouble> generators);
Eigen::MatrixXcd dense_matrix(const ToeplitzSystem& system);

struct EigenSpectrum {
  std::vector<double> eigenvalues;  // ascending
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  double kappa = 0.0;  // +inf when lambda_min <= 0
};

// Eigenvalues within [-1e-10 lambda_max, 0) are roundoff on a PSD matrix and
// are clamped to zero.
inline constexpr double kNegativeClampRelTol = 1e-10;

// Full spectrum of the Hermitian matrix implied by the generators. Throws
// NumericalError when the QR iteration fails to converge.
EigenSpectrum eig_hermitian(int M, std::span<const cdouble> generators);
EigenSpectrum eig_hermitian(const ToeplitzSystem& system);

struct SolveOptions {
  double kappa_max = 1e12;
};

struct SolveDiagnostics {
  double kappa = 0.0;
  double min_eig = 0.0;
  bool ill_conditioned = false;
};

// Eigendecomposition T = U diag(lambda) U^H kept for repeated solves of
// T^T x = y. Eigen-directions with lambda < lambda_max / kappa_max are
// dropped (spectral pseudo-inverse), which only happens when the system is
// flagged ill-conditioned.
class SpectralSolver {
 public:
  SpectralSolver(int M, std::span<const cdouble> generators,
                 SolveOptions options = {});

  const EigenSpectrum& spectrum() const noexcept { return spectrum_; }
  SolveDiagnostics diagnostics() const noexcept { return diagnostics_; }

  std::vector<cdouble> apply(std::span<const cdouble> y) const;

 private:
  EigenSpectrum spectrum_;
  SolveDiagnostics diagnostics_;
  Eigen::MatrixXcd vectors_;
  Eigen::VectorXd inverse_;  // 1/lambda_i or 0 for dropped directions
};

struct Solution {
  std::vector<cdouble> coeffs;  // k = -M..M
  SolveDiagnostics diagnostics;
};

// Conditioning failure is reported through diagnostics, never thrown.
Solution solve(const ToeplitzSystem& system, SolveOptions options = {});

// JSON: {M, r, weighted, generators: [[re,im],...], rhs: [[re,im],...]}.
std::string to_json(const ToeplitzSystem& system);
ToeplitzSystem system_from_json(const std::string& text);

}  // namespace fieldspec
