#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fieldspec/signal.hpp"
#include "fieldspec/toeplitz.hpp"

namespace fieldspec {

struct ReconstructOptions {
  bool weighted = false;
  double kappa_max = 1e12;
  // Refinement passes x += S(V^H Omega (p - V x)), reusing the spectral
  // factorization, with residuals taken against the raw samples.
  int refine_steps = 2;
};

struct ReconstructionReport {
  int M = 0;
  std::size_t r = 0;
  std::vector<cdouble> coeffs_hat;  // k = -M..M
  double kappa = 0.0;               // of the system that was solved
  double min_eig = 0.0;
  bool success = false;             // kappa <= kappa_max
  std::optional<double> rel_l2_error;
  std::optional<double> kappa_other;  // kappa of the other (plain/weighted) system
  double delta = 0.0;
  double beta = 0.0;  // (2M+1)/r
  bool weighted = false;
};

// Fits the M-harmonic signal to the samples. The reported error is the
// coefficient-domain relative l2 error ||a - a_hat|| / ||a||, available only
// when `truth` is given; truth with a different bandwidth is compared on the
// overlapping harmonics and counts missing ones as zero.
ReconstructionReport reconstruct(const SampleSet& samples, int M,
                                 const ReconstructOptions& options = {},
                                 const BandlimitedSignal* truth = nullptr);

std::string to_json(const ReconstructionReport& report);

// Monte Carlo success-probability grid over (M, r) cells.
struct SweepGrid {
  std::vector<int> M_list;
  std::vector<std::size_t> r_list;
  double support_lo = 0.0;
  double support_hi = 1.0;
  std::size_t trials = 100;
  bool weighted = false;
  bool regular = false;  // deterministic t_q = (q-1)/r instead of random draws
  double kappa_max = 1e12;
};

struct SweepCell {
  int M = 0;
  std::size_t r = 0;
  double beta = 0.0;
  std::size_t trials = 0;
  double success_frac = 0.0;
  double mean_kappa_success = 0.0;  // NaN when no trial succeeded
  double mean_delta = 0.0;
};

// Cell c = (i_M, i_r) in row-major order; trial j uses
// derive_seed(seed, c, j). Output ordering is independent of threading.
std::vector<SweepCell> sweep(const SweepGrid& grid, std::uint64_t seed,
                             unsigned threads = 0);

}  // namespace fieldspec
