#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace fieldspec {

using cdouble = std::complex<double>;

// Trigonometric polynomial p(t) = sum_{k=-M..M} a_k exp(2 pi i k t) on [0,1).
// Coefficients are stored in order k = -M, ..., M.
class BandlimitedSignal {
 public:
  enum class Kind { complex_valued, real_valued };

  // Throws InvalidArgument when coeffs.size() != 2M+1, or when kind is
  // real_valued and a_{-k} differs from conj(a_k) beyond 1e-12 relative to
  // the largest coefficient.
  BandlimitedSignal(int M, std::vector<cdouble> coeffs,
                    Kind kind = Kind::complex_valued);

  // Real signal with a_0, Re a_k, Im a_k (k > 0) drawn N(0,1) from `seed`.
  static BandlimitedSignal random_real(int M, std::uint64_t seed);

  int M() const noexcept { return M_; }
  bool is_real() const noexcept { return kind_ == Kind::real_valued; }
  const std::vector<cdouble>& coeffs() const noexcept { return coeffs_; }
  cdouble coeff(int k) const { return coeffs_.at(static_cast<std::size_t>(k + M_)); }

 private:
  int M_;
  std::vector<cdouble> coeffs_;
  Kind kind_;
};

// Throws DomainError for t outside [0,1).
cdouble evaluate_signal(const BandlimitedSignal& sig, double t);

// Sample locations t_q in [0,1), strictly increasing, with matching values.
// Construction sorts positions (values permuted in lockstep) and rejects
// empty input, mismatched lengths, out-of-range and duplicate positions.
class SampleSet {
 public:
  SampleSet(std::vector<double> positions, std::vector<cdouble> values);

  std::size_t size() const noexcept { return positions_.size(); }
  std::span<const double> positions() const noexcept { return positions_; }
  std::span<const cdouble> values() const noexcept { return values_; }

 private:
  std::vector<double> positions_;
  std::vector<cdouble> values_;
};

SampleSet sample_signal(const BandlimitedSignal& sig,
                        std::span<const double> positions);

// r i.i.d. uniform draws on [lo, hi), sorted ascending.
std::vector<double> random_topology(std::size_t r, double lo, double hi,
                                    std::uint64_t seed);

// t_q = (q-1)/r.
std::vector<double> regular_topology(std::size_t r);

// Circular gap statistics of a sorted sample set:
//   delta = max_q (t_q - t_{q-1}),       t_0     = t_r - 1
//   w_q   = (t_{q+1} - t_{q-1}) / 2,     t_{r+1} = 1 + t_1
// so that the weights tile the circle and sum to one.
struct GapProfile {
  double delta;
  std::vector<double> weights;
};

GapProfile gap_profile(std::span<const double> positions);

}  // namespace fieldspec
