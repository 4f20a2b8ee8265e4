#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace fieldspec {

// Ensemble of random Toeplitz matrices: r i.i.d. U[0,1) sample points per
// trial, bandwidth M, and r = round((2M+1)/beta).
class EnsembleSpec {
 public:
  // Throws InvalidArgument unless M >= 1, 0 < beta <= 2, trials >= 1.
  EnsembleSpec(int M, double beta, std::size_t trials, std::uint64_t seed);

  int M() const noexcept { return M_; }
  double beta() const noexcept { return beta_; }
  std::size_t trials() const noexcept { return trials_; }
  std::uint64_t seed() const noexcept { return seed_; }
  std::size_t r() const noexcept { return r_; }
  double realized_beta() const noexcept {
    return static_cast<double>(2 * M_ + 1) / static_cast<double>(r_);
  }
  int order() const noexcept { return 2 * M_ + 1; }

 private:
  int M_;
  double beta_;
  std::size_t trials_;
  std::uint64_t seed_;
  std::size_t r_;
};

struct SpectralEnsemble {
  EnsembleSpec spec;
  // Trial-major: eigenvalues of retained trial i occupy
  // [i*(2M+1), (i+1)*(2M+1)), ascending.
  std::vector<double> all_eigenvalues;
  std::vector<double> min_eigs;
  std::vector<double> kappas;
  std::vector<std::size_t> trial_ids;  // original trial index of each retained trial
  std::size_t failures = 0;            // eigensolver failures, skipped

  std::size_t retained() const noexcept { return min_eigs.size(); }
  std::span<const double> trial_eigenvalues(std::size_t i) const;
};

// Trial i draws its topology from derive_seed(spec.seed(), i).
SpectralEnsemble run_ensemble(const EnsembleSpec& spec, unsigned threads = 0);

// Per-trial normalized power traces (1/(2M+1)) sum_i lambda_i^p averaged
// over trials, with the standard error of that average.
struct EmpiricalMoment {
  int p = 0;
  double mean = 0.0;
  double std_error = 0.0;
};
std::vector<EmpiricalMoment> empirical_moments(const SpectralEnsemble& ensemble,
                                               int p_max);

struct Histogram {
  std::vector<double> edges;         // size bins+1
  std::vector<std::size_t> counts;   // size bins
  std::size_t total = 0;             // normalization count

  std::size_t bins() const noexcept { return counts.size(); }
  double center(std::size_t i) const { return 0.5 * (edges[i] + edges[i + 1]); }
  double density(std::size_t i) const;
  std::size_t nonempty() const;
};

// Linear bins of the given width, aligned to multiples of the width.
Histogram linear_histogram(std::span<const double> values, double bin_width);

// Histogram of log10(x) with `per_decade` bins per decade aligned to
// multiples of 1/per_decade. Nonpositive values fall outside every bin but
// still count in the normalization. Densities are per unit of log10 x.
Histogram log10_histogram(std::span<const double> values, int per_decade);

// As above but with caller-supplied edges (in log10 units).
Histogram log10_histogram(std::span<const double> values, std::vector<double> edges);

struct CdfPoint {
  double x = 0.0;
  double F = 0.0;
};

// F(x) = fraction of values <= x. Throws InvalidArgument on empty values or
// a grid that is not strictly increasing and positive.
std::vector<CdfPoint> empirical_cdf(std::span<const double> values,
                                    std::span<const double> grid);

// Points 10^(j/per_decade) covering [lo, hi].
std::vector<double> log_grid(double lo, double hi, int per_decade);

enum class TailWindow { centered, below };

struct TailFitOptions {
  double anchor_prob = 1e-2;
  double window_decades = 1.0;
  TailWindow placement = TailWindow::centered;
  double floor = 1e-15;  // x below this is treated as zero and ignored
  std::size_t min_points = 5;
};

// log10 F = log10 b + a log10 x fitted by least squares over the window.
struct TailFit {
  double a_hat = 0.0;
  double b_hat = 0.0;
  double x_lo = 0.0;
  double x_hi = 0.0;
  double anchor_x = 0.0;
  double r_squared = 0.0;
  std::size_t points = 0;
};

// The window is `window_decades` wide in x, centered on the crossing
// F(x) = anchor_prob (or ending at it for TailWindow::below). Throws FitError
// when the cdf never drops below the anchor, when the window holds fewer than
// min_points usable points (more trials are needed), or when the fitted slope
// is not positive.
TailFit fit_tail(std::span<const CdfPoint> cdf, const TailFitOptions& options = {});

struct MinBoundRow {
  double x = 0.0;
  double F_min = 0.0;     // fraction of trials with lambda_min <= x
  double F_pooled = 0.0;  // fraction of all eigenvalues <= x
  double bound = 0.0;     // (2M+1) F_pooled
  double sigma = 0.0;     // relative binomial standard error of F_min / bound
  bool satisfied = false; // F_min <= bound (1 + 3 sigma)
};

std::vector<MinBoundRow> check_min_eig_bound(const SpectralEnsemble& ensemble,
                                             std::span<const double> x_grid);

// Median of log10(F_min / F_pooled) over rows with 0 < F_min <= max_F_min
// and at least `min_trials` trials below x. Throws FitError if no row
// qualifies.
double min_bound_log_offset(std::span<const MinBoundRow> rows, std::size_t trials,
                            double max_F_min = 0.1, std::size_t min_trials = 10);

struct MirrorOptions {
  double d = 1.0 / 3.0;
  int bins_per_decade = 20;
  double quantile_lo = 0.1;  // comparison window in quantiles of log10 kappa
  double quantile_hi = 0.9;
  std::size_t min_bins = 20;
};

struct MirrorRow {
  double y = 0.0;          // log10 kappa at bin center
  double gamma_kappa = 0.0;
  double gamma_reference = 0.0;
};

struct MirrorReport {
  std::vector<MirrorRow> rows;  // bins inside the window with both densities > 0
  double max_discrepancy = 0.0;
  std::size_t kappa_bins = 0;      // nonempty bins, log10 kappa histogram
  std::size_t reference_bins = 0;  // nonempty bins, reference histogram
};

// Compares the log10-density of log10 kappa at y with that of log10 lambda_min
// at d - y. Throws FitError when either histogram has fewer than min_bins
// nonempty bins or the window holds no comparable bin.
MirrorReport kappa_mirror_check(const SpectralEnsemble& ensemble,
                                const MirrorOptions& options = {});

// Compares the log10-density of log10 kappa at y with (2M+1) times the pooled
// eigenvalue log10-density at d - y. Meaningful only for large kappa; the
// default window is the upper half of the kappa distribution.
MirrorReport kappa_union_shape_check(const SpectralEnsemble& ensemble,
                                     MirrorOptions options = {1.0 / 3.0, 20, 0.5,
                                                              0.95, 20});

}  // namespace fieldspec
