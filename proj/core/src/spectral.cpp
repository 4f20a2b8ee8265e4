#include "fieldspec/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

#include "fieldspec/error.hpp"
#include "fieldspec/parallel.hpp"
#include "fieldspec/rng.hpp"
#include "fieldspec/signal.hpp"
#include "fieldspec/toeplitz.hpp"

namespace fieldspec {

EnsembleSpec::EnsembleSpec(int M, double beta, std::size_t trials, std::uint64_t seed)
    : M_(M), beta_(beta), trials_(trials), seed_(seed), r_(0) {
  if (M_ < 1) throw InvalidArgument("ensemble bandwidth M must be at least 1");
  if (!(beta_ > 0.0 && beta_ <= 2.0)) throw InvalidArgument("beta must lie in (0, 2]");
  if (trials_ == 0) throw InvalidArgument("ensemble needs at least one trial");
  r_ = static_cast<std::size_t>(std::llround((2.0 * M_ + 1.0) / beta_));
  r_ = std::max<std::size_t>(r_, 1);
}

std::span<const double> SpectralEnsemble::trial_eigenvalues(std::size_t i) const {
  const auto n = static_cast<std::size_t>(spec.order());
  return std::span<const double>(all_eigenvalues).subspan(i * n, n);
}

SpectralEnsemble run_ensemble(const EnsembleSpec& spec, unsigned threads) {
  const int M = spec.M();
  const auto n = static_cast<std::size_t>(spec.order());
  std::vector<std::optional<EigenSpectrum>> results(spec.trials());

  parallel_for(spec.trials(), threads, [&](std::size_t i) {
    const auto t = random_topology(spec.r(), 0.0, 1.0, derive_seed(spec.seed(), i));
    try {
      results[i] = eig_hermitian(M, toeplitz_generators(t, M));
    } catch (const NumericalError&) {
      results[i].reset();
    }
  });

  SpectralEnsemble e{spec, {}, {}, {}, {}, 0};
  e.all_eigenvalues.reserve(spec.trials() * n);
  for (std::size_t i = 0; i < results.size(); ++i) {
    if (!results[i]) {
      ++e.failures;
      continue;
    }
    const auto& s = *results[i];
    e.all_eigenvalues.insert(e.all_eigenvalues.end(), s.eigenvalues.begin(),
                             s.eigenvalues.end());
    e.min_eigs.push_back(s.lambda_min);
    e.kappas.push_back(s.kappa);
    e.trial_ids.push_back(i);
  }
  return e;
}

std::vector<EmpiricalMoment> empirical_moments(const SpectralEnsemble& ensemble,
                                               int p_max) {
  if (p_max < 1) throw InvalidArgument("p_max must be at least 1");
  const std::size_t trials = ensemble.retained();
  if (trials == 0) throw InvalidArgument("ensemble has no retained trials");
  const double n = ensemble.spec.order();

  std::vector<double> sum(static_cast<std::size_t>(p_max), 0.0);
  std::vector<double> sum_sq(static_cast<std::size_t>(p_max), 0.0);
  for (std::size_t i = 0; i < trials; ++i) {
    std::vector<double> trace(static_cast<std::size_t>(p_max), 0.0);
    for (double lam : ensemble.trial_eigenvalues(i)) {
      double pw = 1.0;
      for (int p = 1; p <= p_max; ++p) {
        pw *= lam;
        trace[static_cast<std::size_t>(p - 1)] += pw;
      }
    }
    for (std::size_t j = 0; j < trace.size(); ++j) {
      const double m = trace[j] / n;
      sum[j] += m;
      sum_sq[j] += m * m;
    }
  }
  std::vector<EmpiricalMoment> out;
  const auto N = static_cast<double>(trials);
  for (int p = 1; p <= p_max; ++p) {
    const auto j = static_cast<std::size_t>(p - 1);
    const double mean = sum[j] / N;
    const double var = trials > 1 ? std::max(0.0, (sum_sq[j] - N * mean * mean) / (N - 1.0))
                                  : 0.0;
    out.push_back({p, mean, std::sqrt(var / N)});
  }
  return out;
}

double Histogram::density(std::size_t i) const {
  if (total == 0) return 0.0;
  return static_cast<double>(counts.at(i)) /
         (static_cast<double>(total) * (edges[i + 1] - edges[i]));
}

std::size_t Histogram::nonempty() const {
  return static_cast<std::size_t>(
      std::count_if(counts.begin(), counts.end(), [](std::size_t c) { return c > 0; }));
}

namespace {

Histogram bin_values(std::span<const double> values, double width, double origin,
                     std::size_t bins, bool take_log) {
  Histogram h;
  h.total = values.size();
  h.counts.assign(bins, 0);
  h.edges.resize(bins + 1);
  for (std::size_t i = 0; i <= bins; ++i) h.edges[i] = origin + width * static_cast<double>(i);
  for (double v : values) {
    if (take_log) {
      if (!(v > 0.0) || !std::isfinite(v)) continue;
      v = std::log10(v);
    }
    const double pos = (v - origin) / width;
    if (pos < 0.0) continue;
    auto idx = static_cast<std::size_t>(pos);
    if (idx >= bins) {
      if (idx == bins && v == h.edges.back()) idx = bins - 1;
      else continue;
    }
    ++h.counts[idx];
  }
  return h;
}

}  // namespace

Histogram linear_histogram(std::span<const double> values, double bin_width) {
  if (values.empty()) throw InvalidArgument("histogram of an empty sample");
  if (!(bin_width > 0.0)) throw InvalidArgument("bin width must be positive");
  const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  const double origin = std::floor(*lo_it / bin_width) * bin_width;
  const auto bins = static_cast<std::size_t>(
      std::floor((*hi_it - origin) / bin_width)) + 1;
  return bin_values(values, bin_width, origin, bins, false);
}

Histogram log10_histogram(std::span<const double> values, int per_decade) {
  if (values.empty()) throw InvalidArgument("histogram of an empty sample");
  if (per_decade < 1) throw InvalidArgument("bins per decade must be positive");
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (double v : values) {
    if (v > 0.0 && std::isfinite(v)) {
      lo = std::min(lo, std::log10(v));
      hi = std::max(hi, std::log10(v));
    }
  }
  const double width = 1.0 / per_decade;
  if (!std::isfinite(lo)) {
    Histogram h;
    h.total = values.size();
    h.edges = {0.0, width};
    h.counts = {0};
    return h;
  }
  const double origin = std::floor(lo * per_decade) / per_decade;
  const auto bins = static_cast<std::size_t>(std::floor((hi - origin) * per_decade)) + 1;
  return bin_values(values, width, origin, bins, true);
}

Histogram log10_histogram(std::span<const double> values, std::vector<double> edges) {
  if (edges.size() < 2) throw InvalidArgument("need at least two bin edges");
  Histogram h;
  h.total = values.size();
  h.edges = std::move(edges);
  h.counts.assign(h.edges.size() - 1, 0);
  for (double v : values) {
    if (!(v > 0.0) || !std::isfinite(v)) continue;
    const double y = std::log10(v);
    auto it = std::upper_bound(h.edges.begin(), h.edges.end(), y);
    if (it == h.edges.begin()) continue;
    if (it == h.edges.end()) {
      if (y == h.edges.back()) ++h.counts.back();
      continue;
    }
    ++h.counts[static_cast<std::size_t>(it - h.edges.begin()) - 1];
  }
  return h;
}

std::vector<CdfPoint> empirical_cdf(std::span<const double> values,
                                    std::span<const double> grid) {
  if (values.empty()) throw InvalidArgument("empirical cdf of an empty sample");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0.0) || (i > 0 && !(grid[i] > grid[i - 1]))) {
      throw InvalidArgument("cdf grid must be positive and strictly increasing");
    }
  }
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const auto n = static_cast<double>(sorted.size());
  std::vector<CdfPoint> out;
  out.reserve(grid.size());
  for (double x : grid) {
    const auto below = std::upper_bound(sorted.begin(), sorted.end(), x) - sorted.begin();
    out.push_back({x, static_cast<double>(below) / n});
  }
  return out;
}

std::vector<double> log_grid(double lo, double hi, int per_decade) {
  if (!(lo > 0.0 && hi > lo)) throw InvalidArgument("log grid needs 0 < lo < hi");
  if (per_decade < 1) throw InvalidArgument("points per decade must be positive");
  const auto j0 = static_cast<long>(std::floor(std::log10(lo) * per_decade));
  const auto j1 = static_cast<long>(std::ceil(std::log10(hi) * per_decade));
  std::vector<double> g;
  for (long j = j0; j <= j1; ++j) {
    g.push_back(std::pow(10.0, static_cast<double>(j) / per_decade));
  }
  return g;
}

TailFit fit_tail(std::span<const CdfPoint> cdf, const TailFitOptions& options) {
  if (!(options.anchor_prob > 0.0 && options.anchor_prob < 1.0)) {
    throw InvalidArgument("anchor probability must lie in (0,1)");
  }
  if (!(options.window_decades > 0.0)) {
    throw InvalidArgument("fit window must be positive");
  }
  auto cross = std::find_if(cdf.begin(), cdf.end(), [&](const CdfPoint& c) {
    return c.F >= options.anchor_prob;
  });
  if (cross == cdf.end()) {
    throw FitError("cdf never reaches the anchor probability; extend the grid");
  }
  if (cross == cdf.begin()) {
    throw FitError("cdf has no points below the anchor probability; extend the grid");
  }
  // Anchor crossing interpolated in log-log coordinates.
  const CdfPoint hi_pt = *cross;
  const CdfPoint lo_pt = *(cross - 1);
  double log_xa = std::log10(hi_pt.x);
  if (lo_pt.F > 0.0 && hi_pt.F > lo_pt.F) {
    const double s = (std::log10(options.anchor_prob) - std::log10(lo_pt.F)) /
                     (std::log10(hi_pt.F) - std::log10(lo_pt.F));
    log_xa = std::log10(lo_pt.x) + s * (std::log10(hi_pt.x) - std::log10(lo_pt.x));
  }

  TailFit fit;
  fit.anchor_x = std::pow(10.0, log_xa);
  const double w = options.window_decades;
  const double log_lo = options.placement == TailWindow::centered ? log_xa - w / 2 : log_xa - w;
  const double log_hi = options.placement == TailWindow::centered ? log_xa + w / 2 : log_xa;
  fit.x_lo = std::pow(10.0, log_lo);
  fit.x_hi = std::pow(10.0, log_hi);

  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  std::size_t n = 0;
  for (const auto& c : cdf) {
    if (c.x < fit.x_lo || c.x > fit.x_hi) continue;
    if (!(c.F > 0.0) || c.x <= options.floor) continue;
    const double x = std::log10(c.x);
    const double y = std::log10(c.F);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    syy += y * y;
    ++n;
  }
  if (n < std::max<std::size_t>(options.min_points, 2)) {
    std::ostringstream msg;
    msg << "only " << n << " usable cdf points in the tail window [" << fit.x_lo << ", "
        << fit.x_hi << "]; enlarge trials or refine the grid";
    throw FitError(msg.str());
  }
  const auto N = static_cast<double>(n);
  const double vxx = sxx - sx * sx / N;
  const double vxy = sxy - sx * sy / N;
  const double vyy = syy - sy * sy / N;
  if (!(vxx > 0.0)) throw FitError("degenerate tail window (all x equal)");
  fit.a_hat = vxy / vxx;
  fit.b_hat = std::pow(10.0, (sy - fit.a_hat * sx) / N);
  fit.r_squared = vyy > 0.0 ? (vxy * vxy) / (vxx * vyy) : 1.0;
  fit.points = n;
  if (!(fit.a_hat > 0.0)) {
    throw FitError("fitted tail slope is not positive; the cdf is flat in the window");
  }
  return fit;
}

std::vector<MinBoundRow> check_min_eig_bound(const SpectralEnsemble& ensemble,
                                             std::span<const double> x_grid) {
  if (ensemble.retained() == 0) throw InvalidArgument("ensemble has no retained trials");
  const auto F_min = empirical_cdf(ensemble.min_eigs, x_grid);
  const auto F_all = empirical_cdf(ensemble.all_eigenvalues, x_grid);
  const double n_trials = static_cast<double>(ensemble.retained());
  const double n_all = static_cast<double>(ensemble.all_eigenvalues.size());
  const double order = ensemble.spec.order();

  std::vector<MinBoundRow> rows;
  rows.reserve(x_grid.size());
  for (std::size_t i = 0; i < x_grid.size(); ++i) {
    MinBoundRow row;
    row.x = x_grid[i];
    row.F_min = F_min[i].F;
    row.F_pooled = F_all[i].F;
    row.bound = order * row.F_pooled;
    double rel_var = 0.0;
    if (row.F_min > 0.0) rel_var += (1.0 - row.F_min) / (n_trials * row.F_min);
    if (row.F_pooled > 0.0) rel_var += (1.0 - row.F_pooled) / (n_all * row.F_pooled);
    row.sigma = std::sqrt(rel_var);
    row.satisfied = row.F_min <= row.bound * (1.0 + 3.0 * row.sigma);
    rows.push_back(row);
  }
  return rows;
}

double min_bound_log_offset(std::span<const MinBoundRow> rows, std::size_t trials,
                            double max_F_min, std::size_t min_trials) {
  std::vector<double> offsets;
  for (const auto& row : rows) {
    const double count = row.F_min * static_cast<double>(trials);
    if (row.F_min > 0.0 && row.F_min <= max_F_min && row.F_pooled > 0.0 &&
        count + 0.5 >= static_cast<double>(min_trials)) {
      offsets.push_back(std::log10(row.F_min / row.F_pooled));
    }
  }
  if (offsets.empty()) {
    throw FitError("no grid point has enough minimum-eigenvalue mass for an offset estimate");
  }
  std::sort(offsets.begin(), offsets.end());
  const std::size_t m = offsets.size() / 2;
  return offsets.size() % 2 == 1 ? offsets[m] : 0.5 * (offsets[m - 1] + offsets[m]);
}

namespace {

double quantile(std::vector<double> v, double q) {
  std::sort(v.begin(), v.end());
  const double pos = q * static_cast<double>(v.size() - 1);
  const auto i = static_cast<std::size_t>(std::floor(pos));
  const std::size_t j = std::min(i + 1, v.size() - 1);
  return v[i] + (pos - static_cast<double>(i)) * (v[j] - v[i]);
}

// Densities of log10 kappa and of a reflected reference sample on a shared
// grid of log10 bins. `reference` holds values whose log10 is reflected as
// d - log10(v); `scale` multiplies the reference density.
MirrorReport compare_reflected(const SpectralEnsemble& ensemble,
                               std::span<const double> reference, double scale,
                               const MirrorOptions& options) {
  if (options.bins_per_decade < 1) throw InvalidArgument("bins per decade must be positive");
  if (!(options.quantile_lo >= 0.0 && options.quantile_lo < options.quantile_hi &&
        options.quantile_hi <= 1.0)) {
    throw InvalidArgument("quantile window must satisfy 0 <= lo < hi <= 1");
  }
  std::vector<double> log_kappa;
  for (double k : ensemble.kappas) {
    if (std::isfinite(k) && k > 0.0) log_kappa.push_back(std::log10(k));
  }
  std::vector<double> mirrored;  // 10^(d - log10 v) = 10^d / v
  for (double v : reference) {
    if (v > 0.0 && std::isfinite(v)) mirrored.push_back(std::pow(10.0, options.d) / v);
  }
  if (log_kappa.empty() || mirrored.empty()) {
    throw FitError("no finite condition numbers or positive reference values");
  }

  const auto per = options.bins_per_decade;
  double lo = *std::min_element(log_kappa.begin(), log_kappa.end());
  double hi = *std::max_element(log_kappa.begin(), log_kappa.end());
  for (double m : mirrored) {
    lo = std::min(lo, std::log10(m));
    hi = std::max(hi, std::log10(m));
  }
  const long j0 = static_cast<long>(std::floor(lo * per));
  const long j1 = static_cast<long>(std::floor(hi * per)) + 1;
  std::vector<double> edges;
  for (long j = j0; j <= j1; ++j) edges.push_back(static_cast<double>(j) / per);

  const Histogram hk = log10_histogram(ensemble.kappas, edges);
  Histogram hr = log10_histogram(mirrored, edges);
  hr.total = reference.size();

  MirrorReport rep;
  rep.kappa_bins = hk.nonempty();
  rep.reference_bins = hr.nonempty();
  if (rep.kappa_bins < options.min_bins || rep.reference_bins < options.min_bins) {
    std::ostringstream msg;
    msg << "histograms have " << rep.kappa_bins << " and " << rep.reference_bins
        << " nonempty log bins; need " << options.min_bins << " (enlarge trials)";
    throw FitError(msg.str());
  }

  const double y_lo = quantile(log_kappa, options.quantile_lo);
  const double y_hi = quantile(log_kappa, options.quantile_hi);
  for (std::size_t i = 0; i < hk.bins(); ++i) {
    const double y = hk.center(i);
    if (y < y_lo || y > y_hi) continue;
    const double dk = hk.density(i);
    const double dr = hr.density(i) * scale;
    if (!(dk > 0.0) || !(dr > 0.0)) continue;
    MirrorRow row{y, std::log10(dk), std::log10(dr)};
    rep.max_discrepancy =
        std::max(rep.max_discrepancy, std::abs(row.gamma_kappa - row.gamma_reference));
    rep.rows.push_back(row);
  }
  if (rep.rows.empty()) throw FitError("no comparable bins inside the quantile window");
  return rep;
}

}  // namespace

MirrorReport kappa_mirror_check(const SpectralEnsemble& ensemble,
                                const MirrorOptions& options) {
  return compare_reflected(ensemble, ensemble.min_eigs, 1.0, options);
}

MirrorReport kappa_union_shape_check(const SpectralEnsemble& ensemble,
                                     MirrorOptions options) {
  return compare_reflected(ensemble, ensemble.all_eigenvalues,
                           static_cast<double>(ensemble.spec.order()), options);
}

}  // namespace fieldspec
