#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "fieldspec/error.hpp"
#include "fieldspec/rng.hpp"
#include "fieldspec/spectral.hpp"

using namespace fieldspec;

TEST(Ensemble, SpecDerivesR) {
  const EnsembleSpec s(200, 0.75, 10, 1);
  EXPECT_EQ(s.r(), 535u);
  EXPECT_NEAR(s.realized_beta(), 401.0 / 535.0, 1e-15);
  EXPECT_EQ(EnsembleSpec(200, 0.25, 1, 1).r(), 1604u);
  EXPECT_THROW(EnsembleSpec(0, 0.5, 1, 1), InvalidArgument);
  EXPECT_THROW(EnsembleSpec(1, 0.0, 1, 1), InvalidArgument);
  EXPECT_THROW(EnsembleSpec(1, 2.5, 1, 1), InvalidArgument);
  EXPECT_THROW(EnsembleSpec(1, 0.5, 0, 1), InvalidArgument);
}

TEST(Ensemble, SmallTraceIdentity) {
  const auto e = run_ensemble(EnsembleSpec(1, 0.25, 1, 3), 1);
  ASSERT_EQ(e.all_eigenvalues.size(), 3u);
  EXPECT_NEAR(std::accumulate(e.all_eigenvalues.begin(), e.all_eigenvalues.end(), 0.0), 3.0, 1e-10);
  EXPECT_EQ(e.failures, 0u);
}

TEST(Ensemble, PerTrialInvariantsAndDeterminism) {
  const EnsembleSpec spec(6, 0.5, 30, 17);
  const auto a = run_ensemble(spec, 1);
  const auto b = run_ensemble(spec, 3);
  EXPECT_EQ(a.all_eigenvalues, b.all_eigenvalues);
  EXPECT_EQ(a.kappas, b.kappas);
  for (std::size_t i = 0; i < a.retained(); ++i) {
    const auto ev = a.trial_eigenvalues(i);
    EXPECT_EQ(ev.size(), 13u);
    EXPECT_TRUE(std::is_sorted(ev.begin(), ev.end()));
    EXPECT_EQ(a.min_eigs[i], ev.front());
    EXPECT_GE(a.kappas[i], 1.0);
  }
}

TEST(Ensemble, MomentsMatchClosedForms) {
  const auto e = run_ensemble(EnsembleSpec(20, 0.5, 300, 5), 0);
  const auto m = empirical_moments(e, 2);
  ASSERT_EQ(m.size(), 2u);
  // Each trial trace is exactly 2M+1.
  EXPECT_NEAR(m[0].mean, 1.0, 1e-12);
  const double beta = e.spec.realized_beta();
  // Finite-size E[lambda^2] = 1 + 2M/r.
  const double exact = 1.0 + 40.0 / static_cast<double>(e.spec.r());
  EXPECT_NEAR(m[1].mean, exact, 3 * m[1].std_error + 1e-12);
  EXPECT_NEAR(m[1].mean, 1.0 + beta, 0.05);
}

TEST(Ensemble, HistogramsFromDisjointSeedsAgree) {
  auto l1 = [](int trials) {
    const auto a = run_ensemble(EnsembleSpec(10, 0.25, trials, 100), 0);
    const auto b = run_ensemble(EnsembleSpec(10, 0.25, trials, 200), 0);
    auto ha = linear_histogram(a.all_eigenvalues, 0.1);
    auto hb = linear_histogram(b.all_eigenvalues, 0.1);
    // Compare on a common grid keyed by bin center.
    double d = 0.0;
    const double lo = std::min(ha.edges.front(), hb.edges.front());
    const double hi = std::max(ha.edges.back(), hb.edges.back());
    for (double x = lo + 0.05; x < hi; x += 0.1) {
      auto density_at = [x](const Histogram& h) {
        for (std::size_t i = 0; i < h.bins(); ++i) {
          if (x >= h.edges[i] && x < h.edges[i + 1]) return h.density(i);
        }
        return 0.0;
      };
      d += std::abs(density_at(ha) - density_at(hb)) * 0.1;
    }
    return d;
  };
  const double small = l1(100);
  const double large = l1(1000);
  EXPECT_LT(large, 0.05);
  EXPECT_LT(large, small);
}

TEST(Histogram, LinearBinsAreAlignedAndNormalized) {
  const std::vector<double> v{0.01, 0.05, 0.12, 0.31, 0.33};
  const auto h = linear_histogram(v, 0.1);
  EXPECT_NEAR(h.edges.front(), 0.0, 1e-15);
  EXPECT_NEAR(h.edges.back(), 0.4, 1e-12);
  EXPECT_EQ(h.counts, (std::vector<std::size_t>{2, 1, 0, 2}));
  double integral = 0;
  for (std::size_t i = 0; i < h.bins(); ++i) integral += h.density(i) * 0.1;
  EXPECT_NEAR(integral, 1.0, 1e-12);
  EXPECT_EQ(h.nonempty(), 3u);
}

TEST(Histogram, LogBinsSkipNonpositiveButNormalizeByAll) {
  const std::vector<double> v{0.0, 1e-3, 2e-3, 0.5};
  const auto h = log10_histogram(v, 10);
  EXPECT_EQ(h.total, 4u);
  std::size_t counted = 0;
  for (auto c : h.counts) counted += c;
  EXPECT_EQ(counted, 3u);
}

TEST(Cdf, SimpleValues) {
  const std::vector<double> v{1, 2, 3};
  const std::vector<double> g{2};
  EXPECT_NEAR(empirical_cdf(v, g)[0].F, 2.0 / 3.0, 1e-15);
  const std::vector<double> none;
  EXPECT_THROW(empirical_cdf(none, g), InvalidArgument);
  const std::vector<double> bad{2, 1};
  EXPECT_THROW(empirical_cdf(v, bad), InvalidArgument);
}

TEST(Cdf, MonotoneAndReachesOne) {
  Rng rng(3);
  std::vector<double> v(500);
  for (auto& x : v) x = rng.uniform(0.01, 10.0);
  const auto grid = log_grid(1e-3, 20.0, 10);
  const auto cdf = empirical_cdf(v, grid);
  for (std::size_t i = 1; i < cdf.size(); ++i) EXPECT_GE(cdf[i].F, cdf[i - 1].F);
  EXPECT_EQ(cdf.back().F, 1.0);
}

TEST(TailFit, RecoversKnownPowerLaw) {
  // x = sqrt(u) has F(x) = x^2 on [0, 1].
  Rng rng(12);
  std::vector<double> v(200000);
  for (auto& x : v) x = std::sqrt(rng.uniform());
  const auto cdf = empirical_cdf(v, log_grid(1e-4, 1.0, 20));
  const auto fit = fit_tail(cdf);
  EXPECT_NEAR(fit.a_hat, 2.0, 0.1);
  EXPECT_NEAR(fit.b_hat, 1.0, 0.2);
  EXPECT_GT(fit.a_hat, 0.0);
  EXPECT_GT(fit.r_squared, 0.99);

  TailFitOptions below;
  below.placement = TailWindow::below;
  EXPECT_NEAR(fit_tail(cdf, below).a_hat, 2.0, 0.15);
}

TEST(TailFit, FailsWithoutEnoughPoints) {
  const std::vector<double> v{0.5, 0.6, 0.7};
  const auto cdf = empirical_cdf(v, log_grid(0.1, 1.0, 10));
  EXPECT_THROW(fit_tail(cdf), FitError);
}

TEST(MinBound, SingleTrialIsTriviallySatisfiedBelowItsMinimum) {
  const auto e = run_ensemble(EnsembleSpec(3, 0.5, 1, 9), 1);
  const std::vector<double> grid{e.min_eigs[0] * 0.5};
  const auto rows = check_min_eig_bound(e, grid);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].F_min, 0.0);
  EXPECT_EQ(rows[0].bound, 0.0);
  EXPECT_TRUE(rows[0].satisfied);
}

TEST(MinBound, UnionBoundHoldsOnSmallEnsemble) {
  const auto e = run_ensemble(EnsembleSpec(8, 0.5, 400, 21), 0);
  const auto rows = check_min_eig_bound(e, log_grid(1e-4, 0.1, 10));
  for (const auto& row : rows) {
    EXPECT_TRUE(row.satisfied) << row.x;
    EXPECT_LE(row.F_min, row.bound + 1e-15);
  }
}

TEST(Mirror, KappaAtLeastOneAndWindowedComparison) {
  const auto e = run_ensemble(EnsembleSpec(10, 0.25, 2000, 4), 0);
  EXPECT_GE(*std::min_element(e.kappas.begin(), e.kappas.end()), 1.0);
  const auto rep = kappa_mirror_check(e);
  EXPECT_FALSE(rep.rows.empty());
  EXPECT_LT(rep.max_discrepancy, 0.5);
}

TEST(Mirror, TooFewTrialsIsAFitError) {
  const auto e = run_ensemble(EnsembleSpec(3, 0.25, 5, 4), 1);
  EXPECT_THROW(kappa_mirror_check(e), FitError);
}

TEST(Mirror, MirrorAndUnionShapeAtLargerBandwidth) {
  const auto e = run_ensemble(EnsembleSpec(40, 0.25, 3000, 40), 0);
  EXPECT_LT(kappa_mirror_check(e).max_discrepancy, 0.5);
  EXPECT_LT(kappa_union_shape_check(e).max_discrepancy, 0.7);
}
