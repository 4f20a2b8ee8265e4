#include <gtest/gtest.h>

#include <cmath>
#include "json.hpp"

#include "fieldspec/error.hpp"
#include "fieldspec/reconstruct.hpp"
#include "fieldspec/rng.hpp"

using namespace fieldspec;

TEST(Reconstruct, NyquistRegularIsExact) {
  for (int M : {0, 1, 4, 10}) {
    const auto sig = BandlimitedSignal::random_real(M, 31 + M);
    const auto s = sample_signal(sig, regular_topology(static_cast<std::size_t>(2 * M + 2)));
    for (bool weighted : {false, true}) {
      if (weighted && M == 0) continue;
      const auto rep = reconstruct(s, M, {weighted}, &sig);
      ASSERT_TRUE(rep.rel_l2_error.has_value());
      EXPECT_LT(*rep.rel_l2_error, 1e-10);
      EXPECT_NEAR(rep.kappa, 1.0, 1e-10);
      EXPECT_TRUE(rep.success);
      EXPECT_EQ(rep.beta, (2.0 * M + 1) / (2.0 * M + 2));
    }
  }
}

TEST(Reconstruct, GappedSupportStillRecovers) {
  // r = 26 on [0, 0.8) with M = 10: the largest gap exceeds 1/(2M) yet most
  // draws reconstruct.
  int ok = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto sig = BandlimitedSignal::random_real(10, derive_seed(seed, 1));
    const auto s = sample_signal(sig, random_topology(26, 0.0, 0.8, derive_seed(seed, 0)));
    const auto rep = reconstruct(s, 10, {}, &sig);
    EXPECT_GT(rep.delta, 0.05);
    EXPECT_NEAR(rep.beta, 21.0 / 26.0, 1e-15);
    if (rep.success && *rep.rel_l2_error < 1e-6) ++ok;
  }
  EXPECT_GE(ok, 35);
}

TEST(Reconstruct, WellConditionedReportsAreAccurate) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto sig = BandlimitedSignal::random_real(8, derive_seed(seed, 1));
    const auto s = sample_signal(sig, random_topology(30, 0.0, 1.0, derive_seed(seed, 0)));
    const auto rep = reconstruct(s, 8, {}, &sig);
    if (rep.kappa < 1e8) EXPECT_LT(*rep.rel_l2_error, 1e-6) << seed;
  }
}

TEST(Reconstruct, SecondPassIsIdempotent) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const int M = 6;
    const auto sig = BandlimitedSignal::random_real(M, seed);
    const auto t = random_topology(20, 0.0, 1.0, seed + 1000);
    const auto first = reconstruct(sample_signal(sig, t), M);
    if (!first.success) continue;
    const BandlimitedSignal fitted(M, first.coeffs_hat);
    const auto second = reconstruct(sample_signal(fitted, t), M);
    for (std::size_t i = 0; i < first.coeffs_hat.size(); ++i) {
      EXPECT_LT(std::abs(first.coeffs_hat[i] - second.coeffs_hat[i]), 1e-8);
    }
  }
}

TEST(Reconstruct, ReportsBothConditionNumbers) {
  const auto sig = BandlimitedSignal::random_real(5, 3);
  const auto s = sample_signal(sig, random_topology(25, 0.0, 1.0, 3));
  const auto plain = reconstruct(s, 5, {false});
  const auto weighted = reconstruct(s, 5, {true});
  ASSERT_TRUE(plain.kappa_other && weighted.kappa_other);
  EXPECT_NEAR(*plain.kappa_other, weighted.kappa, 1e-8 * weighted.kappa);
  EXPECT_NEAR(*weighted.kappa_other, plain.kappa, 1e-8 * plain.kappa);

  const auto j = nlohmann::json::parse(to_json(plain));
  EXPECT_TRUE(j.contains("kappa_weighted"));
  EXPECT_EQ(j["success"], plain.success);
  EXPECT_EQ(j["coeffs_hat"].size(), 11u);
}

TEST(Reconstruct, SingleSample) {
  const SampleSet s({0.25}, {2.0});
  const auto rep = reconstruct(s, 0);
  EXPECT_TRUE(rep.success);
  EXPECT_NEAR(rep.coeffs_hat[0].real(), 2.0, 1e-15);
  EXPECT_FALSE(rep.kappa_other.has_value());
}

TEST(Reconstruct, UnderdeterminedIsFlagged) {
  const auto sig = BandlimitedSignal::random_real(5, 1);
  const auto s = sample_signal(sig, random_topology(6, 0.0, 1.0, 1));
  const auto rep = reconstruct(s, 5, {}, &sig);
  EXPECT_FALSE(rep.success);
  EXPECT_TRUE(std::isinf(rep.kappa));
  EXPECT_TRUE(nlohmann::json::parse(to_json(rep))["kappa"].is_null());
}

TEST(Sweep, RegularCellAlwaysSucceeds) {
  SweepGrid grid;
  grid.M_list = {4};
  grid.r_list = {10};
  grid.trials = 5;
  grid.regular = true;
  const auto cells = sweep(grid, 1, 1);
  ASSERT_EQ(cells.size(), 1u);
  EXPECT_EQ(cells[0].success_frac, 1.0);
  EXPECT_NEAR(cells[0].mean_kappa_success, 1.0, 1e-10);
  EXPECT_NEAR(cells[0].mean_delta, 0.1, 1e-15);
}

TEST(Sweep, DeterministicAcrossThreadCounts) {
  SweepGrid grid;
  grid.M_list = {3, 5};
  grid.r_list = {9, 15, 30};
  grid.trials = 40;
  const auto a = sweep(grid, 99, 1);
  const auto b = sweep(grid, 99, 4);
  ASSERT_EQ(a.size(), 6u);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].success_frac, b[i].success_frac);
    EXPECT_EQ(a[i].mean_delta, b[i].mean_delta);
    if (!std::isnan(a[i].mean_kappa_success)) {
      EXPECT_EQ(a[i].mean_kappa_success, b[i].mean_kappa_success);
    }
  }
}

TEST(Sweep, SuccessGrowsWithSampleCount) {
  SweepGrid grid;
  grid.M_list = {10};
  grid.r_list = {25, 50, 100};
  grid.trials = 500;
  const auto cells = sweep(grid, 7, 0);
  for (std::size_t i = 0; i + 1 < cells.size(); ++i) {
    const double p = cells[i].success_frac;
    const double q = cells[i + 1].success_frac;
    const double sigma = std::sqrt((p * (1 - p) + q * (1 - q)) / 500.0);
    EXPECT_GE(q + 2 * sigma, p);
  }
}

TEST(Sweep, GappedSupportBeatsFullSupportAtFewerSamples) {
  SweepGrid gapped{{10}, {26}, 0.0, 0.8, 1000};
  SweepGrid full{{10}, {21}, 0.0, 1.0, 1000};
  EXPECT_GT(sweep(gapped, 5, 0)[0].success_frac, sweep(full, 5, 0)[0].success_frac);
}

TEST(Sweep, RejectsEmptyGrid) {
  EXPECT_THROW(sweep(SweepGrid{}, 1), InvalidArgument);
  SweepGrid g{{1}, {3}, 0.0, 1.0, 0};
  EXPECT_THROW(sweep(g, 1), InvalidArgument);
}
