#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>
#include <numbers>

#include "fieldspec/error.hpp"
#include "fieldspec/precond.hpp"
#include "fieldspec/rng.hpp"
#include "fieldspec/signal.hpp"
#include "fieldspec/toeplitz.hpp"
#include "oracles.hpp"

using namespace fieldspec;

namespace {

SampleSet random_samples(int M, std::size_t r, std::uint64_t seed) {
  const auto t = random_topology(r, 0.0, 1.0, seed);
  return sample_signal(BandlimitedSignal::random_real(M, seed ^ 0xabcdefULL), t);
}

cdouble cis(double x) { return {std::cos(x), std::sin(x)}; }

}  // namespace

TEST(BuildSystem, RegularGridGivesIdentity) {
  const int M = 3;
  const auto t = regular_topology(4 * M + 2);
  const auto sys = build_system(sample_signal(BandlimitedSignal::random_real(M, 1), t), M, false);
  EXPECT_EQ(sys.generator(0), cdouble(1.0));
  for (int l = 1; l <= 2 * M; ++l) {
    EXPECT_LT(std::abs(sys.generator(l)), 1e-14);
    EXPECT_LT(std::abs(sys.generator(-l)), 1e-14);
  }
}

TEST(BuildSystem, SingleSampleGenerators) {
  const SampleSet s({0.3}, {1.0});
  const auto sys = build_system(s, 1, false);
  ASSERT_EQ(sys.generators().size(), 5u);
  for (int l = -2; l <= 2; ++l) {
    EXPECT_LT(std::abs(sys.generator(l) - cis(2 * std::numbers::pi * l * 0.3)), 1e-14);
  }
  EXPECT_THROW(build_system(s, 1, true), InvalidArgument);
}

TEST(BuildSystem, HermitianSymmetryAndUnitR0) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const int M = 1 + static_cast<int>(seed % 6);
    const auto s = random_samples(M, 3 + seed, seed);
    for (bool weighted : {false, true}) {
      const auto sys = build_system(s, M, weighted);
      for (int l = 0; l <= 2 * M; ++l) {
        EXPECT_LT(std::abs(sys.generator(-l) - std::conj(sys.generator(l))), 1e-15);
      }
      if (!weighted) EXPECT_EQ(sys.generator(0), cdouble(1.0));
      if (weighted) EXPECT_NEAR(sys.generator(0).real(), 1.0, 1e-12);
    }
  }
}

TEST(BuildSystem, RejectsNonHermitianGenerators) {
  std::vector<cdouble> g{cdouble(0, 1), 0.0, 1.0, 0.0, cdouble(0, 1)};
  EXPECT_THROW(ToeplitzSystem(1, 3, g, {}, false), InvalidArgument);
  EXPECT_THROW(ToeplitzSystem(1, 3, {1.0, 1.0}, {}, false), InvalidArgument);
}

TEST(Eig, IdentitySpectrum) {
  const int M = 4;
  const auto sys = build_system(sample_signal(BandlimitedSignal::random_real(M, 2),
                                              regular_topology(4 * M + 1)),
                                M, false);
  const auto spec = eig_hermitian(sys);
  for (double l : spec.eigenvalues) EXPECT_NEAR(l, 1.0, 1e-12);
  EXPECT_NEAR(spec.kappa, 1.0, 1e-12);
}

TEST(Eig, ZeroBandwidth) {
  const auto sys = build_system(random_samples(0, 5, 3), 0, false);
  const auto spec = eig_hermitian(sys);
  ASSERT_EQ(spec.eigenvalues.size(), 1u);
  EXPECT_DOUBLE_EQ(spec.eigenvalues[0], 1.0);
  EXPECT_DOUBLE_EQ(spec.kappa, 1.0);
}

TEST(Eig, MatchesCubicRoots) {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const auto sys = build_system(random_samples(1, 3, seed), 1, false);
    const auto spec = eig_hermitian(sys);
    const auto T = dense_matrix(sys);
    std::array<std::array<cdouble, 3>, 3> a{};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) a[i][j] = T(i, j);
    const auto roots = oracle::hermitian3_eigenvalues(a);
    for (int i = 0; i < 3; ++i) EXPECT_NEAR(spec.eigenvalues[i], roots[i], 1e-8) << seed;
  }
}

TEST(Eig, SingularSystemHasInfiniteKappa) {
  // Two samples cannot determine 5 coefficients: rank 2.
  const auto sys = build_system(SampleSet({0.1, 0.6}, {1.0, 2.0}), 2, false);
  const auto spec = eig_hermitian(sys);
  EXPECT_EQ(spec.eigenvalues[0], 0.0);
  EXPECT_TRUE(std::isinf(spec.kappa));
}

TEST(Eig, ResidualsTraceAndPowerTraces) {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const int M = 5 + static_cast<int>(seed) * 3;
    const auto sys = build_system(random_samples(M, static_cast<std::size_t>(2 * M + 1) * 2, seed), M, false);
    const auto spec = eig_hermitian(sys);
    const Eigen::MatrixXcd T = dense_matrix(sys);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(T);
    const double norm = T.norm();
    for (int i = 0; i < T.rows(); ++i) {
      const Eigen::VectorXcd v = es.eigenvectors().col(i);
      EXPECT_LE((T * v - es.eigenvalues()(i) * v).norm(), 1e-9 * norm);
    }
    double sum = 0;
    for (double l : spec.eigenvalues) sum += l;
    EXPECT_NEAR(sum, 2.0 * M + 1, 1e-10 * (2 * M + 1));
    Eigen::MatrixXcd power = Eigen::MatrixXcd::Identity(T.rows(), T.cols());
    for (int p = 1; p <= 5; ++p) {
      power = power * T;
      double ps = 0;
      for (double l : spec.eigenvalues) ps += std::pow(l, p);
      EXPECT_NEAR(ps, power.trace().real(), 1e-8 * std::abs(power.trace().real()));
    }
  }
}

TEST(Eig, PositiveSemidefiniteAcrossRandomSystems) {
  Rng pick(5);
  const double betas[] = {0.25, 0.5, 0.75};
  for (int trial = 0; trial < 1000; ++trial) {
    const int M = 1 + static_cast<int>(pick.next_u64() % 20);
    const double beta = betas[pick.next_u64() % 3];
    const auto r = static_cast<std::size_t>(std::lround((2 * M + 1) / beta));
    const auto t = random_topology(r, 0.0, 1.0, derive_seed(77, trial));
    const auto g = toeplitz_generators(t, M);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(dense_matrix(M, g), Eigen::EigenvaluesOnly);
    const double lmax = es.eigenvalues().maxCoeff();
    ASSERT_GE(es.eigenvalues().minCoeff(), -1e-10 * lmax) << trial;
    const auto spec = eig_hermitian(M, g);
    ASSERT_GE(spec.lambda_min, 0.0);
    ASSERT_GE(spec.kappa, 1.0);
  }
}

TEST(Solve, IdentitySolveReturnsRhs) {
  const int M = 2;
  const auto s = sample_signal(BandlimitedSignal::random_real(M, 4), regular_topology(9));
  const auto sys = build_system(s, M, false);
  const auto sol = solve(sys);
  for (std::size_t i = 0; i < sol.coeffs.size(); ++i) {
    EXPECT_LT(std::abs(sol.coeffs[i] - sys.rhs()[i]), 1e-13);
  }
  EXPECT_FALSE(sol.diagnostics.ill_conditioned);
}

TEST(Solve, RecoversCoefficientsOnWellConditionedDraw) {
  const int M = 6;
  const auto sig = BandlimitedSignal::random_real(M, 8);
  const auto s = sample_signal(sig, random_topology(60, 0.0, 1.0, 8));
  for (bool weighted : {false, true}) {
    const auto sol = solve(build_system(s, M, weighted));
    ASSERT_FALSE(sol.diagnostics.ill_conditioned);
    for (int k = -M; k <= M; ++k) {
      EXPECT_LT(std::abs(sol.coeffs[static_cast<std::size_t>(k + M)] - sig.coeff(k)), 1e-9);
    }
  }
}

TEST(Solve, FlagsSingularSystemWithoutThrowing) {
  const auto sys = build_system(SampleSet({0.1, 0.6}, {1.0, 2.0}), 2, false);
  Solution sol;
  ASSERT_NO_THROW(sol = solve(sys));
  EXPECT_TRUE(sol.diagnostics.ill_conditioned);
  EXPECT_EQ(sol.coeffs.size(), 5u);
  for (auto c : sol.coeffs) EXPECT_TRUE(std::isfinite(std::abs(c)));
}

TEST(Solve, JsonRoundTrip) {
  const auto sys = build_system(random_samples(3, 11, 5), 3, true);
  const auto back = system_from_json(to_json(sys));
  EXPECT_EQ(back.M(), sys.M());
  EXPECT_EQ(back.sample_count(), sys.sample_count());
  EXPECT_EQ(back.weighted(), sys.weighted());
  EXPECT_EQ(back.generators(), sys.generators());
  EXPECT_EQ(back.rhs(), sys.rhs());
}

TEST(Precond, BoundValues) {
  EXPECT_NEAR(precond_bound(1.0 / 40.0, 10), 9.0, 1e-12);
  EXPECT_NEAR(precond_bound(1e-12, 10), 1.0, 1e-9);
  EXPECT_TRUE(std::isinf(precond_bound(1.0 / 20.0, 10)));
  EXPECT_TRUE(std::isinf(precond_bound(0.3, 10)));
  EXPECT_THROW(precond_bound(0.0, 10), InvalidArgument);
  EXPECT_THROW(precond_bound(-0.1, 10), InvalidArgument);
}

TEST(Precond, JitteredTopologiesSatisfyGapCondition) {
  for (int M : {5, 10, 20}) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const auto t = dense_jittered_topology(M, seed);
      EXPECT_LT(gap_profile(t).delta, 1.0 / (2.0 * M));
      EXPECT_GE(t.size(), static_cast<std::size_t>(2 * M + 1));
    }
  }
}

TEST(Precond, WeightedKappaWithinBound) {
  for (int M : {5, 10, 20}) {
    const auto trials = run_precond_check(M, 100, 2024 + M, 1);
    for (const auto& tr : trials) {
      EXPECT_TRUE(tr.satisfied) << "M=" << M << " seed=" << tr.seed << " kappa=" << tr.kappa_weighted
                                << " bound=" << tr.bound;
      EXPECT_GE(tr.kappa_weighted, 1.0);
    }
  }
}

TEST(Precond, WeightingReducesToPlainOnRegularGrid) {
  const int M = 3;
  const auto s = sample_signal(BandlimitedSignal::random_real(M, 1), regular_topology(17));
  const auto plain = build_system(s, M, false);
  const auto weighted = build_system(s, M, true);
  for (int l = -2 * M; l <= 2 * M; ++l) {
    EXPECT_LT(std::abs(plain.generator(l) - weighted.generator(l)), 1e-14);
  }
}

TEST(BuildSystem, GeneratorsMatchDirectExponentialSums) {
  const int M = 200;
  const auto t = random_topology(900, 0.0, 1.0, 12);
  const auto g = toeplitz_generators(t, M);
  for (int l = -2 * M; l <= 2 * M; l += 7) {
    cdouble direct = 0.0;
    for (double x : t) direct += cis(2 * std::numbers::pi * l * x);
    direct /= static_cast<double>(t.size());
    EXPECT_LT(std::abs(g[static_cast<std::size_t>(l + 2 * M)] - direct), 1e-13) << l;
  }
}
