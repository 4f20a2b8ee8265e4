#include <gtest/gtest.h>

#include <cmath>

#include "fieldspec/error.hpp"
#include "fieldspec/lattice.hpp"
#include "fieldspec/moments.hpp"
#include "fieldspec/partition.hpp"
#include "oracles.hpp"

using namespace fieldspec;

namespace {

const SetPartition kFourBlocks =
    partition_from_index_vector(std::vector<long long>{4, 9, 5, 5, 4, 3});

Rational q(long long n, long long d = 1) { return Rational(n) / Rational(d); }

MomentPolynomial poly(int p, std::vector<Rational> coeffs_by_k) {
  MomentPolynomial m;
  m.p = p;
  m.coeffs = std::move(coeffs_by_k);
  return m;
}

}  // namespace

TEST(Rational, InterpolationAndPrinting) {
  // 1, 4, 9, 16 -> (N+1)^2.
  const auto p = RationalPolynomial::interpolate_at_naturals({1, 4, 9, 16});
  EXPECT_EQ(p, RationalPolynomial({1, 2, 1}));
  EXPECT_EQ(p.to_string(), "N^2 + 2*N + 1");
  EXPECT_EQ(p(Rational(5)), 36);
  EXPECT_DOUBLE_EQ(p.evaluate(0.5), 2.25);
  EXPECT_EQ(RationalPolynomial().degree(), -1);
  EXPECT_EQ(to_string(q(20, 3)), "20/3");
  EXPECT_EQ(to_string(q(-4, 2)), "-2");
}

TEST(Lattice, MatchesBruteForceForSmallPartitions) {
  for (int p = 1; p <= 4; ++p) {
    for_each_partition(p, [](const SetPartition& tau) {
      for (int N = 0; N <= 6; ++N) {
        const auto expected = oracle::brute_force_count(tau, N);
        EXPECT_EQ(count_lattice_points(tau, static_cast<std::uint64_t>(N)), expected)
            << tau.to_string() << " N=" << N;
        EXPECT_EQ(count_lattice_points_by_elimination(tau, static_cast<std::uint64_t>(N)), expected);
      }
    });
  }
}

TEST(Lattice, FourBlockCountIsCube) {
  for (std::uint64_t N : {0u, 1u, 2u, 5u, 10u, 400u}) {
    EXPECT_EQ(count_lattice_points(kFourBlocks, N), BigInt((N + 1) * (N + 1) * (N + 1)));
  }
}

TEST(Lattice, SingletonsGiveDiagonal) {
  const SetPartition singletons({0, 1, 2});
  for (int N = 0; N <= 4; ++N) {
    EXPECT_EQ(oracle::brute_force_count(singletons, N), static_cast<std::uint64_t>(N + 1));
    EXPECT_EQ(count_lattice_points(singletons, static_cast<std::uint64_t>(N)), N + 1);
  }
}

TEST(Lattice, FlowAndEliminationAgreeAtLargerSizes) {
  for (int p = 5; p <= 7; ++p) {
    for_each_partition(p, [p](const SetPartition& tau) {
      if (p - tau.k() + 1 > 4) return;  // keep elimination cheap
      EXPECT_EQ(count_lattice_points(tau, 5), count_lattice_points_by_elimination(tau, 5))
          << tau.to_string();
    });
  }
}

TEST(Lattice, BigCountsUseArbitraryPrecision) {
  // Single block at p = 12: every point of the box counts, (N+1)^12 > 2^64.
  const SetPartition one(std::vector<int>(12, 0));
  BigInt expected = 1;
  for (int i = 0; i < 12; ++i) expected *= 401;
  EXPECT_EQ(count_lattice_points(one, 400), expected);
  EXPECT_GT(expected, BigInt(std::numeric_limits<std::uint64_t>::max()));
}

TEST(Zeta, KnownPolynomials) {
  EXPECT_EQ(zeta_polynomial(kFourBlocks), RationalPolynomial({1, 3, 3, 1}));
  EXPECT_EQ(zeta_polynomial(SetPartition({0, 0})), RationalPolynomial({1, 2, 1}));
  EXPECT_EQ(zeta_polynomial(SetPartition({0, 1, 2})), RationalPolynomial({1, 1}));
  EXPECT_EQ(volume_coefficient(kFourBlocks), 1);
  EXPECT_EQ(volume_coefficient(SetPartition({0, 1, 0, 0})), 1);
}

TEST(Zeta, OutOfSampleNodeAgreesWithCounting) {
  for (int p = 1; p <= 6; ++p) {
    for_each_partition(p, [p](const SetPartition& tau) {
      const auto z = zeta_polynomial(tau);
      EXPECT_EQ(z.degree(), p - tau.k() + 1);
      EXPECT_EQ(z(Rational(7)), Rational(count_lattice_points(tau, 7))) << tau.to_string();
    });
  }
}

TEST(Zeta, VolumesLieInUnitInterval) {
  bool some_below_one = false;
  for_each_partition(4, [&](const SetPartition& tau) {
    const auto v = volume_coefficient(tau);
    EXPECT_GT(v, 0);
    EXPECT_LE(v, 1);
    if (tau.k() == 2 && v < 1) some_below_one = true;
  });
  EXPECT_TRUE(some_below_one);
}

TEST(Moments, ExactPolynomials) {
  EXPECT_EQ(moment_polynomial(1).coeffs, poly(1, {1}).coeffs);
  EXPECT_EQ(moment_polynomial(2).coeffs, poly(2, {1, 1}).coeffs);
  EXPECT_EQ(moment_polynomial(3).coeffs, poly(3, {1, 3, 1}).coeffs);
  // coeffs[k-1] multiplies beta^(p-k).
  EXPECT_EQ(moment_polynomial(4).coeffs, poly(4, {1, q(20, 3), 6, 1}).coeffs);
  EXPECT_EQ(moment_polynomial(5).coeffs, poly(5, {1, q(40, 3), q(70, 3), 10, 1}).coeffs);
  EXPECT_EQ(moment_polynomial(4).to_string(), "1 + 6*beta + 20/3*beta^2 + beta^3");
}

TEST(Moments, StructuralInvariants) {
  for (int p = 1; p <= 7; ++p) {
    const auto m = moment_polynomial(p);
    EXPECT_EQ(m.coeffs.front(), 1);
    EXPECT_EQ(m.coeffs.back(), 1);
    for (const auto& c : m.coeffs) EXPECT_GT(c, 0);
    EXPECT_LE(m.in_beta().degree(), p - 1);
    EXPECT_EQ(m.evaluate(Rational(0)), 1);
  }
}

TEST(Moments, DihedralGroupingMatchesDirectSum) {
  for (int p = 1; p <= 6; ++p) {
    std::vector<RationalPolynomial> direct(static_cast<std::size_t>(p));
    for_each_partition(p, [&](const SetPartition& tau) {
      direct[static_cast<std::size_t>(tau.k() - 1)] += zeta_polynomial(tau);
    });
    const auto table = zeta_table(p, 2);
    EXPECT_EQ(table.by_k, direct) << p;
  }
}

TEST(Moments, TableSizesMatchStirling) {
  const auto stirling = oracle::stirling2(8);
  const auto table = zeta_table(8, 1);
  for (int k = 1; k <= 8; ++k) EXPECT_EQ(table.partitions_by_k[k - 1], stirling[8][k]);
  EXPECT_LT(table.orbit_classes, oracle::bell_numbers(8)[8]);
}

TEST(FiniteMoment, KnownValues) {
  for (auto [M, r] : {std::pair{1u, 1u}, {3u, 7u}, {200u, 1604u}}) {
    EXPECT_EQ(finite_moment_exact(cached_zeta_table(1), M, r), 1);
  }
  EXPECT_EQ(finite_moment_exact(cached_zeta_table(2), 200, 1604), 1 + q(400, 1604));
  EXPECT_NEAR(finite_moment(3, 200, 1604), 1.810, 0.0005);
  EXPECT_NEAR(finite_moment(5, 200, 535), 27.35, 0.01);
}

TEST(FiniteMoment, FewSamplesDropHighBlockCounts) {
  // r = 1: T = v v^H / 1 is rank one with trace 2M+1, so tr T^p = (2M+1)^p.
  for (int p = 1; p <= 5; ++p) {
    const auto value = finite_moment_exact(cached_zeta_table(p), 3, 1);
    Rational expected = 1;
    for (int i = 1; i < p; ++i) expected *= 7;
    EXPECT_EQ(value, expected) << p;
  }
}

TEST(FiniteMoment, ApproachesLimit) {
  for (int p = 1; p <= 5; ++p) {
    const auto limit = moment_polynomial(p);
    for (double beta : {0.25, 0.5, 0.75}) {
      const auto r = static_cast<std::uint64_t>(std::lround(401.0 / beta));
      const double exact = finite_moment(p, 200, r);
      EXPECT_LT(std::abs(exact - limit.evaluate(401.0 / r)) / exact, 0.01);
    }
  }
}

TEST(Mgf, TruncatedSeries) {
  EXPECT_DOUBLE_EQ(mgf_partial(0.3, 0.0, 6), 1.0);
  double partial = 0, term = 1;
  for (int p = 0; p <= 6; ++p) {
    if (p > 0) term *= 0.7 / p;
    partial += term;
  }
  EXPECT_NEAR(mgf_partial(0.0, 0.7, 6), partial, 1e-15);
  const double b = 0.5, s = 0.1;
  const double m[] = {1, 1, 1 + b, 1 + 3 * b + b * b, 1 + 6 * b + 20.0 / 3 * b * b + b * b * b,
                      1 + 10 * b + 70.0 / 3 * b * b + 40.0 / 3 * b * b * b + b * b * b * b};
  double expected = 0, f = 1;
  for (int p = 0; p <= 5; ++p) {
    if (p > 0) f *= s / p;
    expected += m[p] * f;
  }
  EXPECT_NEAR(mgf_partial(b, s, 5), expected, 1e-15);
  EXPECT_THROW(mgf_partial(b, s, 13), InvalidArgument);
}
