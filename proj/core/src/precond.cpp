#include "fieldspec/precond.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fieldspec/error.hpp"
#include "fieldspec/parallel.hpp"
#include "fieldspec/rng.hpp"
#include "fieldspec/signal.hpp"
#include "fieldspec/toeplitz.hpp"

namespace fieldspec {

double precond_bound(double delta, int M) {
  if (!(delta > 0.0)) throw InvalidArgument("gap delta must be positive");
  if (M < 1) throw InvalidArgument("bound requires M >= 1");
  const double x = 2.0 * delta * M;
  if (x >= 1.0) return std::numeric_limits<double>::infinity();
  const double ratio = (1.0 + x) / (1.0 - x);
  return ratio * ratio;
}

std::vector<double> dense_jittered_topology(int M, std::uint64_t seed) {
  if (M < 1) throw InvalidArgument("M must be at least 1");
  Rng rng(seed);
  const double limit = 1.0 / (2.0 * M);
  for (;;) {
    const auto lo = static_cast<std::uint64_t>(2 * M + 1);
    const auto hi = static_cast<std::uint64_t>(6 * M);
    const std::size_t r = lo + rng.next_u64() % (hi - lo + 1);
    const double jitter = rng.uniform();
    const double shift = rng.uniform();
    std::vector<double> t(r);
    for (std::size_t q = 0; q < r; ++q) {
      double x = (static_cast<double>(q) + jitter * rng.uniform()) /
                     static_cast<double>(r) + shift;
      x -= std::floor(x);
      t[q] = x;
    }
    std::sort(t.begin(), t.end());
    if (std::adjacent_find(t.begin(), t.end()) != t.end()) continue;
    if (gap_profile(t).delta < limit) return t;
  }
}

std::vector<PrecondTrial> run_precond_check(int M, std::size_t trials,
                                            std::uint64_t seed, unsigned threads) {
  std::vector<PrecondTrial> out(trials);
  parallel_for(trials, threads, [&](std::size_t i) {
    PrecondTrial row;
    row.seed = derive_seed(seed, i);
    const auto t = dense_jittered_topology(M, row.seed);
    const auto gaps = gap_profile(t);
    row.r = t.size();
    row.delta = gaps.delta;
    row.kappa_weighted = eig_hermitian(M, toeplitz_generators(t, gaps.weights, M)).kappa;
    row.kappa_plain = eig_hermitian(M, toeplitz_generators(t, M)).kappa;
    row.bound = precond_bound(gaps.delta, M);
    row.satisfied = row.kappa_weighted <= row.bound * (1.0 + 1e-8);
    out[i] = row;
  });
  return out;
}

}  // namespace fieldspec
