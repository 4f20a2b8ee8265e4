#pragma once

#include <cstdint>
#include <vector>

namespace fieldspec {

// Upper bound on kappa(T_w) for gap-weighted systems with maximal circular
// gap delta < 1/(2M):  ((1 + 2 delta M) / (1 - 2 delta M))^2.
// Returns +inf when delta >= 1/(2M), where the bound does not apply.
// Throws InvalidArgument for delta <= 0 or M < 1.
double precond_bound(double delta, int M);

// Random topology with maximal circular gap strictly below 1/(2M): r is drawn
// in [2M+1, 6M], points are jittered off a regular grid by a random fraction
// of the spacing and rotated by a random offset; draws that violate the gap
// condition are rejected and redrawn.
std::vector<double> dense_jittered_topology(int M, std::uint64_t seed);

struct PrecondTrial {
  std::uint64_t seed = 0;
  std::size_t r = 0;
  double delta = 0.0;
  double kappa_weighted = 0.0;
  double kappa_plain = 0.0;
  double bound = 0.0;
  bool satisfied = false;  // kappa_weighted <= bound * (1 + 1e-8)
};

// `trials` independent topologies from dense_jittered_topology, child seeds
// derive_seed(seed, i).
std::vector<PrecondTrial> run_precond_check(int M, std::size_t trials,
                                            std::uint64_t seed,
                                            unsigned threads = 0);

}  // namespace fieldspec
