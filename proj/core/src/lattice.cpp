#include "fieldspec/lattice.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <unordered_map>

#include "fieldspec/constraints.hpp"
#include "fieldspec/error.hpp"

namespace fieldspec {

namespace {

struct Overflow {};

// 64-bit counter that signals overflow instead of wrapping.
struct CheckedCount {
  std::uint64_t v = 0;
  CheckedCount& operator+=(const CheckedCount& o) {
    if (__builtin_add_overflow(v, o.v, &v)) throw Overflow{};
    return *this;
  }
  friend CheckedCount operator*(CheckedCount a, std::uint64_t b) {
    CheckedCount r;
    if (__builtin_mul_overflow(a.v, b, &r.v)) throw Overflow{};
    return r;
  }
};

BigInt to_big(const CheckedCount& c) { return BigInt(c.v); }
BigInt to_big(const BigInt& c) { return c; }

struct Edge {
  int src;
  int dst;
};

struct KeyHash {
  std::size_t operator()(const std::vector<int>& v) const noexcept {
    std::size_t h = 0xcbf29ce484222325ull;
    for (int x : v) {
      h ^= static_cast<std::size_t>(static_cast<unsigned>(x));
      h *= 0x100000001b3ull;
    }
    return h;
  }
};

template <typename Count>
BigInt count_flows(const SetPartition& tau, std::uint64_t N) {
  const int p = tau.p();
  const int k = tau.k();
  std::vector<Edge> edges;
  int self_loops = 0;
  for (int m = 1; m <= p; ++m) {
    const int src = tau.block_of(cyclic_index(m - 1, p));
    const int dst = tau.block_of(m);
    if (src == dst) ++self_loops;
    else edges.push_back({src, dst});
  }

  const auto kk = static_cast<std::size_t>(k);
  // Remaining incidences after edge e: in_left[e][j] edges into j, out_left[e][j] out of j.
  const std::size_t E = edges.size();
  std::vector<std::vector<int>> in_left(E + 1, std::vector<int>(kk, 0));
  std::vector<std::vector<int>> out_left(E + 1, std::vector<int>(kk, 0));
  for (std::size_t e = E; e-- > 0;) {
    in_left[e] = in_left[e + 1];
    out_left[e] = out_left[e + 1];
    ++in_left[e][static_cast<std::size_t>(edges[e].dst)];
    ++out_left[e][static_cast<std::size_t>(edges[e].src)];
  }

  const auto cap = static_cast<long long>(N);
  std::unordered_map<std::vector<int>, Count, KeyHash> states;
  states.emplace(std::vector<int>(kk, 0), Count{1});
  for (std::size_t e = 0; e < E; ++e) {
    std::unordered_map<std::vector<int>, Count, KeyHash> next;
    next.reserve(states.size() * 2);
    const auto s = static_cast<std::size_t>(edges[e].src);
    const auto d = static_cast<std::size_t>(edges[e].dst);
    const auto& in_after = in_left[e + 1];
    const auto& out_after = out_left[e + 1];
    for (const auto& [bal, count] : states) {
      for (long long v = 0; v <= cap; ++v) {
        // Net inflow so far must be undone by the remaining edges:
        // final = bal + in_rest - out_rest = 0.
        const long long bd = bal[d] + v;
        const long long bs = bal[s] - v;
        if (bd > static_cast<long long>(out_after[d]) * cap) break;
        if (-bs > static_cast<long long>(in_after[s]) * cap) break;
        if (-bd > static_cast<long long>(in_after[d]) * cap) continue;
        if (bs > static_cast<long long>(out_after[s]) * cap) continue;
        std::vector<int> key = bal;
        key[d] = static_cast<int>(bd);
        key[s] = static_cast<int>(bs);
        next[key] += count;
      }
    }
    states = std::move(next);
  }

  Count total{};
  for (const auto& [bal, count] : states) {
    if (std::all_of(bal.begin(), bal.end(), [](int b) { return b == 0; })) total += count;
  }
  BigInt result = to_big(total);
  for (int i = 0; i < self_loops; ++i) result *= BigInt(N + 1);
  return result;
}

}  // namespace

BigInt count_lattice_points(const SetPartition& tau, std::uint64_t N) {
  if (N > 1'000'000) throw InvalidArgument("box size N too large for direct counting");
  try {
    return count_flows<CheckedCount>(tau, N);
  } catch (const Overflow&) {
    return count_flows<BigInt>(tau, N);
  }
}

BigInt count_lattice_points_by_elimination(const SetPartition& tau, std::uint64_t N) {
  const auto sys = eliminate(constraint_matrix(tau));
  const std::size_t nfree = sys.free_columns.size();
  std::vector<std::uint64_t> assign(nfree, 0);
  BigInt total = 0;
  const Rational upper(static_cast<long long>(N));
  for (;;) {
    bool ok = true;
    for (const auto& coeffs : sys.dependent) {
      Rational v = 0;
      for (std::size_t f = 0; f < nfree; ++f) {
        if (coeffs[f] != 0) v += coeffs[f] * Rational(static_cast<long long>(assign[f]));
      }
      if (boost::multiprecision::denominator(v) != 1 || v < 0 || v > upper) {
        ok = false;
        break;
      }
    }
    if (ok) ++total;
    std::size_t i = 0;
    while (i < nfree && assign[i] == N) assign[i++] = 0;
    if (i == nfree) break;
    ++assign[i];
  }
  return total;
}

RationalPolynomial zeta_polynomial(const SetPartition& tau) {
  const int degree = tau.p() - tau.k() + 1;
  std::vector<BigInt> values;
  for (int n = 0; n <= degree; ++n) {
    values.push_back(count_lattice_points(tau, static_cast<std::uint64_t>(n)));
  }
  auto poly = RationalPolynomial::interpolate_at_naturals(values);
  const auto guard_node = static_cast<std::uint64_t>(degree + 1);
  const BigInt guard = count_lattice_points(tau, guard_node);
  if (poly(Rational(static_cast<long long>(guard_node))) != Rational(guard)) {
    std::ostringstream msg;
    msg << "lattice count of " << tau.to_string() << " at guard node N=" << guard_node
        << " disagrees with the interpolating polynomial";
    throw InterpolationGuardError(msg.str());
  }
  if (poly.degree() != degree) {
    std::ostringstream msg;
    msg << "zeta polynomial of " << tau.to_string() << " has degree " << poly.degree()
        << ", expected " << degree;
    throw InvariantViolation(msg.str());
  }
  return poly;
}

Rational volume_coefficient(const SetPartition& tau) {
  return zeta_polynomial(tau).leading();
}

}  // namespace fieldspec
