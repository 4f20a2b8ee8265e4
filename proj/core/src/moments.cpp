#include "fieldspec/moments.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <unordered_map>

#include "fieldspec/error.hpp"
#include "fieldspec/lattice.hpp"
#include "fieldspec/parallel.hpp"
#include "fieldspec/partition.hpp"

namespace fieldspec {

ZetaTable zeta_table(int p, unsigned threads) {
  PartitionStream stream(p);  // validates 1 <= p <= 12

  // Orbit multiplicities per block count.
  std::unordered_map<std::uint64_t, std::uint64_t> multiplicity;
  ZetaTable table;
  table.p = p;
  table.partitions_by_k.assign(static_cast<std::size_t>(p), 0);
  do {
    ++multiplicity[dihedral_key(stream.labels())];
    ++table.partitions_by_k[static_cast<std::size_t>(stream.blocks() - 1)];
  } while (stream.advance());

  // Deterministic order for the parallel reduction.
  std::vector<std::pair<std::uint64_t, std::uint64_t>> classes(multiplicity.begin(),
                                                               multiplicity.end());
  std::sort(classes.begin(), classes.end());
  table.orbit_classes = classes.size();

  std::vector<RationalPolynomial> zetas(classes.size());
  std::vector<int> blocks(classes.size());
  parallel_for(classes.size(), threads, [&](std::size_t i) {
    const SetPartition tau(labels_from_key(classes[i].first, p));
    blocks[i] = tau.k();
    zetas[i] = zeta_polynomial(tau);
    zetas[i] *= Rational(static_cast<long long>(classes[i].second));
  });

  table.by_k.assign(static_cast<std::size_t>(p), RationalPolynomial{});
  for (std::size_t i = 0; i < classes.size(); ++i) {
    table.by_k[static_cast<std::size_t>(blocks[i] - 1)] += zetas[i];
  }
  return table;
}

const ZetaTable& cached_zeta_table(int p, unsigned threads) {
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<ZetaTable>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[p];
  if (!slot) slot = std::make_unique<ZetaTable>(zeta_table(p, threads));
  return *slot;
}

Rational MomentPolynomial::coefficient_of_beta_power(int power) const {
  const int k = p - power;
  if (k < 1 || k > p) return Rational(0);
  return coeffs[static_cast<std::size_t>(k - 1)];
}

RationalPolynomial MomentPolynomial::in_beta() const {
  std::vector<Rational> asc(static_cast<std::size_t>(p), Rational(0));
  for (int k = 1; k <= p; ++k) {
    asc[static_cast<std::size_t>(p - k)] = coeffs[static_cast<std::size_t>(k - 1)];
  }
  return RationalPolynomial(std::move(asc));
}

Rational MomentPolynomial::evaluate(const Rational& beta) const { return in_beta()(beta); }

double MomentPolynomial::evaluate(double beta) const {
  double acc = 0.0;
  for (int power = p - 1; power >= 0; --power) {
    acc = acc * beta + to_double(coefficient_of_beta_power(power));
  }
  return acc;
}

std::string MomentPolynomial::to_string() const {
  std::ostringstream out;
  for (int power = 0; power < p; ++power) {
    const Rational c = coefficient_of_beta_power(power);
    if (power > 0) out << " + ";
    if (power == 0) {
      out << fieldspec::to_string(c);
      continue;
    }
    if (c != 1) out << fieldspec::to_string(c) << "*";
    out << "beta";
    if (power > 1) out << "^" << power;
  }
  return out.str();
}

MomentPolynomial moment_polynomial(const ZetaTable& table) {
  MomentPolynomial m;
  m.p = table.p;
  for (int k = 1; k <= table.p; ++k) {
    const auto& poly = table.by_k[static_cast<std::size_t>(k - 1)];
    const int expected = table.p - k + 1;
    if (poly.degree() != expected) {
      std::ostringstream msg;
      msg << "summed zeta polynomial for k=" << k << " has degree " << poly.degree()
          << ", expected " << expected;
      throw InvariantViolation(msg.str());
    }
    m.coeffs.push_back(poly.leading());
  }
  return m;
}

MomentPolynomial moment_polynomial(int p, unsigned threads) {
  return moment_polynomial(cached_zeta_table(p, threads));
}

Rational finite_moment_exact(const ZetaTable& table, std::uint64_t M, std::uint64_t r) {
  if (M < 1 || r < 1) throw InvalidArgument("finite moment needs M >= 1 and r >= 1");
  const Rational N(static_cast<long long>(2 * M));
  BigInt falling = 1;  // r (r-1) ... (r-k+1)
  Rational sum = 0;
  for (int k = 1; k <= table.p; ++k) {
    const auto kk = static_cast<std::uint64_t>(k);
    if (kk > r) break;
    falling *= BigInt(r - kk + 1);
    sum += Rational(falling) * table.by_k[static_cast<std::size_t>(k - 1)](N);
  }
  BigInt r_pow = 1;
  for (int i = 0; i < table.p; ++i) r_pow *= BigInt(r);
  return sum / (Rational(static_cast<long long>(2 * M + 1)) * Rational(r_pow));
}

double finite_moment(int p, std::uint64_t M, std::uint64_t r, unsigned threads) {
  return to_double(finite_moment_exact(cached_zeta_table(p, threads), M, r));
}

double mgf_partial(std::span<const MomentPolynomial> moments, double beta, double s) {
  double acc = 1.0;
  double term = 1.0;  // s^p / p!
  for (std::size_t i = 0; i < moments.size(); ++i) {
    const int p = static_cast<int>(i) + 1;
    if (moments[i].p != p) throw InvalidArgument("moments must be listed for p = 1, 2, ...");
    term *= s / p;
    acc += moments[i].evaluate(beta) * term;
  }
  return acc;
}

double mgf_partial(double beta, double s, int p_max, unsigned threads) {
  if (p_max < 0 || p_max > kMaxPartitionSize) {
    throw InvalidArgument("p_max must lie in 0..12");
  }
  std::vector<MomentPolynomial> moments;
  for (int p = 1; p <= p_max; ++p) moments.push_back(moment_polynomial(p, threads));
  return mgf_partial(moments, beta, s);
}

}  // namespace fieldspec
