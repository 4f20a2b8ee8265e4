#include "fieldspec/signal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "fieldspec/error.hpp"
#include "fieldspec/rng.hpp"

namespace fieldspec {

namespace {

// exp(2 pi i x) with the argument reduced mod 1 before scaling by 2 pi.
cdouble unit_phase(double x) {
  const double frac = x - std::floor(x);
  return std::polar(1.0, 2.0 * std::numbers::pi * frac);
}

}  // namespace

BandlimitedSignal::BandlimitedSignal(int M, std::vector<cdouble> coeffs,
                                     Kind kind)
    : M_(M), coeffs_(std::move(coeffs)), kind_(kind) {
  if (M_ < 0) throw InvalidArgument("bandwidth M must be nonnegative");
  if (coeffs_.size() != static_cast<std::size_t>(2 * M_ + 1)) {
    std::ostringstream msg;
    msg << "expected " << 2 * M_ + 1 << " coefficients for M=" << M_
        << ", got " << coeffs_.size();
    throw InvalidArgument(msg.str());
  }
  if (kind_ == Kind::real_valued) {
    double scale = 0.0;
    for (const auto& a : coeffs_) scale = std::max(scale, std::abs(a));
    const double tol = 1e-12 * std::max(scale, 1.0);
    for (int k = 0; k <= M_; ++k) {
      if (std::abs(coeff(-k) - std::conj(coeff(k))) > tol) {
        std::ostringstream msg;
        msg << "real-valued signal requires a_{-k} = conj(a_k); violated at k="
            << k;
        throw InvalidArgument(msg.str());
      }
    }
  }
}

BandlimitedSignal BandlimitedSignal::random_real(int M, std::uint64_t seed) {
  if (M < 0) throw InvalidArgument("bandwidth M must be nonnegative");
  Rng rng(seed);
  std::vector<cdouble> a(static_cast<std::size_t>(2 * M + 1));
  a[static_cast<std::size_t>(M)] = rng.normal();
  for (int k = 1; k <= M; ++k) {
    const double re = rng.normal();
    const double im = rng.normal();
    a[static_cast<std::size_t>(M + k)] = {re, im};
    a[static_cast<std::size_t>(M - k)] = {re, -im};
  }
  return BandlimitedSignal(M, std::move(a), Kind::real_valued);
}

cdouble evaluate_signal(const BandlimitedSignal& sig, double t) {
  if (!(t >= 0.0 && t < 1.0)) {
    std::ostringstream msg;
    msg << "evaluation point t=" << t << " outside [0,1)";
    throw DomainError(msg.str());
  }
  const int M = sig.M();
  cdouble acc = sig.coeff(0);
  for (int k = 1; k <= M; ++k) {
    const cdouble e = unit_phase(k * t);
    acc += sig.coeff(k) * e + sig.coeff(-k) * std::conj(e);
  }
  return acc;
}

SampleSet::SampleSet(std::vector<double> positions, std::vector<cdouble> values) {
  if (positions.empty()) throw InvalidArgument("sample set must be nonempty");
  if (positions.size() != values.size()) {
    throw InvalidArgument("positions and values differ in length");
  }
  for (double t : positions) {
    if (!(t >= 0.0 && t < 1.0)) {
      std::ostringstream msg;
      msg << "sample position " << t << " outside [0,1)";
      throw InvalidArgument(msg.str());
    }
  }
  std::vector<std::size_t> order(positions.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return positions[a] < positions[b];
  });
  positions_.reserve(order.size());
  values_.reserve(order.size());
  for (std::size_t i : order) {
    positions_.push_back(positions[i]);
    values_.push_back(values[i]);
  }
  for (std::size_t q = 1; q < positions_.size(); ++q) {
    if (positions_[q] == positions_[q - 1]) {
      std::ostringstream msg;
      msg << "duplicate sample position " << positions_[q];
      throw InvalidArgument(msg.str());
    }
  }
}

SampleSet sample_signal(const BandlimitedSignal& sig,
                        std::span<const double> positions) {
  if (positions.empty()) throw InvalidArgument("no sample positions given");
  std::vector<cdouble> values;
  values.reserve(positions.size());
  for (double t : positions) values.push_back(evaluate_signal(sig, t));
  return SampleSet({positions.begin(), positions.end()}, std::move(values));
}

std::vector<double> random_topology(std::size_t r, double lo, double hi,
                                    std::uint64_t seed) {
  if (r == 0) throw InvalidArgument("need at least one sample position");
  if (!(lo >= 0.0 && lo < hi && hi <= 1.0)) {
    std::ostringstream msg;
    msg << "support [" << lo << ", " << hi << ") is not a subinterval of [0,1)";
    throw InvalidArgument(msg.str());
  }
  Rng rng(seed);
  std::vector<double> t(r);
  for (auto& x : t) x = rng.uniform(lo, hi);
  std::sort(t.begin(), t.end());
  return t;
}

std::vector<double> regular_topology(std::size_t r) {
  if (r == 0) throw InvalidArgument("need at least one sample position");
  std::vector<double> t(r);
  for (std::size_t q = 0; q < r; ++q) {
    t[q] = static_cast<double>(q) / static_cast<double>(r);
  }
  return t;
}

GapProfile gap_profile(std::span<const double> positions) {
  const std::size_t r = positions.size();
  if (r < 2) throw InvalidArgument("gap profile needs at least two positions");
  for (std::size_t q = 0; q < r; ++q) {
    if (!(positions[q] >= 0.0 && positions[q] < 1.0)) {
      throw InvalidArgument("positions must lie in [0,1)");
    }
    if (q > 0 && !(positions[q] > positions[q - 1])) {
      throw InvalidArgument("positions must be strictly increasing");
    }
  }
  auto prev = [&](std::size_t q) {
    return q == 0 ? positions[r - 1] - 1.0 : positions[q - 1];
  };
  auto next = [&](std::size_t q) {
    return q + 1 == r ? positions[0] + 1.0 : positions[q + 1];
  };
  GapProfile g{0.0, std::vector<double>(r)};
  for (std::size_t q = 0; q < r; ++q) {
    g.delta = std::max(g.delta, positions[q] - prev(q));
    g.weights[q] = 0.5 * (next(q) - prev(q));
  }
  return g;
}

}  // namespace fieldspec
