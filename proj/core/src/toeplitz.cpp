#include "fieldspec/toeplitz.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "json.hpp"

#include "fieldspec/error.hpp"

namespace fieldspec {

namespace {

cdouble unit_phase(double x) {
  const double frac = x - std::floor(x);
  return std::polar(1.0, 2.0 * std::numbers::pi * frac);
}

}  // namespace

ToeplitzSystem::ToeplitzSystem(int M, std::size_t r,
                               std::vector<cdouble> generators,
                               std::vector<cdouble> rhs, bool weighted)
    : M_(M), r_(r), generators_(std::move(generators)), rhs_(std::move(rhs)),
      weighted_(weighted) {
  if (M_ < 0) throw InvalidArgument("bandwidth M must be nonnegative");
  if (r_ == 0) throw InvalidArgument("sample count must be positive");
  if (generators_.size() != static_cast<std::size_t>(4 * M_ + 1)) {
    throw InvalidArgument("expected 4M+1 generators");
  }
  if (!rhs_.empty() && rhs_.size() != static_cast<std::size_t>(2 * M_ + 1)) {
    throw InvalidArgument("expected a right-hand side of length 2M+1");
  }
  for (int l = 1; l <= 2 * M_; ++l) {
    const cdouble d = generator(-l) - std::conj(generator(l));
    if (std::abs(d) > 1e-12 * std::max(1.0, std::abs(generator(l)))) {
      throw InvalidArgument("generators violate r_{-l} = conj(r_l)");
    }
  }
}

std::vector<cdouble> toeplitz_generators(std::span<const double> positions,
                                         std::span<const double> weights, int M) {
  if (M < 0) throw InvalidArgument("bandwidth M must be nonnegative");
  if (positions.size() != weights.size()) {
    throw InvalidArgument("positions and weights differ in length");
  }
  const auto L = static_cast<std::size_t>(2 * M);
  std::vector<cdouble> g(2 * L + 1);
  double r0 = 0.0;
  for (double w : weights) r0 += w;
  g[L] = r0;
  // Powers of exp(2 pi i t_q) by recurrence, re-anchored periodically so the
  // rounding drift stays at a few ulps.
  constexpr int kAnchorEvery = 64;
  for (std::size_t q = 0; q < positions.size(); ++q) {
    const double t = positions[q];
    const cdouble step = unit_phase(t);
    cdouble z = step;
    for (int l = 1; l <= 2 * M; ++l) {
      if (l % kAnchorEvery == 0) z = unit_phase(l * t);
      g[L + static_cast<std::size_t>(l)] += weights[q] * z;
      z = {z.real() * step.real() - z.imag() * step.imag(),
           z.real() * step.imag() + z.imag() * step.real()};
    }
  }
  for (std::size_t l = 1; l <= L; ++l) g[L - l] = std::conj(g[L + l]);
  return g;
}

std::vector<cdouble> toeplitz_generators(std::span<const double> positions, int M) {
  if (positions.empty()) throw InvalidArgument("need at least one sample");
  const std::vector<double> w(positions.size(),
                              1.0 / static_cast<double>(positions.size()));
  auto g = toeplitz_generators(positions, w, M);
  g[static_cast<std::size_t>(2 * M)] = 1.0;  // sum of r copies of 1/r
  return g;
}

ToeplitzSystem build_system(const SampleSet& samples, int M, bool weighted) {
  const auto t = samples.positions();
  const auto p = samples.values();
  const std::size_t r = samples.size();
  std::vector<double> omega;
  if (weighted) {
    if (r < 2) throw InvalidArgument("weighted system needs at least two samples");
    omega = gap_profile(t).weights;
  } else {
    omega.assign(r, 1.0 / static_cast<double>(r));
  }
  auto g = toeplitz_generators(t, omega, M);
  if (!weighted) g[static_cast<std::size_t>(2 * M)] = 1.0;

  std::vector<cdouble> b(static_cast<std::size_t>(2 * M + 1));
  for (int k = -M; k <= M; ++k) {
    cdouble acc = 0.0;
    for (std::size_t q = 0; q < r; ++q) {
      acc += omega[q] * p[q] * unit_phase(-k * t[q]);
    }
    b[static_cast<std::size_t>(k + M)] = acc;
  }
  return ToeplitzSystem(M, r, std::move(g), std::move(b), weighted);
}

Eigen::MatrixXcd dense_matrix(int M, std::span<const cdouble> generators) {
  if (generators.size() != static_cast<std::size_t>(4 * M + 1)) {
    throw InvalidArgument("expected 4M+1 generators");
  }
  const int n = 2 * M + 1;
  Eigen::MatrixXcd T(n, n);
  for (int k = 0; k < n; ++k) {
    for (int m = 0; m < n; ++m) {
      T(k, m) = generators[static_cast<std::size_t>(k - m + 2 * M)];
    }
  }
  return T;
}

Eigen::MatrixXcd dense_matrix(const ToeplitzSystem& system) {
  return dense_matrix(system.M(), system.generators());
}

namespace {

EigenSpectrum finish_spectrum(const Eigen::VectorXd& raw) {
  EigenSpectrum s;
  s.eigenvalues.assign(raw.data(), raw.data() + raw.size());
  std::sort(s.eigenvalues.begin(), s.eigenvalues.end());
  const double top = s.eigenvalues.back();
  for (double& v : s.eigenvalues) {
    if (v < 0.0 && v >= -kNegativeClampRelTol * std::abs(top)) v = 0.0;
  }
  s.lambda_min = s.eigenvalues.front();
  s.lambda_max = s.eigenvalues.back();
  s.kappa = s.lambda_min > 0.0 ? s.lambda_max / s.lambda_min
                               : std::numeric_limits<double>::infinity();
  return s;
}

[[noreturn]] void throw_no_convergence(int n) {
  // Eigen caps the implicit QR sweep at 30 iterations per eigenvalue.
  const auto limit = static_cast<std::size_t>(30) * static_cast<std::size_t>(n);
  std::ostringstream msg;
  msg << "Hermitian eigensolver did not converge within " << limit
      << " QR iterations (n=" << n << ")";
  throw NumericalError(msg.str(), limit);
}

}  // namespace

EigenSpectrum eig_hermitian(int M, std::span<const cdouble> generators) {
  const Eigen::MatrixXcd T = dense_matrix(M, generators);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(T, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw_no_convergence(static_cast<int>(T.rows()));
  return finish_spectrum(es.eigenvalues());
}

EigenSpectrum eig_hermitian(const ToeplitzSystem& system) {
  return eig_hermitian(system.M(), system.generators());
}

SpectralSolver::SpectralSolver(int M, std::span<const cdouble> generators,
                               SolveOptions options) {
  if (!(options.kappa_max > 1.0)) throw InvalidArgument("kappa_max must exceed 1");
  const Eigen::MatrixXcd T = dense_matrix(M, generators);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(T, Eigen::ComputeEigenvectors);
  if (es.info() != Eigen::Success) throw_no_convergence(static_cast<int>(T.rows()));
  // Eigen returns eigenvalues ascending, matching the column order of U.
  spectrum_ = finish_spectrum(es.eigenvalues());
  vectors_ = es.eigenvectors();
  diagnostics_.kappa = spectrum_.kappa;
  diagnostics_.min_eig = spectrum_.lambda_min;
  diagnostics_.ill_conditioned = !(spectrum_.kappa <= options.kappa_max);

  const double cutoff = spectrum_.lambda_max / options.kappa_max;
  inverse_.resize(static_cast<Eigen::Index>(spectrum_.eigenvalues.size()));
  for (std::size_t i = 0; i < spectrum_.eigenvalues.size(); ++i) {
    const double lam = spectrum_.eigenvalues[i];
    inverse_(static_cast<Eigen::Index>(i)) =
        (lam > 0.0 && lam >= cutoff) ? 1.0 / lam : 0.0;
  }
}

std::vector<cdouble> SpectralSolver::apply(std::span<const cdouble> y) const {
  if (y.size() != static_cast<std::size_t>(vectors_.rows())) {
    throw InvalidArgument("right-hand side has the wrong length");
  }
  // T^T = conj(U) diag(lambda) U^T, so x = conj(U) diag(1/lambda) U^T y.
  const Eigen::Map<const Eigen::VectorXcd> yv(y.data(),
                                              static_cast<Eigen::Index>(y.size()));
  const Eigen::VectorXcd proj = vectors_.transpose() * yv;
  const Eigen::VectorXcd x = vectors_.conjugate() * (inverse_.cwiseProduct(proj));
  return {x.data(), x.data() + x.size()};
}

Solution solve(const ToeplitzSystem& system, SolveOptions options) {
  if (system.rhs().empty()) throw InvalidArgument("system has no right-hand side");
  const SpectralSolver solver(system.M(), system.generators(), options);
  return {solver.apply(system.rhs()), solver.diagnostics()};
}

namespace {

nlohmann::json complex_array(const std::vector<cdouble>& v) {
  auto out = nlohmann::json::array();
  for (const auto& z : v) out.push_back({z.real(), z.imag()});
  return out;
}

std::vector<cdouble> complex_vector(const nlohmann::json& j) {
  std::vector<cdouble> v;
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 2) {
      throw InvalidArgument("complex entries must be [re, im] pairs");
    }
    v.emplace_back(e[0].get<double>(), e[1].get<double>());
  }
  return v;
}

}  // namespace

std::string to_json(const ToeplitzSystem& system) {
  nlohmann::json j;
  j["M"] = system.M();
  j["r"] = system.sample_count();
  j["weighted"] = system.weighted();
  j["generators"] = complex_array(system.generators());
  j["rhs"] = complex_array(system.rhs());
  return j.dump(2);
}

ToeplitzSystem system_from_json(const std::string& text) {
  try {
    const auto j = nlohmann::json::parse(text);
    return ToeplitzSystem(j.at("M").get<int>(), j.at("r").get<std::size_t>(),
                          complex_vector(j.at("generators")),
                          complex_vector(j.at("rhs")), j.at("weighted").get<bool>());
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed system JSON: ") + e.what());
  }
}

}  // namespace fieldspec
