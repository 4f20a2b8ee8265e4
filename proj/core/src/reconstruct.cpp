#include "fieldspec/reconstruct.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "json.hpp"

#include "fieldspec/error.hpp"
#include "fieldspec/parallel.hpp"
#include "fieldspec/rng.hpp"

namespace fieldspec {

namespace {

cdouble unit_phase(double x) {
  const double frac = x - std::floor(x);
  return std::polar(1.0, 2.0 * std::numbers::pi * frac);
}

// p_hat(t_q) for every sample position.
std::vector<cdouble> synthesize(const std::vector<cdouble>& coeffs, int M,
                                std::span<const double> t) {
  std::vector<cdouble> out(t.size());
  for (std::size_t q = 0; q < t.size(); ++q) {
    cdouble acc = 0.0;
    for (int k = -M; k <= M; ++k) {
      acc += coeffs[static_cast<std::size_t>(k + M)] * unit_phase(k * t[q]);
    }
    out[q] = acc;
  }
  return out;
}

// V^H Omega y.
std::vector<cdouble> project(std::span<const cdouble> y, std::span<const double> omega,
                             int M, std::span<const double> t) {
  std::vector<cdouble> out(static_cast<std::size_t>(2 * M + 1));
  for (int k = -M; k <= M; ++k) {
    cdouble acc = 0.0;
    for (std::size_t q = 0; q < t.size(); ++q) {
      acc += omega[q] * y[q] * unit_phase(-k * t[q]);
    }
    out[static_cast<std::size_t>(k + M)] = acc;
  }
  return out;
}

double coefficient_error(const std::vector<cdouble>& est, int M,
                         const BandlimitedSignal& truth) {
  const int top = std::max(M, truth.M());
  double num = 0.0;
  double den = 0.0;
  for (int k = -top; k <= top; ++k) {
    const cdouble a = std::abs(k) <= truth.M() ? truth.coeff(k) : cdouble{};
    const cdouble e = std::abs(k) <= M ? est[static_cast<std::size_t>(k + M)] : cdouble{};
    num += std::norm(a - e);
    den += std::norm(a);
  }
  return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

}  // namespace

ReconstructionReport reconstruct(const SampleSet& samples, int M,
                                 const ReconstructOptions& options,
                                 const BandlimitedSignal* truth) {
  if (M < 0) throw InvalidArgument("bandwidth M must be nonnegative");
  const std::size_t r = samples.size();
  if (r == 0) throw InvalidArgument("no samples");
  const auto t = samples.positions();
  const auto p = samples.values();

  ReconstructionReport rep;
  rep.M = M;
  rep.r = r;
  rep.weighted = options.weighted;
  rep.beta = static_cast<double>(2 * M + 1) / static_cast<double>(r);

  std::vector<double> gap_weights;
  if (r >= 2) {
    auto gaps = gap_profile(t);
    rep.delta = gaps.delta;
    gap_weights = std::move(gaps.weights);
  } else {
    rep.delta = 1.0;
  }

  const ToeplitzSystem system = build_system(samples, M, options.weighted);
  const SpectralSolver solver(M, system.generators(), {options.kappa_max});
  auto coeffs = solver.apply(system.rhs());

  std::vector<double> omega = options.weighted
                                  ? gap_weights
                                  : std::vector<double>(r, 1.0 / static_cast<double>(r));
  for (int step = 0; step < options.refine_steps; ++step) {
    const auto fitted = synthesize(coeffs, M, t);
    std::vector<cdouble> residual(r);
    for (std::size_t q = 0; q < r; ++q) residual[q] = p[q] - fitted[q];
    const auto delta = solver.apply(project(residual, omega, M, t));
    for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] += delta[i];
  }

  const auto diag = solver.diagnostics();
  rep.coeffs_hat = std::move(coeffs);
  rep.kappa = diag.kappa;
  rep.min_eig = diag.min_eig;
  rep.success = !diag.ill_conditioned;
  if (truth != nullptr) rep.rel_l2_error = coefficient_error(rep.coeffs_hat, M, *truth);

  if (r >= 2) {
    const auto other = options.weighted ? toeplitz_generators(t, M)
                                        : toeplitz_generators(t, gap_weights, M);
    rep.kappa_other = eig_hermitian(M, other).kappa;
  }
  return rep;
}

namespace {

nlohmann::json finite_or_null(double x) {
  return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr);
}

}  // namespace

std::string to_json(const ReconstructionReport& report) {
  nlohmann::json j;
  j["M"] = report.M;
  j["r"] = report.r;
  j["beta"] = report.beta;
  j["delta"] = report.delta;
  j["weighted"] = report.weighted;
  j["kappa"] = finite_or_null(report.kappa);
  j["min_eig"] = report.min_eig;
  j["success"] = report.success;
  j["rel_l2_error"] = report.rel_l2_error ? finite_or_null(*report.rel_l2_error)
                                          : nlohmann::json(nullptr);
  j[report.weighted ? "kappa_plain" : "kappa_weighted"] =
      report.kappa_other ? finite_or_null(*report.kappa_other) : nlohmann::json(nullptr);
  auto coeffs = nlohmann::json::array();
  for (const auto& z : report.coeffs_hat) coeffs.push_back({z.real(), z.imag()});
  j["coeffs_hat"] = std::move(coeffs);
  return j.dump(2);
}

std::vector<SweepCell> sweep(const SweepGrid& grid, std::uint64_t seed,
                             unsigned threads) {
  if (grid.M_list.empty() || grid.r_list.empty()) {
    throw InvalidArgument("sweep grid must list at least one M and one r");
  }
  if (grid.trials == 0) throw InvalidArgument("sweep needs at least one trial");
  for (int M : grid.M_list) {
    if (M < 0) throw InvalidArgument("bandwidth M must be nonnegative");
  }
  for (std::size_t r : grid.r_list) {
    if (r == 0) throw InvalidArgument("sample count r must be positive");
  }

  const std::size_t n_cells = grid.M_list.size() * grid.r_list.size();
  const std::size_t n_tasks = n_cells * grid.trials;

  struct Outcome {
    bool success;
    double kappa;
    double delta;
  };
  std::vector<Outcome> outcomes(n_tasks);

  parallel_for(n_tasks, threads, [&](std::size_t task) {
    const std::size_t cell = task / grid.trials;
    const std::size_t trial = task % grid.trials;
    const int M = grid.M_list[cell / grid.r_list.size()];
    const std::size_t r = grid.r_list[cell % grid.r_list.size()];
    const auto t = grid.regular
                       ? regular_topology(r)
                       : random_topology(r, grid.support_lo, grid.support_hi,
                                         derive_seed(seed, cell, trial));
    const double delta = r >= 2 ? gap_profile(t).delta : 1.0;
    const auto g = grid.weighted ? toeplitz_generators(t, gap_profile(t).weights, M)
                                 : toeplitz_generators(t, M);
    const double kappa = eig_hermitian(M, g).kappa;
    outcomes[task] = {kappa <= grid.kappa_max, kappa, delta};
  });

  std::vector<SweepCell> cells(n_cells);
  for (std::size_t c = 0; c < n_cells; ++c) {
    SweepCell& cell = cells[c];
    cell.M = grid.M_list[c / grid.r_list.size()];
    cell.r = grid.r_list[c % grid.r_list.size()];
    cell.beta = static_cast<double>(2 * cell.M + 1) / static_cast<double>(cell.r);
    cell.trials = grid.trials;
    std::size_t ok = 0;
    double kappa_sum = 0.0;
    double delta_sum = 0.0;
    for (std::size_t j = 0; j < grid.trials; ++j) {
      const Outcome& o = outcomes[c * grid.trials + j];
      delta_sum += o.delta;
      if (o.success) {
        ++ok;
        kappa_sum += o.kappa;
      }
    }
    const auto n = static_cast<double>(grid.trials);
    cell.success_frac = static_cast<double>(ok) / n;
    cell.mean_kappa_success = ok > 0 ? kappa_sum / static_cast<double>(ok)
                                     : std::numeric_limits<double>::quiet_NaN();
    cell.mean_delta = delta_sum / n;
  }
  return cells;
}

}  // namespace fieldspec
