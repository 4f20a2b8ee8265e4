#include <spdlog/spdlog.h>

#include <algorithm>
#include <cmath>

#include "commands.hpp"
#include "fieldspec/csv.hpp"
#include "fieldspec/error.hpp"
#include "fieldspec/spectral.hpp"

namespace cli {

namespace {

struct SpectrumArgs {
  int M = 10;
  double beta = 0.25;
  std::size_t trials = 1000;
  double bin_width = 0.1;
  int bins_per_decade = 20;
  double cdf_floor = 1e-16;
  bool dump_eigenvalues = false;
  bool check_min_bound = false;
  bool fit_tail = false;
  double anchor = 1e-2;
  std::string tail_window = "centered";
  bool mirror = false;
  double d = 1.0 / 3.0;
};

class SpectrumWriter {
 public:
  SpectrumWriter(RunContext& ctx, const fieldspec::SpectralEnsemble& e) : ctx_(ctx), e_(e) {}

  void series(const std::string& stem, const fieldspec::CsvTable& table, nlohmann::json policy) {
    fieldspec::write_csv(ctx_.file(stem + ".csv"), table);
    nlohmann::json side = spec();
    side["columns"] = table.header;
    side["bin_policy"] = std::move(policy);
    write_json(ctx_.file(stem + ".json"), side);
    ctx_.record_output(stem + ".csv");
    ctx_.record_output(stem + ".json");
  }

  nlohmann::json spec() const {
    return {{"M", e_.spec.M()},           {"beta", e_.spec.beta()},
            {"realized_beta", e_.spec.realized_beta()}, {"r", e_.spec.r()},
            {"trials", e_.spec.trials()}, {"retained_trials", e_.retained()},
            {"failures", e_.failures},    {"seed", e_.spec.seed()}};
  }

 private:
  RunContext& ctx_;
  const fieldspec::SpectralEnsemble& e_;
};

fieldspec::CsvTable linear_pdf(const fieldspec::Histogram& h) {
  fieldspec::CsvTable t{{"x", "density"}, {}};
  for (std::size_t i = 0; i < h.bins(); ++i) t.rows.push_back({h.center(i), h.density(i)});
  return t;
}

// x at the geometric bin center, density per unit of log10 x.
fieldspec::CsvTable log_pdf(const fieldspec::Histogram& h) {
  fieldspec::CsvTable t{{"x", "density"}, {}};
  for (std::size_t i = 0; i < h.bins(); ++i) {
    t.rows.push_back({std::pow(10.0, h.center(i)), h.density(i)});
  }
  return t;
}

fieldspec::CsvTable cdf_table(const std::vector<fieldspec::CdfPoint>& cdf) {
  fieldspec::CsvTable t{{"x", "F"}, {}};
  for (const auto& p : cdf) t.rows.push_back({p.x, p.F});
  return t;
}

double max_of(const std::vector<double>& v) { return *std::max_element(v.begin(), v.end()); }

int run(const SpectrumArgs& a, const GlobalOptions& global) {
  RunContext ctx("spectrum", global);
  const fieldspec::EnsembleSpec spec(a.M, a.beta, a.trials, global.seed);
  auto& cfg = ctx.config();
  cfg["M"] = a.M;
  cfg["beta"] = a.beta;
  cfg["r"] = spec.r();
  cfg["realized_beta"] = spec.realized_beta();
  cfg["trials"] = a.trials;
  cfg["bin_width"] = a.bin_width;
  cfg["bins_per_decade"] = a.bins_per_decade;
  cfg["cdf_floor"] = a.cdf_floor;
  cfg["dump_eigenvalues"] = a.dump_eigenvalues;
  cfg["check_min_bound"] = a.check_min_bound;
  cfg["fit_tail"] = a.fit_tail;
  cfg["anchor"] = a.anchor;
  cfg["tail_window"] = a.tail_window;
  cfg["mirror"] = a.mirror;
  cfg["d"] = a.d;
  cfg["seed_rule"] = "trial i uses derive_seed(seed, i)";

  spdlog::info("ensemble M={} r={} realized beta={:.6f} trials={}", a.M, spec.r(),
               spec.realized_beta(), a.trials);
  const auto e = fieldspec::run_ensemble(spec, ctx.threads());
  if (e.failures > 0) spdlog::warn("{} eigensolver failures skipped", e.failures);
  if (e.retained() == 0) throw std::runtime_error("every trial failed");

  SpectrumWriter out(ctx, e);

  fieldspec::CsvTable ensemble{{"trial", "min_eig", "kappa"}, {}};
  for (std::size_t i = 0; i < e.retained(); ++i) {
    ensemble.rows.push_back({static_cast<double>(e.trial_ids[i]), e.min_eigs[i], e.kappas[i]});
  }
  fieldspec::write_csv(ctx.file("ensemble.csv"), ensemble);
  ctx.record_output("ensemble.csv");

  if (a.dump_eigenvalues) {
    fieldspec::CsvTable eig{{"trial", "index", "lambda"}, {}};
    for (std::size_t i = 0; i < e.retained(); ++i) {
      const auto ev = e.trial_eigenvalues(i);
      for (std::size_t j = 0; j < ev.size(); ++j) {
        eig.rows.push_back({static_cast<double>(e.trial_ids[i]), static_cast<double>(j), ev[j]});
      }
    }
    fieldspec::write_csv(ctx.file("eigenvalues.csv"), eig);
    ctx.record_output("eigenvalues.csv");
  }

  const nlohmann::json linear_policy = {{"kind", "linear"}, {"bin_width", a.bin_width}};
  const nlohmann::json log_policy = {{"kind", "log10"},
                                     {"bins_per_decade", a.bins_per_decade},
                                     {"density_unit", "per unit log10 x"}};
  const nlohmann::json cdf_policy = {{"kind", "log_grid"},
                                     {"points_per_decade", a.bins_per_decade}};

  out.series("pdf", linear_pdf(fieldspec::linear_histogram(e.all_eigenvalues, a.bin_width)),
             linear_policy);
  const auto pooled_grid =
      fieldspec::log_grid(a.cdf_floor, std::max(1.0, max_of(e.all_eigenvalues)), a.bins_per_decade);
  const auto pooled_cdf = fieldspec::empirical_cdf(e.all_eigenvalues, pooled_grid);
  out.series("cdf", cdf_table(pooled_cdf), cdf_policy);

  out.series("min_eig_pdf", log_pdf(fieldspec::log10_histogram(e.min_eigs, a.bins_per_decade)),
             log_policy);
  out.series("min_eig_cdf",
             cdf_table(fieldspec::empirical_cdf(
                 e.min_eigs, fieldspec::log_grid(a.cdf_floor, std::max(1.0, max_of(e.min_eigs)),
                                                 a.bins_per_decade))),
             cdf_policy);

  std::vector<double> finite_kappas;
  for (double k : e.kappas) {
    if (std::isfinite(k)) finite_kappas.push_back(k);
  }
  if (!finite_kappas.empty()) {
    out.series("kappa_pdf",
               log_pdf(fieldspec::log10_histogram(finite_kappas, a.bins_per_decade)), log_policy);
    out.series("kappa_cdf",
               cdf_table(fieldspec::empirical_cdf(
                   e.kappas, fieldspec::log_grid(1.0, max_of(finite_kappas), a.bins_per_decade))),
               cdf_policy);
  }

  bool checks_ok = true;
  nlohmann::json summary = out.spec();

  if (a.check_min_bound) {
    const auto rows = fieldspec::check_min_eig_bound(
        e, fieldspec::log_grid(a.cdf_floor, 0.1, a.bins_per_decade));
    fieldspec::CsvTable t{{"x", "F_min", "F_pooled", "bound", "sigma", "satisfied"}, {}};
    std::size_t violations = 0;
    for (const auto& r : rows) {
      if (r.x >= 0.1) continue;
      t.rows.push_back({r.x, r.F_min, r.F_pooled, r.bound, r.sigma, r.satisfied ? 1.0 : 0.0});
      violations += r.satisfied ? 0 : 1;
    }
    out.series("min_bound", t, cdf_policy);
    nlohmann::json report = {{"violations", violations},
                             {"expected_offset", std::log10(2.0 * a.M + 1.0)}};
    try {
      report["log10_offset"] = fieldspec::min_bound_log_offset(rows, e.retained());
    } catch (const fieldspec::FitError& err) {
      report["log10_offset"] = nullptr;
      report["offset_error"] = err.what();
    }
    summary["min_bound"] = report;
    spdlog::info("min-eigenvalue bound: {} violations, offset {}", violations,
                 report["log10_offset"].dump());
    checks_ok = checks_ok && violations == 0;
  }

  if (a.fit_tail) {
    fieldspec::TailFitOptions opt;
    opt.anchor_prob = a.anchor;
    if (a.tail_window == "below") opt.placement = fieldspec::TailWindow::below;
    try {
      const auto fit = fieldspec::fit_tail(pooled_cdf, opt);
      summary["tail_fit"] = {{"a_hat", fit.a_hat},     {"b_hat", fit.b_hat},
                             {"x_lo", fit.x_lo},       {"x_hi", fit.x_hi},
                             {"anchor_x", fit.anchor_x}, {"r_squared", fit.r_squared},
                             {"points", fit.points},   {"anchor_prob", a.anchor},
                             {"window", a.tail_window}};
      spdlog::info("tail fit a_hat={:.4f} b_hat={:.4g} window [{:.3g}, {:.3g}]", fit.a_hat,
                   fit.b_hat, fit.x_lo, fit.x_hi);
    } catch (const fieldspec::FitError& err) {
      summary["tail_fit"] = {{"error", err.what()}};
      spdlog::error("tail fit failed: {}", err.what());
      checks_ok = false;
    }
  }

  if (a.mirror) {
    fieldspec::MirrorOptions opt;
    opt.d = a.d;
    opt.bins_per_decade = a.bins_per_decade;
    auto record = [&](const std::string& stem, auto check, fieldspec::MirrorOptions o) {
      try {
        const auto rep = check(e, o);
        fieldspec::CsvTable t{{"y", "gamma_kappa", "gamma_reference"}, {}};
        for (const auto& r : rep.rows) t.rows.push_back({r.y, r.gamma_kappa, r.gamma_reference});
        out.series(stem, t, log_policy);
        summary[stem] = {{"max_discrepancy", rep.max_discrepancy},
                         {"compared_bins", rep.rows.size()},
                         {"quantile_window", {o.quantile_lo, o.quantile_hi}}};
        spdlog::info("{}: max log-density discrepancy {:.4f}", stem, rep.max_discrepancy);
      } catch (const fieldspec::FitError& err) {
        summary[stem] = {{"error", err.what()}};
        spdlog::error("{} failed: {}", stem, err.what());
        checks_ok = false;
      }
    };
    record("mirror", [](const auto& en, auto o) { return fieldspec::kappa_mirror_check(en, o); },
           opt);
    fieldspec::MirrorOptions upper = opt;
    upper.quantile_lo = 0.5;
    upper.quantile_hi = 0.95;
    record("union_shape",
           [](const auto& en, auto o) { return fieldspec::kappa_union_shape_check(en, o); },
           upper);
  }

  write_json(ctx.file("summary.json"), summary);
  ctx.record_output("summary.json");
  const int code = checks_ok ? kExitOk : kExitFailed;
  ctx.write_manifest(code);
  return code;
}

}  // namespace

Action add_spectrum(CLI::App& app, const GlobalOptions& global) {
  auto args = std::make_shared<SpectrumArgs>();
  app.add_option("--M", args->M, "Bandwidth")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--beta", args->beta, "Target (2M+1)/r; r is rounded")->capture_default_str();
  app.add_option("--trials", args->trials, "Monte Carlo trials")->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--bin-width", args->bin_width, "Linear pdf bin width")
      ->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--bins-per-decade", args->bins_per_decade, "Log bins and cdf points per decade")
      ->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--cdf-floor", args->cdf_floor, "Smallest x on log grids")
      ->check(CLI::PositiveNumber)->capture_default_str();
  app.add_flag("--dump-eigenvalues", args->dump_eigenvalues, "Write eigenvalues.csv");
  app.add_flag("--check-min-bound", args->check_min_bound,
               "Check F_min <= (2M+1) F on x < 0.1");
  app.add_flag("--fit-tail", args->fit_tail, "Fit the small-x power law of the cdf");
  app.add_option("--anchor", args->anchor, "Tail-fit anchor probability")->capture_default_str();
  app.add_option("--tail-window", args->tail_window, "Tail-fit window placement")
      ->check(CLI::IsMember({"centered", "below"}))->capture_default_str();
  app.add_flag("--mirror", args->mirror, "Compare kappa and reflected min-eigenvalue densities");
  app.add_option("--d", args->d, "Mirror offset")->capture_default_str();
  return [args, &global] { return run(*args, global); };
}

}  // namespace cli
