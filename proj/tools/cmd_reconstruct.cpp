#include <spdlog/spdlog.h>

#include <fstream>
#include <limits>
#include <optional>

#include "commands.hpp"
#include "fieldspec/csv.hpp"
#include "fieldspec/reconstruct.hpp"
#include "fieldspec/rng.hpp"

namespace cli {

namespace {

struct ReconstructArgs {
  int M = 10;
  std::size_t r = 26;
  std::string support = "0:1";
  bool regular = false;
  bool weighted = false;
  double kappa_max = 1e12;
  int refine_steps = 2;
  std::string samples_csv;
  std::size_t grid = 1000;
};

int run(const ReconstructArgs& a, const GlobalOptions& global) {
  RunContext ctx("reconstruct", global);
  const auto [lo, hi] = parse_support(a.support);

  std::optional<fieldspec::BandlimitedSignal> truth;
  std::optional<fieldspec::SampleSet> samples;
  if (!a.samples_csv.empty()) {
    samples = fieldspec::read_samples(std::filesystem::path(a.samples_csv));
  } else {
    truth = fieldspec::BandlimitedSignal::random_real(a.M, fieldspec::derive_seed(global.seed, 1));
    const auto t = a.regular ? fieldspec::regular_topology(a.r)
                             : fieldspec::random_topology(a.r, lo, hi,
                                                          fieldspec::derive_seed(global.seed, 0));
    samples = fieldspec::sample_signal(*truth, t);
  }

  fieldspec::ReconstructOptions options;
  options.weighted = a.weighted;
  options.kappa_max = a.kappa_max;
  options.refine_steps = a.refine_steps;
  const auto report = fieldspec::reconstruct(*samples, a.M, options, truth ? &*truth : nullptr);

  auto& cfg = ctx.config();
  cfg["M"] = a.M;
  cfg["r"] = samples->size();
  cfg["beta"] = report.beta;
  cfg["weighted"] = a.weighted;
  cfg["kappa_max"] = a.kappa_max;
  cfg["refine_steps"] = a.refine_steps;
  if (a.samples_csv.empty()) {
    cfg["support"] = {lo, hi};
    cfg["regular"] = a.regular;
    cfg["topology_seed"] = fieldspec::derive_seed(global.seed, 0);
    cfg["signal_seed"] = fieldspec::derive_seed(global.seed, 1);
  } else {
    cfg["samples_csv"] = std::filesystem::absolute(a.samples_csv).string();
  }
  cfg["grid_points"] = a.grid;

  fieldspec::write_samples(ctx.file("samples.csv"), *samples);
  ctx.record_output("samples.csv");

  const fieldspec::BandlimitedSignal fitted(a.M, report.coeffs_hat);
  fieldspec::CsvTable curve{{"t", "true_re", "recon_re"}, {}};
  for (std::size_t i = 0; i < a.grid; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(a.grid);
    const double true_re = truth ? fieldspec::evaluate_signal(*truth, t).real()
                                 : std::numeric_limits<double>::quiet_NaN();
    curve.rows.push_back({t, true_re, fieldspec::evaluate_signal(fitted, t).real()});
  }
  fieldspec::write_csv(ctx.file("reconstruction.csv"), curve);
  ctx.record_output("reconstruction.csv");

  std::ofstream(ctx.file("report.json")) << fieldspec::to_json(report) << '\n';
  ctx.record_output("report.json");

  spdlog::info("M={} r={} beta={:.6g} delta={:.6g} kappa={:.6g} success={}", a.M,
               samples->size(), report.beta, report.delta, report.kappa, report.success);
  if (report.rel_l2_error) spdlog::info("relative l2 error {:.3e}", *report.rel_l2_error);

  const int code = report.success ? kExitOk : kExitFailed;
  if (!report.success) spdlog::warn("ill-conditioned system, kappa above {:.3g}", a.kappa_max);
  ctx.write_manifest(code);
  return code;
}

}  // namespace

Action add_reconstruct(CLI::App& app, const GlobalOptions& global) {
  auto args = std::make_shared<ReconstructArgs>();
  app.add_option("--M", args->M, "Bandwidth (harmonics -M..M)")->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  app.add_option("--r", args->r, "Number of generated samples")->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--support", args->support, "Sampling support lo:hi inside [0,1)")
      ->capture_default_str();
  app.add_flag("--regular", args->regular, "Equally spaced samples t_q = (q-1)/r");
  app.add_flag("--weighted", args->weighted, "Solve the gap-weighted (preconditioned) system");
  app.add_option("--kappa-max", args->kappa_max, "Ill-conditioning threshold")
      ->capture_default_str();
  app.add_option("--refine-steps", args->refine_steps, "Refinement passes")
      ->check(CLI::NonNegativeNumber)->capture_default_str();
  app.add_option("--samples", args->samples_csv, "Read samples from CSV t,value_re,value_im")
      ->check(CLI::ExistingFile);
  app.add_option("--grid", args->grid, "Points in the output curve")->check(CLI::PositiveNumber)
      ->capture_default_str();
  return [args, &global] { return run(*args, global); };
}

}  // namespace cli
