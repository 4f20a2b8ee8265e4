#include <spdlog/spdlog.h>

#include <algorithm>

#include "commands.hpp"
#include "fieldspec/csv.hpp"
#include "fieldspec/precond.hpp"
#include "fieldspec/rng.hpp"

namespace cli {

namespace {

struct PrecondArgs {
  std::vector<int> M_list{5, 10, 20};
  std::size_t trials = 500;
};

int run(const PrecondArgs& a, const GlobalOptions& global) {
  RunContext ctx("precond-check", global);
  ctx.config()["M"] = a.M_list;
  ctx.config()["trials"] = a.trials;
  ctx.config()["seed_rule"] = "M list entry i uses derive_seed(seed, i); trial j within it derive_seed(that, j)";

  fieldspec::CsvTable table{
      {"M", "r", "delta", "kappa_weighted", "kappa_plain", "bound", "satisfied"}, {}};
  nlohmann::json summary = nlohmann::json::array();
  std::size_t violations = 0;
  for (std::size_t i = 0; i < a.M_list.size(); ++i) {
    const int M = a.M_list[i];
    const auto trials =
        fieldspec::run_precond_check(M, a.trials, fieldspec::derive_seed(global.seed, i), ctx.threads());
    std::size_t bad = 0;
    double worst_ratio = 0.0;
    for (const auto& t : trials) {
      table.rows.push_back({static_cast<double>(M), static_cast<double>(t.r), t.delta,
                            t.kappa_weighted, t.kappa_plain, t.bound, t.satisfied ? 1.0 : 0.0});
      bad += t.satisfied ? 0 : 1;
      worst_ratio = std::max(worst_ratio, t.kappa_weighted / t.bound);
    }
    violations += bad;
    summary.push_back({{"M", M}, {"trials", trials.size()}, {"violations", bad},
                       {"max_kappa_over_bound", worst_ratio}});
    spdlog::info("M={} trials={} violations={} max kappa/bound={:.4f}", M, trials.size(), bad,
                 worst_ratio);
  }
  fieldspec::write_csv(ctx.file("precond.csv"), table);
  ctx.record_output("precond.csv");
  write_json(ctx.file("precond.json"), {{"cells", summary}, {"violations", violations}});
  ctx.record_output("precond.json");

  const int code = violations == 0 ? kExitOk : kExitFailed;
  ctx.write_manifest(code);
  return code;
}

}  // namespace

Action add_precond_check(CLI::App& app, const GlobalOptions& global) {
  auto args = std::make_shared<PrecondArgs>();
  app.add_option("--M", args->M_list, "Bandwidths")->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--trials", args->trials, "Topologies per bandwidth")
      ->check(CLI::PositiveNumber)->capture_default_str();
  return [args, &global] { return run(*args, global); };
}

}  // namespace cli
