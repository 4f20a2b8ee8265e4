#include <spdlog/spdlog.h>

#include <CLI11.hpp>
#include <cstdlib>
#include <map>

#include "commands.hpp"
#include "fieldspec/csv.hpp"
#include "fieldspec/error.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Irregular sampling, random Toeplitz spectra and exact moments"};
  app.require_subcommand(1);
  app.fallthrough();

  cli::GlobalOptions global;
  app.add_option("--seed", global.seed, "Master random seed")->capture_default_str();
  app.add_option("--out", global.out, "Output directory")->capture_default_str();
  app.add_option("--threads", global.threads,
                 "Worker threads (0: FIELDSPEC_THREADS or hardware concurrency)");
  app.add_flag("--json-logs", global.json_logs, "Log JSON lines to stderr");

  std::map<CLI::App*, cli::Action> actions;
  auto add = [&](const char* name, const char* help, auto factory) {
    auto* sub = app.add_subcommand(name, help);
    actions[sub] = factory(*sub, global);
  };
  add("reconstruct", "Reconstruct a bandlimited signal from irregular samples",
      cli::add_reconstruct);
  add("sweep", "Success probability over a grid of (M, r)", cli::add_sweep);
  add("spectrum", "Monte Carlo eigenvalue statistics of the Toeplitz matrix",
      cli::add_spectrum);
  add("moments", "Exact eigenvalue moments and the moment comparison table",
      cli::add_moments);
  add("precond-check", "Check the gap-weighted condition number bound",
      cli::add_precond_check);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cli::kExitUsage;
  }

  cli::configure_logging(global.json_logs);
  try {
    for (auto* sub : app.get_subcommands()) return actions.at(sub)();
  } catch (const fieldspec::CsvError& e) {
    spdlog::error("malformed CSV: {}", e.what());
    return cli::kExitUsage;
  } catch (const fieldspec::InvalidArgument& e) {
    spdlog::error("{}", e.what());
    return cli::kExitUsage;
  } catch (const fieldspec::DomainError& e) {
    spdlog::error("{}", e.what());
    return cli::kExitUsage;
  } catch (const std::invalid_argument& e) {
    spdlog::error("{}", e.what());
    return cli::kExitUsage;
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return cli::kExitInternal;
  }
  return cli::kExitUsage;
}
