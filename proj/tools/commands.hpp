#pragma once

#include <CLI11.hpp>
#include <functional>

#include "context.hpp"

namespace cli {

// Each subcommand registers its flags and returns the action that runs it.
using Action = std::function<int()>;

Action add_reconstruct(CLI::App& app, const GlobalOptions& global);
Action add_sweep(CLI::App& app, const GlobalOptions& global);
Action add_spectrum(CLI::App& app, const GlobalOptions& global);
Action add_moments(CLI::App& app, const GlobalOptions& global);
Action add_precond_check(CLI::App& app, const GlobalOptions& global);

}  // namespace cli
