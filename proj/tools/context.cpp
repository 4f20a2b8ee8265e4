#include "context.hpp"

#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "fieldspec/parallel.hpp"

namespace cli {

RunContext::RunContext(std::string command, const GlobalOptions& global)
    : command_(std::move(command)),
      global_(global),
      out_(global.out),
      threads_(global.threads > 0 ? global.threads : fieldspec::default_thread_count()) {
  std::filesystem::create_directories(out_);
}

void RunContext::record_output(const std::string& name) { outputs_.push_back(name); }

void RunContext::write_manifest(int exit_code) const {
  nlohmann::json m;
  m["format_version"] = kFormatVersion;
  m["command"] = command_;
  m["seed"] = global_.seed;
  m["threads"] = threads_;
  m["config"] = config_;
  m["outputs"] = outputs_;
  m["exit_code"] = exit_code;
  write_json(out_ / "manifest.json", m);
}

void configure_logging(bool json) {
  auto logger = spdlog::stderr_logger_mt("fieldspec");
  if (json) {
    logger->set_pattern(R"({"time":"%Y-%m-%dT%H:%M:%S.%e","level":"%l","msg":"%v"})");
  } else {
    logger->set_pattern("[%H:%M:%S.%e] [%l] %v");
  }
  spdlog::set_default_logger(logger);
}

void write_json(const std::filesystem::path& path, const nlohmann::json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

nlohmann::json number_or_null(double x) {
  return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr);
}

std::pair<double, double> parse_support(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("support must be lo:hi");
  std::size_t used = 0;
  const double lo = std::stod(text.substr(0, colon), &used);
  if (used != colon) throw std::invalid_argument("support must be lo:hi");
  const std::string rest = text.substr(colon + 1);
  const double hi = std::stod(rest, &used);
  if (used != rest.size()) throw std::invalid_argument("support must be lo:hi");
  return {lo, hi};
}

}  // namespace cli
