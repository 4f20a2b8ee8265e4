#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "json.hpp"

namespace cli {

inline constexpr const char* kFormatVersion = "1";

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitFailed = 2;  // ill-conditioned solve or failed check
inline constexpr int kExitInternal = 3;

struct GlobalOptions {
  std::uint64_t seed = 1;
  std::string out = ".";
  unsigned threads = 0;
  bool json_logs = false;
};

class RunContext {
 public:
  RunContext(std::string command, const GlobalOptions& global);

  const std::filesystem::path& out() const noexcept { return out_; }
  std::uint64_t seed() const noexcept { return global_.seed; }
  unsigned threads() const noexcept { return threads_; }

  std::filesystem::path file(const std::string& name) const { return out_ / name; }

  // Resolved configuration echoed into manifest.json.
  nlohmann::json& config() noexcept { return config_; }
  void record_output(const std::string& name);
  void write_manifest(int exit_code) const;

 private:
  std::string command_;
  GlobalOptions global_;
  std::filesystem::path out_;
  unsigned threads_;
  nlohmann::json config_ = nlohmann::json::object();
  nlohmann::json outputs_ = nlohmann::json::array();
};

void configure_logging(bool json);

void write_json(const std::filesystem::path& path, const nlohmann::json& j);

// JSON number, or null for NaN and infinities.
nlohmann::json number_or_null(double x);

// Parses "lo:hi".
std::pair<double, double> parse_support(const std::string& text);

}  // namespace cli
