#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dbicc/cli/io.hpp"
#include "dbicc/distances.hpp"

namespace dbicc::cli {

/// Invalid command-line configuration (exit code 4).
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& m) : Error("ConfigError", m) {}
};

enum ExitCode : int { kSuccess = 0, kInputError = 2, kComputationError = 3, kConfigError = 4 };

struct RunConfig {
  std::string command;     ///< estimate | bootstrap | sweep-threshold | simulate
  std::string experiment;  ///< simulate only: point | coverage | sb | delta-eps | assumptions | scans

  std::filesystem::path input;
  std::filesystem::path groups;
  InputFormat format = InputFormat::auto_detect;
  std::optional<std::vector<std::size_t>> columns;

  std::vector<DistanceKind> distances{DistanceKind::l2_vec};
  std::optional<double> threshold;
  std::vector<double> threshold_grid;

  std::size_t boot = 1200;
  double level = 0.95;
  bool corrected = true;
  std::uint64_t seed = 1;
  std::vector<std::size_t> m_grid;
  int sb_offset = 1;
  unsigned threads = 0;

  // Simulation parameters.
  double rho = 0.5;
  std::size_t num_individuals = 40;
  std::size_t replicates_per_individual = 4;
  std::size_t dim = 2;
  std::size_t wishart_df = 0;
  double phi = 0.0;
  std::size_t reps = 500;
  std::size_t time_points = 197;
  std::string sigma = "identity";

  std::filesystem::path out;
  std::filesystem::path csv_out;
  std::filesystem::path replicate_log;
  std::filesystem::path out_dir;
};

/// Throws ConfigError when a parameter is outside the range its operation accepts.
void validate_config(const RunConfig& config);

/// Parses "a:b:step" into a, a + step, ..., up to b inclusive.
std::vector<double> parse_threshold_grid(const std::string& spec);

nlohmann::ordered_json cmd_estimate(const RunConfig& config);
nlohmann::ordered_json cmd_bootstrap(const RunConfig& config);
/// CSV text: distance,lambda,avg_fraction_zeroed,rho_hat,status.
std::string cmd_sweep_threshold(const RunConfig& config);
nlohmann::ordered_json cmd_simulate(const RunConfig& config);

/// Full command-line entry point; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dbicc::cli
