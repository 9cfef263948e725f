#pragma once

#include "cauchy/config.hpp"

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace cauchy
{

inline constexpr const char* kToolVersion = "1.0.0";

enum class ScenarioTag
{
  Audit,
  Stiffness,
  VerifyRate,
  Solve,
  Evolve,
  Reconstruct,
};

std::string_view to_string(ScenarioTag tag);

/// One CLI invocation. Material flags override the config file.
struct ScenarioSpec
{
  ScenarioTag tag = ScenarioTag::Audit;
  std::optional<std::string> config_path;
  std::string out_dir = ".";
  std::uint64_t seed = 42;
  /// 0 = hardware concurrency; outputs do not depend on it.
  int threads = 1;

  std::optional<std::string> law;
  std::optional<double> mu;
  std::optional<double> lambda;
  std::optional<double> kappa;
  std::optional<std::size_t> samples;
  /// Stiffness dump input: B or sigma as (xx yy zz xy yz zx).
  std::optional<std::array<double, 6>> b;
  std::optional<std::array<double, 6>> sigma;
};

struct RunReport
{
  std::string version = kToolVersion;
  std::string scenario;
  std::uint64_t seed = 0;
  std::string config_echo;
  /// Ordered key/value rows.
  std::vector<std::pair<std::string, std::string>> rows;
  bool passed = true;
  bool errored = false;

  int exit_code() const { return errored ? 2 : (passed ? 0 : 1); }
};

/// Configuration used when no file is given: mu = 1, lambda = 3, solver defaults.
Config default_config();

/// Runs a scenario, writing CSV/VTK artifacts and report.txt into spec.out_dir. Module
/// errors are caught and recorded in the report.
RunReport run_scenario(const ScenarioSpec& spec);

/// Plain-text report: header lines, `key = value` rows, then the config echo.
void write_report(std::ostream& out, const RunReport& report);

/// Entry point of the command-line tool.
int run_cli(int argc, char** argv);

}  // namespace cauchy
