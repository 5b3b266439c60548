#pragma once

// Subcommands of the `genres` tool. Each returns its exit code together with
// the text destined for standard output (or --out) and for standard error.
//
// Exit codes: 0 the property holds, 1 it does not, 2 usage or input error,
// 3 internal contract violation (two checks that must agree did not).

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "genres/criteria.hpp"
#include "matrix_io.hpp"

namespace genres::cli {

inline constexpr int kExitHolds = 0;
inline constexpr int kExitFails = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitContract = 3;

struct Options {
  std::optional<double> grid_radius;  // default: half the family radius
  std::size_t grid_points = 25;
  TolerancePolicy tol;
  std::uint64_t seed = 0;
  bool timing = false;  // adds wall-clock time, making output non-reproducible
};

struct CommandResult {
  int exit_code = kExitHolds;
  std::string output;      // report (JSON) or table (CSV); empty on exit 2
  std::string diagnostic;  // for standard error
};

CommandResult cmd_analyze(const std::filesystem::path& t,
                          const std::filesystem::path& s, const Options& opt);

CommandResult cmd_mp_check(const std::filesystem::path& t,
                           const std::filesystem::path& s, const Options& opt);

CommandResult cmd_spectrum(const std::filesystem::path& t,
                           const std::filesystem::path& s, const Region& region,
                           const Options& opt);

CommandResult cmd_perturb(const std::filesystem::path& t,
                          const std::filesystem::path& tbar, const Options& opt);

CommandResult cmd_version();

}  // namespace genres::cli
