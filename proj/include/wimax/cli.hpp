// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace wimax::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitIo = 3;
inline constexpr int kExitInternal = 4;

struct RunPlan {
  std::string scenario = "canonical";  // builtin name or path
  std::vector<std::string> policies;  // empty = the scenario's scheduler
  std::vector<std::uint64_t> seeds;   // empty = the scenario's seed
  std::filesystem::path out_dir = "out";
  std::optional<std::int64_t> frames;
  bool drop_on_miss = false;
  bool force = false;
};

/// File that receives the event log of one run inside the output directory.
std::string events_file_name(const std::string& scenario, const std::string& policy,
                             std::uint64_t seed);
inline constexpr const char* kSummaryFile = "summary.csv";

int cmd_run(const RunPlan& plan, std::ostream& out, std::ostream& err);
int cmd_validate(const std::string& scenario, std::ostream& out, std::ostream& err);
int cmd_report(const std::filesystem::path& dir, std::ostream& out, std::ostream& err);

/// Parses argv and dispatches to a subcommand.
int main(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace wimax::cli
