// SPDX-License-Identifier: Apache-2.0

#include "wimax/cli.hpp"

#include <charconv>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "wimax/config.hpp"
#include "wimax/engine.hpp"
#include "wimax/errors.hpp"
#include "wimax/metrics.hpp"
#include "wimax/schedulers.hpp"

namespace wimax::cli {

namespace {

void print_violations(const ConfigError& e, std::ostream& err) {
  err << "configuration error:\n";
  for (const auto& v : e.violations()) err << "  " << v << '\n';
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> items;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

}  // namespace

std::string events_file_name(const std::string& scenario, const std::string& policy,
                             std::uint64_t seed) {
  return scenario + "_" + policy + "_seed" + std::to_string(seed) + ".events.csv";
}

int cmd_run(const RunPlan& plan, std::ostream& out, std::ostream& err) {
  Scenario base;
  std::vector<std::string> policies = plan.policies;
  std::vector<std::uint64_t> seeds = plan.seeds;
  try {
    base = resolve_scenario(plan.scenario);
    if (plan.frames) base.total_frames = *plan.frames;
    if (plan.drop_on_miss) base.drop_on_miss = true;
    if (policies.empty()) policies = {base.scheduler};
    if (seeds.empty()) seeds = {base.seed};
    std::vector<std::string> problems = validate(base);
    for (const auto& p : policies) {
      if (!is_policy_name(p)) problems.push_back("--policy: unknown policy '" + p + "'");
    }
    if (!problems.empty()) throw ConfigError(std::move(problems));
  } catch (const ConfigError& e) {
    print_violations(e, err);
    return kExitConfig;
  }

  namespace fs = std::filesystem;
  std::vector<fs::path> targets{plan.out_dir / kSummaryFile};
  for (const auto& p : policies) {
    for (auto seed : seeds) targets.push_back(plan.out_dir / events_file_name(base.name, p, seed));
  }
  try {
    if (!plan.force) {
      for (const auto& t : targets) {
        if (fs::exists(t)) {
          err << "refusing to overwrite " << t.string() << " (pass --force)\n";
          return kExitIo;
        }
      }
    }
    fs::create_directories(plan.out_dir);
  } catch (const fs::filesystem_error& e) {
    err << "I/O error: " << e.what() << '\n';
    return kExitIo;
  }

  std::vector<SummaryRow> rows;
  try {
    for (const auto& p : policies) {
      for (auto seed : seeds) {
        Scenario s = base;
        s.scheduler = p;
        s.seed = seed;
        RunResult r = run(s);
        write_events_csv(r.log, plan.out_dir / events_file_name(s.name, p, seed));
        rows.push_back(SummaryRow{std::move(r.info), std::move(r.metrics)});
      }
    }
    write_summary_csv(rows, plan.out_dir / kSummaryFile);
  } catch (const ConfigError& e) {
    print_violations(e, err);
    return kExitConfig;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const InvariantError& e) {
    err << "internal invariant breach: " << e.what() << '\n';
    return kExitInternal;
  }
  print_summary_table(rows, out);
  return kExitOk;
}

int cmd_validate(const std::string& scenario, std::ostream& out, std::ostream& err) {
  try {
    out << scenario_to_json(resolve_scenario(scenario));
  } catch (const ConfigError& e) {
    print_violations(e, err);
    return kExitConfig;
  }
  return kExitOk;
}

int cmd_report(const std::filesystem::path& dir, std::ostream& out, std::ostream& err) {
  std::vector<SummaryRow> rows;
  try {
    rows = read_summary_csv(dir / kSummaryFile);
    for (auto& row : rows) {
      const EventLog log =
          read_events_csv(dir / events_file_name(row.info.scenario, row.info.policy, row.info.seed));
      MetricsRecord recomputed = compute_metrics(log, row.info);
      // Service classes are not part of the event CSV; keep the recorded split.
      recomputed.delay_by_class = row.metrics.delay_by_class;
      if (!(recomputed == row.metrics)) {
        err << "summary row " << row.info.policy << " seed " << row.info.seed
            << " disagrees with its event log\n";
        return kExitInternal;
      }
      row.metrics = std::move(recomputed);
    }
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << '\n';
    return kExitIo;
  }
  print_summary_table(rows, out);
  return kExitOk;
}

int main(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Frame-based WiMAX uplink scheduling simulator"};
  app.require_subcommand(1);

  RunPlan plan;
  std::string policy_list;
  std::string seed_list;
  std::int64_t frames = 0;
  auto* run_cmd = app.add_subcommand("run", "simulate policies x seeds and write CSVs");
  run_cmd->add_option("--scenario", plan.scenario, "builtin (canonical, starvation) or JSON path");
  run_cmd->add_option("--policy", policy_list, "comma list of rr, wrr, edf, ssbpf_edf, hedf");
  run_cmd->add_option("--seed", seed_list, "comma list of seeds");
  run_cmd->add_option("--frames", frames, "override the number of frames");
  run_cmd->add_option("--out", plan.out_dir, "output directory");
  run_cmd->add_flag("--force", plan.force, "overwrite existing output files");
  run_cmd->add_flag("--drop-on-miss", plan.drop_on_miss, "drop requests once they miss");

  std::string validate_target;
  auto* validate_cmd = app.add_subcommand("validate", "check a scenario and print it resolved");
  validate_cmd->add_option("--scenario,target", validate_target, "builtin or JSON path");

  std::filesystem::path report_dir = "out";
  auto* report_cmd = app.add_subcommand("report", "re-summarize the CSVs of an output directory");
  report_cmd->add_option("--out", report_dir, "directory written by run");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream msg;
    const int code = app.exit(e, out, msg);
    err << msg.str();
    return code == 0 ? kExitOk : kExitConfig;
  }

  if (*run_cmd) {
    std::vector<std::string> problems;
    plan.policies = split_list(policy_list);
    for (const auto& s : split_list(seed_list)) {
      std::uint64_t v = 0;
      auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      if (ec != std::errc{} || ptr != s.data() + s.size()) {
        problems.push_back("--seed: '" + s + "' is not a non-negative integer");
      }
      plan.seeds.push_back(v);
    }
    if (run_cmd->count("--frames") > 0) {
      if (frames <= 0) problems.push_back("--frames: must be > 0");
      plan.frames = frames;
    }
    if (!problems.empty()) {
      print_violations(ConfigError(std::move(problems)), err);
      return kExitConfig;
    }
    return cmd_run(plan, out, err);
  }
  if (*validate_cmd) {
    if (validate_target.empty()) {
      err << "validate: a scenario name or path is required\n";
      return kExitConfig;
    }
    return cmd_validate(validate_target, out, err);
  }
  return cmd_report(report_dir, out, err);
}

}  // namespace wimax::cli
