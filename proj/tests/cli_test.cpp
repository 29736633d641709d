// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "wimax/cli.hpp"
#include "wimax/config.hpp"
#include "wimax/metrics.hpp"

namespace wimax::cli {
namespace {

namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / (std::string("wimax_cli_") + info->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  int invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "wimax_sim");
    std::vector<char*> argv;
    for (auto& a : args) argv.push_back(a.data());
    out_.str("");
    err_.str("");
    return main(static_cast<int>(argv.size()), argv.data(), out_, err_);
  }

  fs::path write_file(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p;
  }

  static std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  }

  fs::path dir_;
  std::ostringstream out_;
  std::ostringstream err_;
};

TEST_F(CliTest, EventsFileName) {
  EXPECT_EQ(events_file_name("canonical", "hedf", 3), "canonical_hedf_seed3.events.csv");
}

TEST_F(CliTest, RunWritesOneLogPerPolicyAndSharedArrivals) {
  const fs::path out = dir_ / "out";
  ASSERT_EQ(invoke({"run", "--scenario", "canonical", "--policy", "edf,hedf", "--seed", "1",
                    "--frames", "400", "--out", out.string()}),
            kExitOk)
      << err_.str();
  const auto rows = read_summary_csv(out / kSummaryFile);
  ASSERT_EQ(rows.size(), 2u);
  auto arrivals = [&](const std::string& policy) {
    EventLog only;
    for (const auto& e : read_events_csv(out / events_file_name("canonical", policy, 1))) {
      if (e.type == EventType::kArrival) only.push_back(e);
    }
    return only;
  };
  EXPECT_FALSE(arrivals("edf").empty());
  EXPECT_EQ(arrivals("edf"), arrivals("hedf"));
  EXPECT_NE(out_.str().find("hedf"), std::string::npos);
}

TEST_F(CliTest, StarvationUnderEdfShowsAStarvedStation) {
  const fs::path out = dir_ / "out";
  ASSERT_EQ(invoke({"run", "--scenario", "starvation", "--policy", "edf", "--frames", "2000",
                    "--out", out.string()}),
            kExitOk);
  const auto rows = read_summary_csv(out / kSummaryFile);
  ASSERT_EQ(rows.size(), 1u);
  ASSERT_EQ(rows[0].metrics.stations.size(), 2u);
  EXPECT_GT(rows[0].metrics.stations[1].max_starvation_window_ms, 0.0);
}

TEST_F(CliTest, MissingScenarioFileIsAConfigErrorWithNoOutput) {
  const fs::path out = dir_ / "out";
  EXPECT_EQ(invoke({"run", "--scenario", (dir_ / "nope.json").string(), "--out", out.string()}),
            kExitConfig);
  EXPECT_FALSE(fs::exists(out));
  EXPECT_NE(err_.str().find("nope.json"), std::string::npos);
}

std::string small_scenario(const std::string& extra, const std::string& second_station_id = "1") {
  return R"({"name": "lab", )" + extra + R"(
    "cells": [{"id": 0, "base_station_capacity_bits": 1000, "stations": [0, 1]}],
    "stations": [
      {"id": 0, "cell": 0, "capacity_bits": 1000,
       "traffic": [{"class": "rtPS", "pattern": "constant_rate",
                    "rate_bits_per_s": 64000, "packet_size_bits": 800}]},
      {"id": )" + second_station_id + R"(, "cell": 0, "capacity_bits": 1000}]})";
}

TEST_F(CliTest, AlphaOutOfRangeIsRejected) {
  const auto path = write_file("alpha.json", small_scenario(R"("ewma_alpha": 1.5,)"));
  EXPECT_EQ(invoke({"validate", path.string()}), kExitConfig);
  EXPECT_NE(err_.str().find("ewma_alpha"), std::string::npos);
  const fs::path out = dir_ / "out";
  EXPECT_EQ(invoke({"run", "--scenario", path.string(), "--out", out.string()}), kExitConfig);
  EXPECT_FALSE(fs::exists(out));
}

TEST_F(CliTest, DuplicateStationIdNamesBothEntries) {
  const auto path = write_file("dup.json", small_scenario("", "0"));
  EXPECT_EQ(invoke({"validate", path.string()}), kExitConfig);
  EXPECT_NE(err_.str().find("stations[1].id"), std::string::npos) << err_.str();
  EXPECT_NE(err_.str().find("stations[0]"), std::string::npos);
}

TEST_F(CliTest, UnknownKeysAndPoliciesAreRejected) {
  const auto path = write_file("typo.json", small_scenario(R"("sheduler": "edf",)"));
  EXPECT_EQ(invoke({"validate", path.string()}), kExitConfig);
  EXPECT_NE(err_.str().find("sheduler"), std::string::npos);
  EXPECT_EQ(invoke({"run", "--policy", "fifo", "--out", (dir_ / "o").string()}), kExitConfig);
  EXPECT_EQ(invoke({"run", "--seed", "x1", "--out", (dir_ / "o").string()}), kExitConfig);
  EXPECT_EQ(invoke({"frobnicate"}), kExitConfig);
}

TEST_F(CliTest, ValidatePrintsTheEffectiveConfig) {
  EXPECT_EQ(invoke({"validate", "canonical"}), kExitOk);
  EXPECT_EQ(out_.str(), scenario_to_json(canonical_scenario()));

  const auto path = write_file("lab.json", small_scenario(R"("scheduler": "hedf",)"));
  EXPECT_EQ(invoke({"validate", path.string()}), kExitOk) << err_.str();
  const Scenario reparsed = parse_scenario(out_.str());
  EXPECT_EQ(reparsed.scheduler, "hedf");
  EXPECT_EQ(scenario_to_json(reparsed), out_.str());
}

TEST_F(CliTest, RefusesToOverwriteWithoutForce) {
  const fs::path out = dir_ / "out";
  const std::vector<std::string> args{"run", "--policy", "hedf", "--seed", "2",
                                      "--frames", "300", "--out", out.string()};
  ASSERT_EQ(invoke(args), kExitOk);
  const auto events = out / events_file_name("canonical", "hedf", 2);
  const std::string first = slurp(events);
  const std::string first_summary = slurp(out / kSummaryFile);

  EXPECT_EQ(invoke(args), kExitIo);
  EXPECT_NE(err_.str().find("--force"), std::string::npos);

  auto forced = args;
  forced.push_back("--force");
  ASSERT_EQ(invoke(forced), kExitOk);
  EXPECT_EQ(slurp(events), first);
  EXPECT_EQ(slurp(out / kSummaryFile), first_summary);
}

TEST_F(CliTest, ReportRecomputesFromTheEventLogs) {
  const fs::path out = dir_ / "out";
  ASSERT_EQ(invoke({"run", "--policy", "rr,ssbpf_edf", "--seed", "1,2", "--frames", "300", "--out",
                    out.string()}),
            kExitOk);
  const std::string table = out_.str();
  EXPECT_EQ(invoke({"report", "--out", out.string()}), kExitOk) << err_.str();
  EXPECT_EQ(out_.str(), table);

  // A log with a completion removed no longer matches its summary row.
  const auto events = out / events_file_name("canonical", "rr", 1);
  std::string text = slurp(events);
  const auto row = text.find(",completion,");
  ASSERT_NE(row, std::string::npos);
  const auto begin = text.rfind('\n', row) + 1;
  text.erase(begin, text.find('\n', row) + 1 - begin);
  std::ofstream(events, std::ios::binary | std::ios::trunc) << text;
  EXPECT_EQ(invoke({"report", "--out", out.string()}), kExitInternal);
}

TEST_F(CliTest, ReportOnMissingDirectoryIsAnIoError) {
  EXPECT_EQ(invoke({"report", "--out", (dir_ / "absent").string()}), kExitIo);
}

}  // namespace
}  // namespace wimax::cli
