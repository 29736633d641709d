// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "wimax/events.hpp"

namespace wimax {

/// What the metrics need to know about a run beyond its log.
struct RunInfo {
  std::string scenario;
  std::string policy;
  std::uint64_t seed = 0;
  Millis frame_duration = 5.0;
  std::int64_t total_frames = 0;
  std::vector<StationId> stations;

  double duration_s() const { return frame_duration * static_cast<double>(total_frames) / 1000.0; }
  bool operator==(const RunInfo&) const = default;
};

struct DelayStats {
  std::int64_t count = 0;
  double mean_ms = 0.0;
  double p50_ms = 0.0;
  double p95_ms = 0.0;
  double max_ms = 0.0;

  bool operator==(const DelayStats&) const = default;
};

struct StationMetrics {
  StationId station = 0;
  double throughput_bps = 0.0;
  double max_starvation_window_ms = 0.0;

  bool operator==(const StationMetrics&) const = default;
};

struct MetricsRecord {
  double throughput_bps = 0.0;
  double offered_load_bps = 0.0;
  DelayStats delay;
  std::map<ServiceClass, DelayStats> delay_by_class;
  std::int64_t arrivals = 0;
  std::int64_t completions = 0;
  std::int64_t deadline_misses = 0;
  std::int64_t drops = 0;
  double deadline_miss_ratio = 0.0;
  std::int64_t context_switch_count = 0;
  double max_starvation_window_ms = 0.0;  // over all stations
  std::vector<StationMetrics> stations;

  bool operator==(const MetricsRecord&) const = default;
};

/// Bits of completed requests per second.
double throughput(const EventLog& log, double duration_s);

/// Departure minus arrival over completed requests.
DelayStats end_to_end_delay(const EventLog& log);

/// Delay statistics split by the service class recorded on arrivals.
std::map<ServiceClass, DelayStats> end_to_end_delay_by_class(const EventLog& log);

/// Longest run of frames in which the station had pending requests and
/// received no grant, in milliseconds.
Millis starvation_window(const EventLog& log, StationId station, Millis frame_duration,
                         std::int64_t total_frames);

MetricsRecord compute_metrics(const EventLog& log, const RunInfo& info);

// ---------------------------------------------------------------------------
// CSV.

inline constexpr std::string_view kEventsCsvHeader = "frame,time_ms,event,cell,station,request,bits";

void write_events_csv(const EventLog& log, std::ostream& out);
void write_events_csv(const EventLog& log, const std::filesystem::path& path);
EventLog read_events_csv(std::istream& in);
EventLog read_events_csv(const std::filesystem::path& path);

struct SummaryRow {
  RunInfo info;
  MetricsRecord metrics;

  bool operator==(const SummaryRow&) const = default;
};

std::string summary_csv_header();
void write_summary_csv(std::span<const SummaryRow> rows, std::ostream& out);
void write_summary_csv(std::span<const SummaryRow> rows, const std::filesystem::path& path);
std::vector<SummaryRow> read_summary_csv(std::istream& in);
std::vector<SummaryRow> read_summary_csv(const std::filesystem::path& path);

/// Aligned plain-text table, one line per run.
void print_summary_table(std::span<const SummaryRow> rows, std::ostream& out);

}  // namespace wimax
