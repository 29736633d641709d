// SPDX-License-Identifier: Apache-2.0

#include "wimax/metrics.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "wimax/errors.hpp"

namespace wimax {

namespace {

constexpr std::array<std::string_view, 6> kEventNames = {
    "arrival", "grant", "completion", "deadline_miss", "context_switch", "drop"};

DelayStats stats_of(std::vector<double> samples) {
  DelayStats s;
  if (samples.empty()) return s;
  std::sort(samples.begin(), samples.end());
  const auto n = samples.size();
  // Nearest-rank percentiles.
  auto rank = [&](double p) {
    const auto k = static_cast<std::size_t>(std::ceil(p * static_cast<double>(n)));
    return samples[std::clamp<std::size_t>(k, 1, n) - 1];
  };
  s.count = static_cast<std::int64_t>(n);
  s.mean_ms = std::accumulate(samples.begin(), samples.end(), 0.0) / static_cast<double>(n);
  s.p50_ms = rank(0.50);
  s.p95_ms = rank(0.95);
  s.max_ms = samples.back();
  return s;
}

std::unordered_map<RequestId, Millis> arrival_times(const EventLog& log) {
  std::unordered_map<RequestId, Millis> at;
  for (const auto& e : log) {
    if (e.type == EventType::kArrival) at.emplace(e.request, e.time);
  }
  return at;
}

std::string fmt(double v) {
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), end);
}

template <typename T>
T parse_number(std::string_view text, std::string_view what) {
  T value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw IoError(std::string(what), "cannot parse '" + std::string(text) + "'");
  }
  return value;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const auto pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      parts.push_back(line.substr(start));
      return parts;
    }
    parts.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

std::string_view trim_cr(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(path.string(), "cannot open for writing");
  return out;
}

std::ifstream open_for_read(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path.string(), "cannot open for reading");
  return in;
}

constexpr std::array<std::string_view, 22> kSummaryColumns = {
    "scenario",         "policy",          "seed",
    "frames",           "frame_duration_ms", "duration_s",
    "throughput_bps",   "offered_load_bps", "arrivals",
    "completions",      "deadline_misses", "drops",
    "deadline_miss_ratio", "context_switches", "delay_count",
    "delay_mean_ms",    "delay_p50_ms",    "delay_p95_ms",
    "delay_max_ms",     "max_starvation_window_ms", "class_delay_ms",
    "station_metrics"};

std::string delay_fields(const DelayStats& d) {
  return std::to_string(d.count) + "/" + fmt(d.mean_ms) + "/" + fmt(d.p50_ms) + "/" +
         fmt(d.p95_ms) + "/" + fmt(d.max_ms);
}

DelayStats parse_delay_fields(std::string_view text) {
  const auto f = split(text, '/');
  if (f.size() != 5) throw IoError("summary", "bad delay group '" + std::string(text) + "'");
  return DelayStats{parse_number<std::int64_t>(f[0], "delay count"),
                    parse_number<double>(f[1], "delay mean"),
                    parse_number<double>(f[2], "delay p50"), parse_number<double>(f[3], "delay p95"),
                    parse_number<double>(f[4], "delay max")};
}

}  // namespace

std::string_view to_string(EventType t) { return kEventNames[static_cast<std::size_t>(t)]; }

std::optional<EventType> parse_event_type(std::string_view name) {
  for (std::size_t i = 0; i < kEventNames.size(); ++i) {
    if (kEventNames[i] == name) return static_cast<EventType>(i);
  }
  return std::nullopt;
}

double throughput(const EventLog& log, double duration_s) {
  Bits delivered = 0;
  for (const auto& e : log) {
    if (e.type == EventType::kCompletion) delivered += e.bits;
  }
  return static_cast<double>(delivered) / duration_s;
}

DelayStats end_to_end_delay(const EventLog& log) {
  const auto arrived = arrival_times(log);
  std::vector<double> samples;
  for (const auto& e : log) {
    if (e.type == EventType::kCompletion) samples.push_back(e.time - arrived.at(e.request));
  }
  return stats_of(std::move(samples));
}

std::map<ServiceClass, DelayStats> end_to_end_delay_by_class(const EventLog& log) {
  std::unordered_map<RequestId, std::pair<Millis, ServiceClass>> arrived;
  for (const auto& e : log) {
    if (e.type == EventType::kArrival && e.service_class) {
      arrived.emplace(e.request, std::pair{e.time, *e.service_class});
    }
  }
  std::map<ServiceClass, std::vector<double>> samples;
  for (const auto& e : log) {
    if (e.type != EventType::kCompletion) continue;
    auto it = arrived.find(e.request);
    if (it == arrived.end()) continue;
    samples[it->second.second].push_back(e.time - it->second.first);
  }
  std::map<ServiceClass, DelayStats> out;
  for (auto& [c, v] : samples) out[c] = stats_of(std::move(v));
  return out;
}

Millis starvation_window(const EventLog& log, StationId station, Millis frame_duration,
                         std::int64_t total_frames) {
  struct FrameDelta {
    std::int64_t arrivals = 0;
    std::int64_t departures_before = 0;  // drops at the frame boundary
    std::int64_t departures_after = 0;   // completions at the frame end
    bool granted = false;
  };
  std::map<std::int64_t, FrameDelta> frames;
  for (const auto& e : log) {
    if (e.station != station || e.frame >= total_frames) continue;
    switch (e.type) {
      case EventType::kArrival: ++frames[e.frame].arrivals; break;
      case EventType::kDrop: ++frames[e.frame].departures_before; break;
      case EventType::kCompletion: ++frames[e.frame].departures_after; break;
      case EventType::kGrant: frames[e.frame].granted = true; break;
      default: break;
    }
  }

  std::int64_t pending = 0;
  std::int64_t run = 0;
  std::int64_t longest = 0;
  std::int64_t next = 0;  // first frame not yet accounted for
  auto idle_until = [&](std::int64_t frame) {
    // Frames without events keep the previous state: pending and unserved.
    if (pending > 0 && frame > next) {
      run += frame - next;
      longest = std::max(longest, run);
    }
  };
  for (const auto& [frame, d] : frames) {
    idle_until(frame);
    pending += d.arrivals - d.departures_before;
    if (pending > 0 && !d.granted) {
      longest = std::max(longest, ++run);
    } else {
      run = 0;
    }
    pending -= d.departures_after;
    next = frame + 1;
  }
  idle_until(total_frames);
  return static_cast<double>(longest) * frame_duration;
}

MetricsRecord compute_metrics(const EventLog& log, const RunInfo& info) {
  MetricsRecord m;
  const double duration = info.duration_s();

  std::unordered_map<StationId, Bits> delivered;
  Bits offered = 0;
  std::unordered_set<RequestId> missed;
  for (const auto& e : log) {
    switch (e.type) {
      case EventType::kArrival:
        ++m.arrivals;
        offered += e.bits;
        break;
      case EventType::kCompletion:
        ++m.completions;
        delivered[e.station] += e.bits;
        break;
      case EventType::kDeadlineMiss: missed.insert(e.request); break;
      case EventType::kDrop: ++m.drops; break;
      case EventType::kContextSwitch: ++m.context_switch_count; break;
      case EventType::kGrant: break;
    }
  }
  m.deadline_misses = static_cast<std::int64_t>(missed.size());
  m.deadline_miss_ratio =
      m.arrivals == 0 ? 0.0 : static_cast<double>(m.deadline_misses) / static_cast<double>(m.arrivals);
  m.throughput_bps = throughput(log, duration);
  m.offered_load_bps = static_cast<double>(offered) / duration;
  m.delay = end_to_end_delay(log);
  m.delay_by_class = end_to_end_delay_by_class(log);

  for (StationId sid : info.stations) {
    StationMetrics sm;
    sm.station = sid;
    sm.throughput_bps = static_cast<double>(delivered[sid]) / duration;
    sm.max_starvation_window_ms =
        starvation_window(log, sid, info.frame_duration, info.total_frames);
    m.max_starvation_window_ms = std::max(m.max_starvation_window_ms, sm.max_starvation_window_ms);
    m.stations.push_back(sm);
  }
  return m;
}

// ---------------------------------------------------------------------------

void write_events_csv(const EventLog& log, std::ostream& out) {
  out << kEventsCsvHeader << '\n';
  for (const auto& e : log) {
    out << e.frame << ',' << fmt(e.time) << ',' << to_string(e.type) << ',' << e.cell << ','
        << e.station << ',' << e.request << ',' << e.bits << '\n';
  }
}

void write_events_csv(const EventLog& log, const std::filesystem::path& path) {
  auto out = open_for_write(path);
  write_events_csv(log, out);
  out.flush();
  if (!out) throw IoError(path.string(), "write failed");
}

EventLog read_events_csv(std::istream& in) {
  EventLog log;
  std::string line;
  if (!std::getline(in, line) || trim_cr(line) != kEventsCsvHeader) {
    throw IoError("events csv", "missing or unexpected header");
  }
  while (std::getline(in, line)) {
    const auto view = trim_cr(line);
    if (view.empty()) continue;
    const auto f = split(view, ',');
    if (f.size() != 7) throw IoError("events csv", "expected 7 fields in '" + line + "'");
    const auto type = parse_event_type(f[2]);
    if (!type) throw IoError("events csv", "unknown event '" + std::string(f[2]) + "'");
    log.push_back(Event{parse_number<std::int64_t>(f[0], "frame"), parse_number<double>(f[1], "time"),
                        *type, parse_number<CellId>(f[3], "cell"),
                        parse_number<StationId>(f[4], "station"),
                        parse_number<RequestId>(f[5], "request"), parse_number<Bits>(f[6], "bits"),
                        std::nullopt});
  }
  return log;
}

EventLog read_events_csv(const std::filesystem::path& path) {
  auto in = open_for_read(path);
  try {
    return read_events_csv(in);
  } catch (const IoError& e) {
    throw IoError(path.string(), e.what());
  }
}

std::string summary_csv_header() {
  std::string h;
  for (auto c : kSummaryColumns) {
    if (!h.empty()) h += ',';
    h += c;
  }
  return h;
}

void write_summary_csv(std::span<const SummaryRow> rows, std::ostream& out) {
  out << summary_csv_header() << '\n';
  for (const auto& row : rows) {
    const auto& i = row.info;
    const auto& m = row.metrics;
    std::string classes;
    for (const auto& [c, d] : m.delay_by_class) {
      if (!classes.empty()) classes += ';';
      classes += std::string(to_string(c)) + ":" + delay_fields(d);
    }
    std::string stations;
    for (const auto& s : m.stations) {
      if (!stations.empty()) stations += ';';
      stations += std::to_string(s.station) + ":" + fmt(s.throughput_bps) + "/" +
                  fmt(s.max_starvation_window_ms);
    }
    out << i.scenario << ',' << i.policy << ',' << i.seed << ',' << i.total_frames << ','
        << fmt(i.frame_duration) << ',' << fmt(i.duration_s()) << ',' << fmt(m.throughput_bps)
        << ',' << fmt(m.offered_load_bps) << ',' << m.arrivals << ',' << m.completions << ','
        << m.deadline_misses << ',' << m.drops << ',' << fmt(m.deadline_miss_ratio) << ','
        << m.context_switch_count << ',' << m.delay.count << ',' << fmt(m.delay.mean_ms) << ','
        << fmt(m.delay.p50_ms) << ',' << fmt(m.delay.p95_ms) << ',' << fmt(m.delay.max_ms) << ','
        << fmt(m.max_starvation_window_ms) << ',' << classes << ',' << stations << '\n';
  }
}

void write_summary_csv(std::span<const SummaryRow> rows, const std::filesystem::path& path) {
  auto out = open_for_write(path);
  write_summary_csv(rows, out);
  out.flush();
  if (!out) throw IoError(path.string(), "write failed");
}

std::vector<SummaryRow> read_summary_csv(std::istream& in) {
  std::vector<SummaryRow> rows;
  std::string line;
  if (!std::getline(in, line) || trim_cr(line) != summary_csv_header()) {
    throw IoError("summary csv", "missing or unexpected header");
  }
  while (std::getline(in, line)) {
    const auto view = trim_cr(line);
    if (view.empty()) continue;
    const auto f = split(view, ',');
    if (f.size() != kSummaryColumns.size()) {
      throw IoError("summary csv", "expected " + std::to_string(kSummaryColumns.size()) +
                                       " fields in '" + line + "'");
    }
    SummaryRow row;
    auto& i = row.info;
    auto& m = row.metrics;
    i.scenario = std::string(f[0]);
    i.policy = std::string(f[1]);
    i.seed = parse_number<std::uint64_t>(f[2], "seed");
    i.total_frames = parse_number<std::int64_t>(f[3], "frames");
    i.frame_duration = parse_number<double>(f[4], "frame_duration_ms");
    m.throughput_bps = parse_number<double>(f[6], "throughput_bps");
    m.offered_load_bps = parse_number<double>(f[7], "offered_load_bps");
    m.arrivals = parse_number<std::int64_t>(f[8], "arrivals");
    m.completions = parse_number<std::int64_t>(f[9], "completions");
    m.deadline_misses = parse_number<std::int64_t>(f[10], "deadline_misses");
    m.drops = parse_number<std::int64_t>(f[11], "drops");
    m.deadline_miss_ratio = parse_number<double>(f[12], "deadline_miss_ratio");
    m.context_switch_count = parse_number<std::int64_t>(f[13], "context_switches");
    m.delay = DelayStats{parse_number<std::int64_t>(f[14], "delay_count"),
                         parse_number<double>(f[15], "delay_mean_ms"),
                         parse_number<double>(f[16], "delay_p50_ms"),
                         parse_number<double>(f[17], "delay_p95_ms"),
                         parse_number<double>(f[18], "delay_max_ms")};
    m.max_starvation_window_ms = parse_number<double>(f[19], "max_starvation_window_ms");
    if (!f[20].empty()) {
      for (auto group : split(f[20], ';')) {
        const auto colon = group.find(':');
        const auto cls = parse_service_class(group.substr(0, colon));
        if (colon == std::string_view::npos || !cls) {
          throw IoError("summary csv", "bad class group '" + std::string(group) + "'");
        }
        m.delay_by_class[*cls] = parse_delay_fields(group.substr(colon + 1));
      }
    }
    if (!f[21].empty()) {
      for (auto group : split(f[21], ';')) {
        const auto colon = group.find(':');
        const auto slash = group.find('/');
        if (colon == std::string_view::npos || slash == std::string_view::npos || slash < colon) {
          throw IoError("summary csv", "bad station group '" + std::string(group) + "'");
        }
        StationMetrics s;
        s.station = parse_number<StationId>(group.substr(0, colon), "station");
        s.throughput_bps =
            parse_number<double>(group.substr(colon + 1, slash - colon - 1), "station throughput");
        s.max_starvation_window_ms =
            parse_number<double>(group.substr(slash + 1), "station starvation");
        i.stations.push_back(s.station);
        m.stations.push_back(s);
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<SummaryRow> read_summary_csv(const std::filesystem::path& path) {
  auto in = open_for_read(path);
  try {
    return read_summary_csv(in);
  } catch (const IoError& e) {
    throw IoError(path.string(), e.what());
  }
}

void print_summary_table(std::span<const SummaryRow> rows, std::ostream& out) {
  const std::array<std::string_view, 10> head = {"scenario", "policy",   "seed",     "thr_bps",
                                                 "delay_ms", "p95_ms",   "max_ms",   "miss_ratio",
                                                 "ctx_sw",   "starve_ms"};
  std::vector<std::array<std::string, 10>> cells;
  auto fixed = [](double v, int digits) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(digits) << v;
    return os.str();
  };
  for (const auto& r : rows) {
    const auto& m = r.metrics;
    cells.push_back({r.info.scenario, r.info.policy, std::to_string(r.info.seed),
                     fixed(m.throughput_bps, 1), fixed(m.delay.mean_ms, 2), fixed(m.delay.p95_ms, 2),
                     fixed(m.delay.max_ms, 2), fixed(m.deadline_miss_ratio, 4),
                     std::to_string(m.context_switch_count), fixed(m.max_starvation_window_ms, 1)});
  }
  std::array<std::size_t, 10> width{};
  for (std::size_t c = 0; c < head.size(); ++c) {
    width[c] = head[c].size();
    for (const auto& row : cells) width[c] = std::max(width[c], row[c].size());
  }
  auto emit = [&](auto&& field) {
    for (std::size_t c = 0; c < head.size(); ++c) {
      if (c > 0) out << "  ";
      // Text columns left-aligned, numbers right-aligned.
      out << (c < 2 ? std::left : std::right) << std::setw(static_cast<int>(width[c])) << field(c);
    }
    out << std::right << '\n';
  };
  emit([&](std::size_t c) { return std::string(head[c]); });
  for (const auto& row : cells) emit([&](std::size_t c) { return row[c]; });
}

}  // namespace wimax
