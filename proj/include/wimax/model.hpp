// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <ranges>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace wimax {

using Bits = std::int64_t;
using Millis = double;
using RequestId = std::uint64_t;
using StationId = std::uint32_t;
using CellId = std::uint32_t;

enum class ServiceClass : std::uint8_t { kUGS, kErtPS, kRtPS, kNrtPS, kBE };

inline constexpr std::array<ServiceClass, 5> kServiceClasses = {
    ServiceClass::kUGS, ServiceClass::kErtPS, ServiceClass::kRtPS, ServiceClass::kNrtPS,
    ServiceClass::kBE};

std::string_view to_string(ServiceClass c);
std::optional<ServiceClass> parse_service_class(std::string_view name);

/// Static per-class relative deadlines.
struct DeadlineOffsets {
  std::array<Millis, kServiceClasses.size()> ms{10.0, 15.0, 20.0, 200.0, 1000.0};

  Millis of(ServiceClass c) const { return ms[static_cast<std::size_t>(c)]; }
  Millis& of(ServiceClass c) { return ms[static_cast<std::size_t>(c)]; }

  bool operator==(const DeadlineOffsets&) const = default;
};

struct Request {
  RequestId id = 0;
  StationId station = 0;
  ServiceClass service_class = ServiceClass::kRtPS;
  Millis arrival = 0.0;
  Bits size = 0;
  Millis deadline = 0.0;
  Bits served = 0;

  bool complete() const { return served == size; }
  bool operator==(const Request&) const = default;
};

/// Builds a request whose deadline is its arrival plus the class offset.
Request make_request(RequestId id, StationId station, ServiceClass service_class, Millis arrival,
                     Bits size, const DeadlineOffsets& offsets);

inline Bits remaining_bits(const Request& r) { return r.size - r.served; }

/// EDF ordering key: deadline, then arrival, then id.
struct EdfKey {
  Millis deadline = 0.0;
  Millis arrival = 0.0;
  RequestId id = 0;

  static EdfKey of(const Request& r) { return {r.deadline, r.arrival, r.id}; }
  auto operator<=>(const EdfKey&) const = default;
};

/// Pending requests of one station kept in EDF order, addressable by id.
class RequestQueue {
 public:
  void push(Request r);
  const Request* find(RequestId id) const;

  /// Adds served bits; returns the request's remaining bits afterwards.
  /// Throws InvariantError on over-service or an unknown id.
  Bits serve(RequestId id, Bits bits);

  /// Removes and returns a request (used for completions and drops).
  Request take(RequestId id);

  bool empty() const { return by_deadline_.empty(); }
  std::size_t size() const { return by_deadline_.size(); }
  Bits backlog_bits() const { return backlog_; }

  const Request& front() const { return by_deadline_.begin()->second; }
  auto requests() const { return std::views::values(by_deadline_); }

 private:
  std::map<EdfKey, Request> by_deadline_;
  std::unordered_map<RequestId, EdfKey> index_;
  Bits backlog_ = 0;
};

enum class TrafficPattern : std::uint8_t { kConstantRate, kPoisson };

std::string_view to_string(TrafficPattern p);
std::optional<TrafficPattern> parse_traffic_pattern(std::string_view name);

struct TrafficSpec {
  ServiceClass service_class = ServiceClass::kRtPS;
  TrafficPattern pattern = TrafficPattern::kConstantRate;
  double rate_bits_per_s = 64000.0;
  Bits packet_size_bits = 800;
  Millis start_time = 0.0;
  Millis stop_time = std::numeric_limits<Millis>::infinity();

  bool operator==(const TrafficSpec&) const = default;
};

struct SubscriberStation {
  StationId id = 0;
  CellId cell = 0;
  Bits capacity = 0;                  // c(i), bits per frame
  double historical_throughput = 0.0;  // th(i), bits per frame
  std::uint32_t weight = 0;           // WRR weight; 0 = derive from capacity
  std::vector<TrafficSpec> traffic;
  RequestQueue queue;
};

struct Cell {
  CellId id = 0;
  Bits capacity = 0;  // base station uplink bits per frame
  std::vector<StationId> stations;

  bool operator==(const Cell&) const = default;
};

struct Grant {
  std::int64_t frame = 0;
  StationId station = 0;
  RequestId request = 0;
  Bits bits = 0;

  bool operator==(const Grant&) const = default;
};

struct Scenario {
  std::string name = "custom";
  std::vector<Cell> cells;
  std::vector<SubscriberStation> stations;
  Millis frame_duration = 5.0;
  std::int64_t total_frames = 12000;
  std::uint64_t seed = 1;
  std::string scheduler = "edf";
  double ewma_alpha = 0.1;
  bool drop_on_miss = false;
  DeadlineOffsets deadlines;

  Millis horizon() const { return frame_duration * static_cast<double>(total_frames); }
  const SubscriberStation* station(StationId id) const;
};

/// Every invariant violation of a scenario, each prefixed by its field path.
/// Empty when the scenario is valid.
std::vector<std::string> validate(const Scenario& s);

/// Throws ConfigError listing all violations.
void require_valid(const Scenario& s);

/// Seven independent cells, two stations each, rtPS on every station plus a
/// light Poisson BE background, 5 ms frames for 60 s.
Scenario canonical_scenario();

inline constexpr Bits kCanonicalCellCapacity = 1200;

}  // namespace wimax
