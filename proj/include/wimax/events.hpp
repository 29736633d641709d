// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "wimax/model.hpp"

namespace wimax {

enum class EventType : std::uint8_t {
  kArrival,
  kGrant,
  kCompletion,
  kDeadlineMiss,
  kContextSwitch,
  kDrop,
};

std::string_view to_string(EventType t);
std::optional<EventType> parse_event_type(std::string_view name);

/// One simulation record. `bits` is the request size for arrivals and
/// completions, the granted amount for grants, the outstanding bits for
/// misses and drops, and 0 for context switches.
///
/// Timestamps: misses and drops detected at a frame boundary carry the frame
/// start; arrivals carry their true arrival time; grants, context switches,
/// completions and misses found at completion carry the frame end.
struct Event {
  std::int64_t frame = 0;
  Millis time = 0.0;
  EventType type = EventType::kArrival;
  CellId cell = 0;
  StationId station = 0;
  RequestId request = 0;
  Bits bits = 0;
  /// Set on arrivals only; not part of the CSV form.
  std::optional<ServiceClass> service_class;

  bool operator==(const Event&) const = default;
};

using EventLog = std::vector<Event>;

}  // namespace wimax
