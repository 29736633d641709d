// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wimax/events.hpp"
#include "wimax/metrics.hpp"
#include "wimax/model.hpp"

namespace wimax {

/// Frame-granular simulation time.
class SimClock {
 public:
  explicit SimClock(Millis frame_duration) : frame_duration_(frame_duration) {}

  std::int64_t frame() const { return frame_; }
  Millis now() const { return frame_duration_ * static_cast<double>(frame_); }
  Millis frame_end() const { return frame_duration_ * static_cast<double>(frame_ + 1); }
  void advance() { ++frame_; }

 private:
  Millis frame_duration_;
  std::int64_t frame_ = 0;
};

enum class DeadlineStatus : std::uint8_t { kPending, kMissed };

/// Missed strictly after the deadline; a request due exactly now is pending.
inline DeadlineStatus deadline_policy(const Request& r, Millis now) {
  return now > r.deadline ? DeadlineStatus::kMissed : DeadlineStatus::kPending;
}

struct ApplyResult {
  Request request;  // state after the grant
  bool completed = false;
};

/// Adds the grant to the request's served bits; a completed request is
/// removed from the queue. Throws InvariantError on an over-grant.
ApplyResult apply_grant(const Grant& g, SubscriberStation& station);

struct RunResult {
  RunInfo info;
  EventLog log;
  MetricsRecord metrics;
  /// Every request of the run with its final served bits, ordered by id.
  std::vector<Request> requests;
};

/// Generates the scenario's traffic and simulates it under
/// `scenario.scheduler`. Throws ConfigError for an invalid scenario and
/// InvariantError on an internal breach.
RunResult run(const Scenario& scenario);

/// Simulates a fixed arrival list (ids must be 0..n-1 in arrival order).
RunResult simulate(const Scenario& scenario, std::vector<Request> arrivals);

}  // namespace wimax
