// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wimax/model.hpp"

namespace wimax {

// ---------------------------------------------------------------------------
// Building blocks shared by the policies.

/// Proportional-fairness station priority c / (1 + th).
double ssbpf_priority(double capacity, double historical_throughput);

/// Exponentially smoothed throughput: (1 - alpha) * th + alpha * served,
/// evaluated as th + alpha * (served - th).
double update_historical_throughput(double historical_throughput, double served_this_frame,
                                    double alpha);

/// Earliest deadline; ties go to the earlier arrival, then the lower id.
/// Throws InvariantError on an empty candidate list.
const Request& edf_select(std::span<const Request> candidates);

/// Projected completion time of the next task if the current one runs to
/// completion first: burst_next + (total_current - elapsed_current) + now.
/// Throws InvariantError when elapsed_current exceeds total_current.
Millis claim_value(Millis burst_next, Millis total_current, Millis elapsed_current, Millis now);

enum class DecisionOutcome : std::uint8_t { kContinue, kSwitch };

struct SchedulerDecision {
  Millis claim_value_mu = 0.0;
  Millis next_deadline = 0.0;
  DecisionOutcome outcome = DecisionOutcome::kContinue;
};

/// Keep the current task while mu <= next_deadline, otherwise preempt.
SchedulerDecision hedf_decide(Millis mu, Millis next_deadline);

/// Default WRR weight: capacity relative to the smallest capacity among
/// `stations`, rounded, at least 1. An explicit station weight wins.
std::uint32_t wrr_weight(const SubscriberStation& station,
                         std::span<const SubscriberStation* const> stations);

// ---------------------------------------------------------------------------
// Policies.

struct FrameContext {
  std::int64_t frame = 0;
  Millis now = 0.0;  // frame start
  Millis frame_duration = 5.0;
  Bits capacity = 0;  // cell capacity for this frame
};

/// A per-cell uplink allocator. `stations` is the cell's station list in a
/// fixed order; policies may keep state between frames (round-robin cursor,
/// H-EDF current task) and must be deterministic given that state.
class SchedulerPolicy {
 public:
  virtual ~SchedulerPolicy() = default;

  virtual std::string_view name() const = 0;
  virtual std::vector<Grant> allocate_frame(const FrameContext& ctx,
                                            std::span<const SubscriberStation* const> stations) = 0;
};

inline constexpr std::string_view kPolicyNames[] = {"rr", "wrr", "edf", "ssbpf_edf", "hedf"};

bool is_policy_name(std::string_view name);

/// Throws ConfigError for an unknown name.
std::unique_ptr<SchedulerPolicy> make_policy(std::string_view name);

/// Runs the policy and checks the returned grants: positive sizes, no grant
/// to an unknown or over-served request, per-frame capacity respected, and
/// work conservation. Throws InvariantError on any breach.
std::vector<Grant> allocate_frame(SchedulerPolicy& policy, const FrameContext& ctx,
                                  std::span<const SubscriberStation* const> stations);

/// Preemptions decided by an hedf policy instance (0 for other policies).
/// Diagnostic only; the reported metric is derived from the grant trace.
std::int64_t hedf_internal_switches(const SchedulerPolicy& policy);

// ---------------------------------------------------------------------------
// Context switches.

struct TraceStep {
  enum class Kind : std::uint8_t { kGrant, kFinish };
  Kind kind = Kind::kGrant;
  RequestId request = 0;
};

/// Online form of context_switches(): feed grants and finishes (completion or
/// drop) in order.
class SwitchCounter {
 public:
  /// Returns true when this grant moves away from an unfinished request.
  bool on_grant(RequestId request);
  void on_finish(RequestId request);
  std::int64_t count() const { return count_; }

 private:
  std::optional<RequestId> last_;
  bool last_open_ = false;
  std::int64_t count_ = 0;
};

/// Number of grant transitions away from a request that had not finished.
std::int64_t context_switches(std::span<const TraceStep> trace);

}  // namespace wimax
