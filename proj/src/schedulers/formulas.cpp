// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <string>

#include "wimax/errors.hpp"
#include "wimax/schedulers.hpp"

namespace wimax {

double ssbpf_priority(double capacity, double historical_throughput) {
  return capacity / (1.0 + historical_throughput);
}

double update_historical_throughput(double historical_throughput, double served_this_frame,
                                    double alpha) {
  return historical_throughput + alpha * (served_this_frame - historical_throughput);
}

const Request& edf_select(std::span<const Request> candidates) {
  if (candidates.empty()) throw InvariantError("edf_select: no candidates");
  return *std::min_element(candidates.begin(), candidates.end(),
                           [](const Request& a, const Request& b) {
                             return EdfKey::of(a) < EdfKey::of(b);
                           });
}

Millis claim_value(Millis burst_next, Millis total_current, Millis elapsed_current, Millis now) {
  if (elapsed_current < 0.0 || elapsed_current > total_current || burst_next < 0.0) {
    throw InvariantError("claim_value: elapsed " + std::to_string(elapsed_current) +
                         " outside [0, " + std::to_string(total_current) + "]");
  }
  return burst_next + (total_current - elapsed_current) + now;
}

SchedulerDecision hedf_decide(Millis mu, Millis next_deadline) {
  return SchedulerDecision{
      mu, next_deadline,
      mu <= next_deadline ? DecisionOutcome::kContinue : DecisionOutcome::kSwitch};
}

std::uint32_t wrr_weight(const SubscriberStation& station,
                         std::span<const SubscriberStation* const> stations) {
  if (station.weight > 0) return station.weight;
  Bits smallest = station.capacity;
  for (const auto* s : stations) smallest = std::min(smallest, s->capacity);
  const double ratio = static_cast<double>(station.capacity) / static_cast<double>(smallest);
  return std::max<std::uint32_t>(1, static_cast<std::uint32_t>(std::lround(ratio)));
}

bool SwitchCounter::on_grant(RequestId request) {
  const bool switched = last_ && *last_ != request && last_open_;
  if (switched) ++count_;
  last_ = request;
  last_open_ = true;
  return switched;
}

void SwitchCounter::on_finish(RequestId request) {
  if (last_ && *last_ == request) last_open_ = false;
}

std::int64_t context_switches(std::span<const TraceStep> trace) {
  SwitchCounter counter;
  for (const auto& step : trace) {
    if (step.kind == TraceStep::Kind::kGrant) {
      counter.on_grant(step.request);
    } else {
      counter.on_finish(step.request);
    }
  }
  return counter.count();
}

}  // namespace wimax
