// SPDX-License-Identifier: Apache-2.0

#include <tuple>

#include "frame_allowance.hpp"
#include "policies.hpp"

namespace wimax::detail {

std::vector<Grant> HedfPolicy::allocate_frame(const FrameContext& ctx,
                                              std::span<const SubscriberStation* const> stations) {
  FrameAllowance frame(ctx);

  auto station_of = [&](StationId id) -> const SubscriberStation* {
    for (const auto* s : stations) {
      if (s->id == id) return s;
    }
    return nullptr;
  };

  // Priorities are fixed for the frame; historical throughput moves at frame end.
  std::vector<double> priority;
  priority.reserve(stations.size());
  for (const auto* s : stations) {
    priority.push_back(ssbpf_priority(static_cast<double>(s->capacity), s->historical_throughput));
  }

  // The request SSBPF-EDF would serve next, ignoring `exclude`.
  auto pick_next = [&](std::optional<RequestId> exclude) -> const Request* {
    const Request* best = nullptr;
    std::size_t best_idx = 0;
    for (std::size_t i = 0; i < stations.size(); ++i) {
      const Request* head = first_available(*stations[i], frame, exclude);
      if (!head) continue;
      if (!best || std::forward_as_tuple(-priority[i], EdfKey::of(*head), stations[i]->id) <
                       std::forward_as_tuple(-priority[best_idx], EdfKey::of(*best),
                                             stations[best_idx]->id)) {
        best = head;
        best_idx = i;
      }
    }
    return best;
  };

  auto service_ms = [&ctx](Bits bits, const SubscriberStation& s) {
    return static_cast<double>(bits) / static_cast<double>(s.capacity) * ctx.frame_duration;
  };

  while (frame.left() > 0) {
    const Request* cur = nullptr;
    bool dispatched = false;
    if (current_) {
      if (const auto* st = station_of(current_station_)) cur = st->queue.find(*current_);
      if (cur && frame.available(*cur) == 0) cur = nullptr;
    }
    if (!cur) {
      cur = pick_next(std::nullopt);
      if (!cur) {
        current_.reset();
        break;
      }
      current_ = cur->id;
      current_station_ = cur->station;
      dispatched = true;
    }

    // A task just dispatched in SSBPF order gets one grant before the claim
    // value may preempt it; otherwise an overdue backlog elsewhere would
    // bounce the dispatch forever.
    const Request* next = dispatched ? nullptr : pick_next(cur->id);
    if (next) {
      const auto& cs = *station_of(cur->station);
      const Bits done = cur->served + frame.granted(*cur);
      const Millis mu =
          claim_value(service_ms(frame.available(*next), *station_of(next->station)),
                      service_ms(cur->size, cs), service_ms(done, cs), ctx.now);
      if (hedf_decide(mu, next->deadline).outcome == DecisionOutcome::kSwitch) {
        if (done > 0) ++switches_;
        cur = next;
        current_ = cur->id;
        current_station_ = cur->station;
      }
    }
    frame.grant(*cur);
  }
  return frame.take();
}

}  // namespace wimax::detail
