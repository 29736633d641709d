// SPDX-License-Identifier: Apache-2.0

#include <algorithm>

#include "frame_allowance.hpp"
#include "policies.hpp"

namespace wimax::detail {

std::vector<Grant> SsbpfEdfPolicy::allocate_frame(
    const FrameContext& ctx, std::span<const SubscriberStation* const> stations) {
  FrameAllowance frame(ctx);

  struct Ranked {
    double priority;
    const SubscriberStation* station;
  };
  std::vector<Ranked> order;
  for (const auto* s : stations) {
    if (s->queue.empty()) continue;
    order.push_back({ssbpf_priority(static_cast<double>(s->capacity), s->historical_throughput), s});
  }
  std::stable_sort(order.begin(), order.end(), [](const Ranked& a, const Ranked& b) {
    if (a.priority != b.priority) return a.priority > b.priority;
    return a.station->id < b.station->id;
  });

  for (const auto& [priority, station] : order) {
    while (frame.left() > 0) {
      const Request* head = first_available(*station, frame);
      if (!head) break;
      frame.grant(*head);
    }
    if (frame.left() == 0) break;
  }
  return frame.take();
}

}  // namespace wimax::detail
