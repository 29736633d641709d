// SPDX-License-Identifier: Apache-2.0

#include "frame_allowance.hpp"
#include "policies.hpp"

namespace wimax::detail {

std::vector<Grant> EdfPolicy::allocate_frame(const FrameContext& ctx,
                                             std::span<const SubscriberStation* const> stations) {
  FrameAllowance frame(ctx);
  while (frame.left() > 0) {
    // Merge the per-station EDF queues: the pool minimum is one of the heads.
    const Request* best = nullptr;
    for (const auto* station : stations) {
      const Request* head = first_available(*station, frame);
      if (head && (!best || EdfKey::of(*head) < EdfKey::of(*best))) best = head;
    }
    if (!best) break;
    frame.grant(*best);
  }
  return frame.take();
}

}  // namespace wimax::detail
