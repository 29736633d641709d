// SPDX-License-Identifier: Apache-2.0

#include "frame_allowance.hpp"
#include "policies.hpp"

namespace wimax::detail {

std::vector<Grant> RoundRobinPolicy::allocate_frame(
    const FrameContext& ctx, std::span<const SubscriberStation* const> stations) {
  FrameAllowance frame(ctx);
  const std::size_t n = stations.size();
  if (n == 0) return {};
  cursor_ %= n;

  auto advance = [this, n] {
    cursor_ = (cursor_ + 1) % n;
    served_in_turn_ = 0;
  };

  while (frame.left() > 0) {
    const Request* head = nullptr;
    for (std::size_t tries = 0; tries < n; ++tries) {
      head = first_available(*stations[cursor_], frame);
      if (head) break;
      advance();
    }
    if (!head) break;  // no backlog left in the cell

    frame.grant(*head);
    if (frame.available(*head) > 0) break;  // capacity ran out mid-request; resume next frame

    const std::uint32_t quota = weighted_ ? wrr_weight(*stations[cursor_], stations) : 1;
    if (++served_in_turn_ >= quota) advance();
  }
  return frame.take();
}

}  // namespace wimax::detail
