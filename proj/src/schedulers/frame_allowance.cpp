// SPDX-License-Identifier: Apache-2.0

#include "frame_allowance.hpp"

#include <algorithm>

namespace wimax::detail {

Bits FrameAllowance::granted(const Request& r) const {
  auto it = granted_.find(r.id);
  return it == granted_.end() ? 0 : it->second;
}

Bits FrameAllowance::available(const Request& r) const { return remaining_bits(r) - granted(r); }

Bits FrameAllowance::grant(const Request& r) {
  const Bits bits = std::min(left_, available(r));
  if (bits <= 0) return 0;
  left_ -= bits;
  granted_[r.id] += bits;
  // Consecutive grants to the same request within a frame merge into one.
  if (!grants_.empty() && grants_.back().request == r.id) {
    grants_.back().bits += bits;
  } else {
    grants_.push_back(Grant{ctx_.frame, r.station, r.id, bits});
  }
  return bits;
}

const Request* first_available(const SubscriberStation& station, const FrameAllowance& frame,
                               std::optional<RequestId> exclude) {
  for (const Request& r : station.queue.requests()) {
    if (exclude && r.id == *exclude) continue;
    if (frame.available(r) > 0) return &r;
  }
  return nullptr;
}

}  // namespace wimax::detail
