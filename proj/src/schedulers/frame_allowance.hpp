// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <unordered_map>
#include <vector>

#include "wimax/schedulers.hpp"

namespace wimax::detail {

/// Bookkeeping for one frame's allocation: capacity left, bits already
/// granted per request in this frame, and the grant list being built.
class FrameAllowance {
 public:
  explicit FrameAllowance(const FrameContext& ctx) : ctx_(ctx), left_(ctx.capacity) {}

  Bits left() const { return left_; }
  const FrameContext& context() const { return ctx_; }

  /// Bits of `r` not yet served and not granted earlier in this frame.
  Bits available(const Request& r) const;

  /// Bits of `r` granted earlier in this frame.
  Bits granted(const Request& r) const;

  /// Grants min(left, available(r)) bits; returns the amount (0 if none).
  Bits grant(const Request& r);

  std::vector<Grant> take() { return std::move(grants_); }

 private:
  FrameContext ctx_;
  Bits left_;
  std::unordered_map<RequestId, Bits> granted_;
  std::vector<Grant> grants_;
};

/// First request of the station, in EDF order, that still has available bits
/// this frame and is not `exclude`.
const Request* first_available(const SubscriberStation& station, const FrameAllowance& frame,
                               std::optional<RequestId> exclude = std::nullopt);

}  // namespace wimax::detail
