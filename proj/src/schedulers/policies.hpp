// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <optional>

#include "wimax/schedulers.hpp"

namespace wimax::detail {

/// Round robin over stations; each turn serves up to `weight` head-of-queue
/// requests. With weights disabled every station gets one request per turn.
/// A turn cut short by the end of a frame resumes in the next frame.
class RoundRobinPolicy final : public SchedulerPolicy {
 public:
  explicit RoundRobinPolicy(bool weighted) : weighted_(weighted) {}

  std::string_view name() const override { return weighted_ ? "wrr" : "rr"; }
  std::vector<Grant> allocate_frame(const FrameContext& ctx,
                                    std::span<const SubscriberStation* const> stations) override;

 private:
  bool weighted_;
  std::size_t cursor_ = 0;
  std::uint32_t served_in_turn_ = 0;
};

/// Pools the cell's requests and serves them in EDF order.
class EdfPolicy final : public SchedulerPolicy {
 public:
  std::string_view name() const override { return "edf"; }
  std::vector<Grant> allocate_frame(const FrameContext& ctx,
                                    std::span<const SubscriberStation* const> stations) override;
};

/// Stations in descending c/(1+th); requests within a station in EDF order.
class SsbpfEdfPolicy final : public SchedulerPolicy {
 public:
  std::string_view name() const override { return "ssbpf_edf"; }
  std::vector<Grant> allocate_frame(const FrameContext& ctx,
                                    std::span<const SubscriberStation* const> stations) override;
};

/// Heuristic EDF. The channel stays with a current task; the next task is
/// the one SSBPF-EDF order would pick (top-priority station, earliest
/// deadline). Before every grant the claim value of finishing the current
/// task first is compared with the next task's deadline, and the current
/// task is preempted only when the next one would otherwise miss.
class HedfPolicy final : public SchedulerPolicy {
 public:
  std::string_view name() const override { return "hedf"; }
  std::vector<Grant> allocate_frame(const FrameContext& ctx,
                                    std::span<const SubscriberStation* const> stations) override;

  std::int64_t switches() const { return switches_; }
  std::optional<RequestId> current() const { return current_; }

 private:
  std::optional<RequestId> current_;
  StationId current_station_ = 0;
  std::int64_t switches_ = 0;
};

}  // namespace wimax::detail
