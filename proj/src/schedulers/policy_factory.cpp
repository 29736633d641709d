// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <numeric>
#include <string>
#include <unordered_map>

#include "policies.hpp"
#include "wimax/errors.hpp"

namespace wimax {

bool is_policy_name(std::string_view name) {
  return std::find(std::begin(kPolicyNames), std::end(kPolicyNames), name) !=
         std::end(kPolicyNames);
}

std::unique_ptr<SchedulerPolicy> make_policy(std::string_view name) {
  if (name == "rr") return std::make_unique<detail::RoundRobinPolicy>(false);
  if (name == "wrr") return std::make_unique<detail::RoundRobinPolicy>(true);
  if (name == "edf") return std::make_unique<detail::EdfPolicy>();
  if (name == "ssbpf_edf") return std::make_unique<detail::SsbpfEdfPolicy>();
  if (name == "hedf") return std::make_unique<detail::HedfPolicy>();
  throw ConfigError("scheduler: unknown policy '" + std::string(name) +
                    "' (expected one of rr, wrr, edf, ssbpf_edf, hedf)");
}

std::int64_t hedf_internal_switches(const SchedulerPolicy& policy) {
  const auto* hedf = dynamic_cast<const detail::HedfPolicy*>(&policy);
  return hedf ? hedf->switches() : 0;
}

std::vector<Grant> allocate_frame(SchedulerPolicy& policy, const FrameContext& ctx,
                                  std::span<const SubscriberStation* const> stations) {
  if (ctx.capacity <= 0) throw InvariantError("allocate_frame: capacity must be positive");
  auto grants = policy.allocate_frame(ctx, stations);

  std::unordered_map<RequestId, Bits> granted;
  Bits total = 0;
  for (const auto& g : grants) {
    const auto where = "policy " + std::string(policy.name()) + ", frame " +
                       std::to_string(ctx.frame) + ": ";
    if (g.bits <= 0) throw InvariantError(where + "non-positive grant");
    if (g.frame != ctx.frame) throw InvariantError(where + "grant stamped with another frame");
    const SubscriberStation* owner = nullptr;
    for (const auto* s : stations) {
      if (s->id == g.station) owner = s;
    }
    const Request* r = owner ? owner->queue.find(g.request) : nullptr;
    if (!r) {
      throw InvariantError(where + "grant to request " + std::to_string(g.request) +
                           " not pending at station " + std::to_string(g.station));
    }
    if ((granted[g.request] += g.bits) > remaining_bits(*r)) {
      throw InvariantError(where + "over-grant on request " + std::to_string(g.request));
    }
    total += g.bits;
  }
  if (total > ctx.capacity) {
    throw InvariantError("policy " + std::string(policy.name()) + ", frame " +
                         std::to_string(ctx.frame) + ": granted " + std::to_string(total) +
                         " bits over capacity " + std::to_string(ctx.capacity));
  }
  const Bits backlog = std::accumulate(
      stations.begin(), stations.end(), Bits{0},
      [](Bits acc, const SubscriberStation* s) { return acc + s->queue.backlog_bits(); });
  if (total != std::min(backlog, ctx.capacity)) {
    throw InvariantError("policy " + std::string(policy.name()) + ", frame " +
                         std::to_string(ctx.frame) + ": not work conserving (granted " +
                         std::to_string(total) + ", backlog " + std::to_string(backlog) + ")");
  }
  return grants;
}

}  // namespace wimax
