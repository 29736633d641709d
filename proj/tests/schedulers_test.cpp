// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "wimax/errors.hpp"
#include "wimax/schedulers.hpp"

namespace wimax {
namespace {

Request req(RequestId id, StationId station, Millis arrival, Millis deadline, Bits size) {
  return Request{id, station, ServiceClass::kRtPS, arrival, size, deadline, 0};
}

SubscriberStation station(StationId id, Bits capacity, std::vector<Request> reqs = {}) {
  SubscriberStation st;
  st.id = id;
  st.capacity = capacity;
  for (auto& r : reqs) {
    r.station = id;
    st.queue.push(r);
  }
  return st;
}

std::vector<const SubscriberStation*> view(const std::vector<SubscriberStation>& v) {
  std::vector<const SubscriberStation*> out;
  for (const auto& s : v) out.push_back(&s);
  return out;
}

Bits total_bits(const std::vector<Grant>& grants) {
  Bits sum = 0;
  for (const auto& g : grants) sum += g.bits;
  return sum;
}

TEST(SsbpfPriority, Examples) {
  EXPECT_DOUBLE_EQ(ssbpf_priority(10, 4), 2.0);
  EXPECT_DOUBLE_EQ(ssbpf_priority(5, 0), 5.0);
  EXPECT_DOUBLE_EQ(ssbpf_priority(0, 100), 0.0);
}

TEST(SsbpfPriority, MonotoneInBothArguments) {
  EXPECT_GT(ssbpf_priority(20, 4), ssbpf_priority(10, 4));
  EXPECT_LT(ssbpf_priority(10, 8), ssbpf_priority(10, 4));
}

TEST(HistoricalThroughput, Examples) {
  EXPECT_DOUBLE_EQ(update_historical_throughput(100, 100, 0.1), 100.0);
  EXPECT_DOUBLE_EQ(update_historical_throughput(0, 500, 1.0), 500.0);
  EXPECT_DOUBLE_EQ(update_historical_throughput(200, 0, 0.25), 150.0);
}

TEST(EdfSelect, Examples) {
  const std::vector<Request> two{req(0, 0, 0, 30, 1), req(1, 0, 0, 20, 1)};
  EXPECT_EQ(edf_select(two).id, 1u);
  const std::vector<Request> tie{req(4, 0, 3, 20, 1), req(5, 0, 2, 20, 1)};
  EXPECT_EQ(edf_select(tie).id, 5u);
  const std::vector<Request> full_tie{req(9, 0, 2, 20, 1), req(8, 0, 2, 20, 1)};
  EXPECT_EQ(edf_select(full_tie).id, 8u);
  const std::vector<Request> single{req(7, 0, 0, 50, 1)};
  EXPECT_EQ(edf_select(single).id, 7u);
  EXPECT_THROW(edf_select(std::span<const Request>{}), InvariantError);
}

TEST(EdfSelect, MatchesLinearScan) {
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<int> small(0, 20);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Request> rs;
    const int n = 1 + trial % 12;
    for (int i = 0; i < n; ++i) {
      rs.push_back(req(static_cast<RequestId>(small(rng) * 100 + i), 0, small(rng), small(rng), 1));
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i < rs.size(); ++i) {
      const auto& a = rs[i];
      const auto& b = rs[best];
      if (a.deadline < b.deadline ||
          (a.deadline == b.deadline &&
           (a.arrival < b.arrival || (a.arrival == b.arrival && a.id < b.id)))) {
        best = i;
      }
    }
    EXPECT_EQ(edf_select(rs).id, rs[best].id);
  }
}

TEST(ClaimValue, Examples) {
  EXPECT_DOUBLE_EQ(claim_value(5, 10, 3, 12), 24.0);
  EXPECT_DOUBLE_EQ(claim_value(3, 0, 0, 0), 3.0);
  EXPECT_THROW(claim_value(1, 5, 6, 0), InvariantError);
}

// Runs the current task to completion, then the next one, one tick at a time.
int two_task_finish(int burst_next, int total, int elapsed, int now) {
  int t = now;
  for (int left = total - elapsed; left > 0; --left) ++t;
  for (int left = burst_next; left > 0; --left) ++t;
  return t;
}

TEST(ClaimValue, MatchesTwoTaskSimulation) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> d(0, 50);
  for (int trial = 0; trial < 500; ++trial) {
    const int total = d(rng);
    const int elapsed = std::uniform_int_distribution<int>(0, total)(rng);
    const int burst = d(rng);
    const int now = d(rng);
    EXPECT_DOUBLE_EQ(claim_value(burst, total, elapsed, now),
                     two_task_finish(burst, total, elapsed, now));
  }
}

TEST(HedfDecide, Examples) {
  EXPECT_EQ(hedf_decide(24, 30).outcome, DecisionOutcome::kContinue);
  EXPECT_EQ(hedf_decide(24, 20).outcome, DecisionOutcome::kSwitch);
  EXPECT_EQ(hedf_decide(24, 24).outcome, DecisionOutcome::kContinue);
  const auto d = hedf_decide(24, 20);
  EXPECT_DOUBLE_EQ(d.claim_value_mu, 24.0);
  EXPECT_DOUBLE_EQ(d.next_deadline, 20.0);
}

TEST(WrrWeight, DerivedFromCapacity) {
  std::vector<SubscriberStation> v{station(0, 500), station(1, 1000), station(2, 1600)};
  const auto ptrs = view(v);
  EXPECT_EQ(wrr_weight(v[0], ptrs), 1u);
  EXPECT_EQ(wrr_weight(v[1], ptrs), 2u);
  EXPECT_EQ(wrr_weight(v[2], ptrs), 3u);
  v[0].weight = 5;
  EXPECT_EQ(wrr_weight(v[0], ptrs), 5u);
}

TEST(MakePolicy, KnownAndUnknownNames) {
  for (auto name : kPolicyNames) {
    EXPECT_TRUE(is_policy_name(name));
    EXPECT_EQ(make_policy(name)->name(), name);
  }
  EXPECT_FALSE(is_policy_name("fifo"));
  EXPECT_THROW(make_policy("fifo"), ConfigError);
}

class AllPolicies : public ::testing::TestWithParam<std::string_view> {};

TEST_P(AllPolicies, EmptyBacklogGrantsNothing) {
  auto policy = make_policy(GetParam());
  std::vector<SubscriberStation> v{station(0, 1000), station(1, 1000)};
  const FrameContext ctx{0, 0.0, 5.0, 1000};
  EXPECT_TRUE(allocate_frame(*policy, ctx, view(v)).empty());
}

TEST_P(AllPolicies, UnderLoadServesEverything) {
  auto policy = make_policy(GetParam());
  std::vector<SubscriberStation> v{station(0, 1000, {req(0, 0, 0, 20, 300)}), station(1, 1000)};
  const FrameContext ctx{0, 0.0, 5.0, 1000};
  const auto grants = allocate_frame(*policy, ctx, view(v));
  ASSERT_EQ(grants.size(), 1u);
  EXPECT_EQ(grants[0], (Grant{0, 0, 0, 300}));
}

TEST_P(AllPolicies, WorkConservingOnRandomBacklogs) {
  std::mt19937_64 rng(1234);
  std::uniform_int_distribution<Bits> size(1, 900);
  std::uniform_int_distribution<int> count(0, 4);
  std::uniform_int_distribution<int> at(0, 40);
  for (int trial = 0; trial < 100; ++trial) {
    auto policy = make_policy(GetParam());
    std::vector<SubscriberStation> v;
    RequestId next_id = 0;
    Bits backlog = 0;
    for (StationId s = 0; s < 4; ++s) {
      std::vector<Request> rs;
      const int n = count(rng);
      for (int i = 0; i < n; ++i) {
        const Millis a = at(rng);
        rs.push_back(req(next_id++, s, a, a + 20, size(rng)));
        backlog += rs.back().size;
      }
      v.push_back(station(s, 1000, rs));
    }
    const FrameContext ctx{3, 15.0, 5.0, 1000};
    const auto grants = allocate_frame(*policy, ctx, view(v));
    EXPECT_EQ(total_bits(grants), std::min<Bits>(backlog, 1000));
    for (const auto& g : grants) {
      EXPECT_EQ(g.frame, 3);
      EXPECT_GT(g.bits, 0);
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Policies, AllPolicies, ::testing::ValuesIn(kPolicyNames),
                         [](const auto& info) { return std::string(info.param); });

TEST(EdfPolicy, ServesEarliestDeadlineAcrossStations) {
  auto policy = make_policy("edf");
  std::vector<SubscriberStation> v{station(0, 1000, {req(0, 0, 0, 40, 600)}),
                                   station(1, 1000, {req(1, 1, 1, 25, 600)})};
  const auto grants = allocate_frame(*policy, {0, 0.0, 5.0, 1000}, view(v));
  ASSERT_EQ(grants.size(), 2u);
  EXPECT_EQ(grants[0], (Grant{0, 1, 1, 600}));
  EXPECT_EQ(grants[1], (Grant{0, 0, 0, 400}));
}

TEST(SsbpfEdfPolicy, FavoursLowHistoricalThroughput) {
  auto policy = make_policy("ssbpf_edf");
  std::vector<SubscriberStation> v{station(0, 1000, {req(0, 0, 0, 21, 800)}),
                                   station(1, 1000, {req(1, 1, 0, 900, 800)})};
  v[0].historical_throughput = 900;
  v[1].historical_throughput = 10;
  const auto grants = allocate_frame(*policy, {0, 0.0, 5.0, 1000}, view(v));
  ASSERT_FALSE(grants.empty());
  EXPECT_EQ(grants[0].station, 1u);
  EXPECT_EQ(grants[0].bits, 800);
}

TEST(RoundRobinPolicy, AlternatesStations) {
  auto policy = make_policy("rr");
  std::vector<SubscriberStation> v{
      station(0, 1000, {req(0, 0, 0, 20, 100), req(1, 0, 0, 21, 100)}),
      station(1, 1000, {req(2, 1, 0, 20, 100), req(3, 1, 0, 21, 100)})};
  const auto grants = allocate_frame(*policy, {0, 0.0, 5.0, 1000}, view(v));
  std::vector<StationId> order;
  for (const auto& g : grants) order.push_back(g.station);
  EXPECT_EQ(order, (std::vector<StationId>{0, 1, 0, 1}));
}

TEST(RoundRobinPolicy, WeightedGivesLongerTurns) {
  auto policy = make_policy("wrr");
  std::vector<SubscriberStation> v{
      station(0, 2000, {req(0, 0, 0, 20, 100), req(1, 0, 0, 21, 100), req(2, 0, 0, 22, 100)}),
      station(1, 1000, {req(3, 1, 0, 20, 100), req(4, 1, 0, 21, 100)})};
  const auto grants = allocate_frame(*policy, {0, 0.0, 5.0, 1000}, view(v));
  std::vector<StationId> order;
  for (const auto& g : grants) order.push_back(g.station);
  EXPECT_EQ(order, (std::vector<StationId>{0, 0, 1, 0, 1}));
}

TEST(HedfPolicy, KeepsCurrentTaskWhenNextCanWait) {
  auto policy = make_policy("hedf");
  std::vector<SubscriberStation> v{station(0, 1000, {req(0, 0, 0, 100, 1500)}),
                                   station(1, 1000)};
  auto ptrs = view(v);
  const auto g0 = allocate_frame(*policy, {0, 0.0, 5.0, 1000}, ptrs);
  ASSERT_EQ(g0.size(), 1u);
  v[0].queue.serve(0, g0[0].bits);
  // mu = 2.5 (next burst) + 2.5 (rest of current) + 5 (now) = 10 <= 90.
  v[1].queue.push(req(1, 1, 5, 90, 500));
  const auto g1 = allocate_frame(*policy, {1, 5.0, 5.0, 1000}, ptrs);
  ASSERT_EQ(g1.size(), 2u);
  EXPECT_EQ(g1[0], (Grant{1, 0, 0, 500}));
  EXPECT_EQ(g1[1], (Grant{1, 1, 1, 500}));
  EXPECT_EQ(hedf_internal_switches(*policy), 0);
}

TEST(HedfPolicy, PreemptsWhenNextWouldMiss) {
  auto policy = make_policy("hedf");
  // Long current task, then an urgent arrival that cannot wait for it.
  std::vector<SubscriberStation> v{station(0, 1000, {req(0, 0, 0, 1000, 5000)}),
                                   station(1, 1000)};
  auto ptrs = view(v);
  auto g0 = allocate_frame(*policy, {0, 0.0, 5.0, 1000}, ptrs);
  ASSERT_EQ(g0.size(), 1u);
  v[0].queue.serve(0, g0[0].bits);
  v[1].queue.push(req(1, 1, 5, 12, 500));
  const auto g1 = allocate_frame(*policy, {1, 5.0, 5.0, 1000}, ptrs);
  ASSERT_FALSE(g1.empty());
  EXPECT_EQ(g1[0].request, 1u);
  EXPECT_EQ(hedf_internal_switches(*policy), 1);
  EXPECT_EQ(hedf_internal_switches(*make_policy("edf")), 0);
}

TEST(ContextSwitches, Examples) {
  using K = TraceStep::Kind;
  const std::vector<TraceStep> one_task{{K::kGrant, 1}, {K::kGrant, 1}, {K::kFinish, 1}};
  EXPECT_EQ(context_switches(one_task), 0);
  const std::vector<TraceStep> sequential{{K::kGrant, 1}, {K::kFinish, 1}, {K::kGrant, 2},
                                          {K::kFinish, 2}};
  EXPECT_EQ(context_switches(sequential), 0);
  const std::vector<TraceStep> interleaved{{K::kGrant, 1}, {K::kGrant, 2}, {K::kGrant, 1},
                                           {K::kFinish, 1}, {K::kGrant, 2}, {K::kFinish, 2}};
  EXPECT_EQ(context_switches(interleaved), 2);
  const std::vector<TraceStep> back_after_finish{{K::kGrant, 1}, {K::kGrant, 2}, {K::kFinish, 2},
                                                 {K::kGrant, 1}, {K::kFinish, 1}};
  EXPECT_EQ(context_switches(back_after_finish), 1);
  EXPECT_EQ(context_switches({}), 0);
}

TEST(ContextSwitches, CounterAgreesWithBatchForm) {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<TraceStep> trace;
    SwitchCounter counter;
    std::int64_t flagged = 0;
    for (int i = 0; i < 40; ++i) {
      const RequestId id = rng() % 4;
      const auto kind = rng() % 3 == 0 ? TraceStep::Kind::kFinish : TraceStep::Kind::kGrant;
      trace.push_back({kind, id});
      if (kind == TraceStep::Kind::kGrant) {
        flagged += counter.on_grant(id) ? 1 : 0;
      } else {
        counter.on_finish(id);
      }
    }
    EXPECT_EQ(context_switches(trace), counter.count());
    EXPECT_EQ(flagged, counter.count());
  }
}

}  // namespace
}  // namespace wimax
