// SPDX-License-Identifier: Apache-2.0

#include "wimax/engine.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <unordered_map>

#include "wimax/errors.hpp"
#include "wimax/schedulers.hpp"
#include "wimax/traffic.hpp"

namespace wimax {

namespace {

struct CellRun {
  const Cell* cell = nullptr;
  std::vector<SubscriberStation*> members;
  std::unique_ptr<SchedulerPolicy> policy;
  SwitchCounter switches;
  // Pending requests whose deadline miss has not been recorded yet.
  std::map<EdfKey, StationId> unmarked;
};

void check_arrivals(const Scenario& s, const std::vector<Request>& arrivals) {
  for (std::size_t i = 0; i < arrivals.size(); ++i) {
    const Request& r = arrivals[i];
    const auto where = "arrival " + std::to_string(i) + ": ";
    if (r.id != i) throw InvariantError(where + "ids must be 0..n-1 in order");
    if (i > 0 && r.arrival < arrivals[i - 1].arrival) {
      throw InvariantError(where + "arrivals must be time-ordered");
    }
    if (r.arrival < 0.0) throw InvariantError(where + "negative arrival time");
    if (r.size <= 0 || r.served != 0) throw InvariantError(where + "must be fresh and non-empty");
    if (!s.station(r.station)) {
      throw InvariantError(where + "unknown station " + std::to_string(r.station));
    }
    if (r.deadline != r.arrival + s.deadlines.of(r.service_class)) {
      throw InvariantError(where + "deadline must be arrival plus the class offset");
    }
  }
}

}  // namespace

ApplyResult apply_grant(const Grant& g, SubscriberStation& station) {
  if (g.station != station.id) {
    throw InvariantError("grant for station " + std::to_string(g.station) + " applied to station " +
                         std::to_string(station.id));
  }
  const Bits left = station.queue.serve(g.request, g.bits);
  if (left == 0) return ApplyResult{station.queue.take(g.request), true};
  return ApplyResult{*station.queue.find(g.request), false};
}

RunResult run(const Scenario& scenario) {
  require_valid(scenario);
  return simulate(scenario, scenario_arrivals(scenario));
}

RunResult simulate(const Scenario& scenario, std::vector<Request> arrivals) {
  require_valid(scenario);
  auto probe = make_policy(scenario.scheduler);  // rejects unknown names up front
  check_arrivals(scenario, arrivals);

  RunResult result;
  result.info.scenario = scenario.name;
  result.info.policy = scenario.scheduler;
  result.info.seed = scenario.seed;
  result.info.frame_duration = scenario.frame_duration;
  result.info.total_frames = scenario.total_frames;

  std::vector<SubscriberStation> stations = scenario.stations;
  std::unordered_map<StationId, SubscriberStation*> by_id;
  for (auto& st : stations) {
    st.queue = RequestQueue{};
    by_id[st.id] = &st;
    result.info.stations.push_back(st.id);
  }
  std::sort(result.info.stations.begin(), result.info.stations.end());

  std::vector<CellRun> cells(scenario.cells.size());
  std::unordered_map<CellId, std::size_t> cell_index;
  for (std::size_t i = 0; i < scenario.cells.size(); ++i) {
    cells[i].cell = &scenario.cells[i];
    for (StationId sid : scenario.cells[i].stations) cells[i].members.push_back(by_id.at(sid));
    cells[i].policy = make_policy(scenario.scheduler);
    cell_index[scenario.cells[i].id] = i;
  }

  EventLog& log = result.log;
  std::vector<Request> finished;
  std::size_t next_arrival = 0;
  SimClock clock(scenario.frame_duration);

  for (; clock.frame() < scenario.total_frames; clock.advance()) {
    const std::int64_t frame = clock.frame();
    const Millis now = clock.now();
    const Millis end = clock.frame_end();

    // Frame boundary: record misses (and drop when configured).
    for (auto& c : cells) {
      while (!c.unmarked.empty()) {
        auto it = c.unmarked.begin();
        const auto [key, sid] = *it;
        SubscriberStation& st = *by_id.at(sid);
        const Request* r = st.queue.find(key.id);
        if (!r) throw InvariantError("miss tracking lost request " + std::to_string(key.id));
        if (deadline_policy(*r, now) == DeadlineStatus::kPending) break;
        log.push_back({frame, now, EventType::kDeadlineMiss, c.cell->id, sid, key.id,
                       remaining_bits(*r), {}});
        c.unmarked.erase(it);
        if (scenario.drop_on_miss) {
          Request dropped = st.queue.take(key.id);
          log.push_back({frame, now, EventType::kDrop, c.cell->id, sid, key.id,
                         remaining_bits(dropped), {}});
          c.switches.on_finish(key.id);
          finished.push_back(std::move(dropped));
        }
      }
    }

    // Everything arriving during this frame is queued before scheduling.
    while (next_arrival < arrivals.size() && arrivals[next_arrival].arrival < end) {
      Request& r = arrivals[next_arrival++];
      SubscriberStation& st = *by_id.at(r.station);
      CellRun& c = cells[cell_index.at(st.cell)];
      log.push_back({frame, r.arrival, EventType::kArrival, st.cell, st.id, r.id, r.size,
                     r.service_class});
      c.unmarked.emplace(EdfKey::of(r), st.id);
      st.queue.push(std::move(r));
    }

    for (auto& c : cells) {
      const FrameContext ctx{frame, now, scenario.frame_duration, c.cell->capacity};
      const auto grants = allocate_frame(*c.policy, ctx, c.members);

      std::unordered_map<StationId, Bits> served;
      for (const Grant& g : grants) {
        if (c.switches.on_grant(g.request)) {
          log.push_back({frame, end, EventType::kContextSwitch, c.cell->id, g.station, g.request, 0,
                         {}});
        }
        log.push_back({frame, end, EventType::kGrant, c.cell->id, g.station, g.request, g.bits, {}});
        served[g.station] += g.bits;

        ApplyResult applied = apply_grant(g, *by_id.at(g.station));
        if (!applied.completed) continue;
        const Request& done = applied.request;
        c.switches.on_finish(done.id);
        log.push_back({frame, end, EventType::kCompletion, c.cell->id, g.station, done.id, done.size,
                       {}});
        // Departure is the frame end; finishing after the deadline is a miss.
        if (c.unmarked.erase(EdfKey::of(done)) > 0 &&
            deadline_policy(done, end) == DeadlineStatus::kMissed) {
          log.push_back({frame, end, EventType::kDeadlineMiss, c.cell->id, g.station, done.id, 0,
                         {}});
        }
        finished.push_back(std::move(applied.request));
      }

      for (auto* st : c.members) {
        auto it = served.find(st->id);
        const double bits = it == served.end() ? 0.0 : static_cast<double>(it->second);
        st->historical_throughput =
            update_historical_throughput(st->historical_throughput, bits, scenario.ewma_alpha);
      }
    }
  }

  // Requests still pending at the end count as misses once past their deadline.
  const Millis horizon = clock.now();
  for (auto& c : cells) {
    for (const auto& [key, sid] : c.unmarked) {
      const Request* r = by_id.at(sid)->queue.find(key.id);
      if (deadline_policy(*r, horizon) == DeadlineStatus::kPending) break;
      log.push_back({clock.frame(), horizon, EventType::kDeadlineMiss, c.cell->id, sid, key.id,
                     remaining_bits(*r), {}});
    }
  }

  // Arrivals past the horizon never enter the system.
  for (auto& st : stations) {
    for (const Request& r : st.queue.requests()) finished.push_back(r);
  }
  std::sort(finished.begin(), finished.end(),
            [](const Request& a, const Request& b) { return a.id < b.id; });
  result.requests = std::move(finished);
  result.metrics = compute_metrics(result.log, result.info);
  return result;
}

}  // namespace wimax
