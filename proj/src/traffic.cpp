// SPDX-License-Identifier: Apache-2.0

#include "wimax/traffic.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <tuple>

namespace wimax {

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Uniform on (0, 1], never zero so the log below stays finite.
double unit_open_closed(std::mt19937_64& rng) {
  return static_cast<double>((rng() >> 11) + 1) * 0x1.0p-53;
}

}  // namespace

std::uint64_t stream_seed(std::uint64_t seed, StationId station, std::uint32_t stream) {
  const std::uint64_t tag = (static_cast<std::uint64_t>(station) << 16) | stream;
  return splitmix64(seed ^ splitmix64(tag));
}

std::vector<Request> generate(const TrafficSpec& spec, StationId station, std::uint64_t seed,
                              Millis horizon, const DeadlineOffsets& offsets,
                              std::uint32_t stream) {
  std::vector<Request> out;
  const Millis end = std::min(spec.stop_time, horizon);
  if (!(spec.start_time < end)) return out;

  const double packets_per_ms = spec.rate_bits_per_s / static_cast<double>(spec.packet_size_bits) /
                                1000.0;
  auto emit = [&](Millis t) {
    out.push_back(make_request(out.size(), station, spec.service_class, t, spec.packet_size_bits,
                               offsets));
  };

  if (spec.pattern == TrafficPattern::kConstantRate) {
    const Millis spacing = 1.0 / packets_per_ms;
    // Multiply rather than accumulate so arrival k is exactly start + k * spacing.
    for (std::uint64_t k = 0;; ++k) {
      const Millis t = spec.start_time + static_cast<double>(k) * spacing;
      if (t >= end) break;
      emit(t);
    }
  } else {
    std::mt19937_64 rng(stream_seed(seed, station, stream));
    Millis t = spec.start_time;
    for (;;) {
      t += -std::log(unit_open_closed(rng)) / packets_per_ms;
      if (t >= end) break;
      emit(t);
    }
  }
  return out;
}

std::vector<Request> scenario_arrivals(const Scenario& s) {
  struct Tagged {
    Request r;
    std::uint32_t stream;
  };
  std::vector<Tagged> all;
  for (const auto& st : s.stations) {
    for (std::uint32_t k = 0; k < st.traffic.size(); ++k) {
      for (auto& r : generate(st.traffic[k], st.id, s.seed, s.horizon(), s.deadlines, k)) {
        all.push_back({std::move(r), k});
      }
    }
  }
  std::sort(all.begin(), all.end(), [](const Tagged& a, const Tagged& b) {
    return std::tie(a.r.arrival, a.r.station, a.stream, a.r.id) <
           std::tie(b.r.arrival, b.r.station, b.stream, b.r.id);
  });
  std::vector<Request> out;
  out.reserve(all.size());
  for (auto& t : all) {
    t.r.id = out.size();
    out.push_back(std::move(t.r));
  }
  return out;
}

Scenario starvation_scenario() {
  Scenario s;
  s.name = "starvation";
  s.frame_duration = 5.0;
  s.total_frames = 12000;
  s.seed = 1;
  s.scheduler = "edf";

  const double cell_rate_bps =
      static_cast<double>(kStarvationCellCapacity) / (s.frame_duration / 1000.0);

  SubscriberStation a;
  a.id = 0;
  a.cell = 0;
  a.capacity = kStarvationCellCapacity;
  a.traffic = {TrafficSpec{ServiceClass::kRtPS, TrafficPattern::kConstantRate,
                           kStarvationOverload * cell_rate_bps, 8000}};

  SubscriberStation b;
  b.id = 1;
  b.cell = 0;
  b.capacity = kStarvationCellCapacity;
  b.traffic = {TrafficSpec{ServiceClass::kBE, TrafficPattern::kPoisson, 32000.0, 1600}};

  s.cells = {Cell{0, kStarvationCellCapacity, {0, 1}}};
  s.stations.push_back(std::move(a));
  s.stations.push_back(std::move(b));
  return s;
}

}  // namespace wimax
