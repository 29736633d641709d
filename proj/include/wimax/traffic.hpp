// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "wimax/model.hpp"

namespace wimax {

/// Seed of the generator behind one (seed, station, stream) triple.
///
/// Streams are std::mt19937_64 engines seeded with
///   splitmix64(seed ^ splitmix64((station << 16) | stream))
/// where splitmix64 is the standard finalizer
///   z += 0x9e3779b97f4a7c15; z = (z ^ z>>30) * 0xbf58476d1ce4e5b9;
///   z = (z ^ z>>27) * 0x94d049bb133111eb; z ^= z>>31.
/// Exponential gaps use u = ((x >> 11) + 1) * 2^-53 and gap = -ln(u) / lambda,
/// so a stream depends only on its own triple.
std::uint64_t stream_seed(std::uint64_t seed, StationId station, std::uint32_t stream);

/// Requests of one traffic source up to `horizon` (exclusive), in arrival
/// order. Ids are the local sequence numbers 0..n-1; the engine renumbers.
std::vector<Request> generate(const TrafficSpec& spec, StationId station, std::uint64_t seed,
                              Millis horizon, const DeadlineOffsets& offsets,
                              std::uint32_t stream = 0);

/// All arrivals of a scenario merged by (arrival, station, stream, sequence)
/// and numbered 0..n-1 in that order. Identical for every scheduler.
std::vector<Request> scenario_arrivals(const Scenario& s);

/// Load of station A relative to the cell capacity in starvation_scenario().
inline constexpr double kStarvationOverload = 64.0;
inline constexpr Bits kStarvationCellCapacity = 1000;

/// One cell, two stations. Station 0 sends rtPS at kStarvationOverload times
/// the cell capacity; station 1 sends Poisson BE. Plain EDF never reaches
/// station 1 within the 60 s run.
Scenario starvation_scenario();

}  // namespace wimax
