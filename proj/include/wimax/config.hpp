// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "wimax/model.hpp"

namespace wimax {

/// Scenario files are JSON documents:
///
///   {
///     "name": "lab",                        // default "custom"
///     "scheduler": "hedf",                  // rr | wrr | edf | ssbpf_edf | hedf
///     "seed": 7,                            // default 1
///     "frame_duration_ms": 5,               // default 5
///     "total_frames": 12000,                // default 12000
///     "ewma_alpha": 0.1,                    // (0, 1], default 0.1
///     "drop_on_miss": false,                // default false
///     "deadline_offsets_ms": {"rtPS": 20},  // per class, defaults
///                                           // UGS 10, ertPS 15, rtPS 20,
///                                           // nrtPS 200, BE 1000
///     "cells": [{"id": 0, "base_station_capacity_bits": 1200,
///                "stations": [0, 1]}],
///     "stations": [{"id": 0, "cell": 0, "capacity_bits": 1200,
///                   "historical_throughput": 0,   // optional
///                   "weight": 2,                  // optional, WRR only
///                   "traffic": [{"class": "rtPS",
///                                "pattern": "constant_rate",  // | poisson
///                                "rate_bits_per_s": 64000,
///                                "packet_size_bits": 800,
///                                "start_ms": 0,           // optional
///                                "stop_ms": 60000}]}]     // optional
///   }
///
/// Unknown keys are rejected. Every problem is reported with its field path.

/// Parses and validates a scenario document. Throws ConfigError.
Scenario parse_scenario(std::string_view json_text);

/// Reads a scenario file. A missing or unreadable file is a ConfigError.
Scenario load_scenario(const std::filesystem::path& path);

/// "canonical", "starvation", or a path to a scenario file.
Scenario resolve_scenario(std::string_view name_or_path);

/// The effective configuration with every default filled in.
std::string scenario_to_json(const Scenario& s);

}  // namespace wimax
