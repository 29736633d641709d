// SPDX-License-Identifier: Apache-2.0

#include "wimax/model.hpp"

#include <cmath>
#include <set>
#include <sstream>

#include "wimax/errors.hpp"

namespace wimax {

namespace {

constexpr std::array<std::string_view, kServiceClasses.size()> kClassNames = {
    "UGS", "ertPS", "rtPS", "nrtPS", "BE"};

std::string join_violations(const std::vector<std::string>& v) {
  std::ostringstream os;
  os << "invalid configuration";
  for (const auto& line : v) os << "\n  " << line;
  return os.str();
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> violations)
    : std::runtime_error(join_violations(violations)), violations_(std::move(violations)) {}

std::string_view to_string(ServiceClass c) { return kClassNames[static_cast<std::size_t>(c)]; }

std::optional<ServiceClass> parse_service_class(std::string_view name) {
  for (std::size_t i = 0; i < kClassNames.size(); ++i) {
    if (kClassNames[i] == name) return kServiceClasses[i];
  }
  return std::nullopt;
}

std::string_view to_string(TrafficPattern p) {
  return p == TrafficPattern::kConstantRate ? "constant_rate" : "poisson";
}

std::optional<TrafficPattern> parse_traffic_pattern(std::string_view name) {
  if (name == "constant_rate") return TrafficPattern::kConstantRate;
  if (name == "poisson") return TrafficPattern::kPoisson;
  return std::nullopt;
}

Request make_request(RequestId id, StationId station, ServiceClass service_class, Millis arrival,
                     Bits size, const DeadlineOffsets& offsets) {
  return Request{id, station, service_class, arrival, size, arrival + offsets.of(service_class), 0};
}

void RequestQueue::push(Request r) {
  if (r.size <= 0 || r.served < 0 || r.served >= r.size) {
    throw InvariantError("request " + std::to_string(r.id) + " queued with no remaining bits");
  }
  const EdfKey key = EdfKey::of(r);
  if (!index_.emplace(r.id, key).second) {
    throw InvariantError("request " + std::to_string(r.id) + " queued twice");
  }
  backlog_ += remaining_bits(r);
  by_deadline_.emplace(key, std::move(r));
}

const Request* RequestQueue::find(RequestId id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return nullptr;
  return &by_deadline_.at(it->second);
}

Bits RequestQueue::serve(RequestId id, Bits bits) {
  auto it = index_.find(id);
  if (it == index_.end()) {
    throw InvariantError("grant references request " + std::to_string(id) +
                         " which is not pending");
  }
  Request& r = by_deadline_.at(it->second);
  if (bits <= 0 || bits > remaining_bits(r)) {
    throw InvariantError("over-grant on request " + std::to_string(id) + ": " +
                         std::to_string(bits) + " bits, " + std::to_string(remaining_bits(r)) +
                         " remaining");
  }
  r.served += bits;
  backlog_ -= bits;
  return remaining_bits(r);
}

Request RequestQueue::take(RequestId id) {
  auto it = index_.find(id);
  if (it == index_.end()) {
    throw InvariantError("request " + std::to_string(id) + " is not pending");
  }
  auto node = by_deadline_.extract(it->second);
  index_.erase(it);
  backlog_ -= remaining_bits(node.mapped());
  return std::move(node.mapped());
}

const SubscriberStation* Scenario::station(StationId id) const {
  for (const auto& s : stations) {
    if (s.id == id) return &s;
  }
  return nullptr;
}

std::vector<std::string> validate(const Scenario& s) {
  std::vector<std::string> errors;
  auto add = [&errors](std::string path, std::string what) {
    errors.push_back(std::move(path) + ": " + std::move(what));
  };

  if (s.name.empty() || s.name.find_first_of(",\"\n\r/\\") != std::string::npos) {
    add("name", "must be non-empty without commas, quotes, slashes or newlines");
  }
  if (!(s.frame_duration > 0.0) || !std::isfinite(s.frame_duration)) {
    add("frame_duration_ms", "must be > 0");
  }
  if (s.total_frames <= 0) add("total_frames", "must be > 0");
  if (!(s.ewma_alpha > 0.0 && s.ewma_alpha <= 1.0)) {
    std::ostringstream os;
    os << "must be in (0, 1], got " << s.ewma_alpha;
    add("ewma_alpha", os.str());
  }
  for (ServiceClass c : kServiceClasses) {
    if (!(s.deadlines.of(c) > 0.0)) {
      add("deadline_offsets_ms." + std::string(to_string(c)), "must be > 0");
    }
  }
  if (s.cells.empty()) add("cells", "at least one cell is required");

  std::map<StationId, std::size_t> station_at;
  for (std::size_t i = 0; i < s.stations.size(); ++i) {
    const auto& st = s.stations[i];
    const std::string path = "stations[" + std::to_string(i) + "]";
    auto [it, fresh] = station_at.emplace(st.id, i);
    if (!fresh) {
      add(path + ".id", "duplicate station id " + std::to_string(st.id) +
                            " (also defined at stations[" + std::to_string(it->second) + "])");
    }
    if (st.capacity <= 0) add(path + ".capacity_bits", "must be > 0");
    if (!(st.historical_throughput >= 0.0)) add(path + ".historical_throughput", "must be >= 0");
    for (std::size_t t = 0; t < st.traffic.size(); ++t) {
      const auto& spec = st.traffic[t];
      const std::string tpath = path + ".traffic[" + std::to_string(t) + "]";
      if (!(spec.rate_bits_per_s > 0.0) || !std::isfinite(spec.rate_bits_per_s)) {
        add(tpath + ".rate_bits_per_s", "must be > 0");
      }
      if (spec.packet_size_bits <= 0) add(tpath + ".packet_size_bits", "must be > 0");
      if (!(spec.start_time >= 0.0)) add(tpath + ".start_ms", "must be >= 0");
      if (!(spec.start_time < spec.stop_time)) add(tpath + ".stop_ms", "must be > start_ms");
    }
  }

  std::map<CellId, std::size_t> cell_at;
  std::map<StationId, std::size_t> listed_in;
  for (std::size_t i = 0; i < s.cells.size(); ++i) {
    const auto& cell = s.cells[i];
    const std::string path = "cells[" + std::to_string(i) + "]";
    auto [it, fresh] = cell_at.emplace(cell.id, i);
    if (!fresh) {
      add(path + ".id", "duplicate cell id " + std::to_string(cell.id) + " (also defined at cells[" +
                            std::to_string(it->second) + "])");
    }
    if (cell.capacity <= 0) add(path + ".base_station_capacity_bits", "must be > 0");
    for (std::size_t j = 0; j < cell.stations.size(); ++j) {
      const StationId sid = cell.stations[j];
      const std::string spath = path + ".stations[" + std::to_string(j) + "]";
      auto found = station_at.find(sid);
      if (found == station_at.end()) {
        add(spath, "station " + std::to_string(sid) + " is not defined");
        continue;
      }
      if (s.stations[found->second].cell != cell.id) {
        add(spath, "station " + std::to_string(sid) + " declares cell " +
                       std::to_string(s.stations[found->second].cell));
      }
      auto [prev, first] = listed_in.emplace(sid, i);
      if (!first) {
        add(spath, "station " + std::to_string(sid) + " already listed by cells[" +
                       std::to_string(prev->second) + "]");
      }
    }
  }
  for (std::size_t i = 0; i < s.stations.size(); ++i) {
    const auto& st = s.stations[i];
    if (!cell_at.contains(st.cell)) {
      add("stations[" + std::to_string(i) + "].cell",
          "cell " + std::to_string(st.cell) + " is not defined");
    } else if (!listed_in.contains(st.id)) {
      add("stations[" + std::to_string(i) + "].cell",
          "station " + std::to_string(st.id) + " is not listed by cell " + std::to_string(st.cell));
    }
  }
  return errors;
}

void require_valid(const Scenario& s) {
  auto errors = validate(s);
  if (!errors.empty()) throw ConfigError(std::move(errors));
}

Scenario canonical_scenario() {
  Scenario s;
  s.name = "canonical";
  s.frame_duration = 5.0;
  s.total_frames = 12000;
  s.seed = 1;
  s.scheduler = "edf";
  s.ewma_alpha = 0.1;

  const TrafficSpec rtps{ServiceClass::kRtPS, TrafficPattern::kConstantRate, 64000.0, 800};
  const TrafficSpec be{ServiceClass::kBE, TrafficPattern::kPoisson, 32000.0, 1600};

  constexpr CellId kCells = 7;
  constexpr StationId kStationsPerCell = 2;
  for (CellId c = 0; c < kCells; ++c) {
    Cell cell{c, kCanonicalCellCapacity, {}};
    for (StationId k = 0; k < kStationsPerCell; ++k) {
      SubscriberStation st;
      st.id = c * kStationsPerCell + k;
      st.cell = c;
      st.capacity = kCanonicalCellCapacity;
      st.traffic = {rtps, be};
      cell.stations.push_back(st.id);
      s.stations.push_back(std::move(st));
    }
    s.cells.push_back(std::move(cell));
  }
  return s;
}

}  // namespace wimax
