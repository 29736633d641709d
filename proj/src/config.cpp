// SPDX-License-Identifier: Apache-2.0

#include "wimax/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "wimax/errors.hpp"
#include "wimax/schedulers.hpp"
#include "wimax/traffic.hpp"

namespace wimax {

namespace {

using nlohmann::json;

/// Reads typed fields out of one JSON object, collecting problems instead of
/// stopping at the first.
class ObjectReader {
 public:
  ObjectReader(const json& obj, std::string path, std::vector<std::string>& errors)
      : obj_(obj), path_(std::move(path)), errors_(errors) {
    if (!obj_.is_object()) fail(path_, "must be an object");
  }

  ~ObjectReader() {
    if (!obj_.is_object()) return;
    for (const auto& [key, value] : obj_.items()) {
      if (!seen_.contains(key)) fail(field(key), "unknown key");
    }
  }

  ObjectReader(const ObjectReader&) = delete;
  ObjectReader& operator=(const ObjectReader&) = delete;

  std::string field(std::string_view key) const {
    return path_.empty() ? std::string(key) : path_ + "." + std::string(key);
  }

  const json* get(std::string_view key, bool required) {
    seen_.insert(std::string(key));
    if (!obj_.is_object()) return nullptr;
    auto it = obj_.find(std::string(key));
    if (it == obj_.end()) {
      if (required) fail(field(key), "is required");
      return nullptr;
    }
    return &*it;
  }

  template <typename T>
  void number(std::string_view key, T& out, bool required = false) {
    const json* v = get(key, required);
    if (!v) return;
    if constexpr (std::is_floating_point_v<T>) {
      if (!v->is_number()) return fail(field(key), "must be a number");
      out = v->get<T>();
    } else {
      if (!v->is_number_integer()) return fail(field(key), "must be an integer");
      if constexpr (std::is_unsigned_v<T>) {
        if (v->is_number_unsigned() || v->get<std::int64_t>() >= 0) {
          out = v->get<T>();
        } else {
          fail(field(key), "must be non-negative");
        }
      } else {
        out = v->get<T>();
      }
    }
  }

  void boolean(std::string_view key, bool& out) {
    const json* v = get(key, false);
    if (!v) return;
    if (!v->is_boolean()) return fail(field(key), "must be true or false");
    out = v->get<bool>();
  }

  void string(std::string_view key, std::string& out, bool required = false) {
    const json* v = get(key, required);
    if (!v) return;
    if (!v->is_string()) return fail(field(key), "must be a string");
    out = v->get<std::string>();
  }

  void fail(const std::string& path, const std::string& what) { errors_.push_back(path + ": " + what); }

 private:
  const json& obj_;
  std::string path_;
  std::vector<std::string>& errors_;
  std::set<std::string> seen_;
};

TrafficSpec read_traffic(const json& j, const std::string& path, std::vector<std::string>& errors) {
  TrafficSpec t;
  ObjectReader r(j, path, errors);
  std::string cls;
  r.string("class", cls, true);
  if (!cls.empty()) {
    if (auto c = parse_service_class(cls)) {
      t.service_class = *c;
    } else {
      r.fail(r.field("class"), "unknown service class '" + cls + "'");
    }
  }
  std::string pattern;
  r.string("pattern", pattern, true);
  if (!pattern.empty()) {
    if (auto p = parse_traffic_pattern(pattern)) {
      t.pattern = *p;
    } else {
      r.fail(r.field("pattern"), "must be constant_rate or poisson");
    }
  }
  r.number("rate_bits_per_s", t.rate_bits_per_s, true);
  r.number("packet_size_bits", t.packet_size_bits, true);
  r.number("start_ms", t.start_time);
  r.number("stop_ms", t.stop_time);
  return t;
}

Scenario from_json(const json& doc) {
  std::vector<std::string> errors;
  Scenario s;
  {
    ObjectReader r(doc, "", errors);
    r.string("name", s.name);
    r.string("scheduler", s.scheduler);
    r.number("seed", s.seed);
    r.number("frame_duration_ms", s.frame_duration);
    r.number("total_frames", s.total_frames);
    r.number("ewma_alpha", s.ewma_alpha);
    r.boolean("drop_on_miss", s.drop_on_miss);

    if (const json* d = r.get("deadline_offsets_ms", false)) {
      ObjectReader dr(*d, "deadline_offsets_ms", errors);
      for (ServiceClass c : kServiceClasses) dr.number(to_string(c), s.deadlines.of(c));
    }

    if (const json* cells = r.get("cells", true)) {
      if (!cells->is_array()) {
        r.fail("cells", "must be an array");
      } else {
        for (std::size_t i = 0; i < cells->size(); ++i) {
          const std::string path = "cells[" + std::to_string(i) + "]";
          Cell cell;
          ObjectReader cr((*cells)[i], path, errors);
          cr.number("id", cell.id, true);
          cr.number("base_station_capacity_bits", cell.capacity, true);
          if (const json* ids = cr.get("stations", true)) {
            if (!ids->is_array()) {
              cr.fail(path + ".stations", "must be an array of station ids");
            } else {
              for (std::size_t k = 0; k < ids->size(); ++k) {
                const auto& v = (*ids)[k];
                if (v.is_number_unsigned()) {
                  cell.stations.push_back(v.get<StationId>());
                } else {
                  cr.fail(path + ".stations[" + std::to_string(k) + "]", "must be a station id");
                }
              }
            }
          }
          s.cells.push_back(std::move(cell));
        }
      }
    }

    if (const json* stations = r.get("stations", true)) {
      if (!stations->is_array()) {
        r.fail("stations", "must be an array");
      } else {
        for (std::size_t i = 0; i < stations->size(); ++i) {
          const std::string path = "stations[" + std::to_string(i) + "]";
          SubscriberStation st;
          ObjectReader sr((*stations)[i], path, errors);
          sr.number("id", st.id, true);
          sr.number("cell", st.cell, true);
          sr.number("capacity_bits", st.capacity, true);
          sr.number("historical_throughput", st.historical_throughput);
          sr.number("weight", st.weight);
          if (const json* traffic = sr.get("traffic", false)) {
            if (!traffic->is_array()) {
              sr.fail(path + ".traffic", "must be an array");
            } else {
              for (std::size_t k = 0; k < traffic->size(); ++k) {
                st.traffic.push_back(
                    read_traffic((*traffic)[k], path + ".traffic[" + std::to_string(k) + "]", errors));
              }
            }
          }
          s.stations.push_back(std::move(st));
        }
      }
    }
  }

  if (!is_policy_name(s.scheduler)) {
    errors.push_back("scheduler: unknown policy '" + s.scheduler +
                     "' (expected one of rr, wrr, edf, ssbpf_edf, hedf)");
  }
  // Structural errors make the invariant checks noisy; report those first.
  if (errors.empty()) errors = validate(s);
  if (!errors.empty()) throw ConfigError(std::move(errors));
  return s;
}

}  // namespace

Scenario parse_scenario(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("scenario: malformed JSON: ") + e.what());
  }
  return from_json(doc);
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("scenario: cannot open '" + path.string() + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_scenario(text.str());
}

Scenario resolve_scenario(std::string_view name_or_path) {
  if (name_or_path == "canonical") return canonical_scenario();
  if (name_or_path == "starvation") return starvation_scenario();
  return load_scenario(std::filesystem::path(name_or_path));
}

std::string scenario_to_json(const Scenario& s) {
  json doc;
  doc["name"] = s.name;
  doc["scheduler"] = s.scheduler;
  doc["seed"] = s.seed;
  doc["frame_duration_ms"] = s.frame_duration;
  doc["total_frames"] = s.total_frames;
  doc["ewma_alpha"] = s.ewma_alpha;
  doc["drop_on_miss"] = s.drop_on_miss;
  for (ServiceClass c : kServiceClasses) {
    doc["deadline_offsets_ms"][std::string(to_string(c))] = s.deadlines.of(c);
  }
  doc["cells"] = json::array();
  for (const auto& cell : s.cells) {
    doc["cells"].push_back(
        {{"id", cell.id}, {"base_station_capacity_bits", cell.capacity}, {"stations", cell.stations}});
  }
  doc["stations"] = json::array();
  for (const auto& st : s.stations) {
    std::vector<SubscriberStation const*> peers;
    for (const auto& other : s.stations) {
      if (other.cell == st.cell) peers.push_back(&other);
    }
    json traffic = json::array();
    for (const auto& t : st.traffic) {
      json tj = {{"class", std::string(to_string(t.service_class))},
                 {"pattern", std::string(to_string(t.pattern))},
                 {"rate_bits_per_s", t.rate_bits_per_s},
                 {"packet_size_bits", t.packet_size_bits},
                 {"start_ms", t.start_time}};
      if (std::isfinite(t.stop_time)) tj["stop_ms"] = t.stop_time;
      traffic.push_back(std::move(tj));
    }
    doc["stations"].push_back({{"id", st.id},
                               {"cell", st.cell},
                               {"capacity_bits", st.capacity},
                               {"historical_throughput", st.historical_throughput},
                               {"weight", wrr_weight(st, peers)},
                               {"traffic", std::move(traffic)}});
  }
  return doc.dump(2) + "\n";
}

}  // namespace wimax
