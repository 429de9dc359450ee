// Copyright 2026 The cmfl Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// JSON encodings of instances, outcomes, ratio records and deviation reports.
//
// Instance: {"candidates": [number, ...],
//            "agents": [{"x": number, "f1": bool, "f2": bool}, ...]}

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "json.hpp"

#include "cmfl/core.hpp"
#include "cmfl/mechanism.hpp"
#include "cmfl/oracle.hpp"

namespace cmfl {

using Json = nlohmann::json;

namespace detail {

inline Coord finite_number(const Json& j, const char* what) {
  if (!j.is_number()) throw std::invalid_argument(std::string(what) + " must be a number");
  const Coord v = j.get<Coord>();
  if (!std::isfinite(v)) throw std::invalid_argument(std::string(what) + " is not finite");
  return v;
}

inline bool boolean(const Json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_boolean()) {
    throw std::invalid_argument(std::string("agent field '") + key + "' must be a boolean");
  }
  return j.at(key).get<bool>();
}

// Non-finite doubles have no JSON spelling; they become null.
inline Json number_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

}  // namespace detail

inline Instance instance_from_json(const Json& j) {
  if (!j.is_object()) throw std::invalid_argument("instance must be a JSON object");
  if (!j.contains("candidates") || !j.at("candidates").is_array()) {
    throw std::invalid_argument("instance requires a 'candidates' array");
  }
  if (!j.contains("agents") || !j.at("agents").is_array()) {
    throw std::invalid_argument("instance requires an 'agents' array");
  }
  std::vector<Coord> candidates;
  for (const Json& c : j.at("candidates")) {
    candidates.push_back(detail::finite_number(c, "candidate"));
  }
  std::vector<Agent> agents;
  for (const Json& a : j.at("agents")) {
    if (!a.is_object() || !a.contains("x")) {
      throw std::invalid_argument("agent must be an object with 'x', 'f1', 'f2'");
    }
    agents.push_back({detail::finite_number(a.at("x"), "agent position"),
                      detail::boolean(a, "f1"), detail::boolean(a, "f2")});
  }
  return Instance(std::move(candidates), std::move(agents));
}

inline Json to_json(const Instance& instance) {
  Json agents = Json::array();
  for (const Agent& a : instance.agents()) {
    agents.push_back({{"x", a.x}, {"f1", a.approves_f1}, {"f2", a.approves_f2}});
  }
  Json candidates = Json::array();
  for (Coord c : instance.candidates()) candidates.push_back(c);
  return {{"candidates", std::move(candidates)}, {"agents", std::move(agents)}};
}

inline Instance parse_instance(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::exception& e) {
    throw std::invalid_argument(std::string("malformed instance JSON: ") + e.what());
  }
  return instance_from_json(j);
}

inline Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open instance file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_instance(buffer.str());
}

inline Json to_json(const Solution& s) { return {{"y1", s.y1}, {"y2", s.y2}}; }

inline Json to_json(const MechanismOutcome& out) {
  return {{"y1", out.solution.y1},
          {"y2", out.solution.y2},
          {"case", to_string(out.case_tag)},
          {"swapped", out.swapped}};
}

inline Json to_json(const OptimalResult& opt, Objective objective) {
  return {{"objective", to_string(objective)},
          {"y1", opt.solution.y1},
          {"y2", opt.solution.y2},
          {"cost", opt.cost}};
}

inline Json to_json(const RatioRecord& r) {
  return {{"objective", to_string(r.objective)},
          {"mech_cost", r.mechanism_cost},
          {"opt_cost", r.optimal_cost},
          {"ratio", detail::number_or_null(r.ratio)},
          {"flag", to_string(r.flag)},
          {"opt_y1", r.optimal_solution.y1},
          {"opt_y2", r.optimal_solution.y2}};
}

inline Json to_json(const DeviationReport& report) {
  Json deviations = Json::array();
  for (const Deviation& d : report.deviations) {
    deviations.push_back(
        {{"agent", d.agent}, {"true_cost", d.true_cost}, {"report", d.report}, {"new_cost", d.new_cost}});
  }
  return {{"deviations", std::move(deviations)}, {"probe_count", report.probe_count}};
}

}  // namespace cmfl
