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

// Domain model for two-facility location on a line with candidate
// locations: agents hold a position and approve F1, F2 or both, and an
// agent's cost is the distance to the farthest facility it approves.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cmfl {

using Coord = double;
using AgentIndex = std::size_t;
using IndexSet = std::vector<AgentIndex>;

struct Agent {
  Coord x = 0.0;
  bool approves_f1 = false;
  bool approves_f2 = false;

  [[nodiscard]] bool approves_both() const { return approves_f1 && approves_f2; }

  friend bool operator==(const Agent&, const Agent&) = default;
};

// Placement of F1 at y1 and F2 at y2. Membership in the candidate set is
// checked against an Instance at the point of use.
struct Solution {
  Coord y1 = 0.0;
  Coord y2 = 0.0;

  friend bool operator==(const Solution&, const Solution&) = default;
};

enum class Objective { kSocialCost, kMaxCost };

inline std::string_view to_string(Objective objective) {
  return objective == Objective::kSocialCost ? "SC" : "MC";
}

// Accepts "sc"/"mc" in either case.
inline Objective parse_objective(std::string_view text) {
  if (text == "sc" || text == "SC") return Objective::kSocialCost;
  if (text == "mc" || text == "MC") return Objective::kMaxCost;
  throw std::invalid_argument("unknown objective '" + std::string(text) +
                              "' (expected sc or mc)");
}

// Immutable, validated problem input. Candidates are stored strictly
// increasing; duplicates are rejected rather than merged.
class Instance {
 public:
  Instance(std::vector<Coord> candidates, std::vector<Agent> agents)
      : candidates_(std::move(candidates)), agents_(std::move(agents)) {
    for (Coord c : candidates_) {
      if (!std::isfinite(c)) {
        throw std::invalid_argument("candidate coordinate is not finite");
      }
    }
    std::sort(candidates_.begin(), candidates_.end());
    if (std::adjacent_find(candidates_.begin(), candidates_.end()) !=
        candidates_.end()) {
      throw std::invalid_argument("duplicate candidate location");
    }
    if (candidates_.size() < 2) {
      throw std::invalid_argument("at least two candidate locations required");
    }
    if (agents_.empty()) {
      throw std::invalid_argument("at least one agent required");
    }
    for (std::size_t i = 0; i < agents_.size(); ++i) {
      const Agent& a = agents_[i];
      if (!std::isfinite(a.x)) {
        throw std::invalid_argument("agent " + std::to_string(i) +
                                    " position is not finite");
      }
      if (!a.approves_f1 && !a.approves_f2) {
        throw std::invalid_argument("agent " + std::to_string(i) +
                                    " approves no facility");
      }
    }
  }

  [[nodiscard]] std::span<const Coord> candidates() const { return candidates_; }
  [[nodiscard]] std::span<const Agent> agents() const { return agents_; }
  [[nodiscard]] std::size_t num_agents() const { return agents_.size(); }
  [[nodiscard]] const Agent& agent(AgentIndex i) const { return agents_.at(i); }

  [[nodiscard]] bool is_candidate(Coord c) const {
    return std::binary_search(candidates_.begin(), candidates_.end(), c);
  }

  [[nodiscard]] bool is_feasible(const Solution& s) const {
    return s.y1 != s.y2 && is_candidate(s.y1) && is_candidate(s.y2);
  }

  // Copy of this instance with agent i reporting position x instead.
  [[nodiscard]] Instance with_position(AgentIndex i, Coord x) const {
    std::vector<Agent> agents = agents_;
    agents.at(i).x = x;
    return Instance(candidates_, std::move(agents));
  }

  friend bool operator==(const Instance&, const Instance&) = default;

 private:
  std::vector<Coord> candidates_;
  std::vector<Agent> agents_;
};

// Approver sets, each sorted by agent index.
struct AgentSetView {
  IndexSet n1;
  IndexSet n2;
  IndexSet only1;  // N1 \ N2
  IndexSet only2;  // N2 \ N1
  IndexSet both;   // N1 ∩ N2
};

inline Coord distance(Coord a, Coord b) { return std::abs(a - b); }

inline AgentSetView agent_set_view(const Instance& instance) {
  AgentSetView view;
  const auto agents = instance.agents();
  for (AgentIndex i = 0; i < agents.size(); ++i) {
    const Agent& a = agents[i];
    if (a.approves_f1) view.n1.push_back(i);
    if (a.approves_f2) view.n2.push_back(i);
    if (a.approves_both()) {
      view.both.push_back(i);
    } else if (a.approves_f1) {
      view.only1.push_back(i);
    } else {
      view.only2.push_back(i);
    }
  }
  return view;
}

inline void require_feasible(const Instance& instance, const Solution& s) {
  if (s.y1 == s.y2) {
    throw std::invalid_argument("infeasible solution: both facilities at the same location");
  }
  if (!instance.is_candidate(s.y1) || !instance.is_candidate(s.y2)) {
    throw std::invalid_argument("infeasible solution: location is not a candidate");
  }
}

namespace detail {

inline Coord agent_cost_unchecked(const Agent& a, const Solution& s) {
  Coord cost = 0.0;
  if (a.approves_f1) cost = distance(a.x, s.y1);
  if (a.approves_f2) cost = std::max(cost, distance(a.x, s.y2));
  return cost;
}

inline Coord social_cost_unchecked(std::span<const Agent> agents, const Solution& s) {
  Coord total = 0.0;
  for (const Agent& a : agents) total += agent_cost_unchecked(a, s);
  return total;
}

inline Coord max_cost_unchecked(std::span<const Agent> agents, const Solution& s) {
  Coord worst = 0.0;
  for (const Agent& a : agents) worst = std::max(worst, agent_cost_unchecked(a, s));
  return worst;
}

}  // namespace detail

/// Distance from agent i to the farthest facility it approves.
inline Coord agent_cost(const Instance& instance, AgentIndex i, const Solution& s) {
  if (i >= instance.num_agents()) {
    throw std::out_of_range("agent index " + std::to_string(i) + " out of range");
  }
  require_feasible(instance, s);
  return detail::agent_cost_unchecked(instance.agent(i), s);
}

inline Coord social_cost(const Instance& instance, const Solution& s) {
  require_feasible(instance, s);
  return detail::social_cost_unchecked(instance.agents(), s);
}

inline Coord max_cost(const Instance& instance, const Solution& s) {
  require_feasible(instance, s);
  return detail::max_cost_unchecked(instance.agents(), s);
}

inline Coord objective_value(const Instance& instance, const Solution& s,
                             Objective objective) {
  return objective == Objective::kSocialCost ? social_cost(instance, s)
                                             : max_cost(instance, s);
}

/// Candidate closest to `point`, skipping `excluded` when given.
///
/// Equidistant candidates resolve to the smaller coordinate. Calling with
/// `excluded = nearest_candidate(c, point)` yields the second-closest
/// candidate.
inline Coord nearest_candidate(std::span<const Coord> candidates, Coord point,
                               std::optional<Coord> excluded = std::nullopt) {
  std::optional<Coord> best;
  Coord best_dist = 0.0;
  // Candidates are ascending, so a strict comparison keeps the leftmost on ties.
  for (Coord c : candidates) {
    if (excluded && c == *excluded) continue;
    const Coord d = distance(c, point);
    if (!best || d < best_dist) {
      best = c;
      best_dist = d;
    }
  }
  if (!best) throw std::invalid_argument("no candidate available");
  return *best;
}

inline Coord nearest_candidate(const Instance& instance, Coord point,
                               std::optional<Coord> excluded = std::nullopt) {
  if (excluded && !instance.is_candidate(*excluded)) {
    throw std::invalid_argument("excluded location is not a candidate");
  }
  return nearest_candidate(instance.candidates(), point, excluded);
}

// Agents of `set` ordered by (position, index).
inline IndexSet sorted_by_position(const Instance& instance, IndexSet set) {
  std::sort(set.begin(), set.end(), [&](AgentIndex a, AgentIndex b) {
    const Coord xa = instance.agent(a).x;
    const Coord xb = instance.agent(b).x;
    return xa != xb ? xa < xb : a < b;
  });
  return set;
}

/// Left median of an agent set: position ⌊(k-1)/2⌋ in (position, index) order.
inline AgentIndex left_median(const Instance& instance, std::span<const AgentIndex> set) {
  if (set.empty()) throw std::invalid_argument("median of an empty agent set");
  for (AgentIndex i : set) {
    if (i >= instance.num_agents()) throw std::out_of_range("agent index out of range");
  }
  const IndexSet sorted = sorted_by_position(instance, IndexSet(set.begin(), set.end()));
  return sorted[(sorted.size() - 1) / 2];
}

/// Leftmost agent of a set (smallest position, then smallest index).
inline AgentIndex leftmost_agent(const Instance& instance, std::span<const AgentIndex> set) {
  if (set.empty()) throw std::invalid_argument("leftmost of an empty agent set");
  return sorted_by_position(instance, IndexSet(set.begin(), set.end())).front();
}

}  // namespace cmfl
