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

// Exact ground truth: brute-force optima, approximation ratios and an
// exhaustive single-agent deviation search.

#include <algorithm>
#include <cstddef>
#include <limits>
#include <string_view>
#include <vector>

#include "cmfl/core.hpp"
#include "cmfl/mechanism.hpp"

namespace cmfl {

// Costs at or below this are treated as zero; improvements must exceed it.
inline constexpr double kCostTolerance = 1e-9;

struct OptimalResult {
  Solution solution;
  Coord cost = 0.0;
};

/// Minimizes the objective over all ordered pairs of distinct candidates.
/// Ties go to the lexicographically smallest (y1, y2).
inline OptimalResult optimal_solution(const Instance& instance, Objective objective) {
  const auto candidates = instance.candidates();
  const auto agents = instance.agents();
  OptimalResult best{{}, std::numeric_limits<Coord>::infinity()};
  for (Coord y1 : candidates) {
    for (Coord y2 : candidates) {
      if (y1 == y2) continue;
      const Solution s{y1, y2};
      const Coord cost = objective == Objective::kSocialCost
                             ? detail::social_cost_unchecked(agents, s)
                             : detail::max_cost_unchecked(agents, s);
      if (cost < best.cost) best = {s, cost};
    }
  }
  return best;
}

enum class RatioFlag { kOk, kUnit, kViolation };

inline std::string_view to_string(RatioFlag flag) {
  switch (flag) {
    case RatioFlag::kOk: return "OK";
    case RatioFlag::kUnit: return "UNIT";
    case RatioFlag::kViolation: return "VIOLATION";
  }
  return "?";
}

struct RatioRecord {
  Objective objective = Objective::kSocialCost;
  Coord mechanism_cost = 0.0;
  Coord optimal_cost = 0.0;
  // 1 for kUnit, +inf for kViolation.
  double ratio = 1.0;
  RatioFlag flag = RatioFlag::kOk;
  Solution optimal_solution;
};

inline RatioRecord ratio_record(const Instance& instance, const Solution& mechanism_solution,
                                Objective objective) {
  const OptimalResult opt = optimal_solution(instance, objective);
  RatioRecord r;
  r.objective = objective;
  r.mechanism_cost = objective_value(instance, mechanism_solution, objective);
  r.optimal_cost = opt.cost;
  r.optimal_solution = opt.solution;
  if (r.optimal_cost <= kCostTolerance) {
    if (r.mechanism_cost <= kCostTolerance) {
      r.flag = RatioFlag::kUnit;
      r.ratio = 1.0;
    } else {
      r.flag = RatioFlag::kViolation;
      r.ratio = std::numeric_limits<double>::infinity();
    }
  } else {
    r.ratio = r.mechanism_cost / r.optimal_cost;
  }
  return r;
}

inline RatioRecord approximation_ratio(const Instance& instance, const Mechanism& mechanism,
                                       Objective objective) {
  return ratio_record(instance, mechanism(instance).solution, objective);
}

inline RatioRecord approximation_ratio(const Instance& instance, std::string_view mechanism_id,
                                       Objective objective) {
  return approximation_ratio(instance, find_mechanism(mechanism_id), objective);
}

/// Probe positions for agent `i`'s report.
///
/// The registered mechanisms (mean-strawman aside) depend on a single
/// report only through its rank among the other agents and through which
/// candidate, or which candidate after one exclusion, lies nearest to it.
/// Both are constant between consecutive breakpoints (other positions,
/// candidates, midpoints of candidate pairs), so the breakpoints together
/// with one interior point per gap and one point beyond each end cover
/// every distinct outcome.
inline std::vector<Coord> deviation_breakpoints(const Instance& instance, AgentIndex i) {
  if (i >= instance.num_agents()) throw std::out_of_range("agent index out of range");
  const auto candidates = instance.candidates();
  std::vector<Coord> points;
  for (AgentIndex j = 0; j < instance.num_agents(); ++j) {
    if (j != i) points.push_back(instance.agent(j).x);
  }
  for (std::size_t a = 0; a < candidates.size(); ++a) {
    points.push_back(candidates[a]);
    for (std::size_t b = a + 1; b < candidates.size(); ++b) {
      points.push_back((candidates[a] + candidates[b]) / 2.0);
    }
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());

  std::vector<Coord> probes;
  probes.reserve(2 * points.size() + 1);
  probes.push_back(points.front() - 1.0);
  for (std::size_t k = 0; k < points.size(); ++k) {
    probes.push_back(points[k]);
    if (k + 1 < points.size()) {
      const Coord mid = points[k] + (points[k + 1] - points[k]) / 2.0;
      if (mid > points[k] && mid < points[k + 1]) probes.push_back(mid);
    }
  }
  probes.push_back(points.back() + 1.0);
  return probes;
}

struct Deviation {
  AgentIndex agent = 0;
  Coord true_cost = 0.0;
  Coord report = 0.0;
  Coord new_cost = 0.0;
};

struct DeviationReport {
  std::vector<Deviation> deviations;
  std::size_t probe_count = 0;

  [[nodiscard]] bool strategyproof() const { return deviations.empty(); }
};

/// Reruns the mechanism with each agent's report replaced by every probe
/// position and records reports that lower the agent's true cost by more
/// than kCostTolerance. Deviations are ordered by (agent, report).
inline DeviationReport verify_strategyproof(const Instance& instance, const Mechanism& mechanism) {
  DeviationReport report;
  const Solution truthful = mechanism(instance).solution;
  for (AgentIndex i = 0; i < instance.num_agents(); ++i) {
    const Agent& truth = instance.agent(i);
    const Coord true_cost = detail::agent_cost_unchecked(truth, truthful);
    for (Coord probe : deviation_breakpoints(instance, i)) {
      ++report.probe_count;
      const Solution lied = mechanism(instance.with_position(i, probe)).solution;
      const Coord new_cost = agent_cost(instance, i, lied);
      if (new_cost < true_cost - kCostTolerance) {
        report.deviations.push_back({i, true_cost, probe, new_cost});
      }
    }
  }
  return report;
}

inline DeviationReport verify_strategyproof(const Instance& instance, std::string_view mechanism_id) {
  return verify_strategyproof(instance, find_mechanism(mechanism_id));
}

}  // namespace cmfl
