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

// Instance generators: the two tightness families, seeded random
// instances, and a hill-climbing search for high-ratio instances.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cmfl/core.hpp"
#include "cmfl/mechanism.hpp"
#include "cmfl/oracle.hpp"

namespace cmfl {

struct IntRange {
  int lo = 0;
  int hi = 0;
};

struct RealRange {
  double lo = 0.0;
  double hi = 0.0;
};

struct ApprovalMix {
  double only1 = 1.0 / 3.0;
  double only2 = 1.0 / 3.0;
  double both = 1.0 / 3.0;
};

struct GeneratorConfig {
  IntRange n_agents{1, 12};
  IntRange n_candidates{2, 8};
  RealRange coordinates{0.0, 10.0};
  ApprovalMix approval_mix;
  std::uint64_t seed = 0;
  // When positive, every coordinate is lo + k * grid_step; coarse grids
  // produce the coincident positions and exact ties that continuous
  // draws almost never hit.
  double grid_step = 0.0;

  void validate() const {
    if (n_agents.lo < 1 || n_agents.lo > n_agents.hi) {
      throw std::invalid_argument("n_agents range must satisfy 1 <= lo <= hi");
    }
    if (n_candidates.lo < 2 || n_candidates.lo > n_candidates.hi) {
      throw std::invalid_argument("n_candidates range must satisfy 2 <= lo <= hi");
    }
    if (!std::isfinite(coordinates.lo) || !std::isfinite(coordinates.hi) ||
        !(coordinates.lo < coordinates.hi)) {
      throw std::invalid_argument("coordinate range must be finite with lo < hi");
    }
    const ApprovalMix& m = approval_mix;
    if (m.only1 < 0 || m.only2 < 0 || m.both < 0 ||
        std::abs(m.only1 + m.only2 + m.both - 1.0) > 1e-12) {
      throw std::invalid_argument("approval mix must be nonnegative and sum to 1");
    }
    if (grid_step < 0 || !std::isfinite(grid_step)) {
      throw std::invalid_argument("grid_step must be finite and nonnegative");
    }
    if (grid_step > 0 && grid_points() < static_cast<std::uint64_t>(n_candidates.hi)) {
      throw std::invalid_argument("grid has fewer points than the candidate count");
    }
  }

  [[nodiscard]] std::uint64_t grid_points() const {
    return static_cast<std::uint64_t>(std::floor((coordinates.hi - coordinates.lo) / grid_step)) + 1;
  }
};

/// Social-cost tightness family on candidates {0, eps, 1, 1+eps}: n/3
/// F1-only and n/3 F2-only agents at 0, n/6 agents approving both at 0 and
/// n/6 + 1 agents approving both at 1/2 + 2 eps (n + 1 agents in total).
inline Instance gen_sc_tight(int n, double eps) {
  if (n < 12 || n % 12 != 0) throw std::invalid_argument("n must be a positive multiple of 12");
  if (!(eps > 0.0) || !(eps < 1.0 / (4.0 * n))) {
    throw std::invalid_argument("eps must satisfy 0 < eps < 1/(4n)");
  }
  std::vector<Agent> agents;
  agents.reserve(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k < n / 3; ++k) agents.push_back({0.0, true, false});
  for (int k = 0; k < n / 3; ++k) agents.push_back({0.0, false, true});
  for (int k = 0; k < n / 6; ++k) agents.push_back({0.0, true, true});
  for (int k = 0; k < n / 6 + 1; ++k) agents.push_back({0.5 + 2.0 * eps, true, true});
  return Instance({0.0, eps, 1.0, 1.0 + eps}, std::move(agents));
}

/// Max-cost tightness instance on candidates {0, 2, 6}.
inline Instance gen_mc_tight(double eps) {
  if (!(eps > 0.0) || !(eps < 0.1)) throw std::invalid_argument("eps must satisfy 0 < eps < 0.1");
  return Instance({0.0, 2.0, 6.0}, {{1.0 + eps, true, false},
                                    {1.0 + eps, true, false},
                                    {1.0 + eps, true, false},
                                    {1.0, false, true},
                                    {3.0 + eps, false, true},
                                    {3.0 + eps, false, true}});
}

namespace detail {

class InstanceSampler {
 public:
  InstanceSampler(const GeneratorConfig& config, std::mt19937_64& rng)
      : config_(config), rng_(rng) {}

  Coord coordinate() {
    const RealRange& r = config_.coordinates;
    if (config_.grid_step > 0) {
      std::uniform_int_distribution<std::uint64_t> k(0, config_.grid_points() - 1);
      return r.lo + static_cast<double>(k(rng_)) * config_.grid_step;
    }
    return std::uniform_real_distribution<double>(r.lo, r.hi)(rng_);
  }

  Agent agent() {
    const ApprovalMix& m = config_.approval_mix;
    const Coord x = coordinate();
    const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng_);
    if (u < m.only1) return {x, true, false};
    if (u < m.only1 + m.only2) return {x, false, true};
    return {x, true, true};
  }

  int count(IntRange range) { return std::uniform_int_distribution<int>(range.lo, range.hi)(rng_); }

  std::vector<Coord> distinct_coordinates(int k) {
    std::vector<Coord> out;
    const int max_draws = 1000 * k;
    for (int draws = 0; static_cast<int>(out.size()) < k; ++draws) {
      if (draws >= max_draws) throw std::runtime_error("could not draw distinct candidates");
      const Coord c = coordinate();
      if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
    }
    return out;
  }

 private:
  const GeneratorConfig& config_;
  std::mt19937_64& rng_;
};

}  // namespace detail

/// Random instance, deterministic in `config.seed`.
inline Instance gen_random(const GeneratorConfig& config) {
  config.validate();
  std::mt19937_64 rng(config.seed);
  detail::InstanceSampler sample(config, rng);
  const int n = sample.count(config.n_agents);
  const int k = sample.count(config.n_candidates);
  std::vector<Coord> candidates = sample.distinct_coordinates(k);
  std::vector<Agent> agents;
  agents.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) agents.push_back(sample.agent());
  return Instance(std::move(candidates), std::move(agents));
}

struct SearchResult {
  Instance instance;
  RatioRecord record;
  std::size_t accepted_moves = 0;
};

namespace detail {

inline double search_score(const RatioRecord& r) {
  return r.flag == RatioFlag::kViolation ? std::numeric_limits<double>::infinity() : r.ratio;
}

// One random local edit: move, snap, add or drop an agent, move, add or
// drop a candidate, or change an approval pattern. `placed` is the current
// mechanism output, used as a snap target. Returns the input unchanged when
// the edit would produce an invalid instance.
inline Instance perturb(const Instance& current, const Solution& placed, const GeneratorConfig& config,
                        std::mt19937_64& rng) {
  std::vector<Coord> candidates(current.candidates().begin(), current.candidates().end());
  std::vector<Agent> agents(current.agents().begin(), current.agents().end());
  const double width = config.coordinates.hi - config.coordinates.lo;
  auto pick = [&](std::size_t size) {
    return std::uniform_int_distribution<std::size_t>(0, size - 1)(rng);
  };
  auto step = [&] {
    static constexpr double kScales[] = {1.0, 0.3, 0.05, 0.005};
    return std::normal_distribution<double>(0.0, width * kScales[pick(4)])(rng);
  };

  switch (pick(9)) {
    case 0:
    case 1:
      agents[pick(agents.size())].x += step();
      break;
    case 2: {
      // Snap an agent onto a candidate, another agent, a candidate midpoint,
      // or a facility the mechanism currently places.
      Agent& a = agents[pick(agents.size())];
      const std::size_t what = pick(4);
      if (what == 3) {
        a.x = pick(2) == 0 ? placed.y1 : placed.y2;
      } else if (what == 0) {
        a.x = candidates[pick(candidates.size())];
      } else if (what == 1) {
        a.x = agents[pick(agents.size())].x;
      } else {
        const std::size_t c = pick(candidates.size() - 1);
        a.x = (candidates[c] + candidates[c + 1]) / 2.0;
      }
      break;
    }
    case 3:
      candidates[pick(candidates.size())] += step();
      break;
    case 4: {
      Agent& a = agents[pick(agents.size())];
      // Cycle through only-F1, only-F2, both.
      if (a.approves_both()) {
        a = {a.x, true, false};
      } else if (a.approves_f1) {
        a = {a.x, false, true};
      } else {
        a = {a.x, true, true};
      }
      break;
    }
    case 5:
      if (static_cast<int>(agents.size()) < config.n_agents.hi) {
        agents.push_back(agents[pick(agents.size())]);
      }
      break;
    case 6:
      if (static_cast<int>(agents.size()) > config.n_agents.lo) {
        agents.erase(agents.begin() + static_cast<std::ptrdiff_t>(pick(agents.size())));
      }
      break;
    case 7:
      // New candidate: the mirror image of a candidate about an agent (a
      // near-tie for that agent), near an agent, or anywhere in range.
      if (static_cast<int>(candidates.size()) < config.n_candidates.hi) {
        const Coord x = agents[pick(agents.size())].x;
        const std::size_t what = pick(3);
        if (what == 0) {
          candidates.push_back(2.0 * x - candidates[pick(candidates.size())] +
                               std::normal_distribution<double>(0.0, width * 1e-4)(rng));
        } else if (what == 1) {
          candidates.push_back(x + step());
        } else {
          candidates.push_back(
              std::uniform_real_distribution<double>(config.coordinates.lo, config.coordinates.hi)(rng));
        }
      }
      break;
    default:
      if (static_cast<int>(candidates.size()) > config.n_candidates.lo) {
        candidates.erase(candidates.begin() + static_cast<std::ptrdiff_t>(pick(candidates.size())));
      }
      break;
  }
  for (const Agent& a : agents) {
    if (!std::isfinite(a.x)) return current;
  }
  try {
    return Instance(std::move(candidates), std::move(agents));
  } catch (const std::invalid_argument&) {
    return current;
  }
}

}  // namespace detail

/// Hill climbing toward instances with a high approximation ratio.
///
/// Starts from gen_random(config) and accepts any local edit that does not
/// lower the ratio, so plateaus are crossed. After `patience` iterations
/// without a strict improvement the walk restarts from a fresh random
/// instance; the best instance over all restarts is returned.
/// Deterministic in config.seed. A VIOLATION record ends the search.
inline SearchResult hill_climb_worst_case(const GeneratorConfig& config, Objective objective,
                                          const Mechanism& mechanism, std::size_t iterations,
                                          std::size_t patience = 500) {
  if (iterations < 1) throw std::invalid_argument("iterations must be at least 1");
  Instance current = gen_random(config);
  RatioRecord current_record = approximation_ratio(current, mechanism, objective);
  SearchResult best{current, current_record, 0};
  std::mt19937_64 rng(config.seed ^ 0x9e3779b97f4a7c15ULL);
  std::size_t stale = 0;

  for (std::size_t it = 0; it < iterations; ++it) {
    if (detail::search_score(best.record) == std::numeric_limits<double>::infinity()) break;
    if (stale >= patience) {
      // Restarts also redraw the approval mix (uniform on the simplex) so the
      // walk visits instances dominated by each approval pattern.
      GeneratorConfig restart = config;
      restart.seed = rng();
      std::exponential_distribution<double> weight(1.0);
      const double w1 = weight(rng), w2 = weight(rng), w3 = weight(rng);
      const double total = w1 + w2 + w3;
      restart.approval_mix = {w1 / total, w2 / total, w3 / total};
      // Shrink the size caps too: small instances reach extreme ratios sooner.
      restart.n_agents.hi = std::uniform_int_distribution<int>(config.n_agents.lo, config.n_agents.hi)(rng);
      restart.n_candidates.hi =
          std::uniform_int_distribution<int>(config.n_candidates.lo, config.n_candidates.hi)(rng);
      current = gen_random(restart);
      current_record = approximation_ratio(current, mechanism, objective);
      stale = 0;
    } else {
      // Mostly single edits, sometimes two or three at once.
      const Solution placed = mechanism(current).solution;
      Instance candidate = detail::perturb(current, placed, config, rng);
      for (std::size_t extra = std::uniform_int_distribution<std::size_t>(0, 3)(rng); extra > 1; --extra) {
        candidate = detail::perturb(candidate, placed, config, rng);
      }
      RatioRecord record = approximation_ratio(candidate, mechanism, objective);
      const double before = detail::search_score(current_record);
      const double after = detail::search_score(record);
      if (after >= before) {
        ++best.accepted_moves;
        current = std::move(candidate);
        current_record = record;
      }
      stale = after > before ? 0 : stale + 1;
    }
    if (detail::search_score(current_record) > detail::search_score(best.record)) {
      best.instance = current;
      best.record = current_record;
    }
  }
  return best;
}

inline SearchResult hill_climb_worst_case(const GeneratorConfig& config, Objective objective,
                                          std::string_view mechanism_id, std::size_t iterations,
                                          std::size_t patience = 500) {
  return hill_climb_worst_case(config, objective, find_mechanism(mechanism_id), iterations, patience);
}

}  // namespace cmfl
