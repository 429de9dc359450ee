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

#include <functional>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "cmfl/core.hpp"

namespace cmfl {

enum class CaseTag {
  kCase1NoCollision,
  kCase1Collision,
  kCase2,
  kBaselineIntersect,
  kBaselineDisjoint,
  kStrawman,
};

inline std::string_view to_string(CaseTag tag) {
  switch (tag) {
    case CaseTag::kCase1NoCollision: return "Case1-NoCollision";
    case CaseTag::kCase1Collision: return "Case1-Collision";
    case CaseTag::kCase2: return "Case2";
    case CaseTag::kBaselineIntersect: return "Baseline-Intersect";
    case CaseTag::kBaselineDisjoint: return "Baseline-Disjoint";
    case CaseTag::kStrawman: return "Strawman";
  }
  return "?";
}

inline bool is_case1(CaseTag tag) {
  return tag == CaseTag::kCase1NoCollision || tag == CaseTag::kCase1Collision;
}

struct MechanismOutcome {
  Solution solution;
  CaseTag case_tag = CaseTag::kCase2;
  // F2 played the role of the first-placed facility.
  bool swapped = false;

  friend bool operator==(const MechanismOutcome&, const MechanismOutcome&) = default;
};

namespace detail {

// Leftmost candidate different from `occupied`.
inline Coord leftmost_free(const Instance& instance, Coord occupied) {
  for (Coord c : instance.candidates()) {
    if (c != occupied) return c;
  }
  throw std::logic_error("instance has fewer than two candidates");
}

// Place the second facility nearest to `point`, avoiding the occupied site.
// Returns the location and whether t(point) collided with `occupied`.
inline std::pair<Coord, bool> place_second(const Instance& instance, Coord point,
                                           Coord occupied) {
  const Coord first_choice = nearest_candidate(instance.candidates(), point);
  if (first_choice != occupied) return {first_choice, false};
  return {nearest_candidate(instance.candidates(), point, occupied), true};
}

inline Solution orient(Coord first_placed, Coord second_placed, bool swapped) {
  return swapped ? Solution{second_placed, first_placed}
                 : Solution{first_placed, second_placed};
}

}  // namespace detail

/// Conditional-Median.
///
/// Let A be the facility with more approvers (F1 on ties) and B the other.
/// If at least as many agents approve only A as approve both, A goes to the
/// candidate closest to the left median of the A-only agents and B to the
/// free candidate closest to the left median of all B approvers. Otherwise
/// both facilities go to the two candidates closest to the left median of
/// the agents approving both, A at the closer one.
inline MechanismOutcome conditional_median(const Instance& instance) {
  const AgentSetView view = agent_set_view(instance);
  const bool swapped = view.n2.size() > view.n1.size();
  const IndexSet& approve_b = swapped ? view.n1 : view.n2;
  const IndexSet& only_a = swapped ? view.only2 : view.only1;
  const auto candidates = instance.candidates();

  MechanismOutcome out;
  out.swapped = swapped;

  if (only_a.size() >= view.both.size()) {
    const Coord a = nearest_candidate(candidates, instance.agent(left_median(instance, only_a)).x);
    Coord b;
    bool collision = false;
    if (approve_b.empty()) {
      b = detail::leftmost_free(instance, a);
    } else {
      const Coord median_b = instance.agent(left_median(instance, approve_b)).x;
      std::tie(b, collision) = detail::place_second(instance, median_b, a);
    }
    out.case_tag = collision ? CaseTag::kCase1Collision : CaseTag::kCase1NoCollision;
    out.solution = detail::orient(a, b, swapped);
    return out;
  }

  const Coord median = instance.agent(left_median(instance, view.both)).x;
  const Coord a = nearest_candidate(candidates, median);
  const Coord b = nearest_candidate(candidates, median, a);
  out.case_tag = CaseTag::kCase2;
  out.solution = detail::orient(a, b, swapped);
  return out;
}

namespace detail {

using DesignatedAgent = AgentIndex (*)(const Instance&, std::span<const AgentIndex>);

// Shared shape of the two prior-work baselines. If any agent approves both
// facilities, both are placed at the two candidates nearest the designated
// agent of N. Otherwise each facility goes to the (free) candidate nearest
// the designated agent of its approvers, `first_is_f2` deciding the order.
inline MechanismOutcome switching_baseline(const Instance& instance,
                                           DesignatedAgent designated,
                                           bool first_is_f2) {
  const AgentSetView view = agent_set_view(instance);
  MechanismOutcome out;

  if (!view.both.empty()) {
    IndexSet everyone(instance.num_agents());
    std::iota(everyone.begin(), everyone.end(), AgentIndex{0});
    const Coord point = instance.agent(designated(instance, everyone)).x;
    const Coord first = nearest_candidate(instance.candidates(), point);
    out.solution = {first, nearest_candidate(instance.candidates(), point, first)};
    out.case_tag = CaseTag::kBaselineIntersect;
    return out;
  }

  // A facility nobody approves is placed last.
  if (view.n1.empty()) first_is_f2 = true;
  if (view.n2.empty()) first_is_f2 = false;
  const IndexSet& first_set = first_is_f2 ? view.n2 : view.n1;
  const IndexSet& second_set = first_is_f2 ? view.n1 : view.n2;

  const Coord first = nearest_candidate(instance.candidates(),
                                        instance.agent(designated(instance, first_set)).x);
  const Coord second =
      second_set.empty()
          ? leftmost_free(instance, first)
          : place_second(instance, instance.agent(designated(instance, second_set)).x, first)
                .first;
  out.solution = orient(first, second, first_is_f2);
  out.swapped = first_is_f2;
  out.case_tag = CaseTag::kBaselineDisjoint;
  return out;
}

}  // namespace detail

/// Prior-work social-cost baseline: median designated agent, majority
/// facility placed first in the disjoint case.
inline MechanismOutcome zhao_sc_baseline(const Instance& instance) {
  const AgentSetView view = agent_set_view(instance);
  return detail::switching_baseline(instance, &left_median, view.n2.size() > view.n1.size());
}

/// Prior-work max-cost baseline: leftmost designated agent, F1 placed first.
inline MechanismOutcome zhao_mc_baseline(const Instance& instance) {
  return detail::switching_baseline(instance, &leftmost_agent, false);
}

// Manipulable reference mechanism: each facility goes to the free candidate
// nearest the mean position of its approvers (F1 first). Used to show that
// the deviation verifier actually finds manipulations.
inline MechanismOutcome mean_strawman(const Instance& instance) {
  const AgentSetView view = agent_set_view(instance);
  auto mean_of = [&](const IndexSet& set) {
    Coord sum = 0.0;
    for (AgentIndex i : set) sum += instance.agent(i).x;
    return sum / static_cast<Coord>(set.size());
  };
  const Coord f1 = view.n1.empty() ? instance.candidates().front()
                                   : nearest_candidate(instance.candidates(), mean_of(view.n1));
  const Coord f2 = view.n2.empty()
                       ? detail::leftmost_free(instance, f1)
                       : nearest_candidate(instance.candidates(), mean_of(view.n2), f1);
  return {Solution{f1, f2}, CaseTag::kStrawman, false};
}

using Mechanism = std::function<MechanismOutcome(const Instance&)>;

inline const std::vector<std::string>& mechanism_ids() {
  static const std::vector<std::string> ids = {"conditional-median", "zhao-sc", "zhao-mc",
                                               "mean-strawman"};
  return ids;
}

inline Mechanism find_mechanism(std::string_view id) {
  if (id == "conditional-median") return conditional_median;
  if (id == "zhao-sc") return zhao_sc_baseline;
  if (id == "zhao-mc") return zhao_mc_baseline;
  if (id == "mean-strawman") return mean_strawman;
  throw std::invalid_argument("unknown mechanism id '" + std::string(id) + "'");
}

inline MechanismOutcome run_mechanism(std::string_view id, const Instance& instance) {
  return find_mechanism(id)(instance);
}

}  // namespace cmfl
