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

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>

#include "catch_amalgamated.hpp"

#include "cmfl/core.hpp"
#include "test_support.hpp"

namespace cmfl {
namespace {

using Catch::Approx;

constexpr double kEps = 1e-3;

// Candidates {0, 2, 6}: three F1-only agents at 1+eps, F2-only agents at
// 1, 3+eps, 3+eps.
Instance max_cost_tight() {
  return Instance({0.0, 2.0, 6.0}, {{1.0 + kEps, true, false},
                                    {1.0 + kEps, true, false},
                                    {1.0 + kEps, true, false},
                                    {1.0, false, true},
                                    {3.0 + kEps, false, true},
                                    {3.0 + kEps, false, true}});
}

TEST_CASE("distance", "[core]") {
  CHECK(distance(3, 5) == 2);
  CHECK(distance(5, 3) == 2);
  CHECK(distance(4, 4) == 0);
  CHECK(distance(1, 6) <= distance(1, 2) + distance(2, 6));
  CHECK(distance(1, 6) == 5);
}

TEST_CASE("instance validation", "[core]") {
  const std::vector<Agent> one{{0.0, true, true}};
  CHECK_THROWS_AS(Instance({1.0}, one), std::invalid_argument);
  CHECK_THROWS_AS(Instance({}, one), std::invalid_argument);
  CHECK_THROWS_AS(Instance({1.0, 1.0}, one), std::invalid_argument);
  CHECK_THROWS_AS(Instance({0.0, 1.0}, {}), std::invalid_argument);
  CHECK_THROWS_AS(Instance({0.0, 1.0}, {{0.0, false, false}}), std::invalid_argument);
  CHECK_THROWS_AS(Instance({0.0, std::nan("")}, one), std::invalid_argument);
  CHECK_THROWS_AS(Instance({0.0, 1.0}, {{std::numeric_limits<double>::infinity(), true, false}}),
                  std::invalid_argument);

  const Instance sorted({5.0, -1.0, 2.0}, one);
  CHECK(std::vector<Coord>(sorted.candidates().begin(), sorted.candidates().end()) ==
        std::vector<Coord>{-1.0, 2.0, 5.0});
}

TEST_CASE("agent_cost examples", "[core]") {
  const Instance both({1.0, 5.0}, {{3.0, true, true}});
  CHECK(agent_cost(both, 0, {1.0, 5.0}) == 2.0);

  const Instance only1({-1.0, 4.0}, {{0.0, true, false}});
  CHECK(agent_cost(only1, 0, {4.0, -1.0}) == 4.0);

  const Instance only2({2.0, 6.0}, {{1.0, false, true}});
  CHECK(agent_cost(only2, 0, {2.0, 6.0}) == 5.0);
}

TEST_CASE("agent_cost rejects bad input", "[core]") {
  const Instance inst({0.0, 2.0, 6.0}, {{1.0, true, true}});
  CHECK_THROWS_AS(agent_cost(inst, 1, {0.0, 2.0}), std::out_of_range);
  CHECK_THROWS_AS(agent_cost(inst, 0, {2.0, 2.0}), std::invalid_argument);
  CHECK_THROWS_AS(agent_cost(inst, 0, {0.0, 3.0}), std::invalid_argument);
  CHECK_THROWS_AS(social_cost(inst, {1.0, 2.0}), std::invalid_argument);
  CHECK_THROWS_AS(max_cost(inst, {6.0, 6.0}), std::invalid_argument);
}

TEST_CASE("social_cost examples", "[core]") {
  CHECK(social_cost(Instance({0.0, 1.0}, {{0.0, true, true}}), {0.0, 1.0}) == 1.0);
  CHECK(social_cost(Instance({0.0, 5.0, 10.0}, {{0.0, true, false}, {10.0, true, false}}), {5.0, 0.0}) ==
        10.0);
}

TEST_CASE("social_cost of the n = 12 social-cost tightness instance", "[core]") {
  // n/3 F1-only and n/3 F2-only agents at 0, n/6 both-approvers at 0 and
  // n/6 + 1 both-approvers at 1/2 + 2 eps; placement (1, 1 + eps).
  const int n = 12;
  std::vector<Agent> agents;
  for (int k = 0; k < n / 3; ++k) agents.push_back({0.0, true, false});
  for (int k = 0; k < n / 3; ++k) agents.push_back({0.0, false, true});
  for (int k = 0; k < n / 6; ++k) agents.push_back({0.0, true, true});
  for (int k = 0; k < n / 6 + 1; ++k) agents.push_back({0.5 + 2 * kEps, true, true});
  const Instance inst({0.0, kEps, 1.0, 1.0 + kEps}, agents);

  // Closed-form total, group by group.
  const double expected = (n / 3) * 1.0 + (n / 3) * (1.0 + kEps) + (n / 6) * (1.0 + kEps) +
                          (n / 6 + 1) * (0.5 - kEps);
  CHECK(expected == Approx(11.503).margin(1e-12));
  CHECK(social_cost(inst, {1.0, 1.0 + kEps}) == Approx(expected).margin(1e-12));
  CHECK(social_cost(inst, {1.0, 1.0 + kEps}) == Approx(11.5).margin(0.01));
}

TEST_CASE("max_cost examples", "[core]") {
  CHECK(max_cost(max_cost_tight(), {2.0, 6.0}) == 5.0);

  const Instance limit({0.0, 2.0, 6.0}, {{1.0, true, false},
                                         {1.0, true, false},
                                         {1.0, true, false},
                                         {1.0, false, true},
                                         {3.0, false, true},
                                         {3.0, false, true}});
  CHECK(max_cost(limit, {0.0, 2.0}) == 1.0);

  const Instance single({-3.0, 0.5, 4.0}, {{0.5, true, true}});
  CHECK(max_cost(single, {0.5, 4.0}) == distance(0.5, 4.0));
  CHECK(max_cost(single, {-3.0, 0.5}) == distance(0.5, -3.0));
}

TEST_CASE("nearest_candidate examples", "[core]") {
  const std::vector<Coord> c{0.0, 2.0, 6.0};
  CHECK(nearest_candidate(c, 3.0 + kEps) == 2.0);
  CHECK(nearest_candidate(c, 3.0 + kEps, 2.0) == 6.0);
  CHECK(nearest_candidate(std::vector<Coord>{0.0, 10.0}, 5.0) == 0.0);
  // Tie after exclusion also resolves left.
  CHECK(nearest_candidate(std::vector<Coord>{0.0, 5.0, 10.0}, 5.0, 5.0) == 0.0);
}

TEST_CASE("nearest_candidate errors", "[core]") {
  CHECK_THROWS_AS(nearest_candidate(std::vector<Coord>{3.0}, 1.0, 3.0), std::invalid_argument);
  CHECK_THROWS_AS(nearest_candidate(std::vector<Coord>{}, 1.0), std::invalid_argument);
  const Instance inst({0.0, 1.0}, {{0.0, true, true}});
  CHECK_THROWS_AS(nearest_candidate(inst, 0.2, 0.5), std::invalid_argument);
}

TEST_CASE("left_median examples", "[core]") {
  const Instance tight = max_cost_tight();
  const AgentIndex m = left_median(tight, IndexSet{3, 4, 5});
  CHECK(tight.agent(m).x == 3.0 + kEps);
  CHECK(m == 4);

  const Instance lone({0.0, 1.0}, {{7.0, true, false}});
  CHECK(left_median(lone, IndexSet{0}) == 0);

  const Instance pair({0.0, 1.0}, {{10.0, true, false}, {0.0, true, false}});
  CHECK(left_median(pair, IndexSet{0, 1}) == 1);

  CHECK_THROWS_AS(left_median(pair, IndexSet{}), std::invalid_argument);
  CHECK_THROWS_AS(left_median(pair, IndexSet{2}), std::out_of_range);
}

TEST_CASE("left_median breaks position ties by index", "[core]") {
  const Instance inst({0.0, 1.0}, {{2.0, true, false}, {2.0, true, false}, {2.0, true, false}, {2.0, true, false}});
  CHECK(left_median(inst, IndexSet{3, 2, 1, 0}) == 1);
  CHECK(leftmost_agent(inst, IndexSet{3, 2}) == 2);
}

TEST_CASE("agent_set_view examples", "[core]") {
  const AgentSetView one = agent_set_view(Instance({0.0, 1.0}, {{0.0, true, true}}));
  CHECK(one.both == IndexSet{0});
  CHECK(one.only1.empty());
  CHECK(one.only2.empty());
  CHECK(one.n1 == IndexSet{0});
  CHECK(one.n2 == IndexSet{0});

  const AgentSetView tight = agent_set_view(max_cost_tight());
  CHECK(tight.only1.size() == 3);
  CHECK(tight.only2.size() == 3);
  CHECK(tight.both.empty());
}

TEST_CASE("core invariants on random instances", "[core][property]") {
  std::mt19937_64 rng(20261018);
  for (int trial = 0; trial < 2000; ++trial) {
    const Instance inst = trial % 2 == 0 ? testing::random_grid_instance(rng, 10, 6)
                                         : testing::random_real_instance(rng, 10, 6);
    const auto c = inst.candidates();
    const std::size_t n = inst.num_agents();

    // Partition law, as exact set equality.
    const AgentSetView view = agent_set_view(inst);
    CHECK(view.only1.size() + view.only2.size() + view.both.size() == n);
    IndexSet n1;
    std::set_union(view.only1.begin(), view.only1.end(), view.both.begin(), view.both.end(),
                   std::back_inserter(n1));
    CHECK(n1 == view.n1);
    IndexSet n2;
    std::set_union(view.only2.begin(), view.only2.end(), view.both.begin(), view.both.end(),
                   std::back_inserter(n2));
    CHECK(n2 == view.n2);
    IndexSet overlap;
    std::set_intersection(view.only1.begin(), view.only1.end(), view.both.begin(), view.both.end(),
                          std::back_inserter(overlap));
    CHECK(overlap.empty());

    std::uniform_int_distribution<std::size_t> pick(0, c.size() - 1);
    std::size_t a = pick(rng);
    std::size_t b = pick(rng);
    if (a == b) b = (a + 1) % c.size();
    const Solution s{c[a], c[b]};
    const double sc = social_cost(inst, s);
    const double mc = max_cost(inst, s);
    CHECK(mc >= 0.0);
    CHECK(sc >= mc);
    CHECK(sc <= static_cast<double>(n) * mc + 1e-9);

    for (AgentIndex i = 0; i < n; ++i) {
      const Agent& ag = inst.agent(i);
      CHECK(agent_cost(inst, i, s) == testing::reference_cost(ag, s.y1, s.y2));
      const double only_first = distance(ag.x, s.y1);
      const double only_second = distance(ag.x, s.y2);
      if (ag.approves_both()) CHECK(agent_cost(inst, i, s) == std::max(only_first, only_second));
    }

    for (Coord cand : c) CHECK(nearest_candidate(c, cand) == cand);

    std::uniform_real_distribution<double> point(-15.0, 15.0);
    const double p = point(rng);
    const Coord excluded = c[pick(rng)];
    CHECK(nearest_candidate(c, p, excluded) != excluded);
    // Nearest is truly nearest, leftmost among equals.
    const Coord t = nearest_candidate(c, p);
    for (Coord cand : c) {
      CHECK(distance(t, p) <= distance(cand, p));
      if (distance(cand, p) == distance(t, p)) CHECK(t <= cand);
    }

    // Left median is invariant under permuting the index set.
    IndexSet all(n);
    std::iota(all.begin(), all.end(), AgentIndex{0});
    const AgentIndex m = left_median(inst, all);
    std::shuffle(all.begin(), all.end(), rng);
    CHECK(left_median(inst, all) == m);
    // ... and splits the set: at most (k-1)/2 agents precede it.
    std::size_t before = 0;
    for (AgentIndex i = 0; i < n; ++i) {
      const Coord xi = inst.agent(i).x;
      const Coord xm = inst.agent(m).x;
      if (xi < xm || (xi == xm && i < m)) ++before;
    }
    CHECK(before == (n - 1) / 2);
  }
}

TEST_CASE("objective parsing", "[core]") {
  CHECK(parse_objective("sc") == Objective::kSocialCost);
  CHECK(parse_objective("MC") == Objective::kMaxCost);
  CHECK_THROWS_AS(parse_objective("sum"), std::invalid_argument);
}

}  // namespace
}  // namespace cmfl
