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

// Batch experiments: ratio records for every (instance, mechanism,
// objective), bound checks, strategyproofness audits, JSON/CSV reports.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "cmfl/core.hpp"
#include "cmfl/harness.hpp"
#include "cmfl/json_io.hpp"
#include "cmfl/mechanism.hpp"
#include "cmfl/oracle.hpp"

namespace cmfl {

inline constexpr double kBoundSlack = 1e-9;

/// Proven ratio bound for a mechanism, if one is known.
///
/// Conditional-Median: 11 for SC (7 when Case 1 fired) and 5 for MC. The
/// prior-work baselines: 2n + 1 for SC and 9 for MC.
inline std::optional<double> ratio_bound(std::string_view mechanism_id, Objective objective,
                                         std::size_t n_agents, CaseTag case_tag) {
  if (mechanism_id == "conditional-median") {
    if (objective == Objective::kMaxCost) return 5.0;
    return is_case1(case_tag) ? 7.0 : 11.0;
  }
  if (mechanism_id == "zhao-sc" && objective == Objective::kSocialCost) {
    return 2.0 * static_cast<double>(n_agents) + 1.0;
  }
  if (mechanism_id == "zhao-mc" && objective == Objective::kMaxCost) return 9.0;
  return std::nullopt;
}

// A named fixed instance from one of the tightness families.
struct TightInstanceSpec {
  std::string family;  // "sc" or "mc"
  int n = 12;
  double eps = 1e-3;
};

struct ExperimentConfig {
  GeneratorConfig generator;
  // Random instance k uses seed generator.seed + k.
  std::size_t instances = 0;
  std::vector<TightInstanceSpec> tight;
  std::vector<std::string> mechanisms{"conditional-median"};
  std::vector<Objective> objectives{Objective::kSocialCost, Objective::kMaxCost};
  bool audit_strategyproofness = true;
};

struct ExperimentRecord {
  std::string instance_id;
  std::string mechanism;
  CaseTag case_tag = CaseTag::kCase2;
  RatioRecord record;
};

struct SummaryRow {
  std::string mechanism;
  Objective objective = Objective::kSocialCost;
  std::size_t count = 0;
  double max_ratio = 0.0;
  double mean_ratio = 0.0;
};

struct ExperimentReport {
  std::vector<ExperimentRecord> records;
  std::vector<SummaryRow> summary;
  std::size_t audited_instances = 0;
  std::size_t deviations_found = 0;
  std::vector<std::string> failures;

  [[nodiscard]] bool ok() const { return failures.empty(); }
};

namespace detail {

inline IntRange int_range_from_json(const Json& j, const char* what) {
  if (!j.is_array() || j.size() != 2) {
    throw std::invalid_argument(std::string(what) + " must be [lo, hi]");
  }
  return {j.at(0).get<int>(), j.at(1).get<int>()};
}

inline std::string format_number(double v) {
  return std::isfinite(v) ? Json(v).dump() : std::string();
}

}  // namespace detail

/// Experiment config JSON. Every key is optional:
///
///   {"generator": {"n_agents": [1, 12], "n_candidates": [2, 8],
///                  "coordinate_range": [0, 10],
///                  "approval_mix": [p_only1, p_only2, p_both],
///                  "seed": 0, "grid_step": 0},
///    "instances": 500,
///    "tight": [{"family": "mc", "eps": 0.001},
///              {"family": "sc", "n": 120, "eps": 1e-9}],
///    "mechanisms": ["conditional-median", "zhao-sc", "zhao-mc"],
///    "objectives": ["sc", "mc"],
///    "audit_strategyproofness": true}
inline ExperimentConfig experiment_config_from_json(const Json& j) {
  if (!j.is_object()) throw std::invalid_argument("experiment config must be a JSON object");
  ExperimentConfig config;
  try {
    if (j.contains("generator")) {
      const Json& g = j.at("generator");
      GeneratorConfig& gen = config.generator;
      if (g.contains("n_agents")) gen.n_agents = detail::int_range_from_json(g.at("n_agents"), "n_agents");
      if (g.contains("n_candidates")) {
        gen.n_candidates = detail::int_range_from_json(g.at("n_candidates"), "n_candidates");
      }
      if (g.contains("coordinate_range")) {
        const Json& r = g.at("coordinate_range");
        if (!r.is_array() || r.size() != 2) throw std::invalid_argument("coordinate_range must be [lo, hi]");
        gen.coordinates = {r.at(0).get<double>(), r.at(1).get<double>()};
      }
      if (g.contains("approval_mix")) {
        const Json& m = g.at("approval_mix");
        if (!m.is_array() || m.size() != 3) {
          throw std::invalid_argument("approval_mix must be [p_only1, p_only2, p_both]");
        }
        gen.approval_mix = {m.at(0).get<double>(), m.at(1).get<double>(), m.at(2).get<double>()};
      }
      if (g.contains("seed")) gen.seed = g.at("seed").get<std::uint64_t>();
      if (g.contains("grid_step")) gen.grid_step = g.at("grid_step").get<double>();
      gen.validate();
    }
    if (j.contains("instances")) config.instances = j.at("instances").get<std::size_t>();
    if (j.contains("tight")) {
      for (const Json& t : j.at("tight")) {
        TightInstanceSpec spec;
        spec.family = t.at("family").get<std::string>();
        if (spec.family != "sc" && spec.family != "mc") {
          throw std::invalid_argument("tight family must be 'sc' or 'mc'");
        }
        if (t.contains("n")) spec.n = t.at("n").get<int>();
        if (t.contains("eps")) spec.eps = t.at("eps").get<double>();
        config.tight.push_back(spec);
      }
    }
    if (j.contains("mechanisms")) {
      config.mechanisms = j.at("mechanisms").get<std::vector<std::string>>();
      for (const auto& id : config.mechanisms) find_mechanism(id);
    }
    if (j.contains("objectives")) {
      config.objectives.clear();
      for (const Json& o : j.at("objectives")) config.objectives.push_back(parse_objective(o.get<std::string>()));
    }
    if (j.contains("audit_strategyproofness")) {
      config.audit_strategyproofness = j.at("audit_strategyproofness").get<bool>();
    }
  } catch (const Json::exception& e) {
    throw std::invalid_argument(std::string("bad experiment config: ") + e.what());
  }
  return config;
}

inline ExperimentConfig load_experiment_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::exception& e) {
    throw std::invalid_argument(std::string("malformed config JSON: ") + e.what());
  }
  return experiment_config_from_json(j);
}

struct NamedInstance {
  std::string id;
  Instance instance;
};

inline std::vector<NamedInstance> experiment_instances(const ExperimentConfig& config) {
  std::vector<NamedInstance> out;
  for (const TightInstanceSpec& t : config.tight) {
    std::ostringstream id;
    if (t.family == "mc") {
      id << "mc-tight-eps" << t.eps;
      out.push_back({id.str(), gen_mc_tight(t.eps)});
    } else {
      id << "sc-tight-n" << t.n << "-eps" << t.eps;
      out.push_back({id.str(), gen_sc_tight(t.n, t.eps)});
    }
  }
  for (std::size_t k = 0; k < config.instances; ++k) {
    GeneratorConfig gen = config.generator;
    gen.seed = config.generator.seed + k;
    out.push_back({"random-" + std::to_string(gen.seed), gen_random(gen)});
  }
  return out;
}

inline ExperimentReport run_experiment(const ExperimentConfig& config) {
  ExperimentReport report;
  std::vector<Mechanism> mechanisms;
  for (const auto& id : config.mechanisms) mechanisms.push_back(find_mechanism(id));

  for (const NamedInstance& item : experiment_instances(config)) {
    for (std::size_t m = 0; m < mechanisms.size(); ++m) {
      const std::string& mech_id = config.mechanisms[m];
      const MechanismOutcome outcome = mechanisms[m](item.instance);
      for (Objective objective : config.objectives) {
        ExperimentRecord rec{item.id, mech_id, outcome.case_tag,
                             ratio_record(item.instance, outcome.solution, objective)};
        const std::string where = item.id + " " + mech_id + " " + std::string(to_string(objective));
        if (rec.record.flag == RatioFlag::kViolation) {
          report.failures.push_back(where + ": positive cost where the optimum is zero");
        } else if (auto bound = ratio_bound(mech_id, objective, item.instance.num_agents(), outcome.case_tag);
                   bound && rec.record.ratio > *bound + kBoundSlack) {
          std::ostringstream msg;
          msg << where << ": ratio " << rec.record.ratio << " exceeds bound " << *bound;
          report.failures.push_back(msg.str());
        }
        report.records.push_back(std::move(rec));
      }
    }
    if (config.audit_strategyproofness) {
      const DeviationReport audit = verify_strategyproof(item.instance, conditional_median);
      ++report.audited_instances;
      report.deviations_found += audit.deviations.size();
      if (!audit.strategyproof()) {
        report.failures.push_back(item.id + ": conditional-median admits " +
                                  std::to_string(audit.deviations.size()) + " profitable misreport(s)");
      }
    }
  }

  for (const auto& mech_id : config.mechanisms) {
    for (Objective objective : config.objectives) {
      SummaryRow row{mech_id, objective, 0, 0.0, 0.0};
      std::size_t finite = 0;
      for (const ExperimentRecord& rec : report.records) {
        if (rec.mechanism != mech_id || rec.record.objective != objective) continue;
        ++row.count;
        row.max_ratio = std::max(row.max_ratio, rec.record.ratio);
        if (std::isfinite(rec.record.ratio)) {
          row.mean_ratio += rec.record.ratio;
          ++finite;
        }
      }
      if (finite > 0) row.mean_ratio /= static_cast<double>(finite);
      if (row.count > 0) report.summary.push_back(row);
    }
  }
  return report;
}

inline Json to_json(const ExperimentReport& report) {
  Json records = Json::array();
  for (const ExperimentRecord& rec : report.records) {
    Json j = to_json(rec.record);
    j["instance_id"] = rec.instance_id;
    j["mechanism"] = rec.mechanism;
    j["case_tag"] = to_string(rec.case_tag);
    records.push_back(std::move(j));
  }
  Json summary = Json::array();
  for (const SummaryRow& row : report.summary) {
    summary.push_back({{"mechanism", row.mechanism},
                       {"objective", to_string(row.objective)},
                       {"count", row.count},
                       {"max_ratio", detail::number_or_null(row.max_ratio)},
                       {"mean_ratio", row.mean_ratio}});
  }
  return {{"records", std::move(records)},
          {"summary", std::move(summary)},
          {"sp_audits", {{"instances", report.audited_instances}, {"deviations", report.deviations_found}}},
          {"failures", report.failures}};
}

inline std::string to_csv(const ExperimentReport& report) {
  std::ostringstream out;
  out << "instance_id,mechanism,objective,mech_cost,opt_cost,ratio,flag,case_tag\n";
  for (const ExperimentRecord& rec : report.records) {
    const RatioRecord& r = rec.record;
    out << rec.instance_id << ',' << rec.mechanism << ',' << to_string(r.objective) << ','
        << detail::format_number(r.mechanism_cost) << ',' << detail::format_number(r.optimal_cost)
        << ',' << detail::format_number(r.ratio) << ',' << to_string(r.flag) << ','
        << to_string(rec.case_tag) << '\n';
  }
  return out.str();
}

/// Writes report.json and ratios.csv into `dir`, creating it if needed.
inline void write_report(const ExperimentReport& report, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::ofstream json_out(dir / "report.json");
  std::ofstream csv_out(dir / "ratios.csv");
  if (!json_out || !csv_out) throw std::runtime_error("cannot write report files in " + dir.string());
  json_out << to_json(report).dump(2) << '\n';
  csv_out << to_csv(report);
  if (!json_out || !csv_out) throw std::runtime_error("failed writing report files in " + dir.string());
}

// One row of the tightness-family table.
struct PaperExampleRow {
  std::string name;
  Objective objective = Objective::kSocialCost;
  std::size_t n_agents = 0;
  MechanismOutcome outcome;
  RatioRecord record;
};

/// Conditional-Median on the max-cost tightness instance (eps = 1e-3) and
/// on the social-cost family for n = 12, 120, 1200 (eps = 1e-9).
inline std::vector<PaperExampleRow> paper_examples() {
  std::vector<PaperExampleRow> rows;
  auto add = [&](std::string name, const Instance& instance, Objective objective) {
    const MechanismOutcome outcome = conditional_median(instance);
    rows.push_back({std::move(name), objective, instance.num_agents(), outcome,
                    ratio_record(instance, outcome.solution, objective)});
  };
  add("mc-tight eps=1e-3", gen_mc_tight(1e-3), Objective::kMaxCost);
  for (int n : {12, 120, 1200}) {
    add("sc-tight n=" + std::to_string(n) + " eps=1e-9", gen_sc_tight(n, 1e-9), Objective::kSocialCost);
  }
  return rows;
}

}  // namespace cmfl
