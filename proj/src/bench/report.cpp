// Copyright 2026 The EpiKG Authors.
//
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

#include "epikg/bench/report.hpp"

#include <cmath>
#include <map>
#include <set>

#include <json.hpp>

#include "epikg/core/errors.hpp"
#include "epikg/stats/intervals.hpp"
#include "epikg/stats/multiplicity.hpp"

namespace epikg::bench {
namespace {

using nlohmann::ordered_json;

const RunInput& find_run(const std::vector<RunInput>& runs, const std::string& condition) {
  for (const auto& r : runs) {
    if (r.run.condition == condition) return r;
  }
  throw DataError("no scored run for condition " + condition);
}

ordered_json table_json(const stats::PairedTable& t) {
  return {{"a", t.a}, {"b", t.b}, {"c", t.c}, {"d", t.d}};
}

ordered_json interval_json(const stats::PairedDifference& d) {
  return {{"delta", round6(d.delta)}, {"lower", round6(d.ci.lower)}, {"upper", round6(d.ci.upper)}};
}

}  // namespace

double round6(double v) {
  const double r = std::round(v * 1e6) / 1e6;
  return r == 0.0 ? 0.0 : r;  // no "-0.0" in the output
}

std::vector<ComparisonResult> compare_runs(const std::vector<RunInput>& runs,
                                           const std::vector<Comparison>& comparisons,
                                           const ReportOptions& opts) {
  std::vector<ComparisonResult> out;
  for (const auto& cmp : comparisons) {
    const ScoredRun& a = find_run(runs, cmp.first).run;
    const ScoredRun& b = find_run(runs, cmp.second).run;
    ComparisonResult r;
    r.comparison = cmp;
    r.table = paired_table(a, b);
    r.mcnemar_exact_p = stats::mcnemar_exact(r.table.b, r.table.c);
    if (r.table.b + r.table.c > 0) r.chi2 = stats::mcnemar_chi2(r.table.b, r.table.c);
    r.newcombe = stats::newcombe_paired_ci(r.table, opts.bootstrap.level);

    std::vector<double> diff;
    std::vector<std::string> clusters;
    for (const auto& item : a.items) {
      const ScoredItem* other = b.find(item.qid);
      diff.push_back((other->correct ? 1.0 : 0.0) - (item.correct ? 1.0 : 0.0));
      clusters.push_back(item.patient_id);
    }
    r.bootstrap = stats::bca_bootstrap(
        diff.size(),
        [&](const std::vector<std::size_t>& idx) {
          if (idx.empty()) return std::nan("");
          double s = 0.0;
          for (std::size_t i : idx) s += diff[i];
          return s / static_cast<double>(idx.size());
        },
        opts.bootstrap, &clusters);
    out.push_back(std::move(r));
  }
  std::vector<double> ps;
  for (const auto& r : out) ps.push_back(r.mcnemar_exact_p);
  const auto bh = stats::bh_fdr(ps);
  const auto by = stats::by_fdr(ps);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i].q_bh = bh[i];
    out[i].q_by = by[i];
  }
  return out;
}

LeaveRaterOut leave_rater_out(const std::vector<RaterJudgement>& judgements, const std::string& excluded_rater,
                              const Comparison& comparison) {
  LeaveRaterOut out;
  out.excluded_rater = excluded_rater;
  out.comparison = comparison;
  std::set<std::string> raters;
  // item -> condition -> rater -> judgement
  std::map<std::string, std::map<std::string, std::map<std::string, bool>>> grid;
  for (const auto& j : judgements) {
    if (j.rater_id == excluded_rater) continue;
    raters.insert(j.rater_id);
    grid[j.item_id][j.condition][j.rater_id] = j.strict_correct;
  }
  if (raters.empty()) throw DataError("no ratings left after excluding rater " + excluded_rater);
  auto unanimous = [&](const std::map<std::string, bool>& by_rater, bool* value) {
    if (by_rater.size() != raters.size()) return false;
    *value = by_rater.begin()->second;
    for (const auto& [r, v] : by_rater) {
      if (v != *value) return false;
    }
    return true;
  };
  for (const auto& [item, by_condition] : grid) {
    auto fa = by_condition.find(comparison.first);
    auto fb = by_condition.find(comparison.second);
    if (fa == by_condition.end() || fb == by_condition.end()) continue;
    ++out.items_considered;
    bool va = false, vb = false;
    if (!unanimous(fa->second, &va) || !unanimous(fb->second, &vb)) continue;
    ++out.items_unanimous;
    if (va && vb) ++out.table.a;
    else if (va) ++out.table.b;
    else if (vb) ++out.table.c;
    else ++out.table.d;
  }
  out.mcnemar_exact_p = stats::mcnemar_exact(out.table.b, out.table.c);
  if (out.table.n() > 0) out.newcombe = stats::newcombe_paired_ci(out.table);
  return out;
}

std::string render_report(const ReportInput& input, const ReportOptions& opts) {
  ordered_json doc;
  doc["schema_version"] = 1;
  doc["evaluator"] = opts.evaluator;
  doc["gold_version"] = opts.gold_version;
  doc["bootstrap"] = {{"method", "BCa"},
                      {"resamples", opts.bootstrap.resamples},
                      {"seed", opts.bootstrap.seed},
                      {"level", round6(opts.bootstrap.level)},
                      {"cluster", "patient"}};
  doc["questions"] = {{"scored", input.questions},
                      {"excluded_change", input.excluded_change},
                      {"excluded_listed", input.excluded_listed}};

  ordered_json conditions = ordered_json::array();
  for (const auto& r : input.runs) {
    const Tally t = r.run.overall();
    const auto w = stats::wilson_ci(static_cast<std::int64_t>(t.correct),
                                    static_cast<std::int64_t>(std::max<std::size_t>(t.total, 1)));
    ordered_json c;
    c["condition"] = r.run.condition;
    c["model"] = r.run.model;
    c["n"] = t.total;
    c["correct"] = t.correct;
    c["accuracy"] = round6(t.accuracy());
    c["wilson"] = {round6(w.lower), round6(w.upper)};
    std::size_t abstained = 0, errored = 0;
    for (const auto& i : r.run.items) {
      abstained += i.abstention ? 1 : 0;
      errored += i.errored ? 1 : 0;
    }
    c["abstentions"] = abstained;
    c["errors"] = errored;
    ordered_json cats = ordered_json::object();
    for (const auto& [cat, tally] : r.run.by_category()) {
      cats[cat] = {{"n", tally.total}, {"correct", tally.correct}, {"accuracy", round6(tally.accuracy())}};
    }
    c["by_category"] = std::move(cats);
    conditions.push_back(std::move(c));
  }
  doc["conditions"] = std::move(conditions);

  ordered_json comparisons = ordered_json::array();
  for (const auto& r : compare_runs(input.runs, input.comparisons, opts)) {
    ordered_json c;
    c["name"] = r.comparison.name();
    c["first"] = r.comparison.first;
    c["second"] = r.comparison.second;
    c["table"] = table_json(r.table);
    c["mcnemar_exact_p"] = round6(r.mcnemar_exact_p);
    if (r.chi2) {
      c["mcnemar_chi2"] = {{"statistic", round6(r.chi2->statistic)}, {"p", round6(r.chi2->p_value)}};
    } else {
      c["mcnemar_chi2"] = nullptr;
    }
    c["newcombe"] = interval_json(r.newcombe);
    c["bootstrap"] = {{"point", round6(r.bootstrap.point)},
                      {"lower", round6(r.bootstrap.ci.lower)},
                      {"upper", round6(r.bootstrap.ci.upper)},
                      {"z0", round6(r.bootstrap.z0)},
                      {"acceleration", round6(r.bootstrap.acceleration)},
                      {"skipped", r.bootstrap.skipped}};
    c["q_bh"] = round6(r.q_bh);
    c["q_by"] = round6(r.q_by);
    comparisons.push_back(std::move(c));
  }
  doc["comparisons"] = std::move(comparisons);

  if (!input.leave_rater_out.empty()) {
    ordered_json rows = ordered_json::array();
    for (const auto& l : input.leave_rater_out) {
      rows.push_back({{"excluded_rater", l.excluded_rater},
                      {"name", l.comparison.name()},
                      {"items_considered", l.items_considered},
                      {"items_unanimous", l.items_unanimous},
                      {"table", table_json(l.table)},
                      {"mcnemar_exact_p", round6(l.mcnemar_exact_p)},
                      {"newcombe", interval_json(l.newcombe)}});
    }
    doc["leave_rater_out"] = std::move(rows);
  }

  if (input.cross_model.size() >= 3) {
    std::vector<double> x, y;
    ordered_json points = ordered_json::array();
    for (const auto& p : input.cross_model) {
      x.push_back(p.baseline_pct);
      y.push_back(p.delta_pct);
      points.push_back({{"model", p.model}, {"baseline_pct", round6(p.baseline_pct)}, {"delta_pct", round6(p.delta_pct)}});
    }
    const auto reg = stats::linear_regression(x, y);
    doc["cross_model"] = {{"points", std::move(points)},
                          {"slope", round6(reg.slope)},
                          {"intercept", round6(reg.intercept)},
                          {"r", round6(reg.r)},
                          {"p", round6(reg.p_value)}};
  }

  ordered_json prov = ordered_json::array();
  for (const auto& r : input.runs) {
    prov.push_back({{"file", r.checkpoint}, {"sha256", r.sha256}, {"records", r.records}});
  }
  doc["provenance"] = std::move(prov);
  return doc.dump(2) + "\n";
}

}  // namespace epikg::bench
