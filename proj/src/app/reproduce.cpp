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

#include "epikg/app/reproduce.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "epikg/bench/checkpoint.hpp"
#include "epikg/bench/runner.hpp"
#include "epikg/core/errors.hpp"
#include "epikg/core/text.hpp"
#include "epikg/epistemics/information.hpp"
#include "epikg/stats/intervals.hpp"
#include "epikg/stats/multiplicity.hpp"
#include "epikg/stats/paired.hpp"
#include "epikg/stats/regression.hpp"

namespace epikg::app {
namespace {

namespace fs = std::filesystem;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw DataError("cannot open " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[200];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

Check within(std::string name, double value, double expected, double tol) {
  return {std::move(name), std::abs(value - expected) <= tol,
          fmt("got %.6g, expected %.6g +/- %.3g", value, expected, tol)};
}

}  // namespace

bool ReproduceResult::ok() const {
  for (const auto& c : checks) {
    if (!c.passed) return false;
  }
  return true;
}

const std::vector<bench::Comparison>& fixture_comparisons() {
  static const std::vector<bench::Comparison> kComparisons = {
      {"C1", "C4g_kw"},  {"C1", "C4g_oracle"}, {"C2b", "C4g_kw"}, {"C3", "C4"},
      {"C4", "C4g_kw"},  {"C6", "C4g_oracle"}, {"C1b", "C4gPlus"}, {"C2", "C2b"},
  };
  return kComparisons;
}

std::vector<Check> published_statistic_checks() {
  std::vector<Check> out;
  out.push_back(within("mcnemar_exact(4,15)", stats::mcnemar_exact(4, 15), 0.0192, 1e-4));
  out.push_back(within("mcnemar_chi2(18,204)", stats::mcnemar_chi2(18, 204).statistic, 155.8, 0.1));
  out.push_back(within("mcnemar_chi2(30,143)", stats::mcnemar_chi2(30, 143).statistic, 73.8, 0.1));
  out.push_back(within("mcnemar_chi2(20,93)", stats::mcnemar_chi2(20, 93).statistic, 47.2, 0.1));
  const auto nc = stats::newcombe_paired_ci({8, 4, 15, 23});
  out.push_back(within("newcombe delta (8,4,15,23)", 100 * nc.delta, 22.0, 0.05));
  out.push_back(within("newcombe lower (8,4,15,23)", 100 * nc.ci.lower, 5.1, 0.3));
  out.push_back(within("newcombe upper (8,4,15,23)", 100 * nc.ci.upper, 31.5, 0.3));
  const auto w = stats::wilson_ci(169, 189);
  out.push_back(within("wilson lower (169,189)", 100 * w.lower, 84.2, 0.1));
  out.push_back(within("wilson upper (169,189)", 100 * w.upper, 93.0, 0.1));
  out.push_back(within("by_factor(6)", stats::by_factor(6), 2.45, 0.005));
  const auto reg = stats::linear_regression({22.93, 21.82, 27.90, 36.74, 35.91, 39.50},
                                            {43.1, 37.6, 27.9, 24.3, 20.4, 21.3});
  out.push_back(within("regression slope", reg.slope, -1.123, 0.01));
  out.push_back(within("regression r", reg.r, -0.921, 0.005));
  out.push_back(within("regression p", reg.p_value, 0.009, 0.002));
  const double sign = stats::sign_test(64, 10);
  out.push_back({"sign_test(64,10) < 1e-4", sign < 1e-4, fmt("got %.3g", sign)});
  out.push_back(within("faithfulness_bound(0.157)", epistemics::faithfulness_bound(0.157), 0.843, 1e-12));
  return out;
}

std::vector<std::string> line_diff(const std::string& expected, const std::string& actual, std::size_t max_lines) {
  const auto a = text::split_lines(expected);
  const auto b = text::split_lines(actual);
  std::vector<std::string> out;
  for (std::size_t i = 0; i < std::max(a.size(), b.size()) && out.size() < max_lines; ++i) {
    const std::string l = i < a.size() ? a[i] : "<missing>";
    const std::string r = i < b.size() ? b[i] : "<missing>";
    if (l != r) out.push_back("line " + std::to_string(i + 1) + ": -" + l + " / +" + r);
  }
  return out;
}

ReproduceResult reproduce(const ReproduceOptions& opts) {
  ReproduceResult res;
  CliConfig cfg = opts.cfg;
  cfg.runs = opts.out / "runs";
  check_inputs(cfg, true);
  if (!fs::exists(cfg.replay)) throw ConfigError("replay corpus does not exist: " + cfg.replay.string());

  Workspace ws = load_workspace(cfg);
  res.checks.push_back({"corpus parses", ws.corpus_errors.empty(), text::join(ws.corpus_errors, "; ")});

  const IngestResult ing = ingest(ws.corpus, ws.lexicon, ws.inventory, ws.edge_types, ws.node_types);
  write_graphs(ing, opts.out / "graphs");
  std::size_t violations = 0, mentions = 0, non_present = 0;
  for (const auto& p : ing.patients) {
    violations += p.violations.size();
    mentions += p.mentions;
    non_present += p.non_present;
  }
  res.checks.push_back({"epistemic state preserved in every edge", violations == 0,
                        std::to_string(violations) + " violations over " + std::to_string(mentions) + " mentions"});

  const auto gold = load_gold(cfg);
  if (!opts.questions_v2.empty()) {
    std::string v2;
    for (const auto& q : gold) v2 += bench::to_jsonl(q);
    const bool same = fs::exists(opts.questions_v2) && slurp(opts.questions_v2) == v2;
    res.checks.push_back({"v1 + corrections reproduces the shipped v2 gold", same, opts.questions_v2.string()});
  }
  const auto endpoint = endpoint_questions(cfg, gold);

  auto replay = bench::ReplayBackend::load(cfg.replay, kReplayModel);
  const bench::FixedClock clock(Timestamp::parse(kFixtureTimestamp));
  std::vector<std::string> names;
  std::size_t failures = 0;
  for (const auto& c : bench::all_conditions()) {
    bench::RunOptions ro;
    ro.checkpoint = bench::checkpoint_path(cfg.runs, kReplayModel, c);
    ro.jobs = cfg.jobs;
    ro.model = kReplayModel;
    ro.clock = &clock;
    const auto summary = bench::run_condition(c, gold, make_context(ws, c), *replay, ro);
    failures += summary.failures.size();
    names.push_back(c.name);
  }
  res.checks.push_back({"every question answered under every condition", failures == 0,
                        std::to_string(failures) + " failed items"});

  bench::ReportOptions ro;
  ro.bootstrap.resamples = cfg.resamples;
  ro.bootstrap.seed = cfg.seed;
  ro.bootstrap.jobs = cfg.jobs;
  ro.evaluator = cfg.evaluator;
  ro.gold_version = cfg.gold_version;

  bench::ReportInput in;
  in.runs = score_runs(cfg, ws, endpoint.kept, kReplayModel, names);
  in.comparisons = fixture_comparisons();
  in.questions = endpoint.kept.size();
  in.excluded_change = endpoint.removed_change;
  in.excluded_listed = endpoint.removed_listed;
  if (!opts.judgements.empty()) {
    const auto judgements = load_judgements(opts.judgements);
    in.leave_rater_out.push_back(bench::leave_rater_out(judgements, "R1", {"C1", "C4g_kw"}));
  }
  if (!opts.cross_model.empty()) in.cross_model = load_cross_model(opts.cross_model);
  res.report = bench::render_report(in, ro);

  fs::create_directories(opts.out);
  std::ofstream(opts.out / "report.json", std::ios::binary) << res.report;

  for (const auto& r : bench::compare_runs(in.runs, {{"C1", "C4g_kw"}}, ro)) {
    res.checks.push_back({"C4g_kw over C1 paired delta is positive", r.newcombe.delta > 0,
                          fmt("delta %.4f", r.newcombe.delta)});
  }

  if (opts.update_golden) {
    std::ofstream(opts.golden, std::ios::binary) << res.report;
    res.checks.push_back({"golden report written", true, opts.golden.string()});
  } else {
    const std::string expected = fs::exists(opts.golden) ? slurp(opts.golden) : std::string();
    const bool same = expected == res.report;
    res.checks.push_back({"report matches golden byte-for-byte", same,
                          same ? opts.golden.string() : text::join(line_diff(expected, res.report), "\n")});
  }

  for (auto& c : published_statistic_checks()) res.checks.push_back(std::move(c));
  return res;
}

}  // namespace epikg::app
