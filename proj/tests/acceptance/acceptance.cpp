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

// Acceptance checks: one PASS/FAIL line per criterion, exit status 1 when any
// criterion fails. Tolerances are pinned next to each check.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "epikg/app/commands.hpp"
#include "epikg/app/reproduce.hpp"
#include "epikg/bench/backend.hpp"
#include "epikg/bench/checkpoint.hpp"
#include "epikg/bench/context.hpp"
#include "epikg/bench/question.hpp"
#include "epikg/bench/runner.hpp"
#include "epikg/core/digest.hpp"
#include "epikg/epistemics/information.hpp"
#include "epikg/evaluator/evaluator.hpp"
#include "epikg/kgraph/allen.hpp"
#include "epikg/stats/bootstrap.hpp"
#include "epikg/stats/intervals.hpp"
#include "epikg/stats/multiplicity.hpp"
#include "epikg/stats/paired.hpp"
#include "epikg/stats/regression.hpp"
#include "support/fixtures.hpp"

using namespace epikg;

namespace {

int failures = 0;

std::string fmt(const char* f, double a = 0, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

void report(const std::string& name, const std::function<bool(std::string&)>& check) {
  std::string detail;
  bool ok = false;
  try {
    ok = check(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  if (!ok) ++failures;
  std::printf("%s  %s  (%s)\n", ok ? "PASS" : "FAIL", name.c_str(), detail.c_str());
  std::fflush(stdout);
}

bool near(double v, double expected, double tol) { return std::abs(v - expected) <= tol; }

const std::vector<double> kBcaFixture = {0.13, 0.27, 0.31, 0.44, 0.58, 0.92, 1.37, 2.05, 3.61, 5.89};

double mean(const std::vector<double>& xs) {
  double s = 0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

}  // namespace

int main() {
  report("exact McNemar (4,15) = 0.0192 +/- 0.0001, < 1 ms", [](std::string& d) {
    const auto t0 = std::chrono::steady_clock::now();
    const double p = stats::mcnemar_exact(4, 15);
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    d = fmt("p=%.6f, %.3f ms", p, ms);
    return near(p, 0.0192, 1e-4) && ms < 1.0;
  });

  report("chi-square McNemar (18,204) 155.8, (30,143) 73.8, (20,93) 47.2, each +/- 0.1", [](std::string& d) {
    const double a = stats::mcnemar_chi2(18, 204).statistic;
    const double b = stats::mcnemar_chi2(30, 143).statistic;
    const double c = stats::mcnemar_chi2(20, 93).statistic;
    d = fmt("%.3f, %.3f, %.3f", a, b, c);
    return near(a, 155.8, 0.1) && near(b, 73.8, 0.1) && near(c, 47.2, 0.1);
  });

  report("Newcombe paired CI (8,4,15,23): delta +22.0 pp, CI [+5.1, +31.5] +/- 0.3 pp", [](std::string& d) {
    const auto r = stats::newcombe_paired_ci({8, 4, 15, 23});
    d = fmt("delta %.2f pp [%.2f, %.2f]", 100 * r.delta, 100 * r.ci.lower, 100 * r.ci.upper);
    return near(100 * r.delta, 22.0, 0.05) && near(100 * r.ci.lower, 5.1, 0.3) && near(100 * r.ci.upper, 31.5, 0.3);
  });

  report("Wilson CI (169,189) = [84.2%, 93.0%] +/- 0.1 pp", [](std::string& d) {
    const auto w = stats::wilson_ci(169, 189);
    d = fmt("[%.3f, %.3f]", 100 * w.lower, 100 * w.upper);
    return near(100 * w.lower, 84.2, 0.1) && near(100 * w.upper, 93.0, 0.1);
  });

  report("BY factor m=6 = 2.45 +/- 0.005; BH q-values monotone", [](std::string& d) {
    const double f = stats::by_factor(6);
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0, 1);
    bool monotone = true;
    for (int t = 0; t < 500 && monotone; ++t) {
      std::vector<double> p(1 + rng() % 40);
      for (auto& x : p) x = u(rng);
      const auto q = stats::bh_fdr(p);
      for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = 0; j < p.size(); ++j)
          if (p[i] < p[j] && q[i] > q[j]) monotone = false;
    }
    d = fmt("factor %.4f, 500 random p-vectors", f) + (monotone ? ", monotone" : ", NOT monotone");
    return near(f, 2.45, 0.005) && monotone;
  });

  report("regression over six models: slope -1.123 +/- 0.01, r -0.921 +/- 0.005, p 0.009 +/- 0.002",
         [](std::string& d) {
           const auto r = stats::linear_regression({22.93, 21.82, 27.90, 36.74, 35.91, 39.50},
                                                   {43.1, 37.6, 27.9, 24.3, 20.4, 21.3});
           d = fmt("slope %.4f, r %.4f, p %.4f", r.slope, r.r, r.p_value);
           return near(r.slope, -1.123, 0.01) && near(r.r, -0.921, 0.005) && near(r.p_value, 0.009, 0.002);
         });

  report("sign test (64,10) p < 1e-4", [](std::string& d) {
    const double p = stats::sign_test(64, 10);
    d = fmt("p=%.3g", p);
    return p < 1e-4;
  });

  report("faithfulness bound 0.157 -> 0.843 exactly; fixture non-present fraction = hand count 30/75",
         [](std::string& d) {
           const double bound = epistemics::faithfulness_bound(0.157);
           const auto cfg = app::default_config(testing::data_dir(), testing::scratch_dir("acc-np"));
           const auto ws = app::load_workspace(cfg);
           const auto r = app::ingest(ws.corpus, ws.lexicon, ws.inventory, ws.edge_types, ws.node_types);
           std::size_t np = 0, total = 0;
           for (const auto& p : r.patients) np += p.non_present, total += p.mentions;
           const double f = epistemics::non_present_fraction(np, total);
           d = fmt("bound %.17g, fixture %.0f/%.0f", bound, double(np), double(total));
           return bound == 1.0 - 0.157 && near(bound, 0.843, 1e-15) && np == 30 && total == 75 && f == 0.4;
         });

  report("Allen: 13 canonical configurations map to the 9-value table; no out-of-set value", [](std::string& d) {
    const std::set<kgraph::AllenRelation> allowed(std::begin(kgraph::kAllAllenRelations),
                                                  std::end(kgraph::kAllAllenRelations));
    std::size_t ok = 0;
    for (const auto& c : testing::allen_cases()) {
      ok += kgraph::allen_base(c.as, c.ae, c.bs, c.be) == c.base &&
            kgraph::allen_relation({c.as, c.ae}, {c.bs, c.be}) == c.merged;
    }
    bool in_set = true;
    for (long long as = 0; as < 7; ++as)
      for (long long ae = as; ae < 7; ++ae)
        for (long long bs = 0; bs < 7; ++bs)
          for (long long be = bs; be < 7; ++be)
            in_set = in_set && allowed.count(kgraph::allen_relation({as, ae}, {bs, be}));
    in_set = in_set && kgraph::allen_relation({0, 1}, {2, std::nullopt}) == kgraph::AllenRelation::Unknown;
    d = fmt("%.0f/13 canonical, exhaustive 0..6 grid", double(ok)) + (in_set ? " in set" : " OUT OF SET");
    return ok == 13 && in_set;
  });

  report("evaluator artifacts under v2: NOT FOUND / no-edges correct, insufficient evidence incorrect",
         [](std::string& d) {
           const auto cfg = evaluator::KeywordConfig::load(testing::data_dir() / "evaluator/keywords.json");
           const auto v2 = evaluator::EvaluatorVersion::V2;
           const bool a = evaluator::evaluate("current_state", "Metoprolol is active.", "NOT FOUND IN CURRENT RECORDS",
                                              v2, cfg)
                              .correct;
           const bool b = evaluator::evaluate("negation", "Pneumonia confirmed.", bench::kNoEdgesAnswer, v2, cfg).correct;
           const bool c =
               evaluator::evaluate("negation", "No chest pain.", "There is insufficient evidence.", v2, cfg).correct;
           d = std::string("current_state ") + (a ? "correct" : "incorrect") + ", negation " +
               (b ? "correct" : "incorrect") + ", abstention " + (c ? "correct" : "incorrect");
           return a && b && !c;
         });

  report("change routing equals brute-force set differences on 1,000 random two-admission graphs",
         [](std::string& d) {
           std::mt19937_64 rng(424242);
           std::size_t agree = 0, two = 0;
           std::string why;
           for (int i = 0; i < 1000; ++i) {
             const auto c = testing::random_change_case(rng);
             two += c.admission_order.size() == 2;
             if (testing::change_matches_oracle(c, &why)) ++agree;
           }
           d = fmt("%.0f/1000 agree, %.0f with both admissions populated", double(agree), double(two));
           return agree == 1000;
         });

  report("BCa: seed-42 bit-identical across runs and jobs; 10-point oracle to 1e-9; constant data degenerate",
         [](std::string& d) {
           const auto a = stats::bca_bootstrap(kBcaFixture, mean);
           const auto b = stats::bca_bootstrap(kBcaFixture, mean);
           stats::BootstrapOptions four;
           four.jobs = 4;
           const auto c = stats::bca_bootstrap(kBcaFixture, mean, four);
           const bool same = a.ci.lower == b.ci.lower && a.ci.upper == b.ci.upper && a.ci.lower == c.ci.lower &&
                             a.ci.upper == c.ci.upper;
           const bool oracle = near(a.ci.lower, 0.7560972418135443, 1e-9) && near(a.ci.upper, 3.187597617366986, 1e-9) &&
                               near(a.z0, 0.06521853970954372, 1e-9) && near(a.acceleration, 0.0773247382908695, 1e-9);
           const auto k = stats::bca_bootstrap(std::vector<double>(10, 2.0), mean);
           const bool degenerate = k.ci.lower == 2.0 && k.ci.upper == 2.0;
           d = fmt("[%.12f, %.12f]", a.ci.lower, a.ci.upper) + (same ? " identical" : " DIFFERS") +
               (degenerate ? ", constant degenerate" : ", constant NOT degenerate");
           return same && oracle && degenerate;
         });

  report("reproduce: fixture < 60 s, golden byte match, C4g_kw over C1 delta positive", [](std::string& d) {
    const auto data = testing::data_dir();
    const auto out = testing::scratch_dir("acc-repro");
    app::ReproduceOptions o;
    o.cfg = app::default_config(data, out);
    o.out = out;
    o.golden = data / "fixture/golden_report.json";
    o.questions_v2 = data / "fixture/questions_v2.jsonl";
    o.judgements = data / "fixture/adjudication/judgements.jsonl";
    o.cross_model = data / "published/cross_model.json";
    const auto t0 = std::chrono::steady_clock::now();
    const auto r = app::reproduce(o);
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::string failed;
    bool golden = false, delta = false;
    for (const auto& c : r.checks) {
      if (!c.passed) failed += " [" + c.name + "]";
      if (c.name == "report matches golden byte-for-byte") golden = c.passed;
      if (c.name == "C4g_kw over C1 paired delta is positive") delta = c.passed, d = c.detail;
    }
    d += fmt(", %.2f s", s) + (failed.empty() ? ", all checks pass" : ", failed:" + failed);
    return r.ok() && golden && delta && s < 60.0;
  });

  report("no truncation: a 600-character replay answer is stored at 600 characters", [](std::string& d) {
    const auto dir = testing::scratch_dir("acc-long");
    std::string answer;
    for (int i = 0; answer.size() < 600; ++i) answer += "word" + std::to_string(i) + " ";
    answer.resize(600);
    bench::Question q;
    q.qid = "q1";
    q.task = "A";
    q.category = "negation";
    q.patient_id = "P1";
    q.question = "Does the patient have cough?";
    q.expected_answer = "No.";
    bench::ReplayBackend backend({{sha256_hex("the prompt"), answer}}, "replay");
    bench::RunOptions ro;
    ro.checkpoint = dir / "run.jsonl";
    const auto ctx = [](const bench::Question&) {
      bench::BuiltContext c;
      c.prompt = "the prompt";
      return c;
    };
    bench::run_condition(bench::condition(bench::ConditionId::C1), {q}, ctx, backend, ro);
    const auto preds = bench::read_checkpoint(ro.checkpoint);
    const std::size_t n = preds.empty() ? 0 : preds[0].predicted_answer.size();
    d = fmt("stored %.0f characters", double(n));
    return n == 600 && preds[0].predicted_answer == answer;
  });

  report("exclusion arithmetic: 400 questions, change + 8 listed -> 362, change only -> 370", [](std::string& d) {
    const auto dir = testing::scratch_dir("acc-excl");
    const auto listed = testing::write_question_fixture(dir / "q.jsonl", 400, 30, 8);
    const auto qs = bench::load_questions(dir / "q.jsonl");
    testing::write_file(dir / "x.json", [&] {
      std::string s = "{\"exclude_change\": true, \"qids\": [";
      for (std::size_t i = 0; i < listed.size(); ++i) s += (i ? ", \"" : "\"") + listed[i] + "\"";
      return s + "]}";
    }());
    const auto both = bench::apply_exclusions(qs, bench::load_exclusions(dir / "x.json"));
    const auto change = bench::apply_exclusions(qs, {{}, true});
    d = fmt("%.0f questions -> %.0f and %.0f", double(qs.size()), double(both.kept.size()), double(change.kept.size()));
    return qs.size() == 400 && both.kept.size() == 362 && change.kept.size() == 370;
  });

  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
