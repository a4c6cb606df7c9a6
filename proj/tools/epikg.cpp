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

// epikg: operator entry point for ingest, benchmark runs, scoring,
// reporting, fixture reproduction and the adjudication service.

#include <csignal>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "epikg/adjudication/http_server.hpp"
#include "epikg/adjudication/service.hpp"
#include "epikg/app/commands.hpp"
#include "epikg/app/reproduce.hpp"
#include "epikg/bench/checkpoint.hpp"
#include "epikg/bench/http_backend.hpp"
#include "epikg/bench/reader_backend.hpp"
#include "epikg/core/errors.hpp"
#include "epikg/stats/paired.hpp"

namespace fs = std::filesystem;
using namespace epikg;
using nlohmann::ordered_json;

namespace {

struct Globals {
  std::string data = EPIKG_DEFAULT_DATA_DIR;
  std::string config;
  std::string out = "epikg-out";
  unsigned jobs = 1;
  std::uint64_t seed = 42;
  std::string evaluator;
  std::string gold;
  std::string exclusions;
  bool no_exclusions = false;
};

app::CliConfig make_config(const Globals& g) {
  app::CliConfig cfg = app::default_config(g.data, g.out);
  if (!g.config.empty()) app::apply_config_file(cfg, g.config);
  cfg.jobs = g.jobs;
  cfg.seed = g.seed;
  if (!g.evaluator.empty()) cfg.evaluator = g.evaluator;
  if (!g.gold.empty()) cfg.gold_version = g.gold;
  if (!g.exclusions.empty()) cfg.exclusions = g.exclusions;
  if (g.no_exclusions) cfg.exclusions.clear();
  return cfg;
}

void write_file(const fs::path& p, const std::string& content) {
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw DataError("cannot write " + p.string());
  out << content;
}

adjudication::AdjudicationServer* g_server = nullptr;
void on_signal(int) {
  if (g_server) g_server->stop();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App cli{"EpiKG: epistemic knowledge-graph retrieval and the ClinicalBench harness"};
  cli.require_subcommand(1);
  Globals g;
  cli.add_option("--data", g.data, "Data directory")->capture_default_str();
  cli.add_option("--config", g.config, "JSON configuration file overriding data paths");
  cli.add_option("--out", g.out, "Output directory for graphs, runs and reports")->capture_default_str();
  cli.add_option("--jobs", g.jobs, "Concurrent backend calls and bootstrap workers")->check(CLI::Range(1u, 256u));
  cli.add_option("--seed", g.seed, "Bootstrap seed")->capture_default_str();
  cli.add_option("--evaluator", g.evaluator, "Keyword evaluator version: v0, v1 or v2");
  cli.add_option("--gold", g.gold, "Gold version: v1 or v2");
  cli.add_option("--exclusions", g.exclusions, "Exclusion list JSON");
  cli.add_flag("--no-exclusions", g.no_exclusions, "Score the full question set");

  // ingest
  auto* ingest = cli.add_subcommand("ingest", "Extract mentions from the corpus and write one graph per patient");
  std::string ingest_corpus, ingest_graphs;
  ingest->add_option("--corpus", ingest_corpus, "Corpus directory");
  ingest->add_option("--graphs", ingest_graphs, "Graph output directory (default <out>/graphs)");

  // run
  auto* run = cli.add_subcommand("run", "Answer the questions under one condition");
  std::string run_condition, run_backend = "replay", run_model, run_replay;
  bool run_resume = false;
  run->add_option("condition", run_condition, "Condition id, e.g. C4g_kw")->required();
  run->add_option("--backend", run_backend, "replay, reader or http")
      ->check(CLI::IsMember({"replay", "reader", "http"}))
      ->capture_default_str();
  run->add_option("--model", run_model, "Run directory name (default: backend identity)");
  run->add_option("--replay", run_replay, "Replay corpus for the replay backend");
  run->add_flag("--resume", run_resume, "Keep existing checkpoint lines and answer the rest");

  // score
  auto* score = cli.add_subcommand("score", "Score a checkpoint against the gold answers");
  std::string score_condition, score_model = app::kReplayModel, score_records;
  score->add_option("condition", score_condition, "Condition id")->required();
  score->add_option("--model", score_model, "Run directory name")->capture_default_str();
  score->add_option("--records", score_records, "Write per-item score records (JSONL)");

  // stats
  auto* stats_cmd = cli.add_subcommand("stats", "Paired tests between two runs, or on discordant counts");
  std::string stats_first, stats_second, stats_model = app::kReplayModel;
  std::int64_t stats_b = -1, stats_c = -1;
  stats_cmd->add_option("--first", stats_first, "Baseline condition");
  stats_cmd->add_option("--second", stats_second, "Compared condition");
  stats_cmd->add_option("--model", stats_model, "Run directory name")->capture_default_str();
  stats_cmd->add_option("--b", stats_b, "Discordant pairs favouring the first condition");
  stats_cmd->add_option("--c", stats_c, "Discordant pairs favouring the second condition");

  // report
  auto* report = cli.add_subcommand("report", "Render the JSON report over a set of runs");
  std::string report_model = app::kReplayModel, report_output, report_judgements, report_cross;
  std::vector<std::string> report_conditions;
  report->add_option("--model", report_model, "Run directory name")->capture_default_str();
  report->add_option("--conditions", report_conditions, "Conditions to include (default: all)");
  report->add_option("--output", report_output, "Report path (default: stdout)");
  report->add_option("--judgements", report_judgements, "Deblinded adjudication ratings (JSONL)");
  report->add_option("--cross-model", report_cross, "Per-model baseline/delta points (JSON)");

  // reproduce
  auto* repro = cli.add_subcommand("reproduce", "Run the fixture pipeline end to end and check it");
  bool repro_update = false;
  std::string repro_golden;
  repro->add_option("--golden", repro_golden, "Golden report (default <data>/fixture/golden_report.json)");
  repro->add_flag("--update-golden", repro_update, "Write the golden report instead of comparing");

  // make-replay
  auto* mkreplay = cli.add_subcommand("make-replay", "Answer every fixture prompt with the extractive reader");
  std::string replay_output;
  mkreplay->add_option("--output", replay_output, "Replay corpus path (default: the configured replay file)");

  // serve
  auto* serve = cli.add_subcommand("serve", "Serve the blinded adjudication API");
  std::string serve_items, serve_store, serve_host = "127.0.0.1", serve_admin, serve_origin = "*";
  int serve_port = 8080;
  std::vector<std::string> serve_raters;
  serve->add_option("--items", serve_items, "Adjudication items (JSONL)")->required()->check(CLI::ExistingFile);
  serve->add_option("--store", serve_store, "Event log directory")->required();
  serve->add_option("--host", serve_host)->capture_default_str();
  serve->add_option("--port", serve_port)->capture_default_str();
  serve->add_option("--admin-token", serve_admin, "Admin bearer token (or EPIKG_ADMIN_TOKEN)");
  serve->add_option("--rater", serve_raters, "rater_id=token, repeatable");
  serve->add_option("--cors-origin", serve_origin)->capture_default_str();

  // adjudication build-items
  auto* adj = cli.add_subcommand("adjudication", "Adjudication data preparation");
  adj->require_subcommand(1);
  auto* build = adj->add_subcommand("build-items", "Pair two runs' answers into adjudication items");
  std::string build_first = "C1", build_second = "C4g_kw", build_model = app::kReplayModel, build_output;
  build->add_option("--first", build_first)->capture_default_str();
  build->add_option("--second", build_second)->capture_default_str();
  build->add_option("--model", build_model)->capture_default_str();
  build->add_option("--output", build_output, "Items path (JSONL)")->required();

  try {
    cli.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = cli.exit(e);
    return rc == 0 ? app::kExitOk : app::kExitUsage;
  }

  try {
    app::CliConfig cfg = make_config(g);

    if (*ingest) {
      if (!ingest_corpus.empty()) cfg.corpus = ingest_corpus;
      app::check_inputs(cfg, true);
      const app::Workspace ws = app::load_workspace(cfg);
      const fs::path out = ingest_graphs.empty() ? fs::path(g.out) / "graphs" : fs::path(ingest_graphs);
      if (ws.corpus.patients.empty()) {
        std::cerr << "warning: no notes under " << cfg.corpus << "; nothing to ingest\n";
        for (const auto& e : ws.corpus_errors) std::cerr << "error: " << e << "\n";
        return ws.corpus_errors.empty() ? app::kExitOk : app::kExitData;
      }
      const auto r = app::ingest(ws.corpus, ws.lexicon, ws.inventory, ws.edge_types, ws.node_types);
      app::write_graphs(r, out);
      std::size_t violations = 0;
      for (const auto& p : r.patients) {
        std::printf("%s: %zu documents, %zu mentions (%zu non-present), %zu edges, %zu preservation violations\n",
                    p.patient_id.c_str(), p.documents, p.mentions, p.non_present, p.edges, p.violations.size());
        violations += p.violations.size();
      }
      std::printf("wrote %zu graph files to %s\n", r.graphs.size(), out.string().c_str());
      for (const auto& e : ws.corpus_errors) std::cerr << "error: " << e << "\n";
      if (violations) return app::kExitCheck;
      return ws.corpus_errors.empty() ? app::kExitOk : app::kExitData;
    }

    if (*run) {
      const bench::Condition& c = bench::parse_condition(run_condition);
      if (!run_replay.empty()) cfg.replay = run_replay;
      app::check_inputs(cfg, true);
      const app::Workspace ws = app::load_workspace(cfg);
      const auto gold = app::load_gold(cfg);
      std::unique_ptr<bench::LlmBackend> backend;
      if (run_backend == "replay") {
        backend = bench::ReplayBackend::load(cfg.replay, app::kReplayModel);
      } else if (run_backend == "reader") {
        backend = std::make_unique<bench::ReaderBackend>();
      } else {
        backend = std::make_unique<bench::HttpBackend>(bench::http_config_from_env());
      }
      bench::RunOptions ro;
      ro.model = run_model.empty() ? backend->identity() : run_model;
      ro.checkpoint = bench::checkpoint_path(cfg.runs, ro.model, c);
      ro.resume = run_resume;
      ro.jobs = cfg.jobs;
      const auto s = bench::run_condition(c, gold, app::make_context(ws, c), *backend, ro);
      std::printf("%s: %zu questions, %zu answered, %zu already done, %zu errors -> %s\n", c.name.c_str(),
                  s.total, s.answered, s.skipped, s.failures.size(), ro.checkpoint.string().c_str());
      for (const auto& f : s.failures) std::cerr << "error: " << f << "\n";
      return app::kExitOk;
    }

    if (*score) {
      app::check_inputs(cfg, false);
      cfg.corpus.clear();
      const app::Workspace ws = app::load_workspace(cfg);
      const auto endpoint = app::endpoint_questions(cfg, app::load_gold(cfg));
      const auto runs = app::score_runs(cfg, ws, endpoint.kept, score_model, {score_condition});
      std::printf("%s / %s, evaluator %s, gold %s, %zu questions (%zu change and %zu listed excluded)\n",
                  runs[0].run.condition.c_str(), score_model.c_str(), cfg.evaluator.c_str(),
                  cfg.gold_version.c_str(), endpoint.kept.size(), endpoint.removed_change, endpoint.removed_listed);
      std::fputs(app::accuracy_table(runs[0].run).c_str(), stdout);
      if (!score_records.empty()) write_file(score_records, bench::score_records_jsonl(runs[0].run));
      return app::kExitOk;
    }

    if (*stats_cmd) {
      if (stats_b >= 0 || stats_c >= 0) {
        if (stats_b < 0 || stats_c < 0) throw ConfigError("--b and --c go together");
        const auto chi = stats::mcnemar_chi2(stats_b, stats_c);
        ordered_json j;
        j["b"] = stats_b;
        j["c"] = stats_c;
        j["mcnemar_exact_p"] = stats::mcnemar_exact(stats_b, stats_c);
        j["chi2"] = chi.statistic;
        j["chi2_p"] = chi.p_value;
        std::cout << j.dump(2) << "\n";
        return app::kExitOk;
      }
      if (stats_first.empty() || stats_second.empty())
        throw ConfigError("stats needs --first and --second, or --b and --c");
      app::check_inputs(cfg, false);
      cfg.corpus.clear();
      const app::Workspace ws = app::load_workspace(cfg);
      const auto endpoint = app::endpoint_questions(cfg, app::load_gold(cfg));
      const auto runs = app::score_runs(cfg, ws, endpoint.kept, stats_model, {stats_first, stats_second});
      bench::ReportOptions ro;
      ro.bootstrap.seed = cfg.seed;
      ro.bootstrap.resamples = cfg.resamples;
      ro.bootstrap.jobs = cfg.jobs;
      const bench::Comparison cmp{runs[0].run.condition, runs[1].run.condition};
      const auto r = bench::compare_runs(runs, {cmp}, ro).at(0);
      ordered_json j;
      j["comparison"] = cmp.name();
      j["table"] = {{"a", r.table.a}, {"b", r.table.b}, {"c", r.table.c}, {"d", r.table.d}};
      j["delta"] = r.newcombe.delta;
      j["newcombe_ci"] = {r.newcombe.ci.lower, r.newcombe.ci.upper};
      j["mcnemar_exact_p"] = r.mcnemar_exact_p;
      if (r.chi2) j["chi2"] = r.chi2->statistic;
      j["bca_ci"] = {r.bootstrap.ci.lower, r.bootstrap.ci.upper};
      std::cout << j.dump(2) << "\n";
      return app::kExitOk;
    }

    if (*report) {
      app::check_inputs(cfg, false);
      cfg.corpus.clear();
      const app::Workspace ws = app::load_workspace(cfg);
      const auto endpoint = app::endpoint_questions(cfg, app::load_gold(cfg));
      std::vector<std::string> names = report_conditions;
      if (names.empty()) {
        for (const auto& c : bench::all_conditions()) names.push_back(c.name);
      }
      bench::ReportInput in;
      in.runs = app::score_runs(cfg, ws, endpoint.kept, report_model, names);
      std::set<std::string> present(names.begin(), names.end());
      for (const auto& c : app::fixture_comparisons()) {
        if (present.count(c.first) && present.count(c.second)) in.comparisons.push_back(c);
      }
      in.questions = endpoint.kept.size();
      in.excluded_change = endpoint.removed_change;
      in.excluded_listed = endpoint.removed_listed;
      if (!report_judgements.empty())
        in.leave_rater_out.push_back(
            bench::leave_rater_out(app::load_judgements(report_judgements), "R1", {"C1", "C4g_kw"}));
      if (!report_cross.empty()) in.cross_model = app::load_cross_model(report_cross);
      bench::ReportOptions ro;
      ro.bootstrap.seed = cfg.seed;
      ro.bootstrap.resamples = cfg.resamples;
      ro.bootstrap.jobs = cfg.jobs;
      ro.evaluator = cfg.evaluator;
      ro.gold_version = cfg.gold_version;
      const std::string text = bench::render_report(in, ro);
      if (report_output.empty()) {
        std::cout << text;
      } else {
        write_file(report_output, text);
      }
      return app::kExitOk;
    }

    if (*repro) {
      app::ReproduceOptions opts;
      opts.cfg = cfg;
      opts.out = g.out;
      const fs::path fixture = fs::path(g.data) / "fixture";
      opts.golden = repro_golden.empty() ? fixture / "golden_report.json" : fs::path(repro_golden);
      opts.questions_v2 = fixture / "questions_v2.jsonl";
      opts.judgements = fixture / "adjudication" / "judgements.jsonl";
      opts.cross_model = fs::path(g.data) / "published" / "cross_model.json";
      opts.update_golden = repro_update;
      const auto r = app::reproduce(opts);
      for (const auto& c : r.checks) {
        std::printf("%s  %s", c.passed ? "PASS" : "FAIL", c.name.c_str());
        if (!c.detail.empty()) std::printf("  (%s)", c.detail.c_str());
        std::printf("\n");
      }
      std::printf("report: %s\n", (fs::path(g.out) / "report.json").string().c_str());
      return r.ok() ? app::kExitOk : app::kExitCheck;
    }

    if (*mkreplay) {
      app::check_inputs(cfg, true);
      const app::Workspace ws = app::load_workspace(cfg);
      const auto records = app::make_replay(ws, app::load_gold(cfg), cfg.jobs);
      const fs::path out = replay_output.empty() ? cfg.replay : fs::path(replay_output);
      write_file(out, bench::replay_jsonl(records));
      std::printf("wrote %zu replay records to %s\n", records.size(), out.string().c_str());
      return app::kExitOk;
    }

    if (*serve) {
      adjudication::ServiceConfig sc;
      sc.store_dir = serve_store;
      sc.admin_token = serve_admin;
      if (sc.admin_token.empty()) {
        if (const char* t = std::getenv("EPIKG_ADMIN_TOKEN")) sc.admin_token = t;
      }
      if (sc.admin_token.empty()) throw ConfigError("serve needs --admin-token or EPIKG_ADMIN_TOKEN");
      for (const auto& r : serve_raters) {
        const auto eq = r.find('=');
        if (eq == std::string::npos || eq == 0 || eq + 1 == r.size())
          throw ConfigError("--rater expects rater_id=token, got '" + r + "'");
        sc.rater_tokens[r.substr(0, eq)] = r.substr(eq + 1);
      }
      adjudication::AdjudicationService service(adjudication::load_items(serve_items), sc);
      adjudication::AdjudicationServer server(service, {serve_origin});
      g_server = &server;
      std::signal(SIGINT, on_signal);
      std::signal(SIGTERM, on_signal);
      std::printf("serving %zu items on http://%s:%d\n", service.item_ids().size(), serve_host.c_str(), serve_port);
      std::fflush(stdout);
      if (!server.listen(serve_host, serve_port)) throw ConfigError("cannot listen on port " + std::to_string(serve_port));
      return app::kExitOk;
    }

    if (*build) {
      app::check_inputs(cfg, true);
      const auto gold = app::load_gold(cfg);
      const auto corpus = bench::load_corpus(cfg.corpus).corpus;
      const auto& c1 = bench::parse_condition(build_first);
      const auto& c2 = bench::parse_condition(build_second);
      std::map<std::string, std::string> a1, a2;
      for (const auto& p : bench::read_checkpoint(bench::checkpoint_path(cfg.runs, build_model, c1)))
        a1[p.qid] = p.predicted_answer;
      for (const auto& p : bench::read_checkpoint(bench::checkpoint_path(cfg.runs, build_model, c2)))
        a2[p.qid] = p.predicted_answer;
      std::vector<adjudication::AdjudicationItem> items;
      for (const auto& q : gold) {
        if (!a1.count(q.qid) || !a2.count(q.qid)) continue;
        adjudication::AdjudicationItem it;
        it.item_id = q.qid;
        it.question = q.question;
        it.expected_answer = q.expected_answer;
        // The latest discharge summary, else the latest note.
        if (auto p = corpus.patients.find(q.patient_id); p != corpus.patients.end() && !p->second.empty()) {
          const bench::Note* pick = &p->second.back();
          for (const auto& n : p->second) {
            if (n.doc_type == "discharge_summary") pick = &n;
          }
          it.source_note = pick->body;
        }
        it.first = {c1.name, a1[q.qid]};
        it.second = {c2.name, a2[q.qid]};
        items.push_back(std::move(it));
      }
      if (items.empty()) throw DataError("no question answered under both " + c1.name + " and " + c2.name);
      write_file(build_output, adjudication::items_jsonl(items));
      std::printf("wrote %zu items to %s\n", items.size(), build_output.c_str());
      return app::kExitOk;
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return app::kExitUsage;
  } catch (const ParseError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return app::kExitData;
  } catch (const SchemaError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return app::kExitData;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return app::kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return app::kExitData;
  }
  return app::kExitUsage;
}
