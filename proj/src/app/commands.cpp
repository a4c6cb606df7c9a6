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

#include "epikg/app/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "epikg/bench/checkpoint.hpp"
#include "epikg/bench/reader_backend.hpp"
#include "epikg/bench/scoring.hpp"
#include "epikg/core/digest.hpp"
#include "epikg/core/errors.hpp"
#include "epikg/evaluator/evaluator.hpp"
#include "epikg/kgraph/graph_io.hpp"
#include "epikg/kgraph/materialize.hpp"

namespace epikg::app {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw DataError("cannot open " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

CliConfig default_config(const fs::path& data_dir, const fs::path& out) {
  CliConfig c;
  c.triggers = data_dir / "epistemics" / "triggers.txt";
  c.vocabulary = data_dir / "vocabulary.json";
  c.edge_types = data_dir / "kgraph" / "edge_types.txt";
  c.node_types = data_dir / "kgraph" / "node_types.txt";
  c.keywords = data_dir / "evaluator" / "keywords.json";
  c.rules = data_dir / "router" / "intent_rules.json";
  c.templates = data_dir / "templates";
  c.corpus = data_dir / "fixture" / "corpus";
  c.questions = data_dir / "fixture" / "questions_v1.jsonl";
  c.corrections = data_dir / "fixture" / "corrections.json";
  c.exclusions = data_dir / "fixture" / "exclusions.json";
  c.replay = data_dir / "fixture" / "replay.jsonl";
  c.runs = out / "runs";
  return c;
}

void apply_config_file(CliConfig& cfg, const fs::path& path) {
  json j;
  try {
    j = json::parse(slurp(path));
  } catch (const json::parse_error& e) {
    throw ConfigError(path.string() + ": invalid JSON: " + e.what());
  } catch (const DataError& e) {
    throw ConfigError(e.what());
  }
  if (!j.is_object()) throw ConfigError(path.string() + ": expected an object");
  const fs::path base = path.parent_path();
  const std::map<std::string, fs::path*> paths = {
      {"triggers", &cfg.triggers},       {"vocabulary", &cfg.vocabulary}, {"edge_types", &cfg.edge_types},
      {"node_types", &cfg.node_types},   {"keywords", &cfg.keywords},     {"rules", &cfg.rules},
      {"templates", &cfg.templates},     {"corpus", &cfg.corpus},         {"questions", &cfg.questions},
      {"corrections", &cfg.corrections}, {"exclusions", &cfg.exclusions}, {"graphs", &cfg.graphs},
      {"runs", &cfg.runs},               {"replay", &cfg.replay},
  };
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& k = it.key();
    const json& v = it.value();
    auto p = paths.find(k);
    try {
      if (p != paths.end()) {
        const fs::path value = v.get<std::string>();
        *p->second = value.empty() || value.is_absolute() ? value : base / value;
      } else if (k == "gold_version") {
        cfg.gold_version = v.get<std::string>();
      } else if (k == "evaluator") {
        cfg.evaluator = v.get<std::string>();
      } else if (k == "seed") {
        cfg.seed = v.get<std::uint64_t>();
      } else if (k == "resamples") {
        cfg.resamples = v.get<std::size_t>();
      } else if (k == "jobs") {
        cfg.jobs = v.get<unsigned>();
      } else {
        throw ConfigError(path.string() + ": unknown key '" + k + "'");
      }
    } catch (const json::type_error&) {
      throw ConfigError(path.string() + ": wrong type for '" + k + "'");
    }
  }
}

void check_inputs(const CliConfig& cfg, bool need_corpus) {
  std::vector<std::pair<const char*, const fs::path*>> required = {
      {"triggers", &cfg.triggers}, {"vocabulary", &cfg.vocabulary}, {"edge_types", &cfg.edge_types},
      {"node_types", &cfg.node_types}, {"keywords", &cfg.keywords}, {"rules", &cfg.rules},
      {"templates", &cfg.templates},
  };
  if (need_corpus) {
    required.emplace_back("corpus", &cfg.corpus);
    required.emplace_back("questions", &cfg.questions);
  }
  for (const auto& [name, p] : required) {
    if (!fs::exists(*p)) throw ConfigError(std::string(name) + " path does not exist: " + p->string());
  }
  for (const auto& [name, p] : std::vector<std::pair<const char*, const fs::path*>>{
           {"corrections", &cfg.corrections}, {"exclusions", &cfg.exclusions}}) {
    if (!p->empty() && !fs::exists(*p)) throw ConfigError(std::string(name) + " path does not exist: " + p->string());
  }
  evaluator::parse_version(cfg.evaluator);
  if (cfg.gold_version != "v1" && cfg.gold_version != "v2")
    throw ConfigError("gold version must be v1 or v2, got '" + cfg.gold_version + "'");
}

bench::BenchResources Workspace::resources() const {
  bench::BenchResources r;
  r.lexicon = &lexicon;
  r.rules = &rules;
  r.templates = &templates;
  return r;
}

bench::PatientData Workspace::patient(const std::string& patient_id) const {
  bench::PatientData p;
  if (auto g = graphs.find(patient_id); g != graphs.end()) p.graph = g->second;
  if (auto n = corpus.patients.find(patient_id); n != corpus.patients.end()) p.notes = &n->second;
  return p;
}

IngestResult ingest(const bench::Corpus& corpus, const epistemics::Lexicon& lexicon,
                    const epistemics::PatternInventory& inventory,
                    std::shared_ptr<const kgraph::TypeRegistry> edge_types,
                    std::shared_ptr<const kgraph::TypeRegistry> node_types) {
  IngestResult out;
  for (const auto& [pid, notes] : corpus.patients) {
    PatientIngest pi;
    pi.patient_id = pid;
    std::vector<kgraph::SourceDocument> docs;
    for (const auto& n : notes) {
      docs.push_back(bench::to_source_document(n, lexicon, inventory));
      for (const auto& m : docs.back().mentions) {
        ++pi.mentions;
        if (m.assertion != epistemics::Assertion::Present) ++pi.non_present;
      }
    }
    pi.documents = docs.size();
    auto built = kgraph::materialize(pid, docs, lexicon, {}, edge_types, node_types);
    pi.violations = kgraph::check_preservation(docs, built);
    auto snap = built.graph->snapshot();
    pi.edges = snap->edges().size();
    out.graphs[pid] = std::move(snap);
    out.patients.push_back(std::move(pi));
  }
  return out;
}

void write_graphs(const IngestResult& r, const fs::path& dir) {
  fs::create_directories(dir);
  for (const auto& [pid, g] : r.graphs) kgraph::save_graph(*g, dir / (pid + ".json"));
}

Workspace load_workspace(const CliConfig& cfg) {
  Workspace ws;
  ws.inventory = epistemics::PatternInventory::load(cfg.triggers);
  ws.lexicon = epistemics::Lexicon::load(cfg.vocabulary);
  ws.rules = router::IntentRuleSet::load(cfg.rules);
  ws.templates = router::TemplateSet::load_dir(cfg.templates);
  ws.keywords = evaluator::KeywordConfig::load(cfg.keywords);
  ws.edge_types = std::make_shared<const kgraph::TypeRegistry>(kgraph::TypeRegistry::load(cfg.edge_types));
  ws.node_types = std::make_shared<const kgraph::TypeRegistry>(kgraph::TypeRegistry::load(cfg.node_types));
  if (!cfg.corpus.empty() && fs::exists(cfg.corpus)) {
    auto loaded = bench::load_corpus(cfg.corpus);
    ws.corpus = std::move(loaded.corpus);
    ws.corpus_errors = std::move(loaded.errors);
  }
  bool from_files = false;
  if (!cfg.graphs.empty() && fs::is_directory(cfg.graphs)) {
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(cfg.graphs)) {
      if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
      auto g = kgraph::load_graph(f);
      ws.graphs[g->patient_id()] = g->snapshot();
    }
    from_files = !files.empty();
  }
  if (!from_files) {
    ws.graphs = ingest(ws.corpus, ws.lexicon, ws.inventory, ws.edge_types, ws.node_types).graphs;
  }
  return ws;
}

std::vector<bench::Question> load_gold(const CliConfig& cfg) {
  auto qs = bench::load_questions(cfg.questions);
  if (cfg.gold_version == "v2") {
    const bench::Corrections corr = cfg.corrections.empty() ? bench::Corrections{}
                                                            : bench::load_corrections(cfg.corrections);
    qs = bench::apply_corrections(std::move(qs), corr, "v2");
  }
  return qs;
}

bench::ExclusionResult endpoint_questions(const CliConfig& cfg, const std::vector<bench::Question>& gold) {
  if (cfg.exclusions.empty()) return bench::apply_exclusions(gold, {});
  return bench::apply_exclusions(gold, bench::load_exclusions(cfg.exclusions));
}

bench::ContextFn make_context(const Workspace& ws, const bench::Condition& c) {
  const bench::BenchResources res = ws.resources();
  return [&ws, &c, res](const bench::Question& q) {
    return bench::build_context(c, ws.patient(q.patient_id), q, res);
  };
}

std::vector<bench::ReplayRecord> make_replay(const Workspace& ws, const std::vector<bench::Question>& questions,
                                             unsigned jobs) {
  std::vector<std::string> prompts;
  for (const auto& c : bench::all_conditions()) {
    if (c.retrieval == bench::RetrievalMode::Deterministic) continue;
    const auto ctx = make_context(ws, c);
    for (const auto& q : questions) prompts.push_back(ctx(q).prompt);
  }
  std::sort(prompts.begin(), prompts.end());
  prompts.erase(std::unique(prompts.begin(), prompts.end()), prompts.end());

  std::vector<bench::ReplayRecord> out(prompts.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    bench::ReaderBackend reader;
    for (std::size_t i = next++; i < prompts.size(); i = next++)
      out[i] = {sha256_hex(prompts[i]), reader.generate(prompts[i])};
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < std::max(1u, jobs); ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  return out;
}

std::vector<bench::RunInput> score_runs(const CliConfig& cfg, const Workspace& ws,
                                        const std::vector<bench::Question>& gold, const std::string& model,
                                        const std::vector<std::string>& conditions) {
  const auto version = evaluator::parse_version(cfg.evaluator);
  std::vector<bench::RunInput> out;
  for (const auto& name : conditions) {
    const bench::Condition& c = bench::parse_condition(name);
    const fs::path path = bench::checkpoint_path(cfg.runs, model, c);
    if (!fs::exists(path)) throw DataError("missing checkpoint " + path.string());
    const auto preds = bench::restrict_predictions(bench::read_checkpoint(path), gold);
    bench::RunInput in;
    in.run = bench::score_run(preds, gold, version, ws.keywords);
    in.run.condition = c.name;
    in.run.model = model;
    in.checkpoint = (fs::path(model) / (c.checkpoint + ".jsonl")).generic_string();
    in.sha256 = sha256_hex(slurp(path));
    in.records = bench::read_checkpoint(path).size();
    out.push_back(std::move(in));
  }
  return out;
}

std::vector<bench::RaterJudgement> load_judgements(const fs::path& path) {
  std::vector<bench::RaterJudgement> out;
  std::istringstream in(slurp(path));
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const json j = json::parse(line);
      bench::RaterJudgement r;
      r.item_id = j.at("item_id").get<std::string>();
      r.rater_id = j.at("rater_id").get<std::string>();
      r.condition = j.at("condition").get<std::string>();
      r.strict_correct = j.at("model_correctness").get<std::string>() == "correct";
      out.push_back(std::move(r));
    } catch (const json::exception& e) {
      throw ParseError(path.string(), lineno, e.what());
    }
  }
  return out;
}

std::vector<bench::CrossModelPoint> load_cross_model(const fs::path& path) {
  std::vector<bench::CrossModelPoint> out;
  try {
    for (const auto& p : json::parse(slurp(path))) {
      out.push_back({p.at("model").get<std::string>(), p.at("baseline_pct").get<double>(),
                     p.at("delta_pct").get<double>()});
    }
  } catch (const json::exception& e) {
    throw DataError(path.string() + ": " + e.what());
  }
  return out;
}

std::string accuracy_table(const bench::ScoredRun& run) {
  std::string out;
  char buf[160];
  std::snprintf(buf, sizeof buf, "%-16s %8s %8s %9s\n", "category", "correct", "total", "accuracy");
  out += buf;
  auto row = [&](const std::string& name, const bench::Tally& t) {
    std::snprintf(buf, sizeof buf, "%-16s %8zu %8zu %8.1f%%\n", name.c_str(), t.correct, t.total,
                  100.0 * t.accuracy());
    out += buf;
  };
  for (const auto& [cat, t] : run.by_category()) row(cat, t);
  row("overall", run.overall());
  return out;
}

}  // namespace epikg::app
