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

#include <doctest.h>

#include <stdexcept>

#include <fstream>
#include <sstream>

#include "epikg/app/commands.hpp"
#include "epikg/app/reproduce.hpp"
#include "epikg/core/errors.hpp"
#include "epikg/kgraph/graph_io.hpp"
#include "support/fixtures.hpp"

using namespace epikg;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

app::ReproduceOptions fixture_options(const std::filesystem::path& out, unsigned jobs) {
  const auto data = testing::data_dir();
  app::ReproduceOptions o;
  o.cfg = app::default_config(data, out);
  o.cfg.jobs = jobs;
  o.out = out;
  o.golden = data / "fixture/golden_report.json";
  o.questions_v2 = data / "fixture/questions_v2.jsonl";
  o.judgements = data / "fixture/adjudication/judgements.jsonl";
  o.cross_model = data / "published/cross_model.json";
  return o;
}

}  // namespace

TEST_CASE("config file overrides resolve relative paths") {
  const auto dir = testing::scratch_dir("cfg");
  testing::write_file(dir / "c.json", R"({"questions": "q.jsonl", "seed": 7, "evaluator": "v1"})");
  auto cfg = app::default_config(testing::data_dir(), dir);
  app::apply_config_file(cfg, dir / "c.json");
  CHECK(cfg.questions == dir / "q.jsonl");
  CHECK(cfg.seed == 7);
  CHECK(cfg.evaluator == "v1");
  testing::write_file(dir / "bad.json", R"({"questoins": "q.jsonl"})");
  CHECK_THROWS_AS(app::apply_config_file(cfg, dir / "bad.json"), ConfigError);
  testing::write_file(dir / "type.json", R"({"seed": "seven"})");
  CHECK_THROWS_AS(app::apply_config_file(cfg, dir / "type.json"), ConfigError);
  CHECK_THROWS_AS(app::check_inputs(cfg, true), ConfigError);
}

TEST_CASE("ingest writes identical graphs on every run") {
  const auto cfg = app::default_config(testing::data_dir(), testing::scratch_dir("ingest"));
  const auto ws = app::load_workspace(cfg);
  CHECK(ws.corpus_errors.empty());
  CHECK(ws.corpus.note_count() == 11);
  const auto a = app::ingest(ws.corpus, ws.lexicon, ws.inventory, ws.edge_types, ws.node_types);
  const auto b = app::ingest(ws.corpus, ws.lexicon, ws.inventory, ws.edge_types, ws.node_types);
  const auto dir = testing::scratch_dir("ingest-out");
  app::write_graphs(a, dir / "a");
  app::write_graphs(b, dir / "b");
  for (const auto& p : a.patients) {
    const auto f = p.patient_id + ".json";
    CHECK(slurp(dir / "a" / f) == slurp(dir / "b" / f));
    const auto loaded = kgraph::load_graph(dir / "a" / f);
    CHECK(kgraph::structurally_equal(*loaded->snapshot(), *a.graphs.at(p.patient_id)));
  }
}

TEST_CASE("gold loading applies corrections and exclusions") {
  auto cfg = app::default_config(testing::data_dir(), testing::scratch_dir("gold"));
  const auto v2 = app::load_gold(cfg);
  CHECK(v2.size() == 40);
  for (const auto& q : v2) CHECK(q.gold_version == "v2");
  const auto endpoint = app::endpoint_questions(cfg, v2);
  CHECK(endpoint.removed_listed == 2);
  CHECK(endpoint.kept.size() + endpoint.removed_change + endpoint.removed_listed == 40);
  cfg.gold_version = "v1";
  const auto v1 = app::load_gold(cfg);
  std::size_t differing = 0;
  for (std::size_t i = 0; i < v1.size(); ++i) differing += v1[i].expected_answer != v2[i].expected_answer;
  CHECK(differing == 3);
}

TEST_CASE("reproduce is byte-identical across job counts") {
  const auto one = app::reproduce(fixture_options(testing::scratch_dir("repro-1"), 1));
  const auto four = app::reproduce(fixture_options(testing::scratch_dir("repro-4"), 4));
  for (const auto& c : one.checks) {
    INFO(c.name << ": " << c.detail);
    CHECK(c.passed);
  }
  CHECK(one.ok());
  CHECK(one.report == four.report);
}

TEST_CASE("reproduce reports a golden mismatch with a line diff") {
  const auto dir = testing::scratch_dir("repro-bad");
  auto o = fixture_options(dir / "out", 1);
  testing::write_file(dir / "golden.json", "{}\n");
  o.golden = dir / "golden.json";
  const auto r = app::reproduce(o);
  CHECK_FALSE(r.ok());
  const auto it = std::find_if(r.checks.begin(), r.checks.end(),
                               [](const app::Check& c) { return c.name == "report matches golden byte-for-byte"; });
  REQUIRE(it != r.checks.end());
  CHECK_FALSE(it->passed);
  CHECK(it->detail.find("line 1") != std::string::npos);
}
