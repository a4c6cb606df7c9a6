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

#include <atomic>
#include <fstream>
#include <sstream>

#include "epikg/bench/backend.hpp"
#include "epikg/bench/checkpoint.hpp"
#include "epikg/bench/condition.hpp"
#include "epikg/bench/corpus.hpp"
#include "epikg/bench/question.hpp"
#include "epikg/bench/runner.hpp"
#include "epikg/bench/scoring.hpp"
#include "epikg/bench/tfidf.hpp"
#include "epikg/core/digest.hpp"
#include "epikg/core/errors.hpp"
#include "epikg/evaluator/keywords.hpp"
#include "support/fixtures.hpp"

using namespace epikg;
using namespace epikg::bench;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<Question> three_questions() {
  return parse_questions(
      R"({"qid":"q1","task":"A","category":"negation","patient_id":"P1","admission_ids":["H1"],"question":"Does the patient have cough?","expected_answer":"No cough."}
{"qid":"q2","task":"A","category":"uncertainty","patient_id":"P1","admission_ids":["H1"],"question":"Is heart failure confirmed?","expected_answer":"Possible heart failure."}
{"qid":"q3","task":"B","category":"change","patient_id":"P2","admission_ids":["H1","H2"],"question":"What changed?","expected_answer":"Warfarin added."}
)",
      "inline");
}

// Prompt "prompt-<qid>" for every question.
ContextFn simple_context() {
  return [](const Question& q) {
    BuiltContext c;
    c.prompt = "prompt-" + q.qid;
    c.evidence = "evidence-" + q.qid;
    return c;
  };
}

ReplayBackend replay_for(const std::vector<Question>& qs, const std::string& answer) {
  std::map<std::string, std::string> m;
  for (const auto& q : qs) m[sha256_hex("prompt-" + q.qid)] = answer;
  return ReplayBackend(std::move(m), "replay-test");
}

}  // namespace

TEST_CASE("questions parse and reject bad rows") {
  const auto qs = three_questions();
  REQUIRE(qs.size() == 3);
  CHECK(qs[2].admission_ids.size() == 2);
  CHECK(category_histogram(qs).at("change") == 1);
  CHECK_THROWS_AS(parse_questions("{\"qid\": \"q1\"", "x"), ParseError);
  const std::string dup =
      R"({"qid":"q1","task":"A","category":"negation","patient_id":"P1","admission_ids":[],"question":"a","expected_answer":"b"})";
  try {
    parse_questions(dup + "\n" + dup + "\n", "x");
    FAIL("duplicate qid accepted");
  } catch (const DataError& e) {
    CHECK(std::string(e.what()).find("q1") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_questions(R"({"qid":"q1","task":"A","category":"astrology","patient_id":"P1","admission_ids":[],"question":"a","expected_answer":"b"})",
                                  "x"),
                  DataError);
}

TEST_CASE("corrections produce the shipped v2 gold") {
  auto v1 = load_questions(testing::data_dir() / "fixture/questions_v1.jsonl");
  const auto corr = load_corrections(testing::data_dir() / "fixture/corrections.json");
  const auto v2 = apply_corrections(v1, corr);
  std::string out;
  for (const auto& q : v2) out += to_jsonl(q);
  CHECK(out == slurp(testing::data_dir() / "fixture/questions_v2.jsonl"));
  CHECK_THROWS_AS(apply_corrections(v1, {{"q999", "x"}}), DataError);
  for (const auto& [qid, answer] : corr) {
    const auto it = std::find_if(v1.begin(), v1.end(), [&](const Question& q) { return q.qid == qid; });
    REQUIRE(it != v1.end());
    CHECK(it->expected_answer != answer);
  }
}

TEST_CASE("exclusion arithmetic on a 400-question file") {
  const auto dir = testing::scratch_dir("excl");
  const auto listed = testing::write_question_fixture(dir / "q.jsonl", 400, 30, 8);
  REQUIRE(listed.size() == 8);
  const auto qs = load_questions(dir / "q.jsonl");
  REQUIRE(qs.size() == 400);

  ExclusionList both{listed, true};
  const auto r = apply_exclusions(qs, both);
  CHECK(r.kept.size() == 362);
  CHECK(r.removed_change == 30);
  CHECK(r.removed_listed == 8);

  const auto change_only = apply_exclusions(qs, ExclusionList{{}, true});
  CHECK(change_only.kept.size() == 370);

  const auto unknown = apply_exclusions(qs, ExclusionList{{"q9999"}, false});
  CHECK(unknown.kept.size() == 400);
  CHECK(unknown.unknown_qids == std::vector<std::string>{"q9999"});
}

TEST_CASE("a 600-character answer is stored in full") {
  const auto dir = testing::scratch_dir("long");
  const auto qs = three_questions();
  std::string answer;
  while (answer.size() < 600) answer += "The patient denies chest pain and fever. ";
  answer.resize(600);
  auto backend = replay_for(qs, answer);
  RunOptions o;
  o.checkpoint = dir / "run.jsonl";
  const auto s = run_condition(condition(ConditionId::C1), qs, simple_context(), backend, o);
  CHECK(s.answered == 3);
  const auto preds = read_checkpoint(o.checkpoint);
  REQUIRE(preds.size() == 3);
  for (const auto& p : preds) CHECK(p.predicted_answer.size() == 600);
  CHECK(preds[0].predicted_answer == answer);
}

namespace {

// Fails once on the second question, then behaves.
class FlakyBackend : public LlmBackend {
 public:
  explicit FlakyBackend(ReplayBackend inner) : inner_(std::move(inner)) {}
  std::string generate(const std::string& prompt) override {
    if (prompt == "prompt-q2" && fail_) throw BackendError("connection reset");
    ++calls;
    return inner_.generate(prompt);
  }
  std::string identity() const override { return "flaky"; }
  bool fail_ = true;
  std::atomic<int> calls{0};

 private:
  ReplayBackend inner_;
};

}  // namespace

TEST_CASE("checkpoint resume answers only what is missing") {
  const auto dir = testing::scratch_dir("resume");
  const auto qs = three_questions();
  const FixedClock clock(Timestamp::parse("2026-01-01T00:00:00Z"));

  // Uninterrupted reference run.
  auto ref_backend = replay_for(qs, "No cough.");
  RunOptions ref;
  ref.checkpoint = dir / "ref.jsonl";
  ref.clock = &clock;
  ref.model = "m";
  run_condition(condition(ConditionId::C1), qs, simple_context(), ref_backend, ref);

  // Interrupted run: keep the first line and a torn second line.
  const std::string full = slurp(ref.checkpoint);
  const auto first_nl = full.find('\n');
  testing::write_file(dir / "run.jsonl", full.substr(0, first_nl + 1) + full.substr(first_nl + 1, 25));
  CHECK(read_checkpoint(dir / "run.jsonl").size() == 1);

  FlakyBackend flaky(replay_for(qs, "No cough."));
  flaky.fail_ = false;
  RunOptions o = ref;
  o.checkpoint = dir / "run.jsonl";
  o.resume = true;
  o.jobs = 3;
  const auto s = run_condition(condition(ConditionId::C1), qs, simple_context(), flaky, o);
  CHECK(s.skipped == 1);
  CHECK(s.answered == 2);
  CHECK(flaky.calls == 2);
  CHECK(slurp(o.checkpoint) == full);

  // A second resume has nothing to do.
  const auto again = run_condition(condition(ConditionId::C1), qs, simple_context(), flaky, o);
  CHECK(again.answered == 0);
  CHECK(again.skipped == 3);
}

TEST_CASE("backend failures are recorded, not fatal") {
  const auto dir = testing::scratch_dir("fail");
  const auto qs = three_questions();
  FlakyBackend flaky(replay_for(qs, "x"));
  RunOptions o;
  o.checkpoint = dir / "run.jsonl";
  const auto s = run_condition(condition(ConditionId::C1), qs, simple_context(), flaky, o);
  CHECK(s.failures.size() == 1);
  const auto preds = read_checkpoint(o.checkpoint);
  REQUIRE(preds.size() == 3);
  CHECK(preds[1].error.has_value());
  CHECK(preds[1].predicted_answer.empty());
}

TEST_CASE("prediction lines round-trip") {
  Prediction p{"q1", "C1", "m", "line one\nline \"two\"", "ev", 12, "2026-01-01T00:00:00Z", std::nullopt};
  const auto line = to_jsonl(p);
  CHECK(line.back() == '\n');
  const auto back = prediction_from_json(line.substr(0, line.size() - 1), "x", 1);
  CHECK(back.predicted_answer == p.predicted_answer);
  CHECK(back.elapsed_ms == 12);
  CHECK_THROWS_AS(prediction_from_json("{", "x", 1), ParseError);
}

TEST_CASE("replay corpus is order independent and strict") {
  const std::vector<ReplayRecord> a = {{"bb", "2"}, {"aa", "1"}};
  const std::vector<ReplayRecord> b = {{"aa", "1"}, {"bb", "2"}};
  CHECK(replay_jsonl(a) == replay_jsonl(b));
  ReplayBackend r({{sha256_hex("known"), "yes"}}, "r");
  CHECK(r.generate("known") == "yes");
  CHECK_THROWS_AS(r.generate("unknown"), BackendError);
}

TEST_CASE("condition names") {
  CHECK(all_conditions().size() == 11);
  CHECK(parse_condition("C4g_kw").id == ConditionId::C4gKw);
  CHECK(parse_condition(condition(ConditionId::C6).checkpoint).id == ConditionId::C6);
  CHECK_THROWS_AS(parse_condition("c4g_kw"), ConfigError);
  const auto& c4 = condition(ConditionId::C4);
  CHECK(c4.assertions);
  CHECK(c4.routing == Routing::None);
  CHECK_FALSE(condition(ConditionId::C3).assertions);
}

TEST_CASE("tf-idf ranks the matching document first") {
  const TfidfIndex idx({"fever and cough", "warfarin for atrial fibrillation", "cough"});
  const auto r = idx.retrieve("warfarin dose", 2);
  REQUIRE(r.size() == 2);
  CHECK(r[0].index == 1);
  CHECK_THROWS_AS(idx.retrieve("x", 0), std::invalid_argument);
  const auto chunks = chunk_text("a b c d e f g", 4, 1);
  CHECK(chunks == std::vector<std::string>{"a b c d", "d e f g"});
  CHECK_THROWS_AS(chunk_text("a", 2, 2), std::invalid_argument);
}

TEST_CASE("note headers and sections") {
  const auto n = parse_note(
      "doc_id: D1\npatient_id: P1\nhadm_id: H1\ndoc_type: discharge_summary\ndoc_date: 2150-01-02\n\n"
      "Intro line.\nAssessment:\nPossible pneumonia.\n",
      "D1.txt");
  CHECK(n.recorded_at == Timestamp::at_midnight(Date::parse("2150-01-02")));
  REQUIRE(n.sections.size() == 2);
  CHECK(n.sections[1].name == "Assessment");
  CHECK(n.body.substr(n.sections[1].offset, n.sections[1].text.size()) == n.sections[1].text);
  try {
    parse_note("doc_id: D1\npatient_id P1\n\nbody", "bad.txt");
    FAIL("malformed header accepted");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
}

TEST_CASE("scoring joins predictions to gold") {
  const auto cfg = evaluator::KeywordConfig::load(testing::data_dir() / "evaluator/keywords.json");
  const auto qs = three_questions();
  std::vector<Prediction> preds = {{"q1", "C1", "m", "No cough.", "", 0, "", std::nullopt},
                                   {"q2", "C1", "m", "Cannot determine.", "", 0, "", std::nullopt},
                                   {"q3", "C1", "m", "", "", 0, "", std::string("timeout")}};
  const auto run = score_run(preds, qs, evaluator::EvaluatorVersion::V2, cfg);
  CHECK(run.overall().correct == 1);
  CHECK(run.overall().total == 3);
  CHECK(run.find("q3")->errored);
  CHECK(run.find("q2")->abstention);
  preds.push_back(preds[0]);
  CHECK_THROWS_AS(score_run(preds, qs, evaluator::EvaluatorVersion::V2, cfg), DataError);
}
