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

#include <random>

#include "epikg/core/errors.hpp"
#include "epikg/router/evidence.hpp"
#include "epikg/router/intent.hpp"
#include "epikg/router/routes.hpp"
#include "support/fixtures.hpp"

using namespace epikg;
using namespace epikg::router;
using epikg::epistemics::Assertion;
using epikg::epistemics::Experiencer;
using epikg::epistemics::Temporality;

namespace {

const IntentRuleSet& rules() {
  static const IntentRuleSet r = IntentRuleSet::load(testing::data_dir() / "router/intent_rules.json");
  return r;
}

struct Builder {
  kgraph::PatientGraph g{"P1"};
  Builder() {
    g.add_node({"patient:P1", std::nullopt, "P1", "Patient"});
    for (int c = 1; c <= 4; ++c)
      g.add_node({"concept:" + std::to_string(c), ConceptId(c), "c" + std::to_string(c), "Condition"});
  }
  void add(int concept_id, const char* hadm, const char* recorded, Assertion a = Assertion::Present,
           Temporality t = Temporality::Current, bool open = true) {
    kgraph::TemporalEdge e;
    e.source = "patient:P1";
    e.predicate = "has_condition";
    e.target = "concept:" + std::to_string(concept_id);
    e.hadm_id = hadm;
    e.assertion = a;
    e.temporality = t;
    e.transaction.recorded_at = Timestamp::parse(recorded);
    e.transaction.created_at = *e.transaction.recorded_at;
    e.valid.valid_from = e.transaction.recorded_at->date();
    if (!open) e.valid.valid_to = e.valid.valid_from;
    e.provenance = "D";
    g.add_edge(e);
  }
};

}  // namespace

TEST_CASE("keyword intent classification") {
  const auto kw = IntentMode::Keyword;
  CHECK(classify_intent("What medications changed between admissions?", kw, {}, rules()) == Intent::Change);
  CHECK(classify_intent("Is the patient currently on warfarin?", kw, {}, rules()) == Intent::CurrentState);
  CHECK(classify_intent("Has the patient ever had pneumonia?", kw, {}, rules()) == Intent::Historical);
  CHECK(classify_intent("Does the patient have cough?", kw, {}, rules()) == Intent::Default);
  // Change outranks current state when both fire.
  CHECK(classify_intent("What changed in current medications?", kw, {}, rules()) == Intent::Change);
}

TEST_CASE("oracle intent classification") {
  const auto o = IntentMode::Oracle;
  CHECK(classify_intent("anything", o, std::string("change"), rules()) == Intent::Change);
  CHECK(classify_intent("anything", o, std::string("negation"), rules()) == Intent::Default);
  const auto fh = route_for("anything", o, std::string("family_history"), rules());
  CHECK(fh.experiencer == Experiencer::Family);
  CHECK_THROWS_AS(classify_intent("x", o, std::nullopt, rules()), ConfigError);
  CHECK_THROWS_AS(classify_intent("x", o, std::string("astrology"), rules()), ConfigError);
}

TEST_CASE("change routing on a worked example") {
  Builder b;
  b.add(1, "H1", "2150-01-01T10:00:00Z");
  b.add(2, "H1", "2150-01-01T10:00:00Z");
  b.add(2, "H2", "2150-03-01T10:00:00Z");
  b.add(3, "H2", "2150-03-01T10:00:00Z");
  const auto r = route_change(*b.g.snapshot());
  REQUIRE(r.pairs.size() == 1);
  CHECK(r.pairs[0].added == std::set<ConceptId>{ConceptId(3)});
  CHECK(r.pairs[0].removed == std::set<ConceptId>{ConceptId(1)});
  CHECK(r.pairs[0].shared == std::set<ConceptId>{ConceptId(2)});
}

TEST_CASE("change routing with one admission") {
  Builder b;
  b.add(1, "H1", "2150-01-01T10:00:00Z");
  const auto r = route_change(*b.g.snapshot());
  CHECK(r.single_admission);
  CHECK(r.pairs.empty());
}

TEST_CASE("change routing matches brute-force set differences on random graphs") {
  std::mt19937_64 rng(20260101);
  for (int i = 0; i < 1000; ++i) {
    const auto c = testing::random_change_case(rng);
    std::string why;
    INFO("case " << i);
    REQUIRE_MESSAGE(testing::change_matches_oracle(c, &why), why);
  }
}

TEST_CASE("current state drops conditional and past edges") {
  Builder b;
  b.add(1, "H1", "2150-01-01T10:00:00Z", Assertion::Present, Temporality::Past, false);
  b.add(2, "H1", "2150-01-01T10:00:00Z", Assertion::Conditional, Temporality::Future);
  b.add(3, "H1", "2150-01-01T10:00:00Z", Assertion::Absent);
  b.add(3, "H2", "2150-02-01T10:00:00Z", Assertion::Present);
  const auto bundle =
      route_current_state(*b.g.snapshot(), {ConceptId(1), ConceptId(2), ConceptId(3)});
  CHECK(bundle.not_found == std::vector<ConceptId>{ConceptId(1), ConceptId(2)});
  std::size_t edges = 0;
  for (const auto& l : bundle.lines) {
    if (l.kind != LineKind::Edge) continue;
    ++edges;
    // Most recently recorded edge wins.
    CHECK(l.assertion == Assertion::Present);
    CHECK(l.concept_id == ConceptId(3));
  }
  CHECK(edges == 1);
}

TEST_CASE("historical routing infers resolved concepts") {
  Builder b;
  b.add(1, "H1", "2150-01-01T10:00:00Z");
  b.add(2, "H1", "2150-01-01T10:00:00Z");
  b.add(2, "H2", "2150-03-01T10:00:00Z");
  b.add(4, "H2", "2150-03-01T10:00:00Z", Assertion::Historical, Temporality::Past, false);
  const auto bundle = route_historical(*b.g.snapshot(), {ConceptId(1), ConceptId(2), ConceptId(4)});
  std::set<ConceptId> resolved, past;
  for (const auto& l : bundle.lines) {
    if (l.kind == LineKind::Resolved) resolved.insert(*l.concept_id);
    if (l.kind == LineKind::Edge) past.insert(*l.concept_id);
  }
  CHECK(resolved == std::set<ConceptId>{ConceptId(1)});
  CHECK(past == std::set<ConceptId>{ConceptId(4)});
}

TEST_CASE("evidence lines carry labels only in labeled style") {
  Builder b;
  b.add(1, "H1", "2150-01-01T10:00:00Z", Assertion::Absent);
  const auto s = b.g.snapshot();
  const auto& e = s->edges().front();
  const auto labeled = format_edge_line(*s, e, LineStyle::Labeled);
  const auto plain = format_edge_line(*s, e, LineStyle::Unlabeled);
  CHECK(labeled.rfind("ABSENT: c1 [", 0) == 0);
  CHECK(plain.rfind("FACT: c1 [", 0) == 0);
  CHECK(plain.find("ABSENT") == std::string::npos);
  CHECK(plain.find("experiencer") == std::string::npos);
}
