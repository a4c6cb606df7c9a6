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

#include <set>

#include "epikg/core/errors.hpp"
#include "epikg/kgraph/allen.hpp"
#include "epikg/kgraph/graph.hpp"
#include "epikg/kgraph/graph_io.hpp"
#include "epikg/kgraph/traversal.hpp"
#include "support/fixtures.hpp"

using namespace epikg;
using namespace epikg::kgraph;

TEST_CASE("allen: the thirteen canonical configurations") {
  std::set<AllenBase> bases;
  std::set<AllenRelation> merged;
  for (const auto& c : testing::allen_cases()) {
    INFO(c.name);
    CHECK(allen_base(c.as, c.ae, c.bs, c.be) == c.base);
    CHECK(allen_relation({c.as, c.ae}, {c.bs, c.be}) == c.merged);
    bases.insert(c.base);
    merged.insert(c.merged);
  }
  CHECK(bases.size() == 13);
  // Surjective onto every determinate stored value.
  CHECK(merged.size() == 8);
  CHECK_FALSE(merged.count(AllenRelation::Unknown));
}

TEST_CASE("allen: exhaustive small intervals stay inside the nine values") {
  const std::set<AllenRelation> allowed(std::begin(kAllAllenRelations), std::end(kAllAllenRelations));
  std::set<AllenRelation> seen;
  for (long long as = 0; as < 6; ++as)
    for (long long ae = as; ae < 6; ++ae)
      for (long long bs = 0; bs < 6; ++bs)
        for (long long be = bs; be < 6; ++be) {
          const auto r = allen_relation({as, ae}, {bs, be});
          CHECK(allowed.count(r));
          CHECK(r != AllenRelation::Unknown);
          seen.insert(r);
          // Swapping the arguments gives the converse.
          const auto back = allen_relation({bs, be}, {as, ae});
          if (r == AllenRelation::Before) CHECK(back == AllenRelation::After);
          if (r == AllenRelation::During) CHECK(back == AllenRelation::Contains);
          if (r == AllenRelation::Concurrent) CHECK(back == AllenRelation::Concurrent);
        }
  CHECK(seen.size() == 8);
}

TEST_CASE("allen: missing endpoints and reversed intervals") {
  CHECK(allen_relation({1, 2}, {3, std::nullopt}) == AllenRelation::Unknown);
  CHECK(allen_relation({std::nullopt, 2}, {3, 4}) == AllenRelation::Unknown);
  CHECK(allen_relation({1, 2}, {3, 4}) == AllenRelation::Before);
  CHECK(allen_relation({1, 5}, {2, 3}) == AllenRelation::Contains);
  CHECK(allen_relation({1, 2}, {1, 2}) == AllenRelation::Concurrent);
  CHECK_THROWS_AS(allen_base(3, 1, 0, 4), std::domain_error);
  for (auto r : kAllAllenRelations) CHECK(parse_allen_relation(to_string(r)) == r);
}

namespace {

std::unique_ptr<PatientGraph> small_graph() {
  auto g = std::make_unique<PatientGraph>("P1");
  g->add_node({"patient:P1", std::nullopt, "P1", "Patient"});
  g->add_node({"concept:1", ConceptId(1), "pneumonia", "Condition"});
  g->add_node({"concept:2", ConceptId(2), "amoxicillin", "Drug"});
  return g;
}

TemporalEdge fact(const std::string& target, const std::string& hadm, const char* recorded) {
  TemporalEdge e;
  e.source = "patient:P1";
  e.predicate = "has_condition";
  e.target = target;
  e.hadm_id = hadm;
  e.transaction.recorded_at = Timestamp::parse(recorded);
  e.transaction.created_at = *e.transaction.recorded_at;
  e.valid.valid_from = Date::parse("2150-01-01");
  return e;
}

}  // namespace

TEST_CASE("graph: edges are validated and indexed") {
  auto owner = small_graph();
  PatientGraph& g = *owner;
  const EdgeId a = g.add_edge(fact("concept:1", "H1", "2150-01-01T10:00:00Z"));
  const EdgeId b = g.add_edge(fact("concept:1", "H1", "2150-01-01T10:00:00Z"));
  CHECK(a != b);  // identical edges are both kept
  g.add_edge(fact("concept:2", "H2", "2150-02-01T10:00:00Z"));
  auto bad = fact("concept:1", "H1", "2150-01-01T10:00:00Z");
  bad.confidence = 1.2;
  CHECK_THROWS_AS(g.add_edge(bad), ValidationError);
  CHECK_THROWS_AS(g.add_edge(fact("concept:99", "H1", "2150-01-01T10:00:00Z")), ValidationError);

  const auto s = g.snapshot();
  CHECK(s->edges_for_concept(ConceptId(1)).size() == 2);
  CHECK(s->concepts_in_admission("H1") == std::set<ConceptId>{ConceptId(1)});
  CHECK(s->concepts_in_admission("H9").empty());
  CHECK(s->admissions() == std::vector<std::string>{"H1", "H2"});
}

TEST_CASE("graph: snapshots are unaffected by later writes") {
  auto owner = small_graph();
  PatientGraph& g = *owner;
  g.add_edge(fact("concept:1", "H1", "2150-01-01T10:00:00Z"));
  const auto before = g.snapshot();
  g.add_edge(fact("concept:2", "H1", "2150-01-01T11:00:00Z"));
  CHECK(before->edges().size() == 1);
  CHECK(g.snapshot()->edges().size() == 2);
}

TEST_CASE("graph: node id reuse with other content is rejected") {
  auto owner = small_graph();
  PatientGraph& g = *owner;
  g.add_node({"concept:1", ConceptId(1), "pneumonia", "Condition"});
  CHECK_THROWS_AS(g.add_node({"concept:1", ConceptId(1), "other", "Condition"}), ValidationError);
}

TEST_CASE("graph: json round trip is byte-stable") {
  auto owner = small_graph();
  PatientGraph& g = *owner;
  auto e = fact("concept:1", "H1", "2150-01-01T10:00:00Z");
  e.assertion = Assertion::Absent;
  e.temporality = Temporality::Past;
  e.valid.valid_to = Date::parse("2150-01-03");
  e.relation = AllenRelation::During;
  e.confidence = 0.95;
  g.add_edge(e);
  const std::string once = to_json(*g.snapshot());
  const auto back = from_json(once);
  CHECK(structurally_equal(*g.snapshot(), *back->snapshot()));
  CHECK(to_json(*back->snapshot()) == once);
  CHECK_THROWS_AS(from_json(R"({"schema_version": 1, "patient_id": "P1", "nodes": [], "edges": [{}]})"),
                  SchemaError);
}

TEST_CASE("traversal: patient hub is reached but not expanded") {
  auto owner = small_graph();
  PatientGraph& g = *owner;
  g.add_edge(fact("concept:1", "H1", "2150-01-01T10:00:00Z"));
  g.add_edge(fact("concept:2", "H1", "2150-01-01T10:00:00Z"));
  const auto s = g.snapshot();
  CHECK(bfs_traverse(*s, {ConceptId(1)}).size() == 1);
  TraversalOptions open;
  open.non_expanding_types.clear();
  CHECK(bfs_traverse(*s, {ConceptId(1)}, open).size() == 2);
  CHECK(bfs_traverse(*s, {}).empty());
  open.max_hops = 0;
  CHECK_THROWS_AS(bfs_traverse(*s, {ConceptId(1)}, open), std::invalid_argument);
}

TEST_CASE("traversal: edge score") {
  TemporalEdge e;
  e.predicate = "has_condition";
  e.confidence = 0.8;
  e.temporality = Temporality::Current;
  CHECK(score_edge(e, {"has_condition"}) == doctest::Approx(1.1));
  e.temporality = Temporality::Past;
  CHECK(score_edge(e, {}) == doctest::Approx(0.8));
}
