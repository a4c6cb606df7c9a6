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

#pragma once

// Fixture builders and brute-force oracles shared by the unit tests and the
// acceptance binary. Nothing here calls into the code it is used to check
// beyond the graph and question containers themselves.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "epikg/kgraph/allen.hpp"
#include "epikg/kgraph/graph.hpp"
#include "epikg/router/routes.hpp"

namespace epikg::testing {

inline std::filesystem::path data_dir() { return EPIKG_TEST_DATA_DIR; }

inline std::filesystem::path scratch_dir(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("epikg-test-" + name);
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

inline void write_file(const std::filesystem::path& p, const std::string& content) {
  std::filesystem::create_directories(p.parent_path());
  std::ofstream(p, std::ios::binary) << content;
}

// The thirteen canonical Allen configurations on integer intervals, with the
// stored value each one merges to.
struct AllenCase {
  const char* name;
  long long as, ae, bs, be;
  kgraph::AllenBase base;
  kgraph::AllenRelation merged;
};

inline const std::vector<AllenCase>& allen_cases() {
  using B = kgraph::AllenBase;
  using R = kgraph::AllenRelation;
  static const std::vector<AllenCase> cases = {
      {"before", 1, 2, 4, 5, B::Before, R::Before},
      {"meets", 1, 3, 3, 5, B::Meets, R::Before},
      {"overlaps", 1, 4, 3, 6, B::Overlaps, R::Overlaps},
      {"starts", 1, 3, 1, 6, B::Starts, R::Starts},
      {"during", 2, 4, 1, 6, B::During, R::During},
      {"finishes", 3, 6, 1, 6, B::Finishes, R::Finishes},
      {"equals", 1, 6, 1, 6, B::Equals, R::Concurrent},
      {"finished-by", 1, 6, 3, 6, B::FinishedBy, R::Finishes},
      {"contains", 1, 6, 2, 4, B::Contains, R::Contains},
      {"started-by", 1, 6, 1, 3, B::StartedBy, R::Starts},
      {"overlapped-by", 3, 6, 1, 4, B::OverlappedBy, R::Overlaps},
      {"met-by", 3, 5, 1, 3, B::MetBy, R::After},
      {"after", 4, 5, 1, 2, B::After, R::After},
  };
  return cases;
}

// A random patient graph over a handful of concepts and two admissions whose
// recording order is independent of their ids. `raw` keeps what the oracle
// needs without going through the snapshot.
struct RawEdge {
  std::string hadm;  // empty: no admission
  std::int64_t concept_id;
  std::string predicate;
  epistemics::Experiencer experiencer;
};

struct ChangeCase {
  std::unique_ptr<kgraph::PatientGraph> graph;
  std::vector<RawEdge> raw;
  std::vector<std::string> admission_order;  // by recording time
  router::EdgeFilter filter;
};

inline ChangeCase random_change_case(std::mt19937_64& rng) {
  static const char* kPredicates[] = {"has_condition", "takes_medication", "underwent_procedure"};
  static const char* kHadmPool[] = {"HA", "HB", "HC", "HZ"};
  auto pick = [&](std::size_t n) { return static_cast<std::size_t>(rng() % n); };

  ChangeCase c;
  c.graph = std::make_unique<kgraph::PatientGraph>("P");
  c.graph->add_node({"patient:P", std::nullopt, "P", "Patient"});
  const std::size_t n_concepts = 2 + pick(6);
  for (std::size_t i = 0; i < n_concepts; ++i) {
    const auto id = static_cast<std::int64_t>(100 + i);
    c.graph->add_node({"concept:" + std::to_string(id), ConceptId(id), "c" + std::to_string(id), "Condition"});
  }
  // Two distinct admissions; which one was recorded first is random.
  std::string h1 = kHadmPool[pick(4)], h2;
  do h2 = kHadmPool[pick(4)]; while (h2 == h1);
  c.admission_order = {h1, h2};
  const Timestamp t1 = Timestamp::parse("2150-01-01T08:00:00Z");
  const Timestamp t2 = Timestamp::parse("2150-06-01T08:00:00Z");

  const std::size_t n_edges = 1 + pick(14);
  for (std::size_t i = 0; i < n_edges; ++i) {
    RawEdge r;
    const std::size_t slot = pick(5);  // 0-1 first, 2-3 second, 4 none
    r.hadm = slot < 2 ? h1 : slot < 4 ? h2 : "";
    r.concept_id = static_cast<std::int64_t>(100 + pick(n_concepts));
    r.predicate = kPredicates[pick(3)];
    r.experiencer = pick(4) == 0 ? epistemics::Experiencer::Family : epistemics::Experiencer::Patient;

    kgraph::TemporalEdge e;
    e.source = "patient:P";
    e.predicate = r.predicate;
    e.target = "concept:" + std::to_string(r.concept_id);
    e.experiencer = r.experiencer;
    e.assertion = static_cast<epistemics::Assertion>(pick(epistemics::kAssertionCount));
    if (!r.hadm.empty()) e.hadm_id = r.hadm;
    const Timestamp base = r.hadm == h2 ? t2 : t1;
    e.transaction.recorded_at = Timestamp(base.seconds_since_epoch() + static_cast<long long>(pick(3600)));
    e.transaction.created_at = *e.transaction.recorded_at;
    e.provenance = "D" + std::to_string(i);
    c.graph->add_edge(e);
    c.raw.push_back(r);
  }
  // Admissions that ended up with no edge do not exist in the graph.
  std::vector<std::string> present;
  for (const auto& h : c.admission_order) {
    if (std::any_of(c.raw.begin(), c.raw.end(), [&](const RawEdge& r) { return r.hadm == h; })) present.push_back(h);
  }
  c.admission_order = present;

  switch (pick(4)) {
    case 0: break;
    case 1: c.filter.predicates = {kPredicates[pick(3)]}; break;
    case 2: c.filter.experiencer = epistemics::Experiencer::Patient; break;
    default:
      c.filter.predicates = {kPredicates[0], kPredicates[1]};
      c.filter.experiencer = epistemics::Experiencer::Family;
  }
  return c;
}

struct OracleDiff {
  std::set<std::int64_t> added, removed, shared;
};

// Per-admission concept membership by direct enumeration over the concept
// universe; no set algorithms from the library under test.
inline OracleDiff brute_force_change(const ChangeCase& c) {
  OracleDiff d;
  if (c.admission_order.size() < 2) return d;
  auto in = [&](const std::string& h, std::int64_t concept_id) {
    for (const auto& r : c.raw) {
      if (r.hadm != h || r.concept_id != concept_id) continue;
      if (!c.filter.predicates.empty() && !c.filter.predicates.count(r.predicate)) continue;
      if (c.filter.experiencer && *c.filter.experiencer != r.experiencer) continue;
      return true;
    }
    return false;
  };
  for (std::int64_t concept_id = 100; concept_id < 110; ++concept_id) {
    const bool early = in(c.admission_order[0], concept_id);
    const bool late = in(c.admission_order[1], concept_id);
    if (late && !early) d.added.insert(concept_id);
    if (early && !late) d.removed.insert(concept_id);
    if (early && late) d.shared.insert(concept_id);
  }
  return d;
}

inline std::set<std::int64_t> raw_ids(const std::set<ConceptId>& s) {
  std::set<std::int64_t> out;
  for (auto c : s) out.insert(c.value);
  return out;
}

// True when route_change agrees with the oracle on admission order and on
// every one of the added / removed / shared sets.
inline bool change_matches_oracle(const ChangeCase& c, std::string* why = nullptr) {
  const auto snap = c.graph->snapshot();
  const auto report = router::route_change(*snap, c.filter);
  const auto oracle = brute_force_change(c);
  if (report.admissions != c.admission_order) {
    if (why) *why = "admission order differs";
    return false;
  }
  if (c.admission_order.size() < 2) {
    if (!report.single_admission || !report.pairs.empty()) {
      if (why) *why = "expected a single-admission report";
      return false;
    }
    return true;
  }
  if (report.pairs.size() != 1) {
    if (why) *why = "expected exactly one admission pair";
    return false;
  }
  const auto& p = report.pairs[0];
  const bool ok = raw_ids(p.added) == oracle.added && raw_ids(p.removed) == oracle.removed &&
                  raw_ids(p.shared) == oracle.shared;
  if (!ok && why) *why = "A/R/S sets differ";
  return ok;
}

// A questions file in the shipped JSONL layout: `n` questions cycling through
// the nine categories with exactly `change` of them in the change category.
// Returns the qids of `listed` non-change items flagged for exclusion.
inline std::vector<std::string> write_question_fixture(const std::filesystem::path& path, std::size_t n,
                                                       std::size_t change, std::size_t listed) {
  static const char* kOther[] = {"negation",     "conditional", "uncertainty", "family_history",
                                 "sequence",     "current_state", "duration",  "historical"};
  std::ofstream out(path, std::ios::binary);
  std::vector<std::string> flagged;
  for (std::size_t i = 0; i < n; ++i) {
    char qid[16];
    std::snprintf(qid, sizeof qid, "q%04zu", i + 1);
    const bool is_change = i % (n / change) == 0 && i / (n / change) < change;
    const std::string category = is_change ? "change" : kOther[i % 8];
    const std::string task = is_change ? "B" : "A";
    out << "{\"qid\":\"" << qid << "\",\"task\":\"" << task << "\",\"category\":\"" << category
        << "\",\"patient_id\":\"P" << (i % 43) << "\",\"admission_ids\":[\"H" << i << "\"],"
        << "\"question\":\"Question " << qid << "?\",\"expected_answer\":\"answer\"}\n";
    if (!is_change && category == "family_history" && flagged.size() < listed) flagged.push_back(qid);
  }
  return flagged;
}

}  // namespace epikg::testing
