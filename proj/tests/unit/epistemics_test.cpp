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

#include <array>

#include "epikg/app/commands.hpp"
#include "epikg/core/errors.hpp"
#include "epikg/epistemics/classifier.hpp"
#include "epikg/epistemics/information.hpp"
#include "epikg/epistemics/lexicon.hpp"
#include "epikg/epistemics/mentions.hpp"
#include "epikg/epistemics/patterns.hpp"
#include "support/fixtures.hpp"

using namespace epikg;
using namespace epikg::epistemics;

namespace {

const PatternInventory& inventory() {
  static const PatternInventory inv = PatternInventory::load(testing::data_dir() / "epistemics/triggers.txt");
  return inv;
}

const Lexicon& lexicon() {
  static const Lexicon lex = Lexicon::load(testing::data_dir() / "vocabulary.json");
  return lex;
}

CharSpan span_of(std::string_view sentence, std::string_view word) {
  const auto b = sentence.find(word);
  REQUIRE(b != std::string_view::npos);
  return {b, b + word.size()};
}

Assertion label(std::string_view sentence, std::string_view concept_text) {
  return classify_assertion(sentence, span_of(sentence, concept_text), inventory()).label;
}

}  // namespace

TEST_CASE("label names round-trip") {
  for (Assertion a : kAllAssertions) CHECK(parse_assertion(to_string(a)) == a);
  for (Temporality t : kAllTemporalities) CHECK(parse_temporality(to_string(t)) == t);
  for (Experiencer e : kAllExperiencers) CHECK(parse_experiencer(to_string(e)) == e);
  CHECK(parse_assertion("family history") == Assertion::FamilyHistory);
  CHECK_THROWS_AS(parse_assertion("negated"), std::invalid_argument);
}

TEST_CASE("assertion classifier on note sentences") {
  CHECK(label("Patient denies chest pain.", "chest pain") == Assertion::Absent);
  CHECK(label("No evidence of pulmonary embolism.", "pulmonary embolism") == Assertion::Absent);
  CHECK(label("Possible heart failure.", "heart failure") == Assertion::Possible);
  CHECK(label("Start warfarin if atrial fibrillation recurs.", "warfarin") == Assertion::Conditional);
  CHECK(label("History of myocardial infarction.", "myocardial infarction") == Assertion::Historical);
  CHECK(label("Chest x-ray confirmed pneumonia.", "pneumonia") == Assertion::Present);
  // A trigger does not reach past a clause terminator.
  CHECK(label("Denies fever; pneumonia confirmed.", "pneumonia") == Assertion::Present);
}

TEST_CASE("family history is not swallowed by history of") {
  const std::string s = "Family history of colon cancer.";
  CHECK(label(s, "colon cancer") == Assertion::FamilyHistory);
  CHECK(classify_experiencer(s, span_of(s, "colon cancer"), "", inventory()) == Experiencer::Family);
}

TEST_CASE("present mention in a family history section becomes family history") {
  const auto m = extract_mentions("Mother with breast cancer.", "Family History", lexicon(), inventory());
  REQUIRE(m.size() == 1);
  CHECK(m[0].experiencer == Experiencer::Family);
  CHECK(m[0].assertion == Assertion::FamilyHistory);
}

TEST_CASE("classifier rejects spans outside the sentence") {
  CHECK_THROWS_AS(classify_assertion("short", {2, 40}, inventory()), std::out_of_range);
  CHECK_THROWS_AS(classify_assertion("short", {2, 2}, inventory()), std::out_of_range);
}

TEST_CASE("inventory line format errors carry the line number") {
  try {
    PatternInventory::parse("denies | assertion:absent | 0.9\nbogus line\n", "inv.txt");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  CHECK_THROWS_AS(PatternInventory::parse("x | assertion:absent | 1.5\n", "inv.txt"), ParseError);
}

TEST_CASE("published inventory ranges") {
  CHECK(kPublishedInventorySize == 122);
  std::size_t total = 0;
  for (Assertion a : kAllAssertions) total += published_count(a);
  CHECK(total == 122);
}

TEST_CASE("lexicon matches the longest term and synonyms") {
  const auto m = lexicon().match("Readmitted with congestive heart failure, on dialysis.");
  REQUIRE(m.size() == 2);
  CHECK(m[0].concept_id == ConceptId(316139));
  CHECK(m[1].concept_id == ConceptId(4146536));
  CHECK(lexicon().match("heartfailure").empty());
}

TEST_CASE("faithfulness bound and entropy") {
  CHECK(faithfulness_bound(0.157) == doctest::Approx(0.843).epsilon(1e-15));
  CHECK(1.0 - 0.157 == faithfulness_bound(0.157));
  CHECK_THROWS_AS(faithfulness_bound(1.5), std::domain_error);
  const std::array<std::int64_t, 6> counts = {3325, 442, 94, 71, 8, 3};
  CHECK(assertion_entropy(counts) == doctest::Approx(0.8201966495997967).epsilon(1e-12));
  const std::array<std::int64_t, 2> collapsed = {10, 0};
  CHECK(assertion_entropy(collapsed) == 0.0);
  const std::array<std::int64_t, 2> none = {0, 0};
  CHECK_THROWS_AS(assertion_entropy(none), std::domain_error);
}

// Hand count over the shipped notes: every mention a clinician would read as
// anything other than a plain present finding. "Scheduled for" and "status
// post" are temporal cues, not assertions, so those mentions stay present.
//   P001: possible HF, denies chest pain, hx MI, mother breast cancer, no PE,
//         warfarin if AF (2), hx pneumonia, screening for diabetes    9 of 21
//   P002: concerning for PE, former smoking, father colon cancer, PE ruled
//         out, hemodialysis if, denies fever, risk of GI bleed        7 of 18
//   P003: likely HF, remote GI bleed, sister depression, no MI, risk of PE,
//         denies chest pain, amoxicillin if fever (2)                  8 of 20
//   P004: mother diabetes, brother MI, no cellulitis, possible pneumonia,
//         denies fever, amoxicillin if                                6 of 16
TEST_CASE("fixture non-present fraction matches the hand count") {
  const auto cfg = app::default_config(testing::data_dir(), testing::scratch_dir("np"));
  const auto ws = app::load_workspace(cfg);
  const auto r = app::ingest(ws.corpus, ws.lexicon, ws.inventory, ws.edge_types, ws.node_types);
  const std::map<std::string, std::pair<std::size_t, std::size_t>> hand = {
      {"P001", {9, 21}}, {"P002", {7, 18}}, {"P003", {8, 20}}, {"P004", {6, 16}}};
  std::size_t np = 0, total = 0;
  for (const auto& p : r.patients) {
    INFO(p.patient_id);
    REQUIRE(hand.count(p.patient_id));
    CHECK(p.non_present == hand.at(p.patient_id).first);
    CHECK(p.mentions == hand.at(p.patient_id).second);
    CHECK(p.violations.empty());
    np += p.non_present;
    total += p.mentions;
  }
  CHECK(non_present_fraction(np, total) == doctest::Approx(30.0 / 75.0).epsilon(1e-15));
}
