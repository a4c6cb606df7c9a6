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

#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "epikg/adjudication/rubric.hpp"
#include "epikg/adjudication/store.hpp"

namespace epikg::adjudication {

struct AnswerVariant {
  std::string condition;
  std::string answer;
};

struct AdjudicationItem {
  std::string item_id;
  std::string question;
  std::string expected_answer;
  std::string source_note;
  AnswerVariant first;
  AnswerVariant second;
};

// JSONL {item_id, question, expected_answer, source_note,
// answers: [{condition, answer}, {condition, answer}]}.
std::vector<AdjudicationItem> parse_items(std::string_view jsonl, const std::string& source);
std::vector<AdjudicationItem> load_items(const std::filesystem::path& path);
std::string items_jsonl(const std::vector<AdjudicationItem>& items);

// What a rater sees: no condition names anywhere.
struct BlindedItem {
  std::string item_id;
  std::size_t position = 0;  // 1-based
  std::size_t total = 0;
  std::string question;
  std::string expected_answer;
  std::string source_note;
  std::string answer_a;
  std::string answer_b;
};

struct Session {
  std::string session_id;
  std::string rater_id;
  std::string seed;
  std::string created;
  std::vector<std::string> order;      // item ids in presentation order
  std::set<std::string> a_is_first;    // items whose slot A holds `first`
  std::set<std::string> served;
  // (item, slot) -> current rating; earlier versions stay in the log.
  std::map<std::pair<std::string, std::string>, Rating> ratings;
  std::map<std::pair<std::string, std::string>, std::size_t> revisions;
  bool complete() const;
};

struct Progress {
  std::string session_id;
  std::string rater_id;
  std::size_t total = 0;
  std::size_t completed_items = 0;  // both slots rated
  std::size_t rated_answers = 0;
  // dimension -> value -> count over current ratings
  std::map<std::string, std::map<std::string, std::size_t>> tallies;
};

struct SubmitResult {
  bool replaced = false;
  std::size_t revision = 0;  // 0 for a first submission
  Progress progress;
};

struct ExportRow {
  std::string session_id;
  std::string rater_id;
  std::string item_id;
  std::string slot;
  std::optional<std::string> condition;  // keyed export only
  Rating rating;
  std::size_t revision = 0;
};

struct RaterCompletion {
  std::string rater_id;
  std::size_t assigned_items = 0;
  std::size_t completed_items = 0;
  std::size_t rated_answers = 0;
  std::size_t missing_answers = 0;
};

struct AgreementSummary {
  std::size_t raters = 0;
  std::size_t units = 0;  // (item, condition) pairs judged by every rater
  std::optional<double> fleiss_kappa;  // model_correctness, strict three-way scale
  // "r1|r2" -> kappa on model_correctness
  std::map<std::string, double> cohen_unweighted;
  std::map<std::string, double> cohen_quadratic;
  // condition -> (majority strictly correct, units)
  std::map<std::string, std::pair<std::size_t, std::size_t>> majority_strict;
};

struct ExportTable {
  bool keyed = false;
  std::vector<ExportRow> rows;
  std::vector<RaterCompletion> completion;
  std::optional<AgreementSummary> agreement;  // keyed export only
};

class AuthError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class NotFoundError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class ConflictError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ServiceConfig {
  std::filesystem::path store_dir;
  std::string admin_token;
  std::map<std::string, std::string> rater_tokens;  // rater id -> token
  std::string default_seed = "42";
};

std::string blinding_key(const std::string& seed);  // sha256 hex of "epikg-blind-v1:" + seed

// Blinded paired review. Order and A/B assignment depend only on the seed
// and the item ids: items are ranked by a seeded hash, and the first half of
// a second seeded ranking gets the `first` answer in slot A. State is rebuilt
// from the event logs on construction.
class AdjudicationService {
 public:
  using Now = std::function<std::string()>;
  AdjudicationService(std::vector<AdjudicationItem> items, ServiceConfig cfg, Now now = {});

  // ValidationError for an empty or unknown item set; ConflictError when the
  // rater already has an open session.
  Session create_session(const std::string& rater_id, const std::vector<std::string>& item_ids,
                         const std::optional<std::string>& seed = std::nullopt);
  // Next item with an unrated slot, or nothing when the session is done.
  std::optional<BlindedItem> next_item(const std::string& session_id);
  // ValidationError unless the item was served in this session.
  SubmitResult submit_rating(const std::string& session_id, Rating rating);
  Progress progress(const std::string& session_id) const;
  // AuthError when `key` matches no session's blinding key.
  ExportTable export_ratings(const std::optional<std::string>& key) const;

  bool is_admin(const std::string& token) const;
  bool is_rater(const std::string& session_id, const std::string& token) const;
  std::vector<std::string> session_ids() const;
  const Session& session(const std::string& id) const;  // NotFoundError
  std::vector<std::string> item_ids() const;

 private:
  const AdjudicationItem& item(const std::string& id) const;
  Session make_session(const std::string& rater_id, const std::vector<std::string>& ids,
                       const std::string& seed, const std::string& created) const;
  Progress progress_locked(const Session& s) const;
  void replay();

  std::vector<AdjudicationItem> items_;
  std::map<std::string, std::size_t> by_id_;
  ServiceConfig cfg_;
  Now now_;
  std::unique_ptr<EventStore> store_;
  mutable std::mutex mu_;
  std::map<std::string, Session> sessions_;
};

}  // namespace epikg::adjudication
