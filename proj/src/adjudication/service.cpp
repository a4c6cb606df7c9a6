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

#include "epikg/adjudication/service.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "epikg/core/dates.hpp"
#include "epikg/core/digest.hpp"
#include "epikg/core/errors.hpp"
#include "epikg/core/text.hpp"
#include "epikg/stats/agreement.hpp"

namespace epikg::adjudication {
namespace {

std::vector<std::string> ranked(const std::vector<std::string>& ids, const std::string& salt) {
  std::vector<std::pair<std::string, std::string>> keyed;
  for (const auto& id : ids) keyed.emplace_back(sha256_hex(salt + id), id);
  std::sort(keyed.begin(), keyed.end());
  std::vector<std::string> out;
  for (auto& [h, id] : keyed) out.push_back(std::move(id));
  return out;
}

std::string required(const nlohmann::json& j, const char* key, const std::string& source, std::size_t line) {
  if (!j.contains(key) || !j[key].is_string()) throw ParseError(source, line, std::string("missing '") + key + "'");
  return j[key].get<std::string>();
}

}  // namespace

std::string blinding_key(const std::string& seed) { return sha256_hex("epikg-blind-v1:" + seed); }

std::vector<AdjudicationItem> parse_items(std::string_view jsonl, const std::string& source) {
  std::vector<AdjudicationItem> out;
  std::set<std::string> seen;
  std::size_t lineno = 0;
  for (const auto& line : text::split_lines(jsonl)) {
    ++lineno;
    if (text::trim(line).empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(source, lineno, e.what());
    }
    AdjudicationItem it;
    it.item_id = required(j, "item_id", source, lineno);
    it.question = required(j, "question", source, lineno);
    it.expected_answer = required(j, "expected_answer", source, lineno);
    it.source_note = j.value("source_note", std::string());
    if (!j.contains("answers") || !j["answers"].is_array() || j["answers"].size() != 2)
      throw ParseError(source, lineno, "item needs exactly two answers");
    const auto& a = j["answers"];
    it.first = {required(a[0], "condition", source, lineno), required(a[0], "answer", source, lineno)};
    it.second = {required(a[1], "condition", source, lineno), required(a[1], "answer", source, lineno)};
    if (it.first.condition == it.second.condition)
      throw ParseError(source, lineno, "the two answers must come from different conditions");
    if (!seen.insert(it.item_id).second) throw ParseError(source, lineno, "duplicate item " + it.item_id);
    out.push_back(std::move(it));
  }
  return out;
}

std::vector<AdjudicationItem> load_items(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open adjudication items " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_items(ss.str(), path.string());
}

std::string items_jsonl(const std::vector<AdjudicationItem>& items) {
  std::string out;
  for (const auto& it : items) {
    nlohmann::ordered_json j;
    j["item_id"] = it.item_id;
    j["question"] = it.question;
    j["expected_answer"] = it.expected_answer;
    j["source_note"] = it.source_note;
    j["answers"] = nlohmann::ordered_json::array(
        {{{"condition", it.first.condition}, {"answer", it.first.answer}},
         {{"condition", it.second.condition}, {"answer", it.second.answer}}});
    out += j.dump() + "\n";
  }
  return out;
}

bool Session::complete() const {
  for (const auto& id : order) {
    if (!ratings.count({id, "A"}) || !ratings.count({id, "B"})) return false;
  }
  return true;
}

AdjudicationService::AdjudicationService(std::vector<AdjudicationItem> items, ServiceConfig cfg, Now now)
    : items_(std::move(items)), cfg_(std::move(cfg)), now_(std::move(now)) {
  if (!now_) now_ = [] { return Timestamp::now().iso(); };
  for (std::size_t i = 0; i < items_.size(); ++i) by_id_[items_[i].item_id] = i;
  store_ = std::make_unique<EventStore>(cfg_.store_dir);
  replay();
}

const AdjudicationItem& AdjudicationService::item(const std::string& id) const {
  auto it = by_id_.find(id);
  if (it == by_id_.end()) throw ValidationError("unknown item " + id);
  return items_[it->second];
}

Session AdjudicationService::make_session(const std::string& rater_id, const std::vector<std::string>& ids,
                                          const std::string& seed, const std::string& created) const {
  Session s;
  s.rater_id = rater_id;
  s.seed = seed;
  s.created = created;
  s.order = ranked(ids, "order:" + seed + ":");
  const auto ab = ranked(ids, "slot:" + seed + ":");
  for (std::size_t i = 0; i < ab.size() / 2; ++i) s.a_is_first.insert(ab[i]);
  return s;
}

void AdjudicationService::replay() {
  for (auto& [id, events] : store_->load_all()) {
    if (events.empty() || events.front().type != "created")
      throw DataError("session log " + id + " does not start with a created event");
    const Event& c = events.front();
    for (const auto& item_id : c.items) item(item_id);
    Session s = make_session(c.fields.at("rater_id"), c.items, c.fields.at("seed"), c.fields.at("created"));
    s.session_id = id;
    for (std::size_t i = 1; i < events.size(); ++i) {
      const Event& e = events[i];
      if (e.type == "served") {
        s.served.insert(e.fields.at("item_id"));
      } else if (e.type == "rating") {
        Rating r = parse_rating(e.fields);
        r.rater_id = s.rater_id;
        r.timestamp = e.fields.count("timestamp") ? e.fields.at("timestamp") : "";
        const auto key = std::make_pair(r.item_id, r.slot);
        if (s.ratings.count(key)) ++s.revisions[key];
        s.ratings[key] = std::move(r);
      }
    }
    sessions_[id] = std::move(s);
  }
}

Session AdjudicationService::create_session(const std::string& rater_id, const std::vector<std::string>& item_ids,
                                            const std::optional<std::string>& seed) {
  if (rater_id.empty()) throw ValidationError("rater_id must not be empty");
  const std::vector<std::string> ids = item_ids.empty() ? std::vector<std::string>{} : item_ids;
  if (ids.empty()) throw ValidationError("a session needs at least one item");
  std::set<std::string> uniq;
  for (const auto& id : ids) {
    item(id);
    if (!uniq.insert(id).second) throw ValidationError("item " + id + " listed twice");
  }
  std::lock_guard lock(mu_);
  std::size_t previous = 0;
  for (const auto& [id, s] : sessions_) {
    if (s.rater_id != rater_id) continue;
    ++previous;
    if (!s.complete()) throw ConflictError("rater " + rater_id + " already has open session " + id);
  }
  const std::string sd = seed.value_or(cfg_.default_seed);
  Session s = make_session(rater_id, ids, sd, now_());
  s.session_id = "s-" + sha256_hex(rater_id + ":" + sd + ":" + std::to_string(previous)).substr(0, 12);
  Event e{"created", {{"session_id", s.session_id}, {"rater_id", rater_id}, {"seed", sd}, {"created", s.created}}, ids};
  store_->append(s.session_id, e);
  sessions_[s.session_id] = s;
  return s;
}

std::optional<BlindedItem> AdjudicationService::next_item(const std::string& session_id) {
  std::lock_guard lock(mu_);
  auto it = sessions_.find(session_id);
  if (it == sessions_.end()) throw NotFoundError("unknown session " + session_id);
  Session& s = it->second;
  for (std::size_t i = 0; i < s.order.size(); ++i) {
    const std::string& id = s.order[i];
    if (s.ratings.count({id, "A"}) && s.ratings.count({id, "B"})) continue;
    if (!s.served.count(id)) {
      store_->append(session_id, {"served", {{"item_id", id}, {"ts", now_()}}, {}});
      s.served.insert(id);
    }
    const AdjudicationItem& src = item(id);
    const bool a_first = s.a_is_first.count(id) > 0;
    BlindedItem b;
    b.item_id = id;
    b.position = i + 1;
    b.total = s.order.size();
    b.question = src.question;
    b.expected_answer = src.expected_answer;
    b.source_note = src.source_note;
    b.answer_a = a_first ? src.first.answer : src.second.answer;
    b.answer_b = a_first ? src.second.answer : src.first.answer;
    return b;
  }
  return std::nullopt;
}

SubmitResult AdjudicationService::submit_rating(const std::string& session_id, Rating rating) {
  std::lock_guard lock(mu_);
  auto it = sessions_.find(session_id);
  if (it == sessions_.end()) throw NotFoundError("unknown session " + session_id);
  Session& s = it->second;
  if (!s.served.count(rating.item_id))
    throw ValidationError("item " + rating.item_id + " has not been served in session " + session_id);
  rating.rater_id = s.rater_id;
  rating.timestamp = now_();
  auto fields = rating_fields(rating);
  fields.erase("rater_id");
  store_->append(session_id, {"rating", fields, {}});
  const auto key = std::make_pair(rating.item_id, rating.slot);
  SubmitResult r;
  if (s.ratings.count(key)) {
    r.replaced = true;
    r.revision = ++s.revisions[key];
  }
  s.ratings[key] = std::move(rating);
  r.progress = progress_locked(s);
  return r;
}

Progress AdjudicationService::progress_locked(const Session& s) const {
  Progress p;
  p.session_id = s.session_id;
  p.rater_id = s.rater_id;
  p.total = s.order.size();
  for (const auto& id : s.order) {
    const bool a = s.ratings.count({id, "A"}) > 0, b = s.ratings.count({id, "B"}) > 0;
    p.rated_answers += (a ? 1 : 0) + (b ? 1 : 0);
    p.completed_items += (a && b) ? 1 : 0;
  }
  for (const char* d : kDimensions) {
    for (const auto& v : allowed_values(d)) p.tallies[d][v] = 0;
  }
  for (const auto& [key, r] : s.ratings) {
    for (const auto& [k, v] : rating_fields(r)) {
      if (p.tallies.count(k)) ++p.tallies[k][v];
    }
  }
  return p;
}

Progress AdjudicationService::progress(const std::string& session_id) const {
  std::lock_guard lock(mu_);
  auto it = sessions_.find(session_id);
  if (it == sessions_.end()) throw NotFoundError("unknown session " + session_id);
  return progress_locked(it->second);
}

ExportTable AdjudicationService::export_ratings(const std::optional<std::string>& key) const {
  std::lock_guard lock(mu_);
  ExportTable t;
  std::set<std::string> keyed_sessions;
  if (key) {
    for (const auto& [id, s] : sessions_) {
      if (blinding_key(s.seed) == *key) keyed_sessions.insert(id);
    }
    if (keyed_sessions.empty()) throw AuthError("blinding key does not match any session");
    t.keyed = true;
  }
  std::map<std::string, RaterCompletion> completion;
  for (const auto& [id, s] : sessions_) {
    if (t.keyed && !keyed_sessions.count(id)) continue;
    auto& c = completion[s.rater_id];
    c.rater_id = s.rater_id;
    c.assigned_items += s.order.size();
    for (const auto& item_id : s.order) {
      std::size_t rated = 0;
      for (const char* slot : {"A", "B"}) {
        auto r = s.ratings.find({item_id, slot});
        if (r == s.ratings.end()) continue;
        ++rated;
        ExportRow row;
        row.session_id = id;
        row.rater_id = s.rater_id;
        row.item_id = item_id;
        row.slot = slot;
        row.rating = r->second;
        auto rev = s.revisions.find({item_id, slot});
        row.revision = rev == s.revisions.end() ? 0 : rev->second;
        if (t.keyed) {
          const AdjudicationItem& src = item(item_id);
          const bool slot_a_first = s.a_is_first.count(item_id) > 0;
          const bool is_first = (std::string(slot) == "A") == slot_a_first;
          row.condition = is_first ? src.first.condition : src.second.condition;
        }
        t.rows.push_back(std::move(row));
      }
      c.rated_answers += rated;
      c.missing_answers += 2 - rated;
      c.completed_items += rated == 2 ? 1 : 0;
    }
  }
  for (auto& [r, c] : completion) t.completion.push_back(c);
  if (!t.keyed) return t;

  AgreementSummary a;
  std::set<std::string> raters;
  // (item, condition) -> rater -> model_correctness
  std::map<std::pair<std::string, std::string>, std::map<std::string, int>> units;
  for (const auto& row : t.rows) {
    raters.insert(row.rater_id);
    units[{row.item_id, *row.condition}][row.rater_id] = static_cast<int>(row.rating.model_correctness);
  }
  a.raters = raters.size();
  std::vector<std::vector<std::int64_t>> counts;
  for (const auto& [unit, by_rater] : units) {
    if (by_rater.size() != raters.size()) continue;
    ++a.units;
    std::vector<std::int64_t> row(3, 0);
    std::size_t strict = 0;
    for (const auto& [r, v] : by_rater) {
      ++row[static_cast<std::size_t>(v)];
      strict += v == static_cast<int>(ModelCorrectness::Correct) ? 1 : 0;
    }
    counts.push_back(row);
    auto& m = a.majority_strict[unit.second];
    ++m.second;
    m.first += 2 * strict > by_rater.size() ? 1 : 0;
  }
  if (raters.size() >= 2 && !counts.empty()) a.fleiss_kappa = stats::fleiss_kappa(counts);
  const std::vector<std::string> rv(raters.begin(), raters.end());
  for (std::size_t i = 0; i < rv.size(); ++i) {
    for (std::size_t j = i + 1; j < rv.size(); ++j) {
      std::vector<int> x, y;
      for (const auto& [unit, by_rater] : units) {
        auto pi = by_rater.find(rv[i]), pj = by_rater.find(rv[j]);
        if (pi == by_rater.end() || pj == by_rater.end()) continue;
        x.push_back(pi->second);
        y.push_back(pj->second);
      }
      if (x.empty()) continue;
      const std::string pair = rv[i] + "|" + rv[j];
      a.cohen_unweighted[pair] = stats::cohen_kappa(x, y);
      a.cohen_quadratic[pair] = stats::cohen_kappa(x, y, stats::KappaWeighting::Quadratic);
    }
  }
  t.agreement = std::move(a);
  return t;
}

bool AdjudicationService::is_admin(const std::string& token) const {
  return !cfg_.admin_token.empty() && token == cfg_.admin_token;
}

bool AdjudicationService::is_rater(const std::string& session_id, const std::string& token) const {
  std::lock_guard lock(mu_);
  auto it = sessions_.find(session_id);
  if (it == sessions_.end()) return false;
  auto t = cfg_.rater_tokens.find(it->second.rater_id);
  return t != cfg_.rater_tokens.end() && !t->second.empty() && t->second == token;
}

std::vector<std::string> AdjudicationService::session_ids() const {
  std::lock_guard lock(mu_);
  std::vector<std::string> out;
  for (const auto& [id, s] : sessions_) out.push_back(id);
  return out;
}

const Session& AdjudicationService::session(const std::string& id) const {
  std::lock_guard lock(mu_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) throw NotFoundError("unknown session " + id);
  return it->second;
}

std::vector<std::string> AdjudicationService::item_ids() const {
  std::vector<std::string> out;
  for (const auto& it : items_) out.push_back(it.item_id);
  return out;
}

}  // namespace epikg::adjudication
