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

#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "epikg/adjudication/http_server.hpp"
#include "epikg/adjudication/rubric.hpp"
#include "epikg/adjudication/service.hpp"
#include "epikg/core/errors.hpp"
#include "support/fixtures.hpp"

using namespace epikg;
using namespace epikg::adjudication;

namespace {

const char* kFirst = "C1";
const char* kSecond = "C4g_kw";

std::vector<AdjudicationItem> make_items(std::size_t n) {
  std::vector<AdjudicationItem> out;
  for (std::size_t i = 0; i < n; ++i) {
    const std::string id = "item-" + std::to_string(1000 + i);
    out.push_back({id, "Does the patient have cough? (" + id + ")", "No cough.", "Patient denies cough.",
                   {kFirst, "Cannot determine."},
                   {kSecond, "ABSENT: cough. The patient denies cough."}});
  }
  return out;
}

ServiceConfig config(const std::filesystem::path& dir) {
  ServiceConfig c;
  c.store_dir = dir;
  c.admin_token = "admin-secret";
  c.rater_tokens = {{"R1", "tok1"}, {"R2", "tok2"}, {"R3", "tok3"}};
  return c;
}

AdjudicationService::Now fixed_now() {
  return [] { return std::string("2026-01-01T00:00:00Z"); };
}

std::map<std::string, std::string> full_fields(const std::string& item, const std::string& slot,
                                               const std::string& correctness = "correct") {
  return {{"item_id", item},         {"slot", slot},        {"gold_correctness", "correct"},
          {"model_correctness", correctness}, {"score_fairness", "agree"}, {"safety", "safe"},
          {"utility", "helpful"}};
}

}  // namespace

TEST_CASE("rubric validation") {
  CHECK(allowed_values("utility").size() == 4);
  const auto r = parse_rating(full_fields("i1", "A", "partial"));
  CHECK(r.model_correctness == ModelCorrectness::Partial);
  auto missing = full_fields("i1", "A");
  missing.erase("safety");
  missing.erase("utility");
  try {
    parse_rating(missing);
    FAIL("incomplete rating accepted");
  } catch (const ValidationError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("safety") != std::string::npos);
    CHECK(msg.find("utility") != std::string::npos);
  }
  auto bad = full_fields("i1", "C");
  CHECK_THROWS_AS(parse_rating(bad), ValidationError);
  bad = full_fields("i1", "A", "mostly");
  CHECK_THROWS_AS(parse_rating(bad), ValidationError);
  CHECK(parse_rating(rating_fields(r)).model_correctness == r.model_correctness);
}

TEST_CASE("session assignments survive a restart and are balanced") {
  const auto dir = testing::scratch_dir("adj-restart");
  const auto items = make_items(100);
  std::vector<std::string> ids;
  for (const auto& it : items) ids.push_back(it.item_id);

  Session before;
  {
    AdjudicationService svc(items, config(dir), fixed_now());
    before = svc.create_session("R1", ids, std::string("blind-7"));
    const auto next = svc.next_item(before.session_id);
    REQUIRE(next);
    svc.submit_rating(before.session_id, parse_rating(full_fields(next->item_id, "A")));
  }
  AdjudicationService again(items, config(dir), fixed_now());
  const Session& after = again.session(before.session_id);
  CHECK(after.order == before.order);
  CHECK(after.a_is_first == before.a_is_first);
  CHECK(after.ratings.size() == 1);
  // The next item is the one still missing slot B.
  CHECK(again.next_item(before.session_id)->item_id == before.order.front());

  // Same seed in a fresh store: same assignment.
  AdjudicationService fresh(items, config(testing::scratch_dir("adj-fresh")), fixed_now());
  const auto twin = fresh.create_session("R1", ids, std::string("blind-7"));
  CHECK(twin.order == before.order);
  CHECK(twin.a_is_first == before.a_is_first);
  CHECK(twin.session_id == before.session_id);

  CHECK(before.a_is_first.size() >= 40);
  CHECK(before.a_is_first.size() <= 60);
  const auto other = fresh.create_session("R2", ids, std::string("blind-8"));
  CHECK(other.order != before.order);

  CHECK_THROWS_AS(fresh.create_session("R1", ids, std::string("blind-9")), ConflictError);
  CHECK_THROWS_AS(fresh.create_session("R3", {"nope"}), ValidationError);
}

TEST_CASE("ratings require a served item and replace earlier ones") {
  const auto dir = testing::scratch_dir("adj-submit");
  AdjudicationService svc(make_items(3), config(dir), fixed_now());
  const auto s = svc.create_session("R1", svc.item_ids());
  CHECK_THROWS_AS(svc.submit_rating(s.session_id, parse_rating(full_fields(s.order[1], "A"))), ValidationError);
  const auto item = svc.next_item(s.session_id);
  const auto first = svc.submit_rating(s.session_id, parse_rating(full_fields(item->item_id, "A")));
  CHECK_FALSE(first.replaced);
  const auto second = svc.submit_rating(s.session_id, parse_rating(full_fields(item->item_id, "A", "incorrect")));
  CHECK(second.replaced);
  CHECK(second.revision == 1);
  CHECK(second.progress.rated_answers == 1);
  CHECK(second.progress.tallies.at("model_correctness").at("incorrect") == 1);
  CHECK(second.progress.tallies.at("model_correctness").at("correct") == 0);
}

// Eight (item, condition) units rated by three raters. Category counts per
// unit (correct, partial, incorrect):
//   [3,0,0] [2,1,0] [0,0,3] [1,0,2] [1,2,0] [3,0,0] [0,1,2] [2,0,1]
// Column shares p = 12/24, 4/24, 8/24; P_e = (144 + 16 + 64) / 576 = 7/18.
// Per-unit agreement P_i = 1, 1/3, 1, 1/3, 1/3, 1, 1/3, 1/3, mean 7/12.
// kappa = (7/12 - 7/18) / (1 - 7/18) = 7/22.
TEST_CASE("keyed export deblinds and its Fleiss kappa matches the hand value") {
  const auto dir = testing::scratch_dir("adj-fleiss");
  const auto items = make_items(4);
  AdjudicationService svc(items, config(dir), fixed_now());
  const std::vector<std::string> units = {"CCC", "CCP", "III", "CII", "PPC", "CCC", "IPI", "CIC"};
  const std::map<char, std::string> scale = {{'C', "correct"}, {'P', "partial"}, {'I', "incorrect"}};
  const char* raters[] = {"R1", "R2", "R3"};
  for (int r = 0; r < 3; ++r) {
    const auto s = svc.create_session(raters[r], svc.item_ids(), std::string("shared-seed"));
    while (auto item = svc.next_item(s.session_id)) {
      const std::size_t k = static_cast<std::size_t>(std::stoi(item->item_id.substr(5)) - 1000);
      const bool a_first = svc.session(s.session_id).a_is_first.count(item->item_id) > 0;
      for (const char* slot : {"A", "B"}) {
        const bool is_first = (std::string(slot) == "A") == a_first;
        const char v = units[2 * k + (is_first ? 0 : 1)][r];
        svc.submit_rating(s.session_id, parse_rating(full_fields(item->item_id, slot, scale.at(v))));
      }
    }
  }
  const auto blind = svc.export_ratings(std::nullopt);
  CHECK_FALSE(blind.keyed);
  for (const auto& row : blind.rows) CHECK_FALSE(row.condition.has_value());
  CHECK_FALSE(blind.agreement.has_value());

  const auto keyed = svc.export_ratings(blinding_key("shared-seed"));
  CHECK(keyed.keyed);
  CHECK(keyed.rows.size() == 24);
  for (const auto& row : keyed.rows) CHECK(row.condition.has_value());
  REQUIRE(keyed.agreement.has_value());
  CHECK(keyed.agreement->raters == 3);
  CHECK(keyed.agreement->units == 8);
  REQUIRE(keyed.agreement->fleiss_kappa.has_value());
  CHECK(std::abs(*keyed.agreement->fleiss_kappa - 7.0 / 22.0) < 1e-9);
  // Majority strictly correct: C1 units 1,3,5,7 -> CCC, III, PPC, IPI; C4g_kw -> CCP, CII, CCC, CIC.
  CHECK(keyed.agreement->majority_strict.at(kFirst) == std::make_pair<std::size_t, std::size_t>(1, 4));
  CHECK(keyed.agreement->majority_strict.at(kSecond) == std::make_pair<std::size_t, std::size_t>(3, 4));
  CHECK_THROWS_AS(svc.export_ratings(std::string("wrong-key")), AuthError);
}

namespace {

struct RunningServer {
  AdjudicationServer server;
  int port;
  std::thread thread;
  explicit RunningServer(AdjudicationService& svc) : server(svc), port(server.bind_to_any_port("127.0.0.1")) {
    thread = std::thread([this] { server.listen_after_bind(); });
    server.wait_until_ready();
  }
  ~RunningServer() {
    server.stop();
    thread.join();
  }
};

httplib::Headers bearer(const std::string& token) { return {{"Authorization", "Bearer " + token}}; }

}  // namespace

TEST_CASE("http api: unkeyed responses never reveal a condition") {
  const auto dir = testing::scratch_dir("adj-http");
  AdjudicationService svc(make_items(6), config(dir), fixed_now());
  RunningServer running(svc);
  httplib::Client cli("127.0.0.1", running.port);

  std::vector<std::string> bodies;
  auto keep = [&](const httplib::Result& r) {
    REQUIRE(r);
    bodies.push_back(r->body);
    for (const auto& [k, v] : r->headers) bodies.push_back(k + ": " + v);
    return r->status;
  };

  CHECK(keep(cli.Get("/api/rubric")) == 200);
  CHECK(keep(cli.Post("/api/sessions", R"({"rater_id":"R1"})", "application/json")) == 401);
  auto created = cli.Post("/api/sessions", bearer("admin-secret"), R"({"rater_id":"R1","seed":"s1"})",
                          "application/json");
  CHECK(keep(created) == 201);
  const std::string sid = nlohmann::json::parse(created->body)["session_id"];
  const std::string base = "/api/sessions/" + sid;

  CHECK(keep(cli.Get(base + "/next")) == 401);
  CHECK(keep(cli.Get(base + "/next", bearer("tok2"))) == 401);
  CHECK(keep(cli.Get("/api/sessions/s-unknown/next", bearer("tok1"))) == 401);
  CHECK(keep(cli.Post(base + "/ratings", bearer("tok1"), R"({"item_id":"item-1000","slot":"A"})",
                      "application/json")) == 400);
  CHECK(keep(cli.Post(base + "/ratings", bearer("tok1"), "{not json", "application/json")) == 400);

  for (int guard = 0; guard < 20; ++guard) {
    auto next = cli.Get(base + "/next", bearer("tok1"));
    CHECK(keep(next) == 200);
    const auto j = nlohmann::json::parse(next->body);
    if (j["done"].get<bool>()) break;
    const std::string item = j["item"]["item_id"];
    CHECK(j["item"]["answers"].contains("A"));
    for (const char* slot : {"A", "B"}) {
      nlohmann::json body = full_fields(item, slot);
      CHECK(keep(cli.Post(base + "/ratings", bearer("tok1"), body.dump(), "application/json")) == 200);
    }
    CHECK(keep(cli.Get(base + "/progress", bearer("tok1"))) == 200);
  }
  CHECK(keep(cli.Get("/api/export")) == 401);
  CHECK(keep(cli.Get("/api/export", bearer("admin-secret"))) == 200);
  CHECK(keep(cli.Get("/api/export?key=nope", bearer("admin-secret"))) == 403);

  REQUIRE(bodies.size() > 20);
  for (const auto& b : bodies) {
    INFO(b);
    CHECK(b.find(kFirst) == std::string::npos);
    CHECK(b.find(kSecond) == std::string::npos);
  }

  // Only the keyed export carries the conditions.
  auto keyed = cli.Get("/api/export?key=" + blinding_key("s1"), bearer("admin-secret"));
  REQUIRE(keyed);
  CHECK(keyed->status == 200);
  CHECK(keyed->body.find(kSecond) != std::string::npos);
  const auto j = nlohmann::json::parse(keyed->body);
  CHECK(j["keyed"].get<bool>());
}
