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

#include "epikg/adjudication/http_server.hpp"

#include <httplib.h>
#include <json.hpp>

#include "epikg/core/errors.hpp"

namespace epikg::adjudication {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

ordered_json progress_json(const Progress& p) {
  ordered_json t = ordered_json::object();
  for (const auto& [dim, values] : p.tallies) {
    ordered_json v = ordered_json::object();
    for (const auto& [name, n] : values) v[name] = n;
    t[dim] = std::move(v);
  }
  return {{"session_id", p.session_id},
          {"rater_id", p.rater_id},
          {"total", p.total},
          {"completed_items", p.completed_items},
          {"rated_answers", p.rated_answers},
          {"remaining", p.total - p.completed_items},
          {"tallies", std::move(t)}};
}

ordered_json item_json(const BlindedItem& b) {
  return {{"item_id", b.item_id},
          {"position", b.position},
          {"total", b.total},
          {"question", b.question},
          {"expected_answer", b.expected_answer},
          {"source_note", b.source_note},
          {"answers", {{"A", b.answer_a}, {"B", b.answer_b}}}};
}

ordered_json export_json(const ExportTable& t) {
  ordered_json rows = ordered_json::array();
  for (const auto& r : t.rows) {
    ordered_json row;
    row["session_id"] = r.session_id;
    row["rater_id"] = r.rater_id;
    row["item_id"] = r.item_id;
    row["slot"] = r.slot;
    if (r.condition) row["condition"] = *r.condition;
    for (const char* d : kDimensions) row[d] = rating_fields(r.rating).at(d);
    row["note"] = r.rating.note;
    row["timestamp"] = r.rating.timestamp;
    row["revision"] = r.revision;
    rows.push_back(std::move(row));
  }
  ordered_json completion = ordered_json::array();
  for (const auto& c : t.completion) {
    completion.push_back({{"rater_id", c.rater_id},
                          {"assigned_items", c.assigned_items},
                          {"completed_items", c.completed_items},
                          {"rated_answers", c.rated_answers},
                          {"missing_answers", c.missing_answers}});
  }
  ordered_json out = {{"keyed", t.keyed}, {"rows", std::move(rows)}, {"completion", std::move(completion)}};
  if (t.agreement) {
    const auto& a = *t.agreement;
    ordered_json majority = ordered_json::object();
    for (const auto& [cond, mc] : a.majority_strict) {
      majority[cond] = {{"correct", mc.first},
                        {"units", mc.second},
                        {"accuracy", mc.second ? static_cast<double>(mc.first) / static_cast<double>(mc.second) : 0.0}};
    }
    ordered_json cu = ordered_json::object(), cq = ordered_json::object();
    for (const auto& [k, v] : a.cohen_unweighted) cu[k] = v;
    for (const auto& [k, v] : a.cohen_quadratic) cq[k] = v;
    out["agreement"] = {{"raters", a.raters},
                        {"units", a.units},
                        {"fleiss_kappa", a.fleiss_kappa ? json(*a.fleiss_kappa) : json(nullptr)},
                        {"cohen_kappa", std::move(cu)},
                        {"cohen_kappa_quadratic", std::move(cq)},
                        {"majority_strict", std::move(majority)}};
  }
  return out;
}

std::string bearer(const httplib::Request& req) {
  const std::string h = req.get_header_value("Authorization");
  const std::string prefix = "Bearer ";
  return h.rfind(prefix, 0) == 0 ? h.substr(prefix.size()) : std::string();
}

void reply(httplib::Response& res, int status, const ordered_json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void fail(httplib::Response& res, int status, const std::string& message) {
  reply(res, status, ordered_json{{"error", message}});
}

}  // namespace

struct AdjudicationServer::Impl {
  AdjudicationService& service;
  ServerOptions options;
  httplib::Server server;

  Impl(AdjudicationService& s, ServerOptions o) : service(s), options(std::move(o)) { routes(); }

  template <class F>
  void guarded(httplib::Response& res, F&& f) {
    try {
      f();
    } catch (const AuthError& e) {
      fail(res, 403, e.what());
    } catch (const NotFoundError& e) {
      fail(res, 404, e.what());
    } catch (const ConflictError& e) {
      fail(res, 409, e.what());
    } catch (const ValidationError& e) {
      fail(res, 400, e.what());
    } catch (const json::exception& e) {
      fail(res, 400, std::string("malformed JSON body: ") + e.what());
    } catch (const std::exception& e) {
      fail(res, 500, e.what());
    }
  }

  bool rater_ok(const httplib::Request& req, httplib::Response& res, const std::string& sid) {
    if (service.is_rater(sid, bearer(req))) return true;
    // Unknown sessions and wrong tokens look the same from outside.
    fail(res, 401, "missing or invalid rater token for session " + sid);
    return false;
  }

  void routes() {
    server.set_post_routing_handler([this](const httplib::Request&, httplib::Response& res) {
      res.set_header("Access-Control-Allow-Origin", options.cors_origin);
      res.set_header("Access-Control-Allow-Headers", "Authorization, Content-Type");
      res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
    });
    server.Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });

    server.Get("/api/rubric", [](const httplib::Request&, httplib::Response& res) {
      ordered_json dims = ordered_json::object();
      for (const char* d : kDimensions) dims[d] = allowed_values(d);
      reply(res, 200, dims);
    });

    server.Post("/api/sessions", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] {
        if (!service.is_admin(bearer(req))) return fail(res, 401, "admin token required");
        const json body = json::parse(req.body);
        const std::string rater = body.value("rater_id", std::string());
        std::vector<std::string> items =
            body.contains("items") ? body["items"].get<std::vector<std::string>>() : service.item_ids();
        std::optional<std::string> seed;
        if (body.contains("seed")) seed = body["seed"].is_string() ? body["seed"].get<std::string>() : body["seed"].dump();
        const Session s = service.create_session(rater, items, seed);
        reply(res, 201, {{"session_id", s.session_id}, {"rater_id", s.rater_id}, {"total", s.order.size()},
                         {"created", s.created}});
      });
    });

    server.Get(R"(/api/sessions/([^/]+)/next)", [this](const httplib::Request& req, httplib::Response& res) {
      const std::string sid = req.matches[1];
      if (!rater_ok(req, res, sid)) return;
      guarded(res, [&] {
        const auto item = service.next_item(sid);
        if (!item) return reply(res, 200, {{"done", true}});
        reply(res, 200, {{"done", false}, {"item", item_json(*item)}});
      });
    });

    server.Post(R"(/api/sessions/([^/]+)/ratings)", [this](const httplib::Request& req, httplib::Response& res) {
      const std::string sid = req.matches[1];
      if (!rater_ok(req, res, sid)) return;
      guarded(res, [&] {
        const json body = json::parse(req.body);
        if (!body.is_object()) throw ValidationError("rating must be a JSON object");
        std::map<std::string, std::string> fields;
        for (auto it = body.begin(); it != body.end(); ++it) {
          if (it.value().is_string()) fields[it.key()] = it.value().get<std::string>();
        }
        const auto r = service.submit_rating(sid, parse_rating(fields));
        reply(res, 200, {{"ok", true}, {"replaced", r.replaced}, {"revision", r.revision},
                         {"progress", progress_json(r.progress)}});
      });
    });

    server.Get(R"(/api/sessions/([^/]+)/progress)", [this](const httplib::Request& req, httplib::Response& res) {
      const std::string sid = req.matches[1];
      if (!rater_ok(req, res, sid)) return;
      guarded(res, [&] { reply(res, 200, progress_json(service.progress(sid))); });
    });

    server.Get("/api/export", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] {
        if (!service.is_admin(bearer(req))) return fail(res, 401, "admin token required");
        std::optional<std::string> key;
        if (req.has_param("key")) key = req.get_param_value("key");
        reply(res, 200, export_json(service.export_ratings(key)));
      });
    });
  }
};

AdjudicationServer::AdjudicationServer(AdjudicationService& service, ServerOptions options)
    : impl_(std::make_unique<Impl>(service, std::move(options))) {}

AdjudicationServer::~AdjudicationServer() = default;

bool AdjudicationServer::listen(const std::string& host, int port) { return impl_->server.listen(host, port); }
int AdjudicationServer::bind_to_any_port(const std::string& host) { return impl_->server.bind_to_any_port(host); }
bool AdjudicationServer::listen_after_bind() { return impl_->server.listen_after_bind(); }
void AdjudicationServer::stop() { impl_->server.stop(); }
void AdjudicationServer::wait_until_ready() const { impl_->server.wait_until_ready(); }

}  // namespace epikg::adjudication
