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

#include "epikg/kgraph/graph_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "epikg/core/errors.hpp"

namespace epikg::kgraph {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

template <class T, class F>
ordered_json opt(const std::optional<T>& v, F&& f) {
  return v ? ordered_json(f(*v)) : ordered_json(nullptr);
}

const json& field(const json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) throw SchemaError(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw SchemaError(path + "/" + key, "missing field");
  return *it;
}

std::string str(const json& obj, const char* key, const std::string& path) {
  const json& v = field(obj, key, path);
  if (!v.is_string()) throw SchemaError(path + "/" + key, "expected a string");
  return v.get<std::string>();
}

std::optional<std::string> opt_str(const json& obj, const char* key, const std::string& path) {
  if (!obj.contains(key) || obj[key].is_null()) return std::nullopt;
  if (!obj[key].is_string()) throw SchemaError(path + "/" + key, "expected a string or null");
  return obj[key].get<std::string>();
}

template <class T, class P>
T parse_as(const std::string& s, const std::string& path, P&& parser) {
  try {
    return parser(s);
  } catch (const std::invalid_argument& e) {
    throw SchemaError(path, e.what());
  }
}

std::optional<Date> opt_date(const json& obj, const char* key, const std::string& path) {
  auto s = opt_str(obj, key, path);
  if (!s) return std::nullopt;
  return parse_as<Date>(*s, path + "/" + key, [](const std::string& v) { return Date::parse(v); });
}

std::optional<Timestamp> opt_ts(const json& obj, const char* key, const std::string& path) {
  auto s = opt_str(obj, key, path);
  if (!s) return std::nullopt;
  return parse_as<Timestamp>(*s, path + "/" + key,
                             [](const std::string& v) { return Timestamp::parse(v); });
}

}  // namespace

std::string to_json(const GraphSnapshot& g) {
  ordered_json doc;
  doc["schema_version"] = kGraphSchemaVersion;
  doc["patient_id"] = g.patient_id();
  ordered_json nodes = ordered_json::array();
  for (const Node& n : g.nodes()) {
    ordered_json j;
    j["id"] = n.id;
    j["concept_id"] = n.concept_id ? ordered_json(n.concept_id->value) : ordered_json(nullptr);
    j["label"] = n.label;
    j["type"] = n.type;
    nodes.push_back(std::move(j));
  }
  doc["nodes"] = std::move(nodes);
  ordered_json edges = ordered_json::array();
  auto iso_date = [](const Date& d) { return d.iso(); };
  auto iso_ts = [](const Timestamp& t) { return t.iso(); };
  for (const TemporalEdge& e : g.edges()) {
    ordered_json j;
    j["id"] = e.id.value;
    j["source"] = e.source;
    j["predicate"] = e.predicate;
    j["target"] = e.target;
    j["assertion"] = std::string(to_string(e.assertion));
    j["valid_time"] = {{"event_date", opt(e.valid.event_date, iso_date)},
                       {"valid_from", opt(e.valid.valid_from, iso_date)},
                       {"valid_to", opt(e.valid.valid_to, iso_date)}};
    j["transaction_time"] = {{"recorded_at", opt(e.transaction.recorded_at, iso_ts)},
                             {"doc_date", opt(e.transaction.doc_date, iso_date)},
                             {"created_at", e.transaction.created_at.iso()}};
    j["temporality"] = std::string(to_string(e.temporality));
    j["relation"] = std::string(to_string(e.relation));
    j["confidence"] = e.confidence;
    j["experiencer"] = std::string(to_string(e.experiencer));
    j["hadm_id"] = e.hadm_id ? ordered_json(*e.hadm_id) : ordered_json(nullptr);
    j["provenance"] = e.provenance;
    edges.push_back(std::move(j));
  }
  doc["edges"] = std::move(edges);
  return doc.dump(2) + "\n";
}

std::unique_ptr<PatientGraph> from_json(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw SchemaError("", std::string("invalid JSON: ") + e.what());
  }
  const json& version = field(doc, "schema_version", "");
  if (!version.is_number_integer() || version.get<int>() != kGraphSchemaVersion)
    throw SchemaError("/schema_version", "unsupported schema version");
  auto graph = std::make_unique<PatientGraph>(str(doc, "patient_id", ""));

  const json& nodes = field(doc, "nodes", "");
  if (!nodes.is_array()) throw SchemaError("/nodes", "expected an array");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const std::string path = "/nodes/" + std::to_string(i);
    Node n;
    n.id = str(nodes[i], "id", path);
    const json& cid = field(nodes[i], "concept_id", path);
    if (cid.is_number_integer()) {
      n.concept_id = ConceptId(cid.get<std::int64_t>());
    } else if (!cid.is_null()) {
      throw SchemaError(path + "/concept_id", "expected an integer or null");
    }
    n.label = str(nodes[i], "label", path);
    n.type = str(nodes[i], "type", path);
    try {
      graph->add_node(std::move(n));
    } catch (const ValidationError& e) {
      throw SchemaError(path, e.what());
    }
  }

  const json& edges = field(doc, "edges", "");
  if (!edges.is_array()) throw SchemaError("/edges", "expected an array");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const std::string path = "/edges/" + std::to_string(i);
    const json& j = edges[i];
    TemporalEdge e;
    const json& id = field(j, "id", path);
    if (!id.is_number_unsigned()) throw SchemaError(path + "/id", "expected a positive integer");
    e.id = EdgeId(id.get<std::uint64_t>());
    e.source = str(j, "source", path);
    e.predicate = str(j, "predicate", path);
    e.target = str(j, "target", path);
    e.assertion = parse_as<Assertion>(str(j, "assertion", path), path + "/assertion",
                                      [](const std::string& s) { return epistemics::parse_assertion(s); });
    const std::string vpath = path + "/valid_time";
    const json& vt = field(j, "valid_time", path);
    e.valid.event_date = opt_date(vt, "event_date", vpath);
    e.valid.valid_from = opt_date(vt, "valid_from", vpath);
    e.valid.valid_to = opt_date(vt, "valid_to", vpath);
    const std::string tpath = path + "/transaction_time";
    const json& tt = field(j, "transaction_time", path);
    e.transaction.recorded_at = opt_ts(tt, "recorded_at", tpath);
    e.transaction.doc_date = opt_date(tt, "doc_date", tpath);
    auto created = opt_ts(tt, "created_at", tpath);
    if (!created) throw SchemaError(tpath + "/created_at", "missing field");
    e.transaction.created_at = *created;
    e.temporality = parse_as<Temporality>(str(j, "temporality", path), path + "/temporality",
                                          [](const std::string& s) { return epistemics::parse_temporality(s); });
    e.relation = parse_as<AllenRelation>(str(j, "relation", path), path + "/relation",
                                         [](const std::string& s) { return parse_allen_relation(s); });
    const json& conf = field(j, "confidence", path);
    if (!conf.is_number()) throw SchemaError(path + "/confidence", "expected a number");
    e.confidence = conf.get<double>();
    e.experiencer = parse_as<Experiencer>(str(j, "experiencer", path), path + "/experiencer",
                                          [](const std::string& s) { return epistemics::parse_experiencer(s); });
    e.hadm_id = opt_str(j, "hadm_id", path);
    e.provenance = str(j, "provenance", path);
    try {
      graph->restore_edge(std::move(e));
    } catch (const ValidationError& ex) {
      throw SchemaError(path, ex.what());
    }
  }
  return graph;
}

void save_graph(const GraphSnapshot& g, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write graph file " + path.string());
  out << to_json(g);
  if (!out) throw std::runtime_error("failed writing graph file " + path.string());
}

std::unique_ptr<PatientGraph> load_graph(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open graph file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return from_json(ss.str());
}

}  // namespace epikg::kgraph
