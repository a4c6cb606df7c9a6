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

#include "epikg/router/evidence.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "epikg/core/errors.hpp"
#include "epikg/core/text.hpp"
#include "epikg/kgraph/materialize.hpp"

namespace epikg::router {
namespace {

std::string node_label(const kgraph::GraphSnapshot& g, const std::string& id) {
  const kgraph::Node* n = g.node(id);
  return n ? n->label : id;
}

std::string fixed2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

}  // namespace

std::string concept_label(const kgraph::GraphSnapshot& g, ConceptId c) {
  if (const kgraph::Node* n = g.node(kgraph::concept_node_id(c))) return n->label;
  return "concept " + to_string(c);
}

std::string format_edge_line(const kgraph::GraphSnapshot& g, const kgraph::TemporalEdge& e,
                             LineStyle style) {
  const kgraph::Node* src = g.node(e.source);
  std::string subject = node_label(g, e.target);
  if (src && src->type != kgraph::kPatientNodeType) subject = src->label + " -> " + subject;

  std::string date = "unknown";
  if (e.valid.event_date) {
    date = e.valid.event_date->iso();
  } else if (e.transaction.doc_date) {
    date = e.transaction.doc_date->iso();
  }
  std::vector<std::string> meta = {e.predicate};
  if (style == LineStyle::Labeled) {
    meta.push_back("experiencer=" + std::string(to_string(e.experiencer)));
    meta.push_back("temporality=" + std::string(to_string(e.temporality)));
  }
  meta.push_back("date=" + date);
  meta.push_back("hadm=" + e.hadm_id.value_or("none"));
  if (style == LineStyle::Labeled) meta.push_back("conf=" + fixed2(e.confidence));
  meta.push_back("doc=" + e.provenance);

  const std::string head =
      style == LineStyle::Labeled ? std::string(to_string(e.assertion)) : std::string(kFactLabel);
  return head + ": " + subject + " [" + text::join(meta, " | ") + "]";
}

std::string format_not_found(std::string_view label) {
  return std::string(kNotFoundLabel) + ": " + std::string(label) + " [not found in current records]";
}

std::string render_graph_block(const EvidenceBundle& bundle) {
  std::string out(kGraphBegin);
  out += '\n';
  if (bundle.lines.empty()) {
    out += kNoGraphEvidence;
    out += '\n';
  }
  for (const auto& l : bundle.lines) {
    out += l.text;
    out += '\n';
  }
  out += kGraphEnd;
  return out;
}

std::string render_documents_block(const std::vector<EvidenceDocument>& docs) {
  std::string out(kDocumentsBegin);
  out += '\n';
  if (docs.empty()) {
    out += kNoDocuments;
    out += '\n';
  }
  for (const auto& d : docs) {
    out += "[doc " + d.doc_id + " | " + d.doc_type + " | " + d.date + " | hadm=" + d.hadm_id + "]\n";
    out += d.text;
    if (d.text.empty() || d.text.back() != '\n') out += '\n';
  }
  out += kDocumentsEnd;
  return out;
}

TemplateSet::TemplateSet(std::map<std::string, std::string> templates)
    : templates_(std::move(templates)) {}

TemplateSet TemplateSet::load_dir(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir))
    throw ConfigError("template directory " + dir.string() + " does not exist");
  std::map<std::string, std::string> t;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.path().extension() != ".txt") continue;
    std::ifstream in(entry.path(), std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    t[entry.path().stem().string()] = ss.str();
  }
  return TemplateSet(std::move(t));
}

const std::string& TemplateSet::get(const std::string& id) const {
  auto it = templates_.find(id);
  if (it == templates_.end()) throw ConfigError("no prompt template registered as '" + id + "'");
  return it->second;
}

std::string template_for(Intent i) { return std::string(to_string(i)); }

std::string compose_evidence(const EvidenceBundle& bundle, const std::vector<EvidenceDocument>& docs,
                             const TemplateSet& templates, std::string_view question) {
  const std::string id = bundle.template_id.empty() ? template_for(bundle.intent) : bundle.template_id;
  return text::substitute(templates.get(id), {{"question", std::string(question)},
                                              {"intent", std::string(to_string(bundle.intent))},
                                              {"graph_evidence", render_graph_block(bundle)},
                                              {"documents", render_documents_block(docs)}});
}

}  // namespace epikg::router
