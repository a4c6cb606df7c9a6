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

#include "epikg/bench/context.hpp"

#include "epikg/bench/tfidf.hpp"
#include "epikg/core/errors.hpp"
#include "epikg/core/text.hpp"

namespace epikg::bench {
namespace {

using router::EvidenceBundle;
using router::EvidenceDocument;
using router::Intent;

const std::vector<Note>& require_notes(const PatientData& p, const Question& q) {
  if (!p.notes || p.notes->empty())
    throw DataError("no notes for patient " + q.patient_id + " (question " + q.qid + ")");
  return *p.notes;
}

const kgraph::GraphSnapshot& require_graph(const PatientData& p, const Question& q) {
  if (!p.graph) throw DataError("no graph for patient " + q.patient_id + " (question " + q.qid + ")");
  return *p.graph;
}

std::string documents_prompt(const std::vector<EvidenceDocument>& docs, const Question& q,
                             const BenchResources& res) {
  return text::substitute(res.templates->get(kDocumentsTemplate),
                          {{"question", q.question}, {"documents", router::render_documents_block(docs)}});
}

std::string doc_ids(const std::vector<EvidenceDocument>& docs) {
  std::vector<std::string> ids;
  for (const auto& d : docs) ids.push_back(d.doc_id + (d.doc_type.rfind("chunk", 0) == 0 ? "#" + d.doc_type : ""));
  return "documents: " + text::join(ids, ", ");
}

std::vector<EvidenceDocument> rag_chunks(const std::vector<Note>& notes, const Question& q, bool dense) {
  std::vector<std::string> texts;
  std::vector<EvidenceDocument> meta;
  for (const auto& n : notes) {
    const auto chunks = chunk_text(n.body);
    for (std::size_t i = 0; i < chunks.size(); ++i) {
      texts.push_back(chunks[i]);
      meta.push_back({n.doc_id, "chunk " + std::to_string(i), n.doc_date.iso(), n.hadm_id, chunks[i]});
    }
  }
  if (texts.empty()) return {};
  std::vector<Ranked> top = dense ? HashEmbeddingIndex(texts).retrieve(q.question, kRagChunks)
                                  : TfidfIndex(texts).retrieve(q.question, kRagChunks);
  std::vector<EvidenceDocument> out;
  for (const auto& r : top) out.push_back(meta[r.index]);
  return out;
}

std::vector<EvidenceDocument> top_notes(const std::vector<Note>& notes, const Question& q, std::size_t k) {
  std::vector<std::string> bodies;
  for (const auto& n : notes) bodies.push_back(n.body);
  std::vector<EvidenceDocument> out;
  for (const auto& r : TfidfIndex(bodies).retrieve(q.question, k)) out.push_back(to_evidence(notes[r.index]));
  return out;
}

std::vector<EvidenceDocument> all_notes(const std::vector<Note>& notes) {
  std::vector<EvidenceDocument> out;
  for (const auto& n : notes) out.push_back(to_evidence(n));
  return out;
}

EvidenceBundle routed_bundle(const Condition& c, const kgraph::GraphSnapshot& g, const Question& q,
                             const BenchResources& res) {
  const auto concepts = question_concepts(q, *res.lexicon);
  const auto relevant = router::relevant_edge_types(q.question, *res.rules);
  router::DefaultOptions opts = res.default_options;
  opts.style = c.assertions ? router::LineStyle::Labeled : router::LineStyle::Unlabeled;
  if (c.routing == Routing::None) return router::route_default(g, concepts, relevant, opts);

  const auto route = router::route_for(q.question,
                                       c.routing == Routing::Oracle ? router::IntentMode::Oracle
                                                                    : router::IntentMode::Keyword,
                                       q.category, *res.rules);
  router::EdgeFilter filter;
  filter.experiencer = route.experiencer;
  switch (route.intent) {
    case Intent::Change: {
      filter.predicates = relevant;
      return router::change_bundle(g, router::route_change(g, filter), filter);
    }
    case Intent::CurrentState: return router::route_current_state(g, concepts, filter);
    case Intent::Historical: return router::route_historical(g, concepts, filter);
    case Intent::Default: break;
  }
  return router::route_default(g, concepts, relevant, opts, filter);
}

}  // namespace

std::set<ConceptId> question_concepts(const Question& q, const epistemics::Lexicon& lexicon) {
  std::set<ConceptId> out;
  for (const auto& m : lexicon.match(q.question)) out.insert(m.concept_id);
  return out;
}

std::string deterministic_answer(const kgraph::GraphSnapshot& g, const std::set<ConceptId>& concepts) {
  std::vector<std::string> lines;
  for (const auto& e : g.edges()) {
    if (!router::is_patient_fact(g, e)) continue;
    const auto c = g.edge_concept(e);
    if (c && concepts.count(*c)) lines.push_back(router::format_edge_line(g, e, router::LineStyle::Labeled));
  }
  if (lines.empty()) return kNoEdgesAnswer;
  return text::join(lines, "\n");
}

BuiltContext build_context(const Condition& c, const PatientData& patient, const Question& q,
                           const BenchResources& res) {
  BuiltContext out;
  switch (c.retrieval) {
    case RetrievalMode::None:
      out.prompt = q.question;
      return out;
    case RetrievalMode::DischargeOnly: {
      std::vector<EvidenceDocument> docs;
      for (const auto& n : require_notes(patient, q)) {
        if (n.doc_type == "discharge_summary") docs.push_back(to_evidence(n));
      }
      if (docs.empty()) throw DataError("no discharge summary for patient " + q.patient_id);
      out.prompt = documents_prompt(docs, q, res);
      out.evidence = doc_ids(docs);
      return out;
    }
    case RetrievalMode::Tfidf:
    case RetrievalMode::DenseStub: {
      const auto docs = rag_chunks(require_notes(patient, q), q, c.retrieval == RetrievalMode::DenseStub);
      out.prompt = documents_prompt(docs, q, res);
      out.evidence = doc_ids(docs);
      return out;
    }
    case RetrievalMode::AllNotes: {
      const auto docs = all_notes(require_notes(patient, q));
      out.prompt = documents_prompt(docs, q, res);
      out.evidence = doc_ids(docs);
      return out;
    }
    case RetrievalMode::GraphAndDocs: {
      const auto& g = require_graph(patient, q);
      const auto& notes = require_notes(patient, q);
      EvidenceBundle bundle = routed_bundle(c, g, q, res);
      // A concept with no node in the graph is named from the vocabulary.
      for (auto& line : bundle.lines) {
        if (line.kind != router::LineKind::NotFound || !line.concept_id) continue;
        if (const auto* vc = res.lexicon->find(*line.concept_id)) line.text = router::format_not_found(vc->name);
      }
      const auto docs = c.all_notes ? all_notes(notes) : top_notes(notes, q, kGraphDocuments);
      out.intent = bundle.intent;
      out.prompt = router::compose_evidence(bundle, docs, *res.templates, q.question);
      out.evidence = router::render_graph_block(bundle);
      return out;
    }
    case RetrievalMode::Deterministic: {
      const auto& g = require_graph(patient, q);
      out.deterministic = true;
      out.answer = deterministic_answer(g, question_concepts(q, *res.lexicon));
      out.evidence = out.answer;
      return out;
    }
  }
  return out;
}

}  // namespace epikg::bench
