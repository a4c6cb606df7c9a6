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

#include "epikg/bench/reader_backend.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <vector>

#include "epikg/bench/tfidf.hpp"
#include "epikg/core/dates.hpp"
#include "epikg/core/text.hpp"
#include "epikg/router/evidence.hpp"

namespace epikg::bench {
namespace {

const std::set<std::string> kQuestionStopwords = {
    "a",       "an",   "the",  "and",  "or",      "of",    "to",      "in",       "on",     "at",
    "for",     "with", "by",   "from", "is",      "are",   "was",     "were",     "be",     "been",
    "has",     "have", "had",  "does", "did",     "do",    "what",    "which",    "when",   "how",
    "who",     "whom", "why",  "any",  "there",   "this",  "that",    "patient",  "patients",
    "s",       "it",   "their", "his", "her",     "they",  "currently", "current", "ever",  "long",
    "between", "admission", "admissions", "during", "before", "after", "first",  "history",
    "change",  "changed", "status", "documented", "record", "records", "known", "note", "notes"};

struct ParsedLine {
  std::string label;
  std::string subject;
  std::map<std::string, std::string> meta;
  std::string predicate;
};

struct Prompt {
  std::string question;
  std::vector<std::string> graph;
  std::vector<std::string> documents;  // raw document-block lines
};

Prompt parse_prompt(const std::string& prompt) {
  Prompt p;
  enum { Outside, Graph, Docs } where = Outside;
  for (const auto& raw : text::split_lines(prompt)) {
    const std::string_view line = text::trim(raw);
    if (line == router::kGraphBegin) { where = Graph; continue; }
    if (line == router::kDocumentsBegin) { where = Docs; continue; }
    if (line == router::kGraphEnd || line == router::kDocumentsEnd) { where = Outside; continue; }
    if (where == Graph) {
      if (!line.empty() && line != router::kNoGraphEvidence) p.graph.emplace_back(line);
    } else if (where == Docs) {
      if (!line.empty() && line != router::kNoDocuments) p.documents.emplace_back(line);
    } else if (text::starts_with_icase(line, "question:")) {
      p.question = std::string(text::trim(line.substr(9)));
    }
  }
  if (p.question.empty() && p.graph.empty() && p.documents.empty()) p.question = std::string(text::trim(prompt));
  return p;
}

bool parse_typed(const std::string& line, ParsedLine* out) {
  const auto colon = line.find(": ");
  const auto bracket = line.rfind(" [");
  if (colon == std::string::npos || bracket == std::string::npos || bracket < colon || line.back() != ']')
    return false;
  out->label = line.substr(0, colon);
  out->subject = line.substr(colon + 2, bracket - colon - 2);
  std::string inner = line.substr(bracket + 2, line.size() - bracket - 3);
  std::size_t start = 0, idx = 0;
  while (start <= inner.size()) {
    std::size_t bar = inner.find(" | ", start);
    std::string field = inner.substr(start, bar == std::string::npos ? std::string::npos : bar - start);
    const auto eq = field.find('=');
    if (eq != std::string::npos) {
      out->meta[field.substr(0, eq)] = field.substr(eq + 1);
    } else if (idx == 0) {
      out->predicate = field;
    }
    ++idx;
    if (bar == std::string::npos) break;
    start = bar + 3;
  }
  return true;
}

std::vector<std::string> content_words(const std::string& s) {
  std::vector<std::string> out;
  for (auto& t : terms(s)) {
    if (!kQuestionStopwords.count(t) && std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
  }
  return out;
}

// The subject of a concept-to-concept line is "a -> b".
bool mentions_subject(const std::string& question, const std::string& subject) {
  for (const auto& part : {subject.substr(0, subject.find(" -> ")),
                           subject.find(" -> ") == std::string::npos ? std::string() : subject.substr(subject.find(" -> ") + 4)}) {
    if (!part.empty() && text::contains_word(question, part)) return true;
  }
  return false;
}

std::string restate(const ParsedLine& l) {
  const std::string& s = l.subject;
  if (const auto arrow = s.find(" -> "); arrow != std::string::npos) {
    std::string rel = l.predicate;
    std::replace(rel.begin(), rel.end(), '_', ' ');
    return s.substr(0, arrow) + " " + rel + " " + s.substr(arrow + 4) + ".";
  }
  const std::string when = l.meta.count("date") ? " (" + l.meta.at("date") + ")" : "";
  const std::string tau = l.meta.count("temporality") ? l.meta.at("temporality") : "";
  if (l.label == "ABSENT") return "No " + s + ": it is documented as absent" + when + ".";
  if (l.label == "POSSIBLE") return s + " is possible but not confirmed" + when + ".";
  if (l.label == "CONDITIONAL") return s + " is planned only if its stated conditions are met" + when + ".";
  if (l.label == "HYPOTHETICAL") return s + " is mentioned as a hypothetical that may arise" + when + ".";
  if (l.label == "FAMILY_HISTORY") return "A relative of the patient had " + s + when + ".";
  if (l.label == "HISTORICAL") return s + " is part of the past medical history" + when + ".";
  if (l.label == "PRESENT") {
    if (tau == "PAST") return s + " was present previously" + when + ".";
    if (tau == "FUTURE") return s + " is planned" + when + ".";
    return s + " is present and active" + when + ".";
  }
  if (l.label == "NOT FOUND") return s + " is not found in current records.";
  if (l.label == "RESOLVED") return s + " was recorded in an earlier admission and has since resolved.";
  return s + " is recorded" + when + ".";
}

std::string change_sentence(const std::string& line) {
  const auto colon = line.find("): ");
  if (line.rfind("Admissions compared:", 0) == 0) return "Comparing admissions " + line.substr(21) + ":";
  if (colon == std::string::npos) return line;
  std::string items = line.substr(colon + 3);
  std::string clean;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (items[i] == ' ' && i + 1 < items.size() && items[i + 1] == '[') {
      i = items.find(']', i);
      if (i == std::string::npos) break;
      continue;
    }
    clean.push_back(items[i]);
  }
  if (line.rfind("Added", 0) == 0) return "Added: " + clean + ".";
  if (line.rfind("Removed", 0) == 0) return "Removed: " + clean + ".";
  if (line.rfind("Continued", 0) == 0) return "Continued: " + clean + ".";
  return line;
}

bool asks_order(const std::string& q) {
  for (const char* w : {"first", "before", "after", "order", "sequence", "earlier", "later"}) {
    if (text::contains_word(q, w)) return true;
  }
  return false;
}

bool asks_duration(const std::string& q) {
  return text::contains_word(q, "how long") || text::contains_word(q, "duration") ||
         text::contains_word(q, "how many days");
}

std::string from_graph(const Prompt& p) {
  std::vector<std::string> change;
  std::vector<ParsedLine> relevant;
  for (const auto& line : p.graph) {
    ParsedLine l;
    if (parse_typed(line, &l) && l.label.find('(') == std::string::npos) {
      // NOT FOUND and RESOLVED lines are only emitted for question concepts.
      const bool about_question = l.label == "NOT FOUND" || l.label == "RESOLVED";
      if (about_question || mentions_subject(p.question, l.subject)) relevant.push_back(std::move(l));
    } else {
      change.push_back(change_sentence(line));
    }
  }
  if (!change.empty()) return text::join(change, " ");
  if (relevant.empty()) return {};

  if (asks_order(p.question) || asks_duration(p.question)) {
    std::vector<std::pair<std::string, std::string>> dated;  // date, subject
    for (const auto& l : relevant) {
      auto it = l.meta.find("date");
      if (it != l.meta.end() && it->second != "unknown") dated.emplace_back(it->second, l.subject);
    }
    std::stable_sort(dated.begin(), dated.end());
    if (asks_duration(p.question) && dated.size() >= 2) {
      try {
        const long days = Date::parse(dated.back().first).days_since_epoch() -
                          Date::parse(dated.front().first).days_since_epoch();
        return dated.front().second + " is documented from " + dated.front().first + " to " +
               dated.back().first + ", a span of " + std::to_string(days) + " days.";
      } catch (const std::invalid_argument&) {
      }
    }
    if (asks_order(p.question) && dated.size() >= 2) {
      std::string out = "First " + dated[0].second + " (" + dated[0].first + ")";
      for (std::size_t i = 1; i < dated.size(); ++i) {
        if (dated[i].second == dated[i - 1].second) continue;
        out += ", then " + dated[i].second + " (" + dated[i].first + ")";
      }
      return out + ".";
    }
  }
  std::vector<std::string> sentences;
  for (const auto& l : relevant) {
    std::string s = restate(l);
    if (std::find(sentences.begin(), sentences.end(), s) == sentences.end()) sentences.push_back(s);
  }
  return text::join(sentences, " ");
}

std::vector<std::string> sentences_of(const std::vector<std::string>& lines) {
  std::vector<std::string> out;
  for (const auto& line : lines) {
    if (line.front() == '[' && line.back() == ']') continue;  // document header
    if (line.back() == ':' && line.size() < 40) continue;     // section heading
    std::string cur;
    for (std::size_t i = 0; i < line.size(); ++i) {
      cur.push_back(line[i]);
      const bool stop = line[i] == '.' || line[i] == '?' || line[i] == '!';
      if (stop && (i + 1 == line.size() || line[i + 1] == ' ')) {
        if (!text::trim(cur).empty()) out.emplace_back(text::trim(cur));
        cur.clear();
      }
    }
    if (!text::trim(cur).empty()) out.emplace_back(text::trim(cur));
  }
  return out;
}

std::string from_documents(const Prompt& p) {
  const auto words = content_words(p.question);
  if (words.empty()) return {};
  std::vector<std::pair<std::size_t, std::size_t>> scored;  // score, position
  const auto sentences = sentences_of(p.documents);
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    std::size_t hits = 0;
    for (const auto& w : words) hits += text::contains_word(sentences[i], w) ? 1 : 0;
    if (hits > 0) scored.emplace_back(hits, i);
  }
  if (scored.empty()) return {};
  std::stable_sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  std::vector<std::size_t> pick;
  for (std::size_t i = 0; i < scored.size() && pick.size() < 2; ++i) {
    if (scored[i].first == scored.front().first) pick.push_back(scored[i].second);
  }
  std::sort(pick.begin(), pick.end());
  std::vector<std::string> out;
  for (std::size_t i : pick) {
    if (std::find(out.begin(), out.end(), sentences[i]) == out.end()) out.push_back(sentences[i]);
  }
  return "According to the notes: " + text::join(out, " ");
}

}  // namespace

std::string ReaderBackend::generate(const std::string& prompt) {
  const Prompt p = parse_prompt(prompt);
  std::string answer = from_graph(p);
  if (answer.empty()) answer = from_documents(p);
  return answer.empty() ? std::string(kReaderDecline) : answer;
}

}  // namespace epikg::bench
