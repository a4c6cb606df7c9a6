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

#include "epikg/bench/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "epikg/core/errors.hpp"
#include "epikg/core/text.hpp"
#include "epikg/epistemics/mentions.hpp"

namespace epikg::bench {
namespace {

bool is_heading(std::string_view line, std::string* name) {
  line = text::trim(line);
  if (line.size() < 2 || line.back() != ':') return false;
  const std::string_view n = line.substr(0, line.size() - 1);
  for (char c : n) {
    const bool ok = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == ' ' || c == '/' || c == '_' || c == '-';
    if (!ok) return false;
  }
  if (!((n.front() >= 'A' && n.front() <= 'Z') || (n.front() >= 'a' && n.front() <= 'z'))) return false;
  *name = std::string(n);
  return true;
}

}  // namespace

Note parse_note(std::string_view content, const std::string& source) {
  Note note;
  std::map<std::string, std::string> header;
  std::size_t pos = 0, lineno = 0;
  bool ended = false;
  while (pos < content.size()) {
    const std::size_t eol = content.find('\n', pos);
    const std::size_t end = eol == std::string_view::npos ? content.size() : eol;
    std::string_view line = content.substr(pos, end - pos);
    ++lineno;
    pos = eol == std::string_view::npos ? content.size() : eol + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (text::trim(line).empty()) {
      ended = true;
      break;
    }
    const auto colon = line.find(':');
    if (colon == std::string_view::npos) throw ParseError(source, lineno, "header line without ':'");
    const std::string key = text::lower(text::trim(line.substr(0, colon)));
    const std::string value(text::trim(line.substr(colon + 1)));
    if (!header.emplace(key, value).second) throw ParseError(source, lineno, "duplicate header '" + key + "'");
  }
  if (!ended) throw ParseError(source, lineno, "note header is not followed by a blank line");
  for (const char* k : {"doc_id", "patient_id", "hadm_id", "doc_type", "doc_date"}) {
    if (!header.count(k) || header[k].empty()) throw ParseError(source, 1, std::string("missing header '") + k + "'");
  }
  note.doc_id = header["doc_id"];
  note.patient_id = header["patient_id"];
  note.hadm_id = header["hadm_id"];
  note.doc_type = header["doc_type"];
  try {
    note.doc_date = Date::parse(header["doc_date"]);
    note.recorded_at = header.count("recorded_at") ? Timestamp::parse(header["recorded_at"])
                                                   : Timestamp::at_midnight(note.doc_date);
  } catch (const std::invalid_argument& e) {
    throw ParseError(source, 1, e.what());
  }
  note.body = std::string(content.substr(pos));

  NoteSection cur{"", 0, {}};
  std::size_t off = 0;
  auto flush = [&](std::size_t until) {
    cur.text = note.body.substr(cur.offset, until - cur.offset);
    if (!text::trim(cur.text).empty()) note.sections.push_back(cur);
  };
  while (off < note.body.size()) {
    const std::size_t eol = note.body.find('\n', off);
    const std::size_t end = eol == std::string::npos ? note.body.size() : eol;
    std::string name;
    if (is_heading(std::string_view(note.body).substr(off, end - off), &name)) {
      flush(off);
      cur = {name, eol == std::string::npos ? end : end + 1, {}};
    }
    off = eol == std::string::npos ? note.body.size() : eol + 1;
  }
  flush(note.body.size());
  return note;
}

std::size_t Corpus::note_count() const {
  std::size_t n = 0;
  for (const auto& [p, notes] : patients) n += notes.size();
  return n;
}

CorpusLoad load_corpus(const std::filesystem::path& dir) {
  CorpusLoad out;
  if (!std::filesystem::is_directory(dir)) {
    out.errors.push_back(dir.string() + ": not a directory");
    return out;
  }
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::recursive_directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == ".txt") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  for (const auto& f : files) {
    std::ifstream in(f, std::ios::binary);
    if (!in) {
      out.errors.push_back(f.string() + ": cannot open");
      continue;
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    try {
      Note n = parse_note(ss.str(), f.string());
      out.corpus.patients[n.patient_id].push_back(std::move(n));
    } catch (const ParseError& e) {
      out.errors.push_back(e.what());
    }
  }
  for (auto& [p, notes] : out.corpus.patients) {
    std::sort(notes.begin(), notes.end(), [](const Note& a, const Note& b) {
      if (a.doc_date != b.doc_date) return a.doc_date < b.doc_date;
      return a.doc_id < b.doc_id;
    });
  }
  return out;
}

kgraph::SourceDocument to_source_document(const Note& note, const epistemics::Lexicon& lexicon,
                                          const epistemics::PatternInventory& inventory) {
  kgraph::SourceDocument d;
  d.doc_id = note.doc_id;
  d.hadm_id = note.hadm_id;
  d.doc_date = note.doc_date;
  d.recorded_at = note.recorded_at;
  for (const auto& s : note.sections) {
    auto ms = epistemics::extract_mentions(s.text, s.name, lexicon, inventory, s.offset);
    d.mentions.insert(d.mentions.end(), ms.begin(), ms.end());
  }
  return d;
}

router::EvidenceDocument to_evidence(const Note& note) {
  return {note.doc_id, note.doc_type, note.doc_date.iso(), note.hadm_id, note.body};
}

}  // namespace epikg::bench
