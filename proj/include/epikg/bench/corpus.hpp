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
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "epikg/core/dates.hpp"
#include "epikg/epistemics/lexicon.hpp"
#include "epikg/epistemics/patterns.hpp"
#include "epikg/kgraph/materialize.hpp"
#include "epikg/router/evidence.hpp"

namespace epikg::bench {

struct NoteSection {
  std::string name;
  std::size_t offset = 0;  // into Note::body
  std::string text;
};

struct Note {
  std::string doc_id;
  std::string patient_id;
  std::string hadm_id;
  std::string doc_type;  // discharge_summary, progress_note, ...
  Date doc_date;
  Timestamp recorded_at;
  std::string body;  // everything after the header
  std::vector<NoteSection> sections;
};

// Header of "key: value" lines up to the first blank line (doc_id,
// patient_id, hadm_id, doc_type, doc_date required; recorded_at defaults to
// midnight of doc_date), then the body. A body line holding only "Name:"
// opens a section; text before the first heading belongs to section "".
// Throws ParseError with the line number.
Note parse_note(std::string_view text, const std::string& source);

struct Corpus {
  // patient -> notes in chronological order (doc_date, then doc_id)
  std::map<std::string, std::vector<Note>> patients;
  std::size_t note_count() const;
};

struct CorpusLoad {
  Corpus corpus;
  std::vector<std::string> errors;  // one per unreadable or malformed file
};

// Reads every *.txt below `dir`. A bad file is reported and skipped.
CorpusLoad load_corpus(const std::filesystem::path& dir);

// Runs mention extraction over every section of the note.
kgraph::SourceDocument to_source_document(const Note& note, const epistemics::Lexicon& lexicon,
                                          const epistemics::PatternInventory& inventory);

router::EvidenceDocument to_evidence(const Note& note);

}  // namespace epikg::bench
