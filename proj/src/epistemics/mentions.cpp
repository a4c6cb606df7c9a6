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

#include "epikg/epistemics/mentions.hpp"

#include <cctype>

namespace epikg::epistemics {

std::vector<CharSpan> split_sentences(std::string_view text) {
  std::vector<CharSpan> out;
  std::size_t start = 0;
  auto flush = [&](std::size_t end) {
    std::size_t b = start, e = end;
    while (b < e && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) --e;
    if (b < e) out.push_back({b, e});
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '\n') {
      flush(i);
      start = i + 1;
    } else if (c == '.' || c == '?' || c == '!') {
      const bool boundary =
          i + 1 == text.size() || std::isspace(static_cast<unsigned char>(text[i + 1]));
      if (boundary) {
        flush(i + 1);
        start = i + 1;
      }
    }
  }
  flush(text.size());
  return out;
}

std::vector<Mention> extract_mentions(std::string_view text, std::string_view section,
                                      const Lexicon& lexicon, const PatternInventory& inventory,
                                      std::size_t offset) {
  std::vector<Mention> out;
  for (const CharSpan& s : split_sentences(text)) {
    const std::string_view sentence = text.substr(s.begin, s.end - s.begin);
    for (const TermMatch& m : lexicon.match(sentence)) {
      Mention mention;
      mention.concept_id = m.concept_id;
      mention.surface = m.surface;
      mention.span = {offset + s.begin + m.span.begin, offset + s.begin + m.span.end};
      mention.section = std::string(section);
      const AssertionResult a = classify_assertion(sentence, m.span, inventory);
      mention.assertion = a.label;
      mention.confidence = a.confidence;
      mention.experiencer = classify_experiencer(sentence, m.span, section, inventory);
      mention.temporality = classify_temporality(sentence, m.span, inventory);
      if (mention.experiencer == Experiencer::Family && mention.assertion == Assertion::Present)
        mention.assertion = Assertion::FamilyHistory;
      out.push_back(std::move(mention));
    }
  }
  return out;
}

}  // namespace epikg::epistemics
