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

#include "epikg/evaluator/matching.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

#include "epikg/core/text.hpp"
#include "epikg/epistemics/labels.hpp"
#include "epikg/router/evidence.hpp"

namespace epikg::evaluator {

bool word_boundary_match(std::string_view text, std::string_view keyword) {
  if (keyword.empty()) throw std::invalid_argument("keyword must not be empty");
  return text::contains_word(text, keyword);
}

bool substring_match(std::string_view text, std::string_view keyword) {
  if (keyword.empty()) throw std::invalid_argument("keyword must not be empty");
  return text::contains_substring(text, keyword);
}

bool is_typed_evidence_line(std::string_view line) {
  line = text::trim(line);
  if (line.empty() || line.back() != ']') return false;
  const auto colon = line.find(": ");
  if (colon == std::string_view::npos) return false;
  const auto bracket = line.rfind(" [");
  if (bracket == std::string_view::npos || bracket <= colon + 1) return false;
  const std::string_view label = line.substr(0, colon);
  for (auto a : epistemics::kAllAssertions) {
    if (label == epistemics::to_string(a)) return true;
  }
  return label == router::kFactLabel || label == router::kResolvedLabel ||
         label == router::kNotFoundLabel;
}

std::string strip_preamble(std::string_view answer) {
  static constexpr std::array<std::pair<std::string_view, std::string_view>, 2> kBlocks = {{
      {router::kGraphBegin, router::kGraphEnd},
      {router::kDocumentsBegin, router::kDocumentsEnd},
  }};
  std::vector<std::string> kept;
  std::string_view closing;
  bool inside = false;
  for (const std::string& raw : text::split_lines(answer)) {
    const std::string_view line = text::trim(raw);
    if (inside) {
      if (line == closing) inside = false;
      continue;
    }
    bool opened = false;
    for (const auto& [open, close] : kBlocks) {
      if (line == open) {
        inside = opened = true;
        closing = close;
      }
    }
    if (opened || is_typed_evidence_line(line)) continue;
    kept.push_back(raw);
  }
  while (!kept.empty() && text::trim(kept.back()).empty()) kept.pop_back();
  while (!kept.empty() && text::trim(kept.front()).empty()) kept.erase(kept.begin());
  return text::join(kept, "\n");
}

bool detect_abstention(std::string_view answer, const KeywordConfig& cfg) {
  bool abstains = false;
  for (const auto& p : cfg.abstention) abstains = abstains || text::contains_word(answer, p);
  if (!abstains) return false;
  for (const auto& p : cfg.claim) {
    if (text::contains_word(answer, p)) return false;
  }
  return true;
}

std::vector<std::string> gold_content_words(std::string_view gold, const KeywordConfig& cfg) {
  std::vector<std::string> out;
  std::string cur;
  auto flush = [&] {
    if (cur.empty()) return;
    const bool stop = std::find(cfg.stopwords.begin(), cfg.stopwords.end(), cur) != cfg.stopwords.end();
    if (!stop && std::find(out.begin(), out.end(), cur) == out.end()) out.push_back(cur);
    cur.clear();
  };
  for (char c : gold) {
    if (text::is_word_char(c)) {
      cur.push_back(c >= 'A' && c <= 'Z' ? static_cast<char>(c - 'A' + 'a') : c);
    } else {
      flush();
    }
  }
  flush();
  return out;
}

}  // namespace epikg::evaluator
