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

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace epikg::epistemics {

struct CharSpan {
  std::size_t begin = 0;
  std::size_t end = 0;  // exclusive

  bool operator==(const CharSpan&) const = default;
  bool overlaps(const CharSpan& o) const { return begin < o.end && o.begin < end; }
};

struct Token {
  std::string text;  // lowercased
  CharSpan span;
  bool punct = false;
};

// Whitespace + punctuation splitting with lowercased token text. A word is a
// run of alphanumerics that may be joined by single '-', '/', '\'' or '.'
// characters ("s/p", "follow-up", "2.5"); every other non-space character is
// its own punctuation token.
std::vector<Token> tokenize(std::string_view text);

// Tokens that end a trigger's scope: clause punctuation (not commas, so
// lists like "denies fever, chills" stay in scope) and a few contrastive
// conjunctions.
bool is_scope_terminator(const Token& t);

}  // namespace epikg::epistemics
