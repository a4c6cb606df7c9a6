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

#include "epikg/epistemics/tokenizer.hpp"

#include <array>
#include <cctype>

namespace epikg::epistemics {
namespace {

bool alnum(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }
bool joiner(char c) { return c == '-' || c == '/' || c == '\'' || c == '.'; }
char fold(char c) { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c; }

}  // namespace

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (alnum(c)) {
      std::size_t start = i;
      while (i < text.size()) {
        if (alnum(text[i])) {
          ++i;
        } else if (joiner(text[i]) && i + 1 < text.size() && alnum(text[i + 1])) {
          i += 2;
        } else {
          break;
        }
      }
      Token t;
      t.span = {start, i};
      t.text.reserve(i - start);
      for (std::size_t k = start; k < i; ++k) t.text.push_back(fold(text[k]));
      tokens.push_back(std::move(t));
      continue;
    }
    Token t;
    t.span = {i, i + 1};
    t.text = std::string(1, c);
    t.punct = true;
    tokens.push_back(std::move(t));
    ++i;
  }
  return tokens;
}

bool is_scope_terminator(const Token& t) {
  if (t.punct) return t.text == ";" || t.text == ":" || t.text == ".";
  static constexpr std::array<std::string_view, 5> kWords = {"but", "however", "although",
                                                             "except", "though"};
  for (auto w : kWords) {
    if (t.text == w) return true;
  }
  return false;
}

}  // namespace epikg::epistemics
