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

#include <string>
#include <string_view>
#include <vector>

namespace epikg::text {

// ASCII simple case folding. Non-ASCII bytes pass through untouched.
std::string lower(std::string_view s);

bool is_word_char(char c);

std::string_view trim(std::string_view s);

std::vector<std::string> split_lines(std::string_view s);

// Case-insensitive search for `needle` bounded by non-word characters or
// string ends on both sides.
bool contains_word(std::string_view haystack, std::string_view needle);

// Case-insensitive plain substring search.
bool contains_substring(std::string_view haystack, std::string_view needle);

bool starts_with_icase(std::string_view s, std::string_view prefix);

std::string join(const std::vector<std::string>& parts, std::string_view sep);

// Replaces every "{{name}}" with the value of `name`; unknown placeholders
// are left verbatim.
std::string substitute(std::string_view tmpl,
                       const std::vector<std::pair<std::string, std::string>>& values);

}  // namespace epikg::text
