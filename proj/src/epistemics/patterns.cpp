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

#include "epikg/epistemics/patterns.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "epikg/core/errors.hpp"
#include "epikg/core/text.hpp"
#include "epikg/epistemics/tokenizer.hpp"

namespace epikg::epistemics {
namespace {

using nlohmann::json;

std::vector<std::string> pattern_tokens(std::string_view surface) {
  std::vector<std::string> out;
  for (auto& t : tokenize(surface)) out.push_back(std::move(t.text));
  return out;
}

TriggerLabel parse_label(std::string_view kind, std::string_view label) {
  const std::string k = text::lower(text::trim(kind));
  if (k == "assertion") return parse_assertion(label);
  if (k == "temporality") return parse_temporality(label);
  if (k == "experiencer") return parse_experiencer(label);
  throw std::invalid_argument("unknown label kind '" + std::string(kind) + "'");
}

// "kind:label" or a bare label resolved against all three closed sets.
TriggerLabel parse_qualified_label(std::string_view s) {
  auto colon = s.find(':');
  if (colon != std::string_view::npos) return parse_label(s.substr(0, colon), s.substr(colon + 1));
  try {
    return parse_assertion(s);
  } catch (const std::invalid_argument&) {
  }
  try {
    return parse_temporality(s);
  } catch (const std::invalid_argument&) {
  }
  return parse_experiencer(s);
}

ScopeDirection parse_direction(std::string_view s) {
  const std::string d = text::lower(text::trim(s));
  if (d == "pre" || d == "forward") return ScopeDirection::Pre;
  if (d == "post" || d == "backward") return ScopeDirection::Post;
  if (d == "bidirectional" || d == "both") return ScopeDirection::Bidirectional;
  throw std::invalid_argument("unknown scope direction '" + std::string(s) + "'");
}

double parse_double(std::string_view s) {
  s = text::trim(s);
  std::string tmp(s);
  std::size_t used = 0;
  double v = std::stod(tmp, &used);
  if (used != tmp.size()) throw std::invalid_argument("malformed number '" + tmp + "'");
  return v;
}

int parse_window(std::string_view s) {
  s = text::trim(s);
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw std::invalid_argument("malformed scope window '" + std::string(s) + "'");
  return v;
}

TriggerPattern make_pattern(std::string_view surface, TriggerLabel label, double conf,
                            ScopeDirection dir, int window) {
  TriggerPattern p;
  p.surface = std::string(text::trim(surface));
  p.tokens = pattern_tokens(p.surface);
  p.label = label;
  p.confidence = conf;
  p.direction = dir;
  p.window = window;
  return p;
}

// Line on which the index-th element of the top-level JSON array begins.
std::vector<std::size_t> element_lines(std::string_view content) {
  std::vector<std::size_t> lines;
  std::size_t line = 1;
  int depth = 0;
  bool in_string = false, escape = false;
  for (char c : content) {
    if (c == '\n') ++line;
    if (in_string) {
      if (escape) {
        escape = false;
      } else if (c == '\\') {
        escape = true;
      } else if (c == '"') {
        in_string = false;
      }
      continue;
    }
    if (c == '"') {
      in_string = true;
    } else if (c == '[' || c == '{') {
      if (depth == 1) lines.push_back(line);
      ++depth;
    } else if (c == ']' || c == '}') {
      --depth;
    }
  }
  return lines;
}

std::vector<TriggerPattern> parse_json(std::string_view content, const std::string& source) {
  json doc;
  try {
    doc = json::parse(content);
  } catch (const json::parse_error& e) {
    std::size_t line = 1;
    std::size_t limit = std::min<std::size_t>(e.byte, content.size());
    for (std::size_t i = 0; i + 1 < limit; ++i) {
      if (content[i] == '\n') ++line;
    }
    throw ParseError(source, line, "invalid JSON");
  }
  if (!doc.is_array()) throw ParseError(source, 1, "expected a JSON array of patterns");
  const auto lines = element_lines(content);
  std::vector<TriggerPattern> out;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const std::size_t line = i < lines.size() ? lines[i] : 1;
    const json& e = doc[i];
    try {
      if (!e.is_object()) throw std::invalid_argument("pattern entry must be an object");
      if (!e.contains("pattern") || !e["pattern"].is_string())
        throw std::invalid_argument("missing string field 'pattern'");
      if (!e.contains("label") || !e["label"].is_string())
        throw std::invalid_argument("missing string field 'label'");
      if (!e.contains("confidence") || !e["confidence"].is_number())
        throw std::invalid_argument("missing numeric field 'confidence'");
      const std::string label = e["label"].get<std::string>();
      TriggerLabel tl = e.contains("kind") ? parse_label(e["kind"].get<std::string>(), label)
                                           : parse_qualified_label(label);
      ScopeDirection dir = e.contains("scope_direction")
                               ? parse_direction(e["scope_direction"].get<std::string>())
                               : ScopeDirection::Pre;
      int window = e.contains("scope_window") ? e["scope_window"].get<int>() : kDefaultScopeWindow;
      TriggerPattern p = make_pattern(e["pattern"].get<std::string>(), tl,
                                      e["confidence"].get<double>(), dir, window);
      if (auto err = validate(p)) throw std::invalid_argument(*err);
      out.push_back(std::move(p));
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception& ex) {
      throw ParseError(source, line, ex.what());
    }
  }
  return out;
}

std::vector<TriggerPattern> parse_lines(std::string_view content, const std::string& source) {
  std::vector<TriggerPattern> out;
  const auto lines = text::split_lines(content);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::string_view line = text::trim(lines[i]);
    if (line.empty() || line.front() == '#') continue;
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
      std::size_t bar = line.find('|', start);
      fields.push_back(text::trim(line.substr(start, bar == std::string_view::npos ? bar : bar - start)));
      if (bar == std::string_view::npos) break;
      start = bar + 1;
    }
    try {
      if (fields.size() < 3 || fields.size() > 5)
        throw std::invalid_argument("expected 3 to 5 '|'-separated fields, got " +
                                    std::to_string(fields.size()));
      TriggerLabel label = parse_qualified_label(fields[1]);
      double conf = parse_double(fields[2]);
      ScopeDirection dir = fields.size() > 3 ? parse_direction(fields[3]) : ScopeDirection::Pre;
      int window = fields.size() > 4 ? parse_window(fields[4]) : kDefaultScopeWindow;
      TriggerPattern p = make_pattern(fields[0], label, conf, dir, window);
      if (auto err = validate(p)) throw std::invalid_argument(*err);
      out.push_back(std::move(p));
    } catch (const std::exception& ex) {
      throw ParseError(source, i + 1, ex.what());
    }
  }
  return out;
}

std::string format_conf(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

std::string_view to_string(LabelKind k) {
  switch (k) {
    case LabelKind::Assertion: return "assertion";
    case LabelKind::Temporality: return "temporality";
    case LabelKind::Experiencer: return "experiencer";
  }
  return "assertion";
}

std::string_view to_string(ScopeDirection d) {
  switch (d) {
    case ScopeDirection::Pre: return "pre";
    case ScopeDirection::Post: return "post";
    case ScopeDirection::Bidirectional: return "bidirectional";
  }
  return "pre";
}

std::string label_string(const TriggerLabel& label) {
  return std::visit(
      [](auto v) {
        std::string kind;
        if constexpr (std::is_same_v<decltype(v), Assertion>) kind = "assertion";
        if constexpr (std::is_same_v<decltype(v), Temporality>) kind = "temporality";
        if constexpr (std::is_same_v<decltype(v), Experiencer>) kind = "experiencer";
        return kind + ":" + text::lower(to_string(v));
      },
      label);
}

ConfidenceRange published_range(Assertion a) {
  switch (a) {
    case Assertion::Absent: return {0.85, 0.98};
    case Assertion::Possible: return {0.35, 0.75};
    case Assertion::Present: return {0.85, 0.98};
    case Assertion::Hypothetical: return {0.25, 0.35};
    case Assertion::FamilyHistory: return {0.85, 0.95};
    case Assertion::Conditional: return {0.20, 0.40};
    case Assertion::Historical: return {0.75, 0.90};
  }
  return {0.0, 1.0};
}

std::size_t published_count(Assertion a) {
  switch (a) {
    case Assertion::Absent: return 31;
    case Assertion::Possible: return 32;
    case Assertion::Present: return 27;
    case Assertion::Hypothetical: return 11;
    case Assertion::FamilyHistory: return 8;
    case Assertion::Conditional: return 7;
    case Assertion::Historical: return 6;
  }
  return 0;
}

std::optional<std::string> validate(const TriggerPattern& p) {
  if (p.tokens.empty()) return "pattern must not be empty";
  if (!(p.confidence >= 0.0 && p.confidence <= 1.0))
    return "confidence " + format_conf(p.confidence) + " outside [0, 1]";
  if (p.window < 1) return "scope window must be at least 1";
  if (const auto* a = std::get_if<Assertion>(&p.label)) {
    const ConfidenceRange r = published_range(*a);
    // 1e-12 absorbs decimal round-off in the file.
    if (p.confidence < r.lo - 1e-12 || p.confidence > r.hi + 1e-12)
      return "confidence " + format_conf(p.confidence) + " outside the " +
             std::string(inventory_category(*a)) + " range [" + format_conf(r.lo) + ", " +
             format_conf(r.hi) + "]";
  }
  return std::nullopt;
}

PatternInventory::PatternInventory(std::vector<TriggerPattern> patterns)
    : patterns_(std::move(patterns)) {
  for (const auto& p : patterns_) {
    if (auto err = validate(p)) throw ValidationError("pattern '" + p.surface + "': " + *err);
  }
  if (patterns_.empty()) warnings_.push_back("pattern inventory is empty");
}

PatternInventory PatternInventory::parse(std::string_view content, const std::string& source) {
  std::string_view t = text::trim(content);
  std::vector<TriggerPattern> patterns =
      (!t.empty() && t.front() == '[') ? parse_json(content, source) : parse_lines(content, source);
  return PatternInventory(std::move(patterns));
}

PatternInventory PatternInventory::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open pattern inventory " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path.string());
}

std::map<std::string, std::size_t> PatternInventory::category_counts() const {
  std::map<std::string, std::size_t> counts;
  for (const auto& p : patterns_) {
    if (const auto* a = std::get_if<Assertion>(&p.label)) {
      ++counts[std::string(inventory_category(*a))];
    } else {
      ++counts[label_string(p.label)];
    }
  }
  return counts;
}

bool PatternInventory::matches_published_totals() const {
  const auto counts = category_counts();
  for (Assertion a : kAllAssertions) {
    auto it = counts.find(std::string(inventory_category(a)));
    std::size_t have = it == counts.end() ? 0 : it->second;
    if (have < published_count(a)) return false;
  }
  return true;
}

}  // namespace epikg::epistemics
