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

#include "epikg/epistemics/classifier.hpp"

#include <optional>
#include <stdexcept>

#include "epikg/core/text.hpp"

namespace epikg::epistemics {
namespace {

void check_span(std::string_view sentence, CharSpan span) {
  if (span.begin >= span.end || span.end > sentence.size())
    throw std::out_of_range("concept span [" + std::to_string(span.begin) + ", " +
                            std::to_string(span.end) + ") outside sentence of length " +
                            std::to_string(sentence.size()));
}

struct Located {
  std::vector<Token> tokens;
  std::size_t cb = 0;  // concept token range
  std::size_t ce = 0;
  std::vector<TriggerHit> hits;
};

Located locate(std::string_view sentence, CharSpan span, const PatternInventory& inventory) {
  check_span(sentence, span);
  Located l;
  l.tokens = tokenize(sentence);
  l.cb = l.tokens.size();
  for (std::size_t i = 0; i < l.tokens.size(); ++i) {
    if (l.tokens[i].span.overlaps(span)) {
      if (l.cb == l.tokens.size()) l.cb = i;
      l.ce = i + 1;
    }
  }
  if (l.cb == l.tokens.size()) return l;  // span covers no token: nothing can scope it
  for (const auto& h : find_triggers(l.tokens, inventory)) {
    if (h.end <= l.cb || h.begin >= l.ce) l.hits.push_back(h);
  }
  return l;
}

// Higher confidence, then more tokens, then lexicographically smaller surface.
bool better(const TriggerPattern& a, const TriggerPattern& b) {
  if (a.confidence != b.confidence) return a.confidence > b.confidence;
  if (a.tokens.size() != b.tokens.size()) return a.tokens.size() > b.tokens.size();
  return a.surface < b.surface;
}

template <class T, class F>
std::optional<std::pair<T, const TriggerPattern*>> pick(const Located& l, F&& reading) {
  std::optional<std::pair<T, const TriggerPattern*>> best;
  for (const auto& h : l.hits) {
    std::optional<T> v = reading(*h.pattern);
    if (!v || !scope_covers(l.tokens, h, l.cb, l.ce)) continue;
    if (!best || better(*h.pattern, *best->second)) best.emplace(*v, h.pattern);
  }
  return best;
}

std::size_t words_between(const std::vector<Token>& tokens, std::size_t from, std::size_t to,
                          bool* terminated) {
  std::size_t n = 0;
  for (std::size_t i = from; i < to; ++i) {
    if (is_scope_terminator(tokens[i])) *terminated = true;
    if (!tokens[i].punct) ++n;
  }
  return n;
}

}  // namespace

std::vector<TriggerHit> find_triggers(const std::vector<Token>& tokens,
                                      const PatternInventory& inventory) {
  std::vector<TriggerHit> hits;
  for (const auto& p : inventory.patterns()) {
    const std::size_t len = p.tokens.size();
    if (len == 0 || len > tokens.size()) continue;
    for (std::size_t i = 0; i + len <= tokens.size(); ++i) {
      bool ok = true;
      for (std::size_t k = 0; k < len && ok; ++k) ok = tokens[i + k].text == p.tokens[k];
      if (ok) hits.push_back({&p, i, i + len});
    }
  }
  std::vector<TriggerHit> kept;
  for (const auto& h : hits) {
    bool inside = false;
    for (const auto& o : hits) {
      if (o.begin <= h.begin && h.end <= o.end && (o.end - o.begin) > (h.end - h.begin)) {
        inside = true;
        break;
      }
    }
    if (!inside) kept.push_back(h);
  }
  return kept;
}

bool scope_covers(const std::vector<Token>& tokens, const TriggerHit& hit, std::size_t cb,
                  std::size_t ce) {
  const std::size_t window = static_cast<std::size_t>(hit.pattern->window);
  const bool forward = hit.pattern->direction != ScopeDirection::Post;
  const bool backward = hit.pattern->direction != ScopeDirection::Pre;
  if (forward && hit.end <= cb) {
    bool terminated = false;
    std::size_t gap = words_between(tokens, hit.end, cb, &terminated);
    if (!terminated && gap < window) return true;
  }
  if (backward && ce <= hit.begin) {
    bool terminated = false;
    std::size_t gap = words_between(tokens, ce, hit.begin, &terminated);
    if (!terminated && gap < window) return true;
  }
  return false;
}

AssertionResult classify_assertion(std::string_view sentence, CharSpan concept_span,
                                   const PatternInventory& inventory) {
  const Located l = locate(sentence, concept_span, inventory);
  auto best = pick<Assertion>(l, [](const TriggerPattern& p) -> std::optional<Assertion> {
    if (const auto* a = std::get_if<Assertion>(&p.label)) return *a;
    return std::nullopt;
  });
  if (!best) return {};
  return {best->first, best->second->confidence, best->second};
}

bool is_family_history_section(std::string_view section) {
  const std::string s = text::lower(text::trim(section));
  return s == "family history" || s == "family hx" || s == "fh" || s == "family_history";
}

Experiencer classify_experiencer(std::string_view sentence, CharSpan concept_span,
                                 std::string_view section, const PatternInventory& inventory) {
  const Located l = locate(sentence, concept_span, inventory);
  if (is_family_history_section(section)) return Experiencer::Family;
  auto best = pick<Experiencer>(l, [](const TriggerPattern& p) -> std::optional<Experiencer> {
    if (const auto* e = std::get_if<Experiencer>(&p.label)) return *e;
    if (const auto* a = std::get_if<Assertion>(&p.label)) {
      if (*a == Assertion::FamilyHistory) return Experiencer::Family;
    }
    return std::nullopt;
  });
  return best ? best->first : Experiencer::Patient;
}

Temporality classify_temporality(std::string_view sentence, CharSpan concept_span,
                                 const PatternInventory& inventory) {
  const Located l = locate(sentence, concept_span, inventory);
  auto best = pick<Temporality>(l, [](const TriggerPattern& p) -> std::optional<Temporality> {
    if (const auto* t = std::get_if<Temporality>(&p.label)) return *t;
    if (const auto* a = std::get_if<Assertion>(&p.label)) {
      switch (*a) {
        case Assertion::Historical: return Temporality::Past;
        case Assertion::Conditional:
        case Assertion::Hypothetical: return Temporality::Future;
        default: break;
      }
    }
    return std::nullopt;
  });
  return best ? best->first : Temporality::Current;
}

}  // namespace epikg::epistemics
