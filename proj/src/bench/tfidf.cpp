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

#include "epikg/bench/tfidf.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

#include "epikg/core/digest.hpp"

namespace epikg::bench {
namespace {

std::vector<Ranked> top_k(std::vector<Ranked> all, std::size_t k) {
  if (k == 0) throw std::invalid_argument("k must be at least 1");
  std::stable_sort(all.begin(), all.end(), [](const Ranked& a, const Ranked& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.index < b.index;
  });
  if (all.size() > k) all.resize(k);
  return all;
}

double norm(const std::map<std::string, double>& v) {
  double s = 0.0;
  for (const auto& [t, w] : v) s += w * w;
  return std::sqrt(s);
}

}  // namespace

std::vector<std::string> chunk_text(std::string_view text, std::size_t size, std::size_t overlap) {
  if (size == 0 || overlap >= size) throw std::invalid_argument("chunk overlap must be smaller than chunk size");
  std::vector<std::string> tokens;
  std::istringstream in{std::string(text)};
  for (std::string t; in >> t;) tokens.push_back(t);
  std::vector<std::string> out;
  const std::size_t step = size - overlap;
  for (std::size_t start = 0; start < tokens.size(); start += step) {
    const std::size_t end = std::min(tokens.size(), start + size);
    std::string chunk;
    for (std::size_t i = start; i < end; ++i) {
      if (i > start) chunk.push_back(' ');
      chunk += tokens[i];
    }
    out.push_back(std::move(chunk));
    if (end == tokens.size()) break;
  }
  return out;
}

std::vector<std::string> terms(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    const unsigned char u = static_cast<unsigned char>(c);
    if (std::isalnum(u)) {
      cur.push_back(static_cast<char>(std::tolower(u)));
    } else if (!cur.empty()) {
      out.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

TfidfIndex::TfidfIndex(const std::vector<std::string>& documents) {
  n_ = static_cast<double>(documents.size());
  std::vector<std::vector<std::string>> toks;
  std::map<std::string, double> df;
  for (const auto& d : documents) {
    toks.push_back(terms(d));
    for (const auto& t : std::set<std::string>(toks.back().begin(), toks.back().end())) df[t] += 1.0;
  }
  for (const auto& [t, f] : df) idf_[t] = std::log((1.0 + n_) / (1.0 + f)) + 1.0;
  for (const auto& t : toks) vectors_.push_back(weigh(t));
}

std::map<std::string, double> TfidfIndex::weigh(const std::vector<std::string>& toks) const {
  std::map<std::string, double> v;
  for (const auto& t : toks) {
    auto it = idf_.find(t);
    // Terms absent from the corpus cannot match anything.
    if (it != idf_.end()) v[t] += it->second;
  }
  return v;
}

std::vector<Ranked> TfidfIndex::retrieve(std::string_view query, std::size_t k) const {
  const auto q = weigh(terms(query));
  const double qn = norm(q);
  std::vector<Ranked> all;
  for (std::size_t i = 0; i < vectors_.size(); ++i) {
    double dot = 0.0;
    for (const auto& [t, w] : q) {
      auto it = vectors_[i].find(t);
      if (it != vectors_[i].end()) dot += w * it->second;
    }
    const double dn = norm(vectors_[i]);
    all.push_back({i, (qn > 0.0 && dn > 0.0) ? dot / (qn * dn) : 0.0});
  }
  return top_k(std::move(all), k);
}

HashEmbeddingIndex::HashEmbeddingIndex(const std::vector<std::string>& documents, std::size_t dims)
    : dims_(dims) {
  for (const auto& d : documents) vectors_.push_back(embed(d));
}

std::vector<double> HashEmbeddingIndex::embed(std::string_view text) const {
  std::vector<double> v(dims_, 0.0);
  for (const auto& t : terms(text)) {
    const std::string h = sha256_hex(t);
    const std::size_t bucket = std::stoul(h.substr(0, 8), nullptr, 16) % dims_;
    const double sign = (std::stoul(h.substr(8, 2), nullptr, 16) & 1u) ? 1.0 : -1.0;
    v[bucket] += sign;
  }
  return v;
}

std::vector<Ranked> HashEmbeddingIndex::retrieve(std::string_view query, std::size_t k) const {
  const auto q = embed(query);
  double qn = 0.0;
  for (double x : q) qn += x * x;
  qn = std::sqrt(qn);
  std::vector<Ranked> all;
  for (std::size_t i = 0; i < vectors_.size(); ++i) {
    double dot = 0.0, dn = 0.0;
    for (std::size_t j = 0; j < dims_; ++j) {
      dot += q[j] * vectors_[i][j];
      dn += vectors_[i][j] * vectors_[i][j];
    }
    dn = std::sqrt(dn);
    all.push_back({i, (qn > 0.0 && dn > 0.0) ? dot / (qn * dn) : 0.0});
  }
  return top_k(std::move(all), k);
}

}  // namespace epikg::bench
