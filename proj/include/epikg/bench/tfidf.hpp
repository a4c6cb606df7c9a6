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

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace epikg::bench {

inline constexpr std::size_t kChunkTokens = 512;
inline constexpr std::size_t kChunkOverlap = 64;

struct Chunk {
  std::string doc_id;
  std::size_t index = 0;  // position in the corpus handed to the index
  std::string text;
};

// Whitespace-token windows of `size` tokens, each starting `size - overlap`
// after the previous one. Throws std::invalid_argument unless overlap < size.
std::vector<std::string> chunk_text(std::string_view text, std::size_t size = kChunkTokens,
                                    std::size_t overlap = kChunkOverlap);

// Lowercased alphanumeric terms.
std::vector<std::string> terms(std::string_view text);

struct Ranked {
  std::size_t index;
  double score;
};

// Cosine similarity over smoothed TF-IDF vectors
// (idf = ln((1 + N) / (1 + df)) + 1).
class TfidfIndex {
 public:
  explicit TfidfIndex(const std::vector<std::string>& documents);
  // Top k by score, ties by index. An empty query scores every document 0.
  // Throws std::invalid_argument for k == 0.
  std::vector<Ranked> retrieve(std::string_view query, std::size_t k) const;
  std::size_t size() const { return vectors_.size(); }

 private:
  std::map<std::string, double> weigh(const std::vector<std::string>& toks) const;
  std::map<std::string, double> idf_;
  std::vector<std::map<std::string, double>> vectors_;
  double n_ = 0.0;
};

// Hash-embedding stand-in for dense retrieval: terms hashed into a fixed
// number of signed buckets, cosine similarity.
class HashEmbeddingIndex {
 public:
  explicit HashEmbeddingIndex(const std::vector<std::string>& documents, std::size_t dims = 256);
  std::vector<Ranked> retrieve(std::string_view query, std::size_t k) const;

 private:
  std::vector<double> embed(std::string_view text) const;
  std::size_t dims_;
  std::vector<std::vector<double>> vectors_;
};

}  // namespace epikg::bench
