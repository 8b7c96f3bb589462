// Copyright 2026 The semalloc Authors
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

// Interest-to-corpus similarity. A VSP interest and every category detected
// on a device are embedded by an EmbeddingProvider; the device's score for
// that interest is the count-weighted mean cosine match over its corpus.

#ifndef SEMALLOC_SIMILARITY_HPP
#define SEMALLOC_SIMILARITY_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "json.hpp"
#include "semalloc/core_model.hpp"

namespace semalloc {

struct EmbeddingVector {
  std::vector<double> values;

  std::size_t dimension() const { return values.size(); }
  bool operator==(const EmbeddingVector&) const = default;
};

struct CorpusEntry {
  std::string category;
  std::int64_t count = 1;
};

// Categories detected on one device's historical images.
struct CategoryCorpus {
  int device_id = 0;
  std::vector<CorpusEntry> entries;

  // Number of images y the average runs over.
  std::int64_t total() const;
};

class EmbeddingProvider {
 public:
  virtual ~EmbeddingProvider() = default;
  // Deterministic; never returns the all-zero vector for non-empty text.
  virtual EmbeddingVector embed(std::string_view text) const = 0;
  virtual std::size_t dimension() const = 0;
};

// Precomputed text -> vector map, typically exported from an external
// sentence encoder. File format: {"text": [floats...], ...}.
class FileEmbeddings final : public EmbeddingProvider {
 public:
  static FileEmbeddings from_json(const nlohmann::json& document);
  static FileEmbeddings from_file(const std::string& path);

  EmbeddingVector embed(std::string_view text) const override;
  std::size_t dimension() const override { return dimension_; }
  std::size_t size() const { return table_.size(); }

 private:
  std::size_t dimension_ = 0;
  std::unordered_map<std::string, EmbeddingVector> table_;
};

// Bag-of-words embedder for tests and offline demos. Lowercased
// alphanumeric tokens are hashed with 64-bit FNV-1a; bucket = hash mod 64,
// sign = bit 63 of the hash.
class HashEmbedder final : public EmbeddingProvider {
 public:
  static constexpr std::size_t kDimension = 64;

  EmbeddingVector embed(std::string_view text) const override;
  std::size_t dimension() const override { return kDimension; }
};

// Cosine of the angle between a and b, clamped to [-1, 1].
double cosine_match(const EmbeddingVector& a, const EmbeddingVector& b);

// Count-weighted mean of max(0, cosine_match(interest, embed(category))).
double average_similarity(const EmbeddingVector& interest,
                          const CategoryCorpus& corpus,
                          const EmbeddingProvider& provider);

// Assembles S[w][e][i] = average_similarity(embed(text of interest_keys[i][w]),
// corpus of device e). `interest_keys` is indexed [scenario][vsp];
// `interests` maps keys to text; `corpora` is keyed by device id.
SimilarityTensor build_similarity_tensor(
    const std::vector<std::vector<std::string>>& interest_keys,
    const std::map<std::string, std::string>& interests,
    const std::map<int, CategoryCorpus>& corpora, std::size_t num_devices,
    const EmbeddingProvider& provider);

// CSV with header `device_id,category,count`.
std::map<int, CategoryCorpus> load_corpora(const std::string& path);
std::map<int, CategoryCorpus> parse_corpora(std::string_view csv_text,
                                            const std::string& source);

}  // namespace semalloc

#endif  // SEMALLOC_SIMILARITY_HPP
