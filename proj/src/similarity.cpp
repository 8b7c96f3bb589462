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

#include "semalloc/similarity.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace semalloc {

std::int64_t CategoryCorpus::total() const {
  std::int64_t y = 0;
  for (const auto& entry : entries) y += entry.count;
  return y;
}

FileEmbeddings FileEmbeddings::from_json(const nlohmann::json& document) {
  if (!document.is_object()) {
    throw SchemaError("", "embeddings document must be an object of arrays");
  }
  FileEmbeddings provider;
  for (const auto& [text, array] : document.items()) {
    const std::string pointer = "/" + text;
    if (!array.is_array() || array.empty()) {
      throw SchemaError(pointer, "expected a non-empty array of numbers");
    }
    EmbeddingVector vector;
    vector.values.reserve(array.size());
    double norm = 0.0;
    for (std::size_t k = 0; k < array.size(); ++k) {
      if (!array[k].is_number()) {
        throw SchemaError(pointer + "/" + std::to_string(k), "expected a number");
      }
      const double v = array[k].get<double>();
      if (!std::isfinite(v)) {
        throw SchemaError(pointer + "/" + std::to_string(k), "non-finite value");
      }
      norm += v * v;
      vector.values.push_back(v);
    }
    if (provider.dimension_ == 0) {
      provider.dimension_ = vector.dimension();
    } else if (vector.dimension() != provider.dimension_) {
      throw SchemaError(pointer, "dimension " + std::to_string(vector.dimension()) +
                                     " differs from " +
                                     std::to_string(provider.dimension_));
    }
    if (norm == 0.0) throw SchemaError(pointer, "all-zero embedding");
    provider.table_.emplace(text, std::move(vector));
  }
  return provider;
}

FileEmbeddings FileEmbeddings::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open embeddings file " + path);
  nlohmann::json document;
  try {
    document = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError(path, e.what());
  }
  return from_json(document);
}

EmbeddingVector FileEmbeddings::embed(std::string_view text) const {
  const auto it = table_.find(std::string(text));
  if (it == table_.end()) {
    throw ConfigError("no embedding for text \"" + std::string(text) + "\"");
  }
  return it->second;
}

namespace {

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

}  // namespace

EmbeddingVector HashEmbedder::embed(std::string_view text) const {
  if (text.empty()) throw InvalidArgumentError("cannot embed empty text");
  EmbeddingVector vector{std::vector<double>(kDimension, 0.0)};
  std::string token;
  auto flush = [&] {
    if (token.empty()) return;
    const std::uint64_t h = fnv1a(token);
    vector.values[h % kDimension] += (h >> 63) ? -1.0 : 1.0;
    token.clear();
  };
  for (char c : text) {
    const auto u = static_cast<unsigned char>(c);
    if (std::isalnum(u)) {
      token.push_back(static_cast<char>(std::tolower(u)));
    } else {
      flush();
    }
  }
  flush();
  // Punctuation-only text or cancelling tokens: fall back to the whole text.
  if (std::all_of(vector.values.begin(), vector.values.end(),
                  [](double v) { return v == 0.0; })) {
    vector.values[fnv1a(text) % kDimension] = 1.0;
  }
  return vector;
}

double cosine_match(const EmbeddingVector& a, const EmbeddingVector& b) {
  if (a.dimension() != b.dimension()) {
    throw InvalidArgumentError("dimension mismatch: " +
                               std::to_string(a.dimension()) + " vs " +
                               std::to_string(b.dimension()));
  }
  double dot = 0.0;
  double norm_a = 0.0;
  double norm_b = 0.0;
  for (std::size_t k = 0; k < a.dimension(); ++k) {
    dot += a.values[k] * b.values[k];
    norm_a += a.values[k] * a.values[k];
    norm_b += b.values[k] * b.values[k];
  }
  if (norm_a == 0.0 || norm_b == 0.0) {
    throw DomainError("cosine match of a zero-norm vector");
  }
  return std::clamp(dot / (std::sqrt(norm_a) * std::sqrt(norm_b)), -1.0, 1.0);
}

double average_similarity(const EmbeddingVector& interest,
                          const CategoryCorpus& corpus,
                          const EmbeddingProvider& provider) {
  const std::int64_t y = corpus.total();
  if (corpus.entries.empty() || y <= 0) {
    throw DomainError("device " + std::to_string(corpus.device_id) +
                      " has an empty corpus");
  }
  double sum = 0.0;
  for (const auto& entry : corpus.entries) {
    if (entry.count < 1) {
      throw InvalidArgumentError("corpus entry \"" + entry.category +
                                 "\" has non-positive count");
    }
    const double match =
        std::max(0.0, cosine_match(interest, provider.embed(entry.category)));
    sum += static_cast<double>(entry.count) * match;
  }
  return std::clamp(sum / static_cast<double>(y), 0.0, 1.0);
}

SimilarityTensor build_similarity_tensor(
    const std::vector<std::vector<std::string>>& interest_keys,
    const std::map<std::string, std::string>& interests,
    const std::map<int, CategoryCorpus>& corpora, std::size_t num_devices,
    const EmbeddingProvider& provider) {
  const std::size_t scenarios = interest_keys.size();
  const std::size_t vsps = scenarios == 0 ? 0 : interest_keys[0].size();
  for (std::size_t e = 0; e < num_devices; ++e) {
    if (!corpora.contains(static_cast<int>(e))) {
      throw ConfigError("no corpus for device " + std::to_string(e));
    }
  }

  // Each distinct interest is embedded and scored once.
  std::map<std::string, std::vector<double>> scores_by_key;
  SimilarityTensor tensor(vsps, num_devices, scenarios);
  for (std::size_t i = 0; i < scenarios; ++i) {
    if (interest_keys[i].size() != vsps) {
      throw ConfigError("scenario " + std::to_string(i) + " lists " +
                        std::to_string(interest_keys[i].size()) +
                        " interests for " + std::to_string(vsps) + " VSPs");
    }
    for (std::size_t w = 0; w < vsps; ++w) {
      const std::string& key = interest_keys[i][w];
      auto cached = scores_by_key.find(key);
      if (cached == scores_by_key.end()) {
        const auto text = interests.find(key);
        if (text == interests.end()) {
          throw ConfigError("unknown interest key \"" + key + "\"");
        }
        const EmbeddingVector interest = provider.embed(text->second);
        std::vector<double> scores(num_devices);
        for (std::size_t e = 0; e < num_devices; ++e) {
          scores[e] = average_similarity(
              interest, corpora.at(static_cast<int>(e)), provider);
        }
        cached = scores_by_key.emplace(key, std::move(scores)).first;
      }
      for (std::size_t e = 0; e < num_devices; ++e) {
        tensor.at(w, e, i) = cached->second[e];
      }
    }
  }
  return tensor;
}

std::map<int, CategoryCorpus> parse_corpora(std::string_view csv_text,
                                            const std::string& source) {
  std::map<int, CategoryCorpus> corpora;
  std::istringstream in{std::string(csv_text)};
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::string where = source + ":" + std::to_string(line_no);
    if (!header_seen) {
      if (line != "device_id,category,count") {
        throw SchemaError(where, "expected header device_id,category,count");
      }
      header_seen = true;
      continue;
    }
    // Category text may itself contain commas; id is before the first comma
    // and count after the last.
    const auto first = line.find(',');
    const auto last = line.rfind(',');
    if (first == std::string::npos || first == last) {
      throw SchemaError(where, "expected 3 fields");
    }
    int device_id = 0;
    std::int64_t count = 0;
    const auto id_res = std::from_chars(line.data(), line.data() + first, device_id);
    const auto count_res =
        std::from_chars(line.data() + last + 1, line.data() + line.size(), count);
    if (id_res.ec != std::errc() || id_res.ptr != line.data() + first ||
        device_id < 0) {
      throw SchemaError(where, "bad device_id");
    }
    if (count_res.ec != std::errc() ||
        count_res.ptr != line.data() + line.size() || count < 1) {
      throw SchemaError(where, "count must be a positive integer");
    }
    std::string category = line.substr(first + 1, last - first - 1);
    if (category.size() >= 2 && category.front() == '"' && category.back() == '"') {
      // RFC 4180 quoting, as written by spreadsheet and csv-module exports.
      std::string unquoted;
      for (std::size_t k = 1; k + 1 < category.size(); ++k) {
        unquoted.push_back(category[k]);
        if (category[k] == '"' && category[k + 1] == '"') ++k;
      }
      category = std::move(unquoted);
    }
    if (category.empty()) throw SchemaError(where, "empty category");
    auto& corpus = corpora[device_id];
    corpus.device_id = device_id;
    corpus.entries.push_back({std::move(category), count});
  }
  if (!header_seen) throw SchemaError(source, "empty corpus file");
  return corpora;
}

std::map<int, CategoryCorpus> load_corpora(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open corpus file " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_corpora(buffer.str(), path);
}

}  // namespace semalloc
