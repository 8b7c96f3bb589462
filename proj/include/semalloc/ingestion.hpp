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

// Problem and solution documents. The schemas are described in README.md.

#ifndef SEMALLOC_INGESTION_HPP
#define SEMALLOC_INGESTION_HPP

#include <filesystem>
#include <string>

#include "json.hpp"
#include "semalloc/baselines.hpp"
#include "semalloc/core_model.hpp"
#include "semalloc/recourse.hpp"

namespace semalloc {

// Parses and validates a problem document. Relative corpus/embeddings paths
// resolve against `base_dir`. Schema problems raise SchemaError with a JSON
// pointer; invariant violations raise ValidationError.
ProblemInstance parse_problem(const nlohmann::json& document,
                              const std::filesystem::path& base_dir = {});
ProblemInstance load_problem(const std::filesystem::path& path);

// Explicit-tensor document for `instance`.
nlohmann::json problem_to_json(const ProblemInstance& instance);
void write_problem(const ProblemInstance& instance,
                   const std::filesystem::path& path);

// `scheme` is recorded when non-empty.
nlohmann::json solution_to_json(const Solution& solution,
                                const std::string& scheme = {});
Solution solution_from_json(const nlohmann::json& document);
void write_solution(const Solution& solution, const std::filesystem::path& path,
                    const std::string& scheme = {});
Solution read_solution(const std::filesystem::path& path);

nlohmann::json random_summary_to_json(const RandomSchemeResult& result,
                                      const RandomSchemeConfig& config);

// Serialized form used for every JSON file we write: two-space indent and a
// trailing newline.
std::string dump_document(const nlohmann::json& document);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace semalloc

#endif  // SEMALLOC_INGESTION_HPP
