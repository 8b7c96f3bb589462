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

#include "semalloc/ingestion.hpp"

#include <fstream>
#include <map>
#include <memory>

#include "semalloc/similarity.hpp"

namespace semalloc {

using nlohmann::json;

namespace {

std::string child(const std::string& pointer, const std::string& key) {
  return pointer + "/" + key;
}
std::string child(const std::string& pointer, std::size_t index) {
  return pointer + "/" + std::to_string(index);
}

const json& member(const json& object, const std::string& pointer,
                   const std::string& key) {
  if (!object.is_object()) throw SchemaError(pointer, "expected an object");
  const auto it = object.find(key);
  if (it == object.end()) throw SchemaError(child(pointer, key), "missing");
  return *it;
}

const json& array_member(const json& object, const std::string& pointer,
                         const std::string& key) {
  const json& value = member(object, pointer, key);
  if (!value.is_array()) throw SchemaError(child(pointer, key), "expected an array");
  return value;
}

double number_of(const json& value, const std::string& pointer) {
  if (!value.is_number()) throw SchemaError(pointer, "expected a number");
  return value.get<double>();
}

double number_member(const json& object, const std::string& pointer,
                     const std::string& key) {
  return number_of(member(object, pointer, key), child(pointer, key));
}

std::int64_t integer_of(const json& value, const std::string& pointer) {
  if (!value.is_number_integer()) throw SchemaError(pointer, "expected an integer");
  return value.get<std::int64_t>();
}

std::int64_t integer_member(const json& object, const std::string& pointer,
                            const std::string& key) {
  return integer_of(member(object, pointer, key), child(pointer, key));
}

std::string string_member(const json& object, const std::string& pointer,
                          const std::string& key) {
  const json& value = member(object, pointer, key);
  if (!value.is_string()) throw SchemaError(child(pointer, key), "expected a string");
  return value.get<std::string>();
}

EdgeDevice parse_device(const json& node, const std::string& pointer) {
  EdgeDevice device;
  device.id = static_cast<int>(integer_member(node, pointer, "id"));
  device.uplink_rate = number_member(node, pointer, "uplink_rate");
  device.transmit_power = number_member(node, pointer, "transmit_power");
  device.avg_payload_semantic = number_member(node, pointer, "avg_payload_semantic");
  if (node.contains("avg_payload_raw")) {
    device.avg_payload_raw = number_member(node, pointer, "avg_payload_raw");
  }
  device.membership_cost = number_member(node, pointer, "membership_cost");
  device.bundle_size = integer_member(node, pointer, "bundle_size");
  device.alpha_reservation = number_member(node, pointer, "alpha_reservation");
  device.alpha_on_demand = number_member(node, pointer, "alpha_on_demand");
  return device;
}

SimilarityTensor parse_tensor(const json& node, const std::string& pointer) {
  if (!node.is_array()) throw SchemaError(pointer, "expected a [vsp][device][scenario] array");
  std::vector<std::vector<std::vector<double>>> nested;
  for (std::size_t w = 0; w < node.size(); ++w) {
    const std::string pw = child(pointer, w);
    if (!node[w].is_array()) throw SchemaError(pw, "expected an array");
    auto& rows = nested.emplace_back();
    for (std::size_t e = 0; e < node[w].size(); ++e) {
      const std::string pe = child(pw, e);
      if (!node[w][e].is_array()) throw SchemaError(pe, "expected an array");
      auto& column = rows.emplace_back();
      for (std::size_t i = 0; i < node[w][e].size(); ++i) {
        column.push_back(number_of(node[w][e][i], child(pe, i)));
      }
    }
  }
  try {
    return SimilarityTensor::from_nested(nested);
  } catch (const InvalidArgumentError& e) {
    throw SchemaError(pointer, e.what());
  }
}

std::filesystem::path resolve(const std::filesystem::path& base_dir,
                              const std::string& relative,
                              const std::string& pointer) {
  std::filesystem::path path(relative);
  if (path.is_relative()) path = base_dir / path;
  if (!std::filesystem::exists(path)) {
    throw SchemaError(pointer, "referenced file " + path.string() + " does not exist");
  }
  return path;
}

template <class T>
std::vector<std::vector<T>> integer_matrix(const json& node, const std::string& pointer) {
  if (!node.is_array()) throw SchemaError(pointer, "expected an array");
  std::vector<std::vector<T>> rows;
  for (std::size_t r = 0; r < node.size(); ++r) {
    if (!node[r].is_array()) throw SchemaError(child(pointer, r), "expected an array");
    auto& row = rows.emplace_back();
    for (std::size_t c = 0; c < node[r].size(); ++c) {
      row.push_back(static_cast<T>(integer_of(node[r][c], child(child(pointer, r), c))));
    }
  }
  return rows;
}

json cost_to_json(const CostBreakdown& cost) {
  json out = json::object();
  out["membership_total"] = cost.membership_total;
  out["reservation_total"] = cost.reservation_total;
  out["expected_on_demand"] = cost.expected_on_demand;
  out["total"] = cost.total;
  return out;
}

}  // namespace

ProblemInstance parse_problem(const json& document,
                              const std::filesystem::path& base_dir) {
  const std::string root;
  if (!document.is_object()) throw SchemaError("/", "expected an object");

  std::vector<EdgeDevice> devices;
  const json& device_nodes = array_member(document, root, "devices");
  for (std::size_t e = 0; e < device_nodes.size(); ++e) {
    devices.push_back(parse_device(device_nodes[e], child("/devices", e)));
  }

  std::vector<Vsp> vsps;
  const json& vsp_nodes = array_member(document, root, "vsps");
  for (std::size_t w = 0; w < vsp_nodes.size(); ++w) {
    const std::string pointer = child("/vsps", w);
    Vsp vsp;
    vsp.id = static_cast<int>(integer_member(vsp_nodes[w], pointer, "id"));
    if (vsp_nodes[w].contains("interest_label")) {
      vsp.interest_label = string_member(vsp_nodes[w], pointer, "interest_label");
    }
    vsps.push_back(std::move(vsp));
  }

  std::vector<DemandScenario> scenarios;
  const json& scenario_nodes = array_member(document, root, "scenarios");
  if (scenario_nodes.empty()) {
    throw SchemaError("/scenarios", "scenario set must be non-empty");
  }
  for (std::size_t i = 0; i < scenario_nodes.size(); ++i) {
    const std::string pointer = child("/scenarios", i);
    DemandScenario scenario;
    scenario.probability = number_member(scenario_nodes[i], pointer, "probability");
    const json& demands = array_member(scenario_nodes[i], pointer, "demands");
    for (std::size_t w = 0; w < demands.size(); ++w) {
      const std::string pd = child(child(pointer, "demands"), w);
      VspDemand demand;
      demand.interest_key = string_member(demands[w], pd, "interest_key");
      demand.quantity = integer_member(demands[w], pd, "quantity");
      demand.threshold = number_member(demands[w], pd, "threshold");
      scenario.per_vsp.push_back(std::move(demand));
    }
    scenarios.push_back(std::move(scenario));
  }

  const json& source = member(document, root, "similarity");
  const bool has_tensor = source.is_object() && source.contains("tensor");
  const bool has_corpus = source.is_object() && source.contains("corpus");
  if (has_tensor == has_corpus) {
    throw SchemaError("/similarity",
                      "exactly one of \"tensor\" or \"corpus\" must be present");
  }

  SimilarityTensor tensor;
  if (has_tensor) {
    tensor = parse_tensor(source["tensor"], "/similarity/tensor");
  } else {
    std::map<std::string, std::string> interests;
    const json& interest_nodes = member(document, root, "interests");
    if (!interest_nodes.is_object()) {
      throw SchemaError("/interests", "expected an object of key -> text");
    }
    for (const auto& [key, text] : interest_nodes.items()) {
      if (!text.is_string()) throw SchemaError(child("/interests", key), "expected a string");
      interests.emplace(key, text.get<std::string>());
    }
    const auto corpus_path = resolve(
        base_dir, string_member(source, "/similarity", "corpus"), "/similarity/corpus");
    const auto corpora = load_corpora(corpus_path.string());

    const bool has_embeddings = source.contains("embeddings");
    const bool has_embedder = source.contains("embedder");
    if (has_embeddings == has_embedder) {
      throw SchemaError("/similarity",
                        "corpus mode needs exactly one of \"embeddings\" or \"embedder\"");
    }
    std::unique_ptr<EmbeddingProvider> provider;
    if (has_embeddings) {
      const auto path = resolve(base_dir,
                                string_member(source, "/similarity", "embeddings"),
                                "/similarity/embeddings");
      provider = std::make_unique<FileEmbeddings>(FileEmbeddings::from_file(path.string()));
    } else {
      const std::string name = string_member(source, "/similarity", "embedder");
      if (name != "hash") {
        throw SchemaError("/similarity/embedder", "unknown embedder \"" + name + "\"");
      }
      provider = std::make_unique<HashEmbedder>();
    }

    std::vector<std::vector<std::string>> keys;
    for (const auto& scenario : scenarios) {
      auto& row = keys.emplace_back();
      for (const auto& demand : scenario.per_vsp) row.push_back(demand.interest_key);
    }
    tensor = build_similarity_tensor(keys, interests, corpora, devices.size(), *provider);
  }

  ProblemInstance instance(std::move(devices), std::move(vsps),
                           std::move(scenarios), std::move(tensor));
  require_valid(instance);
  return instance;
}

ProblemInstance load_problem(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open problem file " + path.string());
  json document;
  try {
    document = json::parse(in);
  } catch (const json::parse_error& e) {
    throw SchemaError(path.string(), e.what());
  }
  return parse_problem(document, path.parent_path());
}

json problem_to_json(const ProblemInstance& instance) {
  json document = json::object();
  json devices = json::array();
  for (const auto& d : instance.devices()) {
    json node = json::object();
    node["id"] = d.id;
    node["uplink_rate"] = d.uplink_rate;
    node["transmit_power"] = d.transmit_power;
    node["avg_payload_semantic"] = d.avg_payload_semantic;
    if (d.avg_payload_raw) node["avg_payload_raw"] = *d.avg_payload_raw;
    node["membership_cost"] = d.membership_cost;
    node["bundle_size"] = d.bundle_size;
    node["alpha_reservation"] = d.alpha_reservation;
    node["alpha_on_demand"] = d.alpha_on_demand;
    devices.push_back(std::move(node));
  }
  document["devices"] = std::move(devices);

  json vsps = json::array();
  for (const auto& v : instance.vsps()) {
    vsps.push_back({{"id", v.id}, {"interest_label", v.interest_label}});
  }
  document["vsps"] = std::move(vsps);

  json scenarios = json::array();
  for (const auto& s : instance.scenarios()) {
    json demands = json::array();
    for (const auto& d : s.per_vsp) {
      demands.push_back({{"interest_key", d.interest_key},
                         {"quantity", d.quantity},
                         {"threshold", d.threshold}});
    }
    scenarios.push_back({{"probability", s.probability}, {"demands", std::move(demands)}});
  }
  document["scenarios"] = std::move(scenarios);

  const SimilarityTensor& s = instance.similarity();
  json tensor = json::array();
  for (std::size_t w = 0; w < s.vsps(); ++w) {
    json rows = json::array();
    for (std::size_t e = 0; e < s.devices(); ++e) {
      json column = json::array();
      for (std::size_t i = 0; i < s.scenarios(); ++i) column.push_back(s.at(w, e, i));
      rows.push_back(std::move(column));
    }
    tensor.push_back(std::move(rows));
  }
  document["similarity"] = {{"tensor", std::move(tensor)}};
  return document;
}

void write_problem(const ProblemInstance& instance,
                   const std::filesystem::path& path) {
  write_text_file(path, dump_document(problem_to_json(instance)));
}

json solution_to_json(const Solution& solution, const std::string& scheme) {
  json document = json::object();
  if (!scheme.empty()) document["scheme"] = scheme;
  document["membership"] = solution.plan.membership;
  document["bundles"] = solution.plan.bundles;
  document["on_demand"] = solution.recourse.on_demand;
  document["cost"] = cost_to_json(solution.cost);
  return document;
}

Solution solution_from_json(const json& document) {
  const std::string root;
  Solution solution;
  solution.plan.membership =
      integer_matrix<int>(member(document, root, "membership"), "/membership");
  solution.plan.bundles =
      integer_matrix<std::int64_t>(member(document, root, "bundles"), "/bundles");
  const json& on_demand = array_member(document, root, "on_demand");
  for (std::size_t w = 0; w < on_demand.size(); ++w) {
    solution.recourse.on_demand.push_back(
        integer_matrix<std::int64_t>(on_demand[w], child("/on_demand", w)));
  }
  const json& cost = member(document, root, "cost");
  solution.cost.membership_total = number_member(cost, "/cost", "membership_total");
  solution.cost.reservation_total = number_member(cost, "/cost", "reservation_total");
  solution.cost.expected_on_demand = number_member(cost, "/cost", "expected_on_demand");
  solution.cost.total = number_member(cost, "/cost", "total");
  return solution;
}

void write_solution(const Solution& solution, const std::filesystem::path& path,
                    const std::string& scheme) {
  write_text_file(path, dump_document(solution_to_json(solution, scheme)));
}

Solution read_solution(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open solution file " + path.string());
  try {
    return solution_from_json(json::parse(in));
  } catch (const json::parse_error& e) {
    throw SchemaError(path.string(), e.what());
  }
}

json random_summary_to_json(const RandomSchemeResult& result,
                            const RandomSchemeConfig& config) {
  json document = json::object();
  document["scheme"] = "random";
  document["seed"] = config.seed;
  document["samples"] = config.samples;
  json totals = json::array();
  for (const auto& sample : result.samples) totals.push_back(sample.cost.total);
  document["totals"] = std::move(totals);
  document["mean_total"] = result.mean_total;
  document["min_total"] = result.min_total;
  document["max_total"] = result.max_total;
  document["best_sample"] = result.best_sample;
  document["best"] = solution_to_json(result.samples.at(result.best_sample));
  return document;
}

std::string dump_document(const json& document) {
  return document.dump(2) + "\n";
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << text;
  out.flush();
  if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace semalloc
