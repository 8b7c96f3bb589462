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

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "../support/builders.hpp"
#include "../support/oracles.hpp"
#include "semalloc/ingestion.hpp"
#include "semalloc/solvers.hpp"

namespace semalloc {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() /
            ("semalloc_test_" + std::to_string(std::random_device{}()));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

json minimal_document() {
  return json::parse(R"({
    "devices": [{"id": 0, "uplink_rate": 1.5e6, "transmit_power": 0.1,
                 "avg_payload_semantic": 5125, "membership_cost": 1.89,
                 "bundle_size": 120, "alpha_reservation": 5, "alpha_on_demand": 15}],
    "vsps": [{"id": 0, "interest_label": "vehicles"}],
    "scenarios": [{"probability": 1.0,
                   "demands": [{"interest_key": "vehicles", "quantity": 100,
                                "threshold": 1.0}]}],
    "similarity": {"tensor": [[[0.83]]]}
  })");
}

std::string schema_pointer(const json& document) {
  try {
    parse_problem(document);
  } catch (const SchemaError& e) {
    return e.pointer();
  }
  return "<no error>";
}

TEST(LoadProblemTest, SingaporeFixture) {
  const auto inst = load_problem(testing::data_path("singapore_demo.json"));
  EXPECT_EQ(inst.num_devices(), 3u);
  EXPECT_EQ(inst.num_vsps(), 2u);
  EXPECT_EQ(inst.num_scenarios(), 2u);
  const double vehicles[] = {0.72, 0.697, 0.83};
  const double buses[] = {0.793, 0.661, 0.57};
  for (std::size_t e = 0; e < 3; ++e) {
    EXPECT_EQ(inst.similarity(0, e, 0), vehicles[e]);
    EXPECT_EQ(inst.similarity(0, e, 1), buses[e]);
  }
  EXPECT_EQ(inst.devices()[1].avg_payload_raw, 650000.0);
}

TEST(LoadProblemTest, EveryShippedFixtureLoads) {
  for (const char* name :
       {"worked_example_dip.json", "zero_demand.json", "cost_structure.json",
        "probability_sweep.json", "interest_change.json", "singapore_demo.json",
        "singapore_corpus.json"}) {
    EXPECT_NO_THROW(load_problem(testing::data_path(name))) << name;
  }
}

TEST(ParseProblemTest, MinimalDocument) {
  const auto inst = parse_problem(minimal_document());
  EXPECT_EQ(inst.requirement(0, 0), 100.0);
  EXPECT_FALSE(inst.devices()[0].avg_payload_raw.has_value());
}

TEST(ParseProblemTest, EmptyScenarioList) {
  json doc = minimal_document();
  doc["scenarios"] = json::array();
  try {
    parse_problem(doc);
    FAIL();
  } catch (const SchemaError& e) {
    EXPECT_NE(std::string(e.what()).find("scenario set must be non-empty"),
              std::string::npos);
  }
}

TEST(ParseProblemTest, SimilarityAboveOneFailsValidation) {
  json doc = minimal_document();
  doc["similarity"]["tensor"][0][0][0] = 1.5;
  EXPECT_THROW(parse_problem(doc), ValidationError);
}

TEST(ParseProblemTest, SchemaErrorsCarryPointers) {
  json doc = minimal_document();
  doc["devices"][0].erase("uplink_rate");
  EXPECT_EQ(schema_pointer(doc), "/devices/0/uplink_rate");

  doc = minimal_document();
  doc["scenarios"][0]["demands"][0]["quantity"] = 2.5;
  EXPECT_EQ(schema_pointer(doc), "/scenarios/0/demands/0/quantity");

  doc = minimal_document();
  doc["similarity"]["tensor"][0][0][0] = "high";
  EXPECT_EQ(schema_pointer(doc), "/similarity/tensor/0/0/0");

  doc = minimal_document();
  doc["similarity"] = {{"tensor", doc["similarity"]["tensor"]}, {"corpus", "c.csv"}};
  EXPECT_EQ(schema_pointer(doc), "/similarity");

  doc = minimal_document();
  doc["similarity"] = json::object();
  EXPECT_EQ(schema_pointer(doc), "/similarity");

  doc = minimal_document();
  doc.erase("vsps");
  EXPECT_EQ(schema_pointer(doc), "/vsps");
}

TEST(ParseProblemTest, MissingCorpusFile) {
  json doc = minimal_document();
  doc["interests"] = {{"vehicles", "vehicles on the road"}};
  doc["similarity"] = {{"corpus", "missing.csv"}, {"embedder", "hash"}};
  EXPECT_EQ(schema_pointer(doc), "/similarity/corpus");
}

TEST(ParseProblemTest, HashEmbedderCorpusMode) {
  TempDir dir;
  {
    std::ofstream out(dir.path() / "corpus.csv");
    out << "device_id,category,count\n0,vehicles on the road,1\n0,tree,1\n";
  }
  json doc = minimal_document();
  doc["interests"] = {{"vehicles", "Vehicles on the road"}};
  doc["similarity"] = {{"corpus", "corpus.csv"}, {"embedder", "hash"}};
  const auto inst = parse_problem(doc, dir.path());
  const double s = inst.similarity(0, 0, 0);
  // One exact match and one unrelated category.
  EXPECT_GE(s, 0.5 - 1e-12);
  EXPECT_LE(s, 1.0);

  doc["similarity"]["embedder"] = "bert";
  EXPECT_THROW(parse_problem(doc, dir.path()), SchemaError);
}

TEST(ParseProblemTest, UnknownInterestKeyIsAConfigError) {
  TempDir dir;
  {
    std::ofstream out(dir.path() / "corpus.csv");
    out << "device_id,category,count\n0,car,1\n";
  }
  json doc = minimal_document();
  doc["interests"] = {{"buses", "buses"}};
  doc["similarity"] = {{"corpus", "corpus.csv"}, {"embedder", "hash"}};
  EXPECT_THROW(parse_problem(doc, dir.path()), ConfigError);
}

TEST(LoadProblemTest, IoAndParseErrors) {
  EXPECT_THROW(load_problem("/nonexistent/problem.json"), IoError);
  TempDir dir;
  {
    std::ofstream out(dir.path() / "bad.json");
    out << "{ not json";
  }
  EXPECT_THROW(load_problem(dir.path() / "bad.json"), SchemaError);
}

TEST(RoundTripTest, ProblemDocumentIsStable) {
  std::mt19937_64 rng(6);
  TempDir dir;
  for (int k = 0; k < 30; ++k) {
    const ProblemInstance inst = testing::random_instance(rng, {});
    write_problem(inst, dir.path() / "p.json");
    const ProblemInstance back = load_problem(dir.path() / "p.json");
    ASSERT_EQ(back, inst);
    ASSERT_EQ(dump_document(problem_to_json(back)), read_file(dir.path() / "p.json"));
  }
}

TEST(RoundTripTest, SolutionWriteThenRead) {
  std::mt19937_64 rng(7);
  TempDir dir;
  for (int k = 0; k < 30; ++k) {
    const ProblemInstance inst = testing::random_instance(rng, {});
    const Solution s = solve_sip(inst);
    write_solution(s, dir.path() / "s.json", "sip");
    ASSERT_EQ(read_solution(dir.path() / "s.json"), s);
  }
}

TEST(RoundTripTest, ZeroPlanParsesWithTotalZero) {
  const auto inst = load_problem(testing::data_path("zero_demand.json"));
  TempDir dir;
  write_solution(solve_sip(inst), dir.path() / "zero.json");
  const json doc = json::parse(read_file(dir.path() / "zero.json"));
  EXPECT_EQ(doc["cost"]["total"].get<double>(), 0.0);
  EXPECT_FALSE(doc.contains("scheme"));
}

TEST(WriteTest, UnwritablePathIsAnIoError) {
  EXPECT_THROW(write_text_file("/nonexistent/dir/out.json", "x"), IoError);
}

TEST(SolutionFromJsonTest, RejectsNonIntegerBundles) {
  json doc = solution_to_json(Solution{ReservationPlan::zeros(1, 1),
                                       RecourseDecision::zeros(1, 1, 1), {}});
  doc["bundles"][0][0] = 1.5;
  EXPECT_THROW(solution_from_json(doc), SchemaError);
}

// Output of the solver on the demo fixture, serialized, compared to the file
// produced by the first verified build.
TEST(GoldenTest, SingaporeSipSolution) {
  const auto inst = load_problem(testing::data_path("singapore_demo.json"));
  const std::string produced = dump_document(solution_to_json(solve_sip(inst), "sip"));
  EXPECT_EQ(produced, read_file(testing::data_path("golden/singapore_sip_solution.json")));
}

}  // namespace
}  // namespace semalloc
