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

// Domain model for subscription provisioning of semantic-data transmissions:
// edge devices and their pricing, VSP demand scenarios, and the immutable
// problem instance consumed by the solvers.
//
// Units: sizes in bytes, rates in bytes/second, power in watts, energy in
// joules, prices in abstract currency. 1 Kb = 1000 bits = 125 bytes.

#ifndef SEMALLOC_CORE_MODEL_HPP
#define SEMALLOC_CORE_MODEL_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "semalloc/error.hpp"

namespace semalloc {

struct EdgeDevice {
  int id = 0;
  double uplink_rate = 0.0;           // bytes / second, > 0
  double transmit_power = 0.0;        // watts, > 0
  double avg_payload_semantic = 0.0;  // bytes
  // Raw image size in bytes. Only used by the energy report, never by costs.
  std::optional<double> avg_payload_raw;
  double membership_cost = 0.0;
  std::int64_t bundle_size = 1;  // transmissions per reserved bundle
  double alpha_reservation = 0.0;  // currency per joule
  double alpha_on_demand = 0.0;    // currency per joule, > alpha_reservation

  bool operator==(const EdgeDevice&) const = default;
};

struct Vsp {
  int id = 0;
  std::string interest_label;

  bool operator==(const Vsp&) const = default;
};

// One VSP's demand triple inside a scenario.
struct VspDemand {
  std::string interest_key;
  std::int64_t quantity = 0;  // transmissions required
  double threshold = 1.0;     // acceptable fraction in [0, 1]

  // Right-hand side of the per-scenario cover constraint.
  double requirement() const { return static_cast<double>(quantity) * threshold; }

  bool operator==(const VspDemand&) const = default;
};

struct DemandScenario {
  double probability = 0.0;
  std::vector<VspDemand> per_vsp;

  bool operator==(const DemandScenario&) const = default;
};

// Dense (vsp, device, scenario) tensor of average similarity scores.
class SimilarityTensor {
 public:
  SimilarityTensor() = default;
  SimilarityTensor(std::size_t vsps, std::size_t devices, std::size_t scenarios,
                   double fill = 0.0);
  // Takes values in [w][e][i] order; throws InvalidArgumentError on ragged
  // input.
  static SimilarityTensor from_nested(
      const std::vector<std::vector<std::vector<double>>>& nested);

  std::size_t vsps() const { return vsps_; }
  std::size_t devices() const { return devices_; }
  std::size_t scenarios() const { return scenarios_; }

  double at(std::size_t w, std::size_t e, std::size_t i) const {
    return values_[index(w, e, i)];
  }
  double& at(std::size_t w, std::size_t e, std::size_t i) {
    return values_[index(w, e, i)];
  }
  std::span<const double> values() const { return values_; }

  bool operator==(const SimilarityTensor&) const = default;

 private:
  std::size_t index(std::size_t w, std::size_t e, std::size_t i) const {
    return (w * devices_ + e) * scenarios_ + i;
  }

  std::size_t vsps_ = 0;
  std::size_t devices_ = 0;
  std::size_t scenarios_ = 0;
  std::vector<double> values_;
};

// Immutable bundle of devices, VSPs, the scenario set and the similarity
// tensor. Construction does not validate; run validate_instance() (or
// require_valid()) before handing an instance to a solver.
class ProblemInstance {
 public:
  ProblemInstance() = default;
  ProblemInstance(std::vector<EdgeDevice> devices, std::vector<Vsp> vsps,
                  std::vector<DemandScenario> scenarios,
                  SimilarityTensor similarity);

  const std::vector<EdgeDevice>& devices() const { return devices_; }
  const std::vector<Vsp>& vsps() const { return vsps_; }
  const std::vector<DemandScenario>& scenarios() const { return scenarios_; }
  const SimilarityTensor& similarity() const { return similarity_; }

  std::size_t num_devices() const { return devices_.size(); }
  std::size_t num_vsps() const { return vsps_.size(); }
  std::size_t num_scenarios() const { return scenarios_.size(); }

  double similarity(std::size_t w, std::size_t e, std::size_t i) const {
    return similarity_.at(w, e, i);
  }
  double probability(std::size_t i) const { return scenarios_[i].probability; }
  double requirement(std::size_t w, std::size_t i) const {
    return scenarios_[i].per_vsp[w].requirement();
  }

  // Copies with one aspect replaced; used by the experiment sweeps.
  ProblemInstance with_probabilities(std::span<const double> probabilities) const;
  ProblemInstance with_devices(std::vector<EdgeDevice> devices) const;
  ProblemInstance with_scenarios(std::vector<DemandScenario> scenarios,
                                 SimilarityTensor similarity) const;

  bool operator==(const ProblemInstance&) const = default;

 private:
  std::vector<EdgeDevice> devices_;
  std::vector<Vsp> vsps_;
  std::vector<DemandScenario> scenarios_;
  SimilarityTensor similarity_;
};

struct CostBreakdown {
  double membership_total = 0.0;
  double reservation_total = 0.0;
  double expected_on_demand = 0.0;
  double total = 0.0;

  // The only way totals are formed, so recomputation is bit-exact.
  static CostBreakdown from_parts(double membership, double reservation,
                                  double expected_on_demand) {
    return {membership, reservation, expected_on_demand,
            membership + reservation + expected_on_demand};
  }

  double first_stage() const { return membership_total + reservation_total; }

  bool operator==(const CostBreakdown&) const = default;
};

struct Violation {
  std::string path;     // e.g. "scenarios", "similarity[0][2][1]"
  std::string message;  // e.g. "probabilities sum to 1.4"
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  std::string summary() const;
};

// Raised by require_valid(); carries the full violation list.
class ValidationError : public Error {
 public:
  explicit ValidationError(ValidationReport report);
  const char* kind() const noexcept override { return "validation"; }
  const ValidationReport& report() const noexcept { return report_; }

 private:
  ValidationReport report_;
};

inline constexpr double kProbabilitySumTolerance = 1e-9;

// Transmission time t = q / r in seconds.
double transmission_time(double payload_bytes, const EdgeDevice& device);
// Uplink energy x = power * t in joules.
double transmission_energy(double payload_bytes, const EdgeDevice& device);

// Price of one reserved bundle of `bundle_size` transmissions, priced at
// alpha_reservation per joule of average semantic payload.
double reservation_bundle_cost(const EdgeDevice& device);
// Price of a single on-demand transmission, priced at alpha_on_demand.
double on_demand_unit_cost(const EdgeDevice& device);

std::vector<Violation> validate_device(const EdgeDevice& device);
ValidationReport validate_instance(const ProblemInstance& instance);
// Throws ValidationError when validate_instance reports anything.
void require_valid(const ProblemInstance& instance);

}  // namespace semalloc

#endif  // SEMALLOC_CORE_MODEL_HPP
