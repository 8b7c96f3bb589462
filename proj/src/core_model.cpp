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

#include "semalloc/core_model.hpp"

#include <cmath>
#include <sstream>
#include <utility>

#include "semalloc/format.hpp"

namespace semalloc {

SimilarityTensor::SimilarityTensor(std::size_t vsps, std::size_t devices,
                                   std::size_t scenarios, double fill)
    : vsps_(vsps),
      devices_(devices),
      scenarios_(scenarios),
      values_(vsps * devices * scenarios, fill) {}

SimilarityTensor SimilarityTensor::from_nested(
    const std::vector<std::vector<std::vector<double>>>& nested) {
  const std::size_t w_count = nested.size();
  const std::size_t e_count = w_count == 0 ? 0 : nested[0].size();
  const std::size_t i_count = e_count == 0 ? 0 : nested[0][0].size();
  SimilarityTensor tensor(w_count, e_count, i_count);
  for (std::size_t w = 0; w < w_count; ++w) {
    if (nested[w].size() != e_count) {
      throw InvalidArgumentError("similarity tensor is ragged at [" +
                                 std::to_string(w) + "]");
    }
    for (std::size_t e = 0; e < e_count; ++e) {
      if (nested[w][e].size() != i_count) {
        throw InvalidArgumentError("similarity tensor is ragged at [" +
                                   std::to_string(w) + "][" +
                                   std::to_string(e) + "]");
      }
      for (std::size_t i = 0; i < i_count; ++i) {
        tensor.at(w, e, i) = nested[w][e][i];
      }
    }
  }
  return tensor;
}

ProblemInstance::ProblemInstance(std::vector<EdgeDevice> devices,
                                 std::vector<Vsp> vsps,
                                 std::vector<DemandScenario> scenarios,
                                 SimilarityTensor similarity)
    : devices_(std::move(devices)),
      vsps_(std::move(vsps)),
      scenarios_(std::move(scenarios)),
      similarity_(std::move(similarity)) {}

ProblemInstance ProblemInstance::with_probabilities(
    std::span<const double> probabilities) const {
  if (probabilities.size() != scenarios_.size()) {
    throw InvalidArgumentError("expected " + std::to_string(scenarios_.size()) +
                               " probabilities, got " +
                               std::to_string(probabilities.size()));
  }
  ProblemInstance copy = *this;
  for (std::size_t i = 0; i < probabilities.size(); ++i) {
    copy.scenarios_[i].probability = probabilities[i];
  }
  return copy;
}

ProblemInstance ProblemInstance::with_devices(
    std::vector<EdgeDevice> devices) const {
  ProblemInstance copy = *this;
  copy.devices_ = std::move(devices);
  return copy;
}

ProblemInstance ProblemInstance::with_scenarios(
    std::vector<DemandScenario> scenarios, SimilarityTensor similarity) const {
  ProblemInstance copy = *this;
  copy.scenarios_ = std::move(scenarios);
  copy.similarity_ = std::move(similarity);
  return copy;
}

std::string ValidationReport::summary() const {
  std::ostringstream out;
  for (std::size_t k = 0; k < violations.size(); ++k) {
    if (k > 0) out << "; ";
    out << violations[k].path << ": " << violations[k].message;
  }
  return out.str();
}

ValidationError::ValidationError(ValidationReport report)
    : Error("invalid problem instance: " + report.summary()),
      report_(std::move(report)) {}

namespace {

void check_rate(const EdgeDevice& device) {
  if (!std::isfinite(device.uplink_rate) || device.uplink_rate <= 0.0) {
    throw InvalidArgumentError("device " + std::to_string(device.id) +
                               ": uplink_rate must be finite and positive");
  }
}

void check_payload(double payload_bytes) {
  if (!std::isfinite(payload_bytes) || payload_bytes < 0.0) {
    throw InvalidArgumentError("payload must be finite and non-negative, got " +
                               format_number(payload_bytes));
  }
}

void require_valid_device(const EdgeDevice& device) {
  const auto violations = validate_device(device);
  if (!violations.empty()) {
    throw InvalidArgumentError("device " + std::to_string(device.id) + ": " +
                               violations.front().message);
  }
}

}  // namespace

double transmission_time(double payload_bytes, const EdgeDevice& device) {
  check_payload(payload_bytes);
  check_rate(device);
  return payload_bytes / device.uplink_rate;
}

double transmission_energy(double payload_bytes, const EdgeDevice& device) {
  return device.transmit_power * transmission_time(payload_bytes, device);
}

double reservation_bundle_cost(const EdgeDevice& device) {
  require_valid_device(device);
  return static_cast<double>(device.bundle_size) * device.transmit_power *
         device.avg_payload_semantic / device.uplink_rate *
         device.alpha_reservation;
}

double on_demand_unit_cost(const EdgeDevice& device) {
  require_valid_device(device);
  return device.transmit_power * device.avg_payload_semantic /
         device.uplink_rate * device.alpha_on_demand;
}

std::vector<Violation> validate_device(const EdgeDevice& device) {
  std::vector<Violation> out;
  const std::string path = "devices[" + std::to_string(device.id) + "]";
  auto non_negative = [&](double v, const char* name) {
    if (!std::isfinite(v) || v < 0.0) {
      out.push_back({path, std::string(name) + " must be finite and >= 0"});
    }
  };
  auto positive = [&](double v, const char* name) {
    if (!std::isfinite(v) || v <= 0.0) {
      out.push_back({path, std::string(name) + " must be finite and > 0"});
    }
  };
  positive(device.uplink_rate, "uplink_rate");
  positive(device.transmit_power, "transmit_power");
  non_negative(device.avg_payload_semantic, "avg_payload_semantic");
  if (device.avg_payload_raw) {
    non_negative(*device.avg_payload_raw, "avg_payload_raw");
  }
  non_negative(device.membership_cost, "membership_cost");
  if (device.bundle_size < 1) {
    out.push_back({path, "bundle_size must be >= 1"});
  }
  positive(device.alpha_reservation, "alpha_reservation");
  positive(device.alpha_on_demand, "alpha_on_demand");
  if (!(device.alpha_on_demand > device.alpha_reservation)) {
    out.push_back({path, "alpha_on_demand must exceed alpha_reservation"});
  }
  return out;
}

ValidationReport validate_instance(const ProblemInstance& instance) {
  ValidationReport report;
  auto& out = report.violations;

  for (std::size_t e = 0; e < instance.num_devices(); ++e) {
    const EdgeDevice& device = instance.devices()[e];
    if (device.id != static_cast<int>(e)) {
      out.push_back({"devices[" + std::to_string(e) + "]",
                     "id " + std::to_string(device.id) +
                         " does not match position " + std::to_string(e)});
    }
    for (auto& v : validate_device(device)) out.push_back(std::move(v));
  }
  for (std::size_t w = 0; w < instance.num_vsps(); ++w) {
    if (instance.vsps()[w].id != static_cast<int>(w)) {
      out.push_back({"vsps[" + std::to_string(w) + "]",
                     "id " + std::to_string(instance.vsps()[w].id) +
                         " does not match position " + std::to_string(w)});
    }
  }

  if (instance.num_scenarios() == 0) {
    out.push_back({"scenarios", "scenario set must be non-empty"});
  }
  double probability_sum = 0.0;
  for (std::size_t i = 0; i < instance.num_scenarios(); ++i) {
    const DemandScenario& scenario = instance.scenarios()[i];
    const std::string path = "scenarios[" + std::to_string(i) + "]";
    if (!std::isfinite(scenario.probability) || scenario.probability < 0.0 ||
        scenario.probability > 1.0) {
      out.push_back({path, "probability " +
                               format_number(scenario.probability) +
                               " out of [0,1]"});
    }
    probability_sum += scenario.probability;
    if (scenario.per_vsp.size() != instance.num_vsps()) {
      out.push_back({path, "has " + std::to_string(scenario.per_vsp.size()) +
                               " demands for " +
                               std::to_string(instance.num_vsps()) + " VSPs"});
      continue;
    }
    for (std::size_t w = 0; w < scenario.per_vsp.size(); ++w) {
      const VspDemand& demand = scenario.per_vsp[w];
      if (demand.quantity < 0) {
        out.push_back({path + ".per_vsp[" + std::to_string(w) + "]",
                       "quantity must be >= 0"});
      }
      if (!std::isfinite(demand.threshold) || demand.threshold < 0.0 ||
          demand.threshold > 1.0) {
        out.push_back({path + ".per_vsp[" + std::to_string(w) + "]",
                       "threshold out of [0,1]"});
      }
    }
  }
  if (instance.num_scenarios() > 0 &&
      std::abs(probability_sum - 1.0) > kProbabilitySumTolerance) {
    out.push_back(
        {"scenarios", "probabilities sum to " + format_number(probability_sum)});
  }

  const SimilarityTensor& s = instance.similarity();
  if (s.vsps() != instance.num_vsps() || s.devices() != instance.num_devices() ||
      s.scenarios() != instance.num_scenarios()) {
    out.push_back({"similarity",
                   "dimensions " + std::to_string(s.vsps()) + "x" +
                       std::to_string(s.devices()) + "x" +
                       std::to_string(s.scenarios()) + " do not match " +
                       std::to_string(instance.num_vsps()) + "x" +
                       std::to_string(instance.num_devices()) + "x" +
                       std::to_string(instance.num_scenarios())});
  } else {
    for (std::size_t w = 0; w < s.vsps(); ++w) {
      for (std::size_t e = 0; e < s.devices(); ++e) {
        for (std::size_t i = 0; i < s.scenarios(); ++i) {
          const double v = s.at(w, e, i);
          if (!(v >= 0.0 && v <= 1.0)) {
            out.push_back({"similarity[" + std::to_string(w) + "][" +
                               std::to_string(e) + "][" + std::to_string(i) +
                               "]",
                           "similarity out of [0,1]: " + format_number(v)});
          }
        }
      }
    }
  }
  return report;
}

void require_valid(const ProblemInstance& instance) {
  ValidationReport report = validate_instance(instance);
  if (!report.ok()) throw ValidationError(std::move(report));
}

}  // namespace semalloc
