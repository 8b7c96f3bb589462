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

#include "semalloc/experiments.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <string>

#include "semalloc/format.hpp"
#include "semalloc/parallel.hpp"

namespace semalloc {
namespace {

double parse_double(std::string_view text, std::string_view spec) {
  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() ||
      !std::isfinite(value)) {
    throw UsageError("bad number \"" + std::string(text) + "\" in grid \"" +
                     std::string(spec) + "\"");
  }
  return value;
}

double snap(double value) { return std::round(value * 1e12) / 1e12; }

}  // namespace

std::vector<double> parse_grid(std::string_view spec) {
  std::vector<double> grid;
  if (spec.find(':') != std::string_view::npos) {
    const auto first = spec.find(':');
    const auto second = spec.find(':', first + 1);
    if (second == std::string_view::npos ||
        spec.find(':', second + 1) != std::string_view::npos) {
      throw UsageError("grid must look like a:b:step, got \"" + std::string(spec) + "\"");
    }
    const double a = parse_double(spec.substr(0, first), spec);
    const double b = parse_double(spec.substr(first + 1, second - first - 1), spec);
    const double step = parse_double(spec.substr(second + 1), spec);
    if (!(step > 0.0) || b < a) {
      throw UsageError("grid needs step > 0 and a <= b, got \"" + std::string(spec) + "\"");
    }
    const auto count = static_cast<std::int64_t>(std::floor((b - a) / step + 1e-9));
    for (std::int64_t k = 0; k <= count; ++k) {
      grid.push_back(snap(a + static_cast<double>(k) * step));
    }
  } else {
    std::size_t start = 0;
    while (start <= spec.size()) {
      const auto comma = std::min(spec.find(',', start), spec.size());
      grid.push_back(parse_double(spec.substr(start, comma - start), spec));
      start = comma + 1;
    }
  }
  if (grid.empty()) throw UsageError("grid is empty");
  for (std::size_t k = 1; k < grid.size(); ++k) {
    if (!(grid[k] > grid[k - 1])) {
      throw UsageError("grid must be strictly ascending");
    }
  }
  return grid;
}

std::string_view to_string(PlanType type) {
  switch (type) {
    case PlanType::kReserved:
      return "reserved";
    case PlanType::kOnDemand:
      return "on-demand";
    case PlanType::kNone:
      return "none";
  }
  return "none";
}

PlanType classify_vsp(const Solution& solution, std::size_t w) {
  const auto& bundles = solution.plan.bundles.at(w);
  if (std::any_of(bundles.begin(), bundles.end(),
                  [](std::int64_t k) { return k > 0; })) {
    return PlanType::kReserved;
  }
  for (const auto& per_scenario : solution.recourse.on_demand.at(w)) {
    for (std::int64_t units : per_scenario) {
      if (units > 0) return PlanType::kOnDemand;
    }
  }
  return PlanType::kNone;
}

std::vector<ProbabilitySweepRow> sweep_probability(const ProblemInstance& instance,
                                                   std::span<const double> grid,
                                                   const SolverConfig& config,
                                                   std::size_t threads) {
  if (instance.num_scenarios() != 2) {
    throw UsageError("probability sweep needs exactly 2 scenarios, instance has " +
                     std::to_string(instance.num_scenarios()));
  }
  if (grid.empty()) throw UsageError("grid is empty");
  for (double p : grid) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw UsageError("probability grid point " + format_number(p) + " outside [0,1]");
    }
  }
  std::vector<ProbabilitySweepRow> rows(grid.size());
  SolverConfig inner = config;
  inner.threads = 1;
  parallel_for(grid.size(), threads, [&](std::size_t k) {
    const std::array<double, 2> probabilities{grid[k], 1.0 - grid[k]};
    ProbabilitySweepRow& row = rows[k];
    row.probability = grid[k];
    row.solution = solve_sip(instance.with_probabilities(probabilities), inner);
    for (std::size_t w = 0; w < instance.num_vsps(); ++w) {
      row.plan_types.push_back(classify_vsp(row.solution, w));
    }
  });
  return rows;
}

void write_probability_csv(std::ostream& out,
                           const std::vector<ProbabilitySweepRow>& rows) {
  const std::size_t vsps = rows.empty() ? 0 : rows.front().plan_types.size();
  out << "p_lambda1,reservation_cost,expected_on_demand,total";
  for (std::size_t w = 0; w < vsps; ++w) out << ",vsp" << w << "_plan";
  out << '\n';
  for (const auto& row : rows) {
    out << format_number(row.probability) << ','
        << format_number(row.solution.cost.first_stage()) << ','
        << format_number(row.solution.cost.expected_on_demand) << ','
        << format_number(row.solution.cost.total);
    for (PlanType type : row.plan_types) out << ',' << to_string(type);
    out << '\n';
  }
}

BundleSweepResult sweep_bundles(const ProblemInstance& instance, std::size_t w,
                                std::size_t e, std::int64_t max_bundles) {
  BundleSweepResult result;
  result.points = sweep_first_stage(instance, w, e, 0, max_bundles);
  for (std::size_t k = 0; k < result.points.size(); ++k) {
    if (result.points[k].total < result.points[result.argmin].total) {
      result.argmin = k;
    }
    if (!result.crossing && result.points[k].stage1 >= result.points[k].stage2) {
      result.crossing = k;
    }
  }
  return result;
}

void write_bundle_csv(std::ostream& out, const BundleSweepResult& result) {
  out << "bundles,stage1_cost,stage2_cost,total_cost,is_argmin\n";
  for (std::size_t k = 0; k < result.points.size(); ++k) {
    const auto& p = result.points[k];
    out << p.bundles << ',' << format_number(p.stage1) << ','
        << format_number(p.stage2) << ',' << format_number(p.total) << ','
        << (k == result.argmin ? 1 : 0) << '\n';
  }
}

ProblemInstance scale_on_demand(const ProblemInstance& instance, double factor) {
  if (!(factor > 0.0) || !std::isfinite(factor)) {
    throw UsageError("on-demand factor must be positive, got " + format_number(factor));
  }
  std::vector<EdgeDevice> devices = instance.devices();
  for (auto& device : devices) device.alpha_on_demand *= factor;
  return instance.with_devices(std::move(devices));
}

std::vector<CompareRow> compare_schemes(const ProblemInstance& instance,
                                        std::span<const double> factors,
                                        const RandomSchemeConfig& random,
                                        const SolverConfig& config,
                                        std::size_t threads) {
  if (factors.empty()) throw UsageError("factor grid is empty");
  std::vector<CompareRow> rows(factors.size());
  SolverConfig inner = config;
  inner.threads = 1;
  RandomSchemeConfig inner_random = random;
  inner_random.threads = 1;
  parallel_for(factors.size(), threads, [&](std::size_t k) {
    const ProblemInstance scaled = scale_on_demand(instance, factors[k]);
    const Solution sip = solve_sip(scaled, inner);
    const Solution evf = solve_evf(scaled, inner);
    const RandomSchemeResult rnd = solve_random(scaled, inner_random);
    rows[k] = {factors[k],      sip.cost.total,  sip.cost.expected_on_demand,
               evf.cost.total, rnd.mean_total, rnd.min_total};
  });
  return rows;
}

void write_compare_csv(std::ostream& out, const std::vector<CompareRow>& rows) {
  out << "on_demand_factor,sip_total,sip_expected_on_demand,evf_total,"
         "random_mean_total,random_min_total\n";
  for (const auto& row : rows) {
    out << format_number(row.factor) << ',' << format_number(row.sip_total) << ','
        << format_number(row.sip_on_demand) << ',' << format_number(row.evf_total)
        << ',' << format_number(row.random_mean) << ','
        << format_number(row.random_min) << '\n';
  }
}

EnergyReport energy_report(const ProblemInstance& instance) {
  EnergyReport report;
  for (const auto& device : instance.devices()) {
    if (!device.avg_payload_raw) {
      throw UsageError("device " + std::to_string(device.id) +
                       " has no avg_payload_raw");
    }
    if (!(device.avg_payload_semantic > 0.0)) {
      throw UsageError("device " + std::to_string(device.id) +
                       " has a zero semantic payload");
    }
    EnergyRow row;
    row.device = device.id;
    row.semantic_joules = transmission_energy(device.avg_payload_semantic, device);
    row.raw_joules = transmission_energy(*device.avg_payload_raw, device);
    row.ratio = row.raw_joules / row.semantic_joules;
    report.total_semantic_joules += row.semantic_joules;
    report.total_raw_joules += row.raw_joules;
    report.rows.push_back(row);
  }
  if (report.rows.empty()) throw UsageError("instance has no devices");
  report.overall_ratio = report.total_raw_joules / report.total_semantic_joules;
  return report;
}

void write_energy_csv(std::ostream& out, const EnergyReport& report) {
  out << "device,semantic_energy_j,raw_energy_j,raw_to_semantic_ratio\n";
  for (const auto& row : report.rows) {
    out << row.device << ',' << format_number(row.semantic_joules) << ','
        << format_number(row.raw_joules) << ',' << format_number(row.ratio) << '\n';
  }
  out << "all," << format_number(report.total_semantic_joules) << ','
      << format_number(report.total_raw_joules) << ','
      << format_number(report.overall_ratio) << '\n';
}

void write_similarity_csv(std::ostream& out, const ProblemInstance& instance) {
  out << "vsp,device,scenario,similarity\n";
  for (std::size_t w = 0; w < instance.num_vsps(); ++w) {
    for (std::size_t e = 0; e < instance.num_devices(); ++e) {
      for (std::size_t i = 0; i < instance.num_scenarios(); ++i) {
        out << w << ',' << e << ',' << i << ','
            << format_number(instance.similarity(w, e, i)) << '\n';
      }
    }
  }
}

}  // namespace semalloc
