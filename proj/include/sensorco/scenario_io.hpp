/*
  Copyright 2026 The sensorco Authors

  Licensed under the Apache License, Version 2.0 (the "License");
  you may not use this file except in compliance with the License.
  You may obtain a copy of the License at

  http://www.apache.org/licenses/LICENSE-2.0

  Unless required by applicable law or agreed to in writing, software
  distributed under the License is distributed on an "AS IS" BASIS,
  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
  See the License for the specific language governing permissions and
  limitations under the License.
*/

#ifndef SENSORCO_SCENARIO_IO_HPP
#define SENSORCO_SCENARIO_IO_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "sensorco/pricing.hpp"
#include "sensorco/scenario.hpp"
#include "sensorco/simulation.hpp"
#include "sensorco/virtualizer.hpp"

namespace sensorco {

using Json = nlohmann::ordered_json;

// Curve files: {"zero_pay_fraction": f, "points": [{"price_cents", "usages_per_user_per_month"}]}
PriceUsageCurve curve_from_json(const Json& doc, const std::string& path = "curve");
PriceUsageCurve load_curve(const std::filesystem::path& file);
Json curve_to_json(const PriceUsageCurve& curve);

/// Curve references resolve against `base_dir`. Collects every problem
/// before throwing ValidationError.
Scenario scenario_from_json(const Json& doc, const std::filesystem::path& base_dir);
Scenario load_scenario(const std::filesystem::path& file);
/// Echo form: curves inlined, so it loads without the original curve files.
Json scenario_to_json(const Scenario& scenario);

// Instance files: {"companies": [{id, valuation_cents, x_m, y_m}], "N", "T_cents",
// optional "min_entity_valuation_cents", optional "pairwise_scores" (M x M)}
PortfolioInstance instance_from_json(const Json& doc);
PortfolioInstance load_instance(const std::filesystem::path& file);

struct OracleCheck {
  double objective = 0.0;
  double gap = 0.0;
};
Json assignment_to_json(const PortfolioInstance& instance, const VirtualAssignment& assignment,
                        const std::optional<OracleCheck>& oracle);

Json settlement_to_json(const Settlement& settlement);
Json metrics_to_json(const SimulationReport& report);
Json report_to_json(const SimulationReport& report);

std::string sweep_csv(const BreakEvenSweep& sweep);
std::string statements_csv(const std::vector<MonthlyStatement>& statements);

enum class ReportFormat { Json, Csv, All };

/// Json: metrics.json, report.json. Csv: statements.csv, sweep.csv.
/// Returns the written paths; throws IoError if the directory is unusable.
std::vector<std::filesystem::path> emit_report(const SimulationReport& report, ReportFormat format,
                                               const std::filesystem::path& out_dir);

/// Writes text exactly as given, creating parent directories.
void write_text_file(const std::filesystem::path& file, const std::string& text);

/// Stable serialization: 2-space indent, trailing newline.
std::string dump_json(const Json& doc);

} // namespace sensorco

#endif
