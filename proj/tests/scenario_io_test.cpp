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

#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <functional>
#include <fstream>
#include <sstream>

#include "sensorco/error.hpp"
#include "sensorco/scenario_io.hpp"
#include "sensorco/simulation.hpp"

using namespace sensorco;
namespace fs = std::filesystem;

namespace {

const fs::path kData = SENSORCO_DATA_DIR;

Json air_doc() {
  std::ifstream in(kData / "scenarios" / "air.scenario.json");
  return Json::parse(in);
}

std::vector<std::string> issues_of(const Json& doc) {
  try {
    scenario_from_json(doc, kData / "scenarios");
  } catch (const ValidationError& e) {
    return e.issues();
  }
  return {};
}

bool mentions(const std::vector<std::string>& issues, const std::string& needle) {
  for (const auto& i : issues)
    if (i.find(needle) != std::string::npos) return true;
  return false;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("sensorco_test_" + name);
  fs::remove_all(dir);
  return dir;
}

} // namespace

TEST_CASE("bundled scenarios load") {
  const auto air = load_scenario(kData / "scenarios" / "air.scenario.json");
  CHECK(air.services.size() == 4);
  CHECK(air.purchase_price() == 179_usd);
  CHECK(air.funding_goal == 495_usd);
  CHECK(air.users_in_month(5) == 43);
  const auto parking = load_scenario(kData / "scenarios" / "parking.scenario.json");
  CHECK(parking.purchase_price() == 117_usd);
  CHECK(parking.costs.maintenance_pay() == 10_usd);
}

TEST_CASE("validation reports field paths") {
  Json doc = air_doc();
  doc["company"]["costs"]["maintenance_hourly_rate_cents"] = -5;
  CHECK(mentions(issues_of(doc), "company.costs.maintenance_hourly_rate"));

  doc = air_doc();
  doc["company"]["services"][0]["curve"] =
      Json{{"points", Json::array({Json{{"price_cents", 50}, {"usages_per_user_per_month", 2.0}},
                                   Json{{"price_cents", 10}, {"usages_per_user_per_month", 1.0}}})}};
  CHECK(mentions(issues_of(doc), "company.services[0].curve.points[1].price_cents: prices must be strictly increasing"));
}

TEST_CASE("every problem is reported at once") {
  Json doc = air_doc();
  doc["company"]["costs"]["maintenance_hourly_rate_cents"] = -5;
  doc["ipo"]["goal_cents"] = 0;
  doc["simulation"]["reserve_rate"] = 3.0;
  doc["company"].erase("pre_ipo_value_cents");
  doc["company"]["services"][1]["curve"] = "../curves/missing.curve.json";
  doc["company"]["sensor_count"] = 1.5;
  const auto issues = issues_of(doc);
  CHECK(mentions(issues, "company.costs.maintenance_hourly_rate"));
  CHECK(mentions(issues, "ipo.goal_cents"));
  CHECK(mentions(issues, "simulation.reserve_rate"));
  CHECK(mentions(issues, "company.pre_ipo_value_cents"));
  CHECK(mentions(issues, "company.services[1].curve"));
  CHECK(mentions(issues, "company.sensor_count"));
}

TEST_CASE("missing and malformed files") {
  CHECK_THROWS_AS(load_scenario(kData / "scenarios" / "nope.scenario.json"), ValidationError);
  const fs::path dir = scratch("bad_json");
  fs::create_directories(dir);
  std::ofstream(dir / "bad.json") << "{ not json";
  CHECK_THROWS_AS(load_scenario(dir / "bad.json"), ValidationError);
  CHECK_THROWS_AS(load_curve(dir / "bad.json"), ValidationError);
}

TEST_CASE("scenario echo round-trips") {
  for (const char* name : {"air", "parking"}) {
    const auto s = load_scenario(kData / "scenarios" / (std::string(name) + ".scenario.json"));
    const Json echo = scenario_to_json(s);
    const auto back = scenario_from_json(echo, kData / "scenarios");
    CHECK(back == s);
    CHECK(dump_json(scenario_to_json(back)) == dump_json(echo));
  }
}

TEST_CASE("curve round trip") {
  const auto c = load_curve(kData / "curves" / "air_realtime.curve.json");
  CHECK(curve_from_json(curve_to_json(c)) == c);
}

TEST_CASE("parking metrics reproduce the market value") {
  const auto r = run_scenario(load_scenario(kData / "scenarios" / "parking.scenario.json"));
  const Json m = metrics_to_json(r);
  CHECK(m["market_value_cents"] == 57950);
  CHECK(m["income_per_year_cents"] == 2375);
  CHECK(m["proposer_reward_cents"] == 11590);
  CHECK(m["ipo_value"]["total_cents"] == 23900);
}

TEST_CASE("air metrics flag the P/E inconsistency") {
  const auto r = run_scenario(load_scenario(kData / "scenarios" / "air.scenario.json"));
  const Json m = metrics_to_json(r);
  CHECK(m["market_value_cents"] == 409920);
  bool flagged = false;
  for (const auto& f : m["flags"]) flagged |= f.get<std::string>().rfind("market_value_mismatch", 0) == 0;
  CHECK(flagged);
}

TEST_CASE("sweep csv") {
  CHECK(sweep_csv(BreakEvenSweep{}) == "users,annual_revenue_cents,annual_cost_cents,profit_cents\n");
  const auto s = load_scenario(kData / "scenarios" / "air.scenario.json");
  const std::string csv = sweep_csv(break_even_sweep(s, 5, 5));
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 2);
  CHECK(csv.find("\n5,") != std::string::npos);
}

TEST_CASE("reports are byte-identical across runs") {
  const auto s = load_scenario(kData / "scenarios" / "air.scenario.json");
  const fs::path a = scratch("det_a"), b = scratch("det_b");
  const auto files = emit_report(run_scenario(s), ReportFormat::All, a);
  emit_report(run_scenario(s), ReportFormat::All, b);
  CHECK(files.size() == 4);
  for (const char* f : {"metrics.json", "report.json", "statements.csv", "sweep.csv"}) {
    CHECK(fs::exists(a / f));
    CHECK(slurp(a / f) == slurp(b / f));
  }
}

TEST_CASE("emitted money is integral") {
  const auto r = run_scenario(load_scenario(kData / "scenarios" / "parking.scenario.json"));
  std::function<void(const Json&, const std::string&)> walk = [&](const Json& j, const std::string& key) {
    if (j.is_object()) {
      for (auto it = j.begin(); it != j.end(); ++it) walk(it.value(), it.key());
    } else if (j.is_array()) {
      for (const auto& e : j) walk(e, key);
    } else if (key.size() > 6 && key.compare(key.size() - 6, 6, "_cents") == 0) {
      CHECK_MESSAGE((j.is_number_integer() || j.is_null()), key);
    }
  };
  walk(report_to_json(r), "");
}

TEST_CASE("unwritable output directory") {
  const fs::path dir = scratch("blocked");
  fs::create_directories(dir.parent_path());
  std::ofstream(dir) << "a file, not a directory";
  const auto s = load_scenario(kData / "scenarios" / "parking.scenario.json");
  CHECK_THROWS_AS(emit_report(run_scenario(s), ReportFormat::Json, dir / "out"), IoError);
  fs::remove(dir);
}

TEST_CASE("instances") {
  const auto inst = load_instance(kData / "instances" / "demo4.instance.json");
  CHECK(inst.companies.size() == 4);
  CHECK(inst.entity_count == 2);
  Json bad = Json::parse(R"({"N": 0, "T_cents": -1, "companies": [{"id": "a", "valuation_cents": 1.5}]})");
  try {
    instance_from_json(bad);
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    CHECK(mentions(e.issues(), "companies[0].valuation_cents"));
    CHECK(mentions(e.issues(), "N"));
  }
}
