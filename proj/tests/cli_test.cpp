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

#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "sensorco/sensorco.h"

namespace fs = std::filesystem;

namespace {

const std::string kData = SENSORCO_DATA_DIR;

struct Run {
  int code = -1;
  std::string out;
};

Run cli(const std::string& args) {
  const std::string cmd = std::string(SENSORCO_CLI) + " " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::array<char, 4096> buf{};
  size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string take(char* s) {
  std::string out = s ? s : "";
  sc_string_free(s);
  return out;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("sensorco_cli_" + name);
  fs::remove_all(dir);
  return dir;
}

} // namespace

TEST_CASE("simulate matches the library") {
  const fs::path out = scratch("sim");
  const std::string scenario = kData + "/scenarios/air.scenario.json";
  const Run r = cli("simulate --scenario " + scenario + " --out " + out.string());
  REQUIRE(r.code == 0);

  sc_scenario* s = nullptr;
  REQUIRE(sc_scenario_load(scenario.c_str(), &s) == SC_OK);
  sc_report* rep = nullptr;
  REQUIRE(sc_simulate(s, &rep) == SC_OK);
  char* metrics = nullptr;
  REQUIRE(sc_report_metrics_json(rep, &metrics) == SC_OK);
  const std::string expected = take(metrics);
  CHECK(r.out == expected);
  CHECK(slurp(out / "metrics.json") == expected);
  char* report = nullptr;
  REQUIRE(sc_report_json(rep, &report) == SC_OK);
  CHECK(slurp(out / "report.json") == take(report));
  CHECK(fs::exists(out / "statements.csv"));
  CHECK(fs::exists(out / "sweep.csv"));
  sc_report_free(rep);
  sc_scenario_free(s);
}

TEST_CASE("users override gives an all-cost report") {
  const fs::path out = scratch("zero");
  const Run r = cli("simulate --scenario " + kData + "/scenarios/parking.scenario.json --users 0 --out " +
                    out.string());
  REQUIRE(r.code == 0);
  const std::string statements = slurp(out / "statements.csv");
  std::istringstream lines(statements);
  std::string header, row;
  std::getline(lines, header);
  REQUIRE(std::getline(lines, row));
  CHECK(row.find(",0,") != std::string::npos);
}

TEST_CASE("sweep matches the library") {
  const fs::path out = scratch("sweep");
  const std::string scenario = kData + "/scenarios/air.scenario.json";
  const Run r = cli("sweep --scenario " + scenario + " --min 0 --max 100 --out " + out.string());
  REQUIRE(r.code == 0);
  sc_scenario* s = nullptr;
  REQUIRE(sc_scenario_load(scenario.c_str(), &s) == SC_OK);
  sc_sweep* sw = nullptr;
  REQUIRE(sc_sweep_run(s, 0, 100, &sw) == SC_OK);
  int64_t be = 0;
  REQUIRE(sc_sweep_break_even(sw, &be) == 1);
  CHECK(r.out == "break-even: " + std::to_string(be) + "\n");
  char* csv = nullptr;
  REQUIRE(sc_sweep_csv(sw, &csv) == SC_OK);
  CHECK(slurp(out / "sweep.csv") == take(csv));
  sc_sweep_free(sw);
  sc_scenario_free(s);

  const fs::path one = scratch("sweep_one");
  REQUIRE(cli("sweep --scenario " + scenario + " --min 5 --max 5 --out " + one.string()).code == 0);
  const std::string single = slurp(one / "sweep.csv");
  CHECK(std::count(single.begin(), single.end(), '\n') == 2);
}

TEST_CASE("valuate") {
  CHECK(cli("valuate --apr 0.041").out == "P/E 24.39\n");
  CHECK(cli("valuate --apr 1.0").out == "P/E 1.00\n");
  const Run r = cli("valuate --income 23.75 --pe 24.4");
  CHECK(r.code == 0);
  CHECK(r.out.find("$579.50") != std::string::npos);
}

TEST_CASE("virtualize") {
  const fs::path out = scratch("virt");
  const Run r = cli("virtualize --instance " + kData + "/instances/demo4.instance.json --out " + out.string());
  REQUIRE(r.code == 0);
  CHECK(r.out == "objective: -20.000000\ngap: 0.000000\n");
  CHECK(fs::exists(out / "assignment.json"));

  const fs::path dir = scratch("virt_bad");
  fs::create_directories(dir);
  std::ofstream(dir / "tight.json")
      << R"({"N": 1, "T_cents": 100, "companies": [{"id": "a", "valuation_cents": 80, "x_m": 0, "y_m": 0},)"
      << R"({"id": "b", "valuation_cents": 80, "x_m": 1, "y_m": 0}]})";
  CHECK(cli("virtualize --instance " + (dir / "tight.json").string()).code == 2);

  std::ofstream(dir / "one.json")
      << R"({"N": 1, "T_cents": 100, "companies": [{"id": "a", "valuation_cents": 80, "x_m": 0, "y_m": 0}]})";
  CHECK(cli("virtualize --instance " + (dir / "one.json").string()).out == "objective: 0.000000\ngap: 0.000000\n");
}

TEST_CASE("exit codes") {
  CHECK(cli("simulate --scenario /nonexistent/x.json").code == 2);
  CHECK(cli("simulate").code == 2);
  CHECK(cli("bogus").code == 2);
  CHECK(cli("valuate --apr -1").code == 2);
  const fs::path blocker = scratch("blocker");
  std::ofstream(blocker) << "x";
  CHECK(cli("simulate --scenario " + kData + "/scenarios/air.scenario.json --out " + (blocker / "sub").string())
            .code == 3);
  fs::remove(blocker);
}

TEST_CASE("ipo-settle matches the library") {
  const std::string scenario = kData + "/scenarios/parking.scenario.json";
  const Run r = cli("ipo-settle --scenario " + scenario);
  REQUIRE(r.code == 0);
  sc_scenario* s = nullptr;
  REQUIRE(sc_scenario_load(scenario.c_str(), &s) == SC_OK);
  char* json = nullptr;
  REQUIRE(sc_ipo_settle(s, &json) == SC_OK);
  CHECK(r.out == take(json));
  sc_scenario_free(s);
}
