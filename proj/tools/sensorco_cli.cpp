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

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "sensorco/sensorco.h"

namespace {

int exit_code(sc_status status) {
  switch (status) {
    case SC_OK: return 0;
    case SC_ERR_VALIDATION:
    case SC_ERR_INFEASIBLE:
    case SC_ERR_INVALID_ARGUMENT: return 2;
    default: return 3;
  }
}

int report(sc_status status) {
  if (status != SC_OK) std::fprintf(stderr, "error: %s: %s\n", sc_status_name(status), sc_last_error());
  return exit_code(status);
}

std::string dollars(int64_t cents) {
  const int64_t a = cents < 0 ? -cents : cents;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s$%lld.%02lld", cents < 0 ? "-" : "", static_cast<long long>(a / 100),
                static_cast<long long>(a % 100));
  return buf;
}

int64_t to_cents(double dollars) { return std::llround(dollars * 100.0); }

void print_and_free(char* text) {
  std::fputs(text, stdout);
  sc_string_free(text);
}

template <class T, class F>
struct Handle {
  T* ptr = nullptr;
  F release;
  ~Handle() {
    if (ptr) release(ptr);
  }
};

struct SimulateArgs {
  std::string scenario;
  std::string out = "out";
  std::string format = "all";
  std::optional<int64_t> users;
  std::optional<int32_t> months;
  std::optional<uint64_t> seed;
  std::optional<double> pe;
  std::optional<double> apr;
};

sc_status load_with_overrides(const SimulateArgs& a, sc_scenario** out) {
  sc_status st = sc_scenario_load(a.scenario.c_str(), out);
  if (st != SC_OK) return st;
  sc_overrides o{};
  if (a.users) o.has_users = 1, o.users = *a.users;
  if (a.months) o.has_months = 1, o.months = *a.months;
  if (a.seed) o.has_seed = 1, o.seed = *a.seed;
  if (a.pe) o.has_pe = 1, o.pe = *a.pe;
  if (a.apr) o.has_apr = 1, o.apr = *a.apr;
  return sc_scenario_apply_overrides(*out, &o);
}

void add_overrides(CLI::App* cmd, SimulateArgs& a) {
  cmd->add_option("--users", a.users, "Constant user count");
  cmd->add_option("--months", a.months, "Months to simulate");
  cmd->add_option("--seed", a.seed, "Random seed");
  cmd->add_option("--pe", a.pe, "Explicit P/E ratio");
  cmd->add_option("--apr", a.apr, "Target APR");
}

int cmd_simulate(const SimulateArgs& a) {
  Handle<sc_scenario, decltype(&sc_scenario_free)> scenario{nullptr, sc_scenario_free};
  sc_status st = load_with_overrides(a, &scenario.ptr);
  if (st != SC_OK) return report(st);
  Handle<sc_report, decltype(&sc_report_free)> rep{nullptr, sc_report_free};
  if ((st = sc_simulate(scenario.ptr, &rep.ptr)) != SC_OK) return report(st);
  sc_report_format format = SC_FORMAT_ALL;
  if (a.format == "json") format = SC_FORMAT_JSON;
  else if (a.format == "csv") format = SC_FORMAT_CSV;
  if ((st = sc_report_write(rep.ptr, a.out.c_str(), format)) != SC_OK) return report(st);
  char* metrics = nullptr;
  if ((st = sc_report_metrics_json(rep.ptr, &metrics)) != SC_OK) return report(st);
  print_and_free(metrics);
  return 0;
}

struct SweepArgs {
  SimulateArgs base;
  std::optional<int64_t> min_users;
  std::optional<int64_t> max_users;
};

int cmd_sweep(const SweepArgs& a) {
  Handle<sc_scenario, decltype(&sc_scenario_free)> scenario{nullptr, sc_scenario_free};
  sc_status st = load_with_overrides(a.base, &scenario.ptr);
  if (st != SC_OK) return report(st);
  Handle<sc_sweep, decltype(&sc_sweep_free)> sweep{nullptr, sc_sweep_free};
  st = sc_sweep_run(scenario.ptr, a.min_users.value_or(0), a.max_users.value_or(100), &sweep.ptr);
  if (st != SC_OK) return report(st);
  const std::string file = (std::filesystem::path(a.base.out) / "sweep.csv").string();
  if ((st = sc_sweep_write_csv(sweep.ptr, file.c_str())) != SC_OK) return report(st);
  int64_t users = 0;
  if (sc_sweep_break_even(sweep.ptr, &users))
    std::printf("break-even: %lld\n", static_cast<long long>(users));
  else
    std::printf("break-even: none\n");
  return 0;
}

struct VirtualizeArgs {
  std::string instance;
  std::optional<std::string> out;
  bool heuristic = false;
  uint64_t seed = 1;
};

int cmd_virtualize(const VirtualizeArgs& a) {
  Handle<sc_instance, decltype(&sc_instance_free)> inst{nullptr, sc_instance_free};
  sc_status st = sc_instance_load(a.instance.c_str(), &inst.ptr);
  if (st != SC_OK) return report(st);
  Handle<sc_assignment, decltype(&sc_assignment_free)> asg{nullptr, sc_assignment_free};
  if ((st = sc_virtualize(inst.ptr, a.heuristic ? 1 : 0, a.seed, &asg.ptr)) != SC_OK) return report(st);
  char* json = nullptr;
  if ((st = sc_assignment_json(asg.ptr, &json)) != SC_OK) return report(st);
  if (a.out) {
    std::FILE* f = nullptr;
    std::error_code ec;
    std::filesystem::create_directories(*a.out, ec);
    const std::string file = (std::filesystem::path(*a.out) / "assignment.json").string();
    if (!ec) f = std::fopen(file.c_str(), "wb");
    if (!f) {
      sc_string_free(json);
      std::fprintf(stderr, "error: cannot write '%s'\n", file.c_str());
      return 3;
    }
    std::fputs(json, f);
    std::fclose(f);
  }
  sc_string_free(json);
  std::printf("objective: %.6f\n", sc_assignment_objective(asg.ptr));
  double oracle = 0.0, gap = 0.0;
  if (sc_assignment_oracle(asg.ptr, &oracle, &gap)) std::printf("gap: %.6f\n", gap);
  return 0;
}

struct ValuateArgs {
  std::optional<double> apr;
  std::optional<double> pe;
  std::optional<double> income;
  std::optional<double> pre_ipo;
  std::optional<double> esop;
  int32_t months_to_steady = 12;
};

int cmd_valuate(const ValuateArgs& a) {
  std::optional<double> pe = a.pe;
  sc_status st = SC_OK;
  if (a.apr) {
    double v = 0.0;
    if ((st = sc_pe_from_apr(*a.apr, &v)) != SC_OK) return report(st);
    std::printf("P/E %.2f\n", v);
    if (!pe) pe = v;
  }
  if (!a.income) return 0;
  if (!pe) {
    std::fprintf(stderr, "error: --income needs --pe or --apr\n");
    return 2;
  }
  int64_t value = 0;
  if ((st = sc_market_valuation(to_cents(*a.income), *pe, &value)) != SC_OK) return report(st);
  std::printf("market value %s\n", dollars(value).c_str());
  if (a.pre_ipo) {
    double apr = 0.0;
    st = sc_preipo_apr(*pe, to_cents(*a.income), to_cents(*a.pre_ipo), a.months_to_steady, &apr);
    if (st == SC_ERR_DOMAIN)
      std::printf("pre-IPO APR undefined\n");
    else if (st != SC_OK)
      return report(st);
    else
      std::printf("pre-IPO APR %.2f%%\n", apr * 100.0);
    double pct = 0.0;
    if ((st = sc_appreciation_over_preipo(value, to_cents(*a.pre_ipo), &pct)) != SC_OK) return report(st);
    std::printf("appreciation %.2f%%\n", pct);
  }
  if (a.esop) {
    int64_t reward = 0;
    if ((st = sc_proposer_reward(value, *a.esop, &reward)) != SC_OK) return report(st);
    std::printf("proposer reward %s\n", dollars(reward).c_str());
  }
  return 0;
}

struct PriceArgs {
  std::string curve;
  double marginal_cost = 0.0;
  int64_t users = 1;
  std::string objective = "revenue";
  std::optional<double> at;
};

int cmd_price(const PriceArgs& a) {
  Handle<sc_curve, decltype(&sc_curve_free)> curve{nullptr, sc_curve_free};
  sc_status st = sc_curve_load(a.curve.c_str(), &curve.ptr);
  if (st != SC_OK) return report(st);
  if (a.at) {
    double usages = 0.0;
    if ((st = sc_curve_interpolate(curve.ptr, to_cents(*a.at), &usages)) != SC_OK) return report(st);
    std::printf("usages/user/month %.6f\n", usages);
    return 0;
  }
  int64_t price = 0, value = 0;
  const sc_objective obj = a.objective == "profit" ? SC_OBJECTIVE_PROFIT : SC_OBJECTIVE_REVENUE;
  if ((st = sc_optimize_price(curve.ptr, to_cents(a.marginal_cost), a.users, obj, &price, &value)) != SC_OK)
    return report(st);
  std::printf("price %s\n", dollars(price).c_str());
  std::printf("monthly %s %s\n", a.objective.c_str(), dollars(value).c_str());
  return 0;
}

int cmd_ipo_settle(const std::string& scenario_path) {
  Handle<sc_scenario, decltype(&sc_scenario_free)> scenario{nullptr, sc_scenario_free};
  sc_status st = sc_scenario_load(scenario_path.c_str(), &scenario.ptr);
  if (st != SC_OK) return report(st);
  char* json = nullptr;
  if ((st = sc_ipo_settle(scenario.ptr, &json)) != SC_OK) return report(st);
  print_and_free(json);
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sensor micro-company simulator"};
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Run a scenario and write reports");
  simulate->add_option("--scenario", sim.scenario, "Scenario file")->required();
  simulate->add_option("--out", sim.out, "Output directory");
  simulate->add_option("--format", sim.format, "json, csv or all")->check(CLI::IsMember({"json", "csv", "all"}));
  add_overrides(simulate, sim);

  SweepArgs sw;
  auto* sweep = app.add_subcommand("sweep", "Break-even sweep over user counts");
  sweep->add_option("--scenario", sw.base.scenario, "Scenario file")->required();
  sweep->add_option("--out", sw.base.out, "Output directory");
  sweep->add_option("--min", sw.min_users, "Smallest user count");
  sweep->add_option("--max", sw.max_users, "Largest user count");
  add_overrides(sweep, sw.base);

  VirtualizeArgs vz;
  auto* virtualize = app.add_subcommand("virtualize", "Group companies into virtual entities");
  virtualize->add_option("--instance", vz.instance, "Instance file")->required();
  virtualize->add_option("--out", vz.out, "Output directory for assignment.json");
  virtualize->add_flag("--heuristic", vz.heuristic, "Skip exhaustive search");
  virtualize->add_option("--seed", vz.seed, "Random seed");

  ValuateArgs va;
  auto* valuate = app.add_subcommand("valuate", "Valuation arithmetic");
  valuate->add_option("--apr", va.apr, "Target APR as a fraction");
  valuate->add_option("--pe", va.pe, "P/E ratio");
  valuate->add_option("--income", va.income, "Annual income in dollars");
  valuate->add_option("--pre-ipo", va.pre_ipo, "Pre-IPO value in dollars");
  valuate->add_option("--esop", va.esop, "Proposer equity fraction");
  valuate->add_option("--months-to-steady", va.months_to_steady, "Months from IPO to steady profit");

  PriceArgs pr;
  auto* price = app.add_subcommand("price", "Optimal price for one curve");
  price->add_option("--curve", pr.curve, "Curve file")->required();
  price->add_option("--marginal-cost", pr.marginal_cost, "Marginal cost per usage in dollars");
  price->add_option("--users", pr.users, "User count");
  price->add_option("--objective", pr.objective, "revenue or profit")->check(CLI::IsMember({"revenue", "profit"}));
  price->add_option("--at", pr.at, "Print usages at this price (dollars) instead");

  std::string ipo_scenario;
  auto* ipo = app.add_subcommand("ipo-settle", "Settle a scenario's pledge schedule");
  ipo->add_option("--scenario", ipo_scenario, "Scenario file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (*simulate) return cmd_simulate(sim);
  if (*sweep) return cmd_sweep(sw);
  if (*virtualize) return cmd_virtualize(vz);
  if (*valuate) return cmd_valuate(va);
  if (*price) return cmd_price(pr);
  if (*ipo) return cmd_ipo_settle(ipo_scenario);
  return 2;
}
