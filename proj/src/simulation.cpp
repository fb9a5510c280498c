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

#include "sensorco/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include "sensorco/error.hpp"

namespace sensorco {

const char* to_string(CompanyState s) {
  switch (s) {
    case CompanyState::Proposed: return "Proposed";
    case CompanyState::Funding: return "Funding";
    case CompanyState::Operating: return "Operating";
    case CompanyState::SteadyProfit: return "SteadyProfit";
    case CompanyState::Bankrupt: return "Bankrupt";
    case CompanyState::Terminated: return "Terminated";
  }
  return "?";
}

bool transition_allowed(CompanyState from, CompanyState to) {
  using S = CompanyState;
  switch (from) {
    case S::Proposed: return to == S::Funding;
    case S::Funding: return to == S::Operating || to == S::Terminated;
    case S::Operating: return to == S::SteadyProfit || to == S::Bankrupt;
    case S::SteadyProfit: return to == S::Bankrupt;
    case S::Bankrupt:
    case S::Terminated: return false;
  }
  return false;
}

void SensorCompany::move_to(CompanyState next) {
  if (!transition_allowed(state, next)) {
    throw StateError(std::string("company ") + id + ": illegal transition " + to_string(state) + " -> " +
                     to_string(next));
  }
  state = next;
}

Money MonthlyStatement::revenue() const {
  Money total;
  for (Money r : revenue_by_service) total += r;
  return total;
}

Money MonthlyStatement::total_cost() const {
  return marginal_costs + fixed_costs + maintenance_pay + incentive_pay + depreciation;
}

bool MonthlyStatement::balanced() const {
  return profit == revenue() - total_cost() &&
         closing_cash == opening_cash + profit + unpaid_obligations - dividend_paid - reserve_delta;
}

MonthlyStatement project_statement(const SensorCompany& company, const ScenarioMonth& month) {
  if (month.active_users < 0) throw ValidationError("active_users: must be >= 0");
  MonthlyStatement st;
  st.month = month.month;
  st.active_users = month.active_users;
  st.uptime_ok = month.uptime_ok;

  double marginal = 0.0;
  Money fixed = company.costs.admin_fees_per_month;
  for (const auto& s : company.services) {
    const double usages = interpolate_usage(s.curve, s.unit_price) * static_cast<double>(month.active_users) *
                          s.curve.paying_fraction();
    st.revenue_by_service.push_back(Money::round(s.unit_price.as_real() * usages));
    marginal += s.marginal_cost.as_real() * usages;
    fixed += s.fixed_cost_per_month;
  }
  st.marginal_costs = Money::round(marginal);
  st.fixed_costs = fixed;
  st.maintenance_pay = company.costs.maintenance_pay();
  st.incentive_pay = month.uptime_ok ? Money::round(company.costs.incentive_rate * st.revenue().as_real()) : Money{};
  st.depreciation = depreciation_charge(company.purchase_price, company.months_operated + 1);
  st.profit = st.revenue() - st.total_cost();
  st.opening_cash = st.closing_cash = company.cash;
  return st;
}

std::pair<SensorCompany, MonthlyStatement> step_month(SensorCompany company, const ScenarioMonth& month) {
  if (company.state != CompanyState::Operating && company.state != CompanyState::SteadyProfit) {
    throw StateError(std::string("step_month: company ") + company.id + " is " + to_string(company.state));
  }
  MonthlyStatement st = project_statement(company, month);

  if (st.profit >= Money{}) {
    if (company.state == CompanyState::SteadyProfit && st.profit > Money{} && !company.cap_table.empty()) {
      auto div = distribute_dividend(company.cap_table, st.profit, company.reserve);
      st.dividend_paid = div.total_paid();
      st.dividends = std::move(div.payouts);
      st.reserve_delta = div.reserve_contribution;
      company.reserve = div.reserve;
    } else {
      company.cash += st.profit;
    }
  } else {
    const Money loss = -st.profit;
    if (company.cash + company.reserve.balance < loss) {
      // Insolvent: nothing is paid, the lifecycle step liquidates.
      st.unpaid_obligations = loss;
    } else {
      const Money draw = std::min(company.reserve.balance, loss);
      company.reserve.balance -= draw;
      st.reserve_delta = -draw;
      company.cash -= loss - draw;
    }
  }
  st.closing_cash = company.cash;
  ++company.months_operated;
  return {std::move(company), std::move(st)};
}

Money trailing_annual_earnings(const std::vector<MonthlyStatement>& history) {
  if (history.empty()) return Money{};
  const std::size_t n = std::min<std::size_t>(12, history.size());
  Money sum;
  for (std::size_t i = history.size() - n; i < history.size(); ++i) sum += history[i].profit;
  if (n == 12) return sum;
  return Money::round(sum.as_real() * 12.0 / static_cast<double>(n));
}

SensorCompany lifecycle_transition(SensorCompany company, const std::vector<MonthlyStatement>& history) {
  if (company.state != CompanyState::Operating && company.state != CompanyState::SteadyProfit) return company;

  if (!history.empty() && history.back().unpaid_obligations > Money{}) {
    const Money estate = company.cash + company.reserve.balance +
                         depreciate(company.purchase_price, company.months_operated);
    if (!company.cap_table.empty()) company.liquidation_payouts = distribute_pro_rata(company.cap_table, estate);
    company.cash = Money{};
    company.reserve.balance = Money{};
    company.valuation.current_value = Money{};
    company.move_to(CompanyState::Bankrupt);
    return company;
  }

  const auto k = static_cast<std::size_t>(std::max(1, company.steady_k));
  if (company.state == CompanyState::Operating && history.size() >= k &&
      std::all_of(history.end() - static_cast<std::ptrdiff_t>(k), history.end(),
                  [](const MonthlyStatement& s) { return s.profit > Money{}; })) {
    company.move_to(CompanyState::SteadyProfit);
    company.valuation.method = ValuationMethod::MarketApproach;
    company.cap_table = grant_esop(company.esop, company.cap_table);
  }
  if (company.state == CompanyState::SteadyProfit) {
    company.valuation.current_value =
        market_valuation(std::max(Money{}, trailing_annual_earnings(history)), company.pe_ratio);
  }
  return company;
}

SensorCompany make_operating_company(const Scenario& scenario, const CapTable& cap_table, Money cash) {
  SensorCompany c;
  c.id = scenario.company_id;
  c.move_to(CompanyState::Funding);
  c.move_to(CompanyState::Operating);
  c.cap_table = cap_table;
  c.cash = cash;
  c.reserve = ReserveFund{Money{}, scenario.reserve_rate};
  for (const auto& cfg : scenario.services) {
    ServiceSpec s = cfg.spec;
    if (!cfg.price_fixed) s.unit_price = optimize_price(s, 1, scenario.price_objective).price;
    c.services.push_back(std::move(s));
  }
  c.costs = scenario.costs;
  c.purchase_price = scenario.purchase_price();
  c.pe_ratio = scenario.effective_pe();
  c.steady_k = scenario.steady_k;
  c.esop = EsopGrant{scenario.proposer_id, scenario.esop_fraction, false};
  c.valuation.method = ValuationMethod::AssetApproach;
  c.valuation.current_value =
      asset_valuation(scenario.purchase_price(), scenario.installation_cost, scenario.other_startup_costs);
  c.valuation.pre_ipo_value = scenario.pre_ipo_value;
  return c;
}

bool uptime_for_month(const UptimeModel& model, std::uint64_t seed, int month) {
  switch (model.mode) {
    case UptimeMode::Always: return true;
    case UptimeMode::Schedule: {
      const auto i = static_cast<std::size_t>(month - 1);
      return month < 1 || i >= model.schedule.size() ? true : model.schedule[i];
    }
    case UptimeMode::Bernoulli: {
      std::mt19937_64 rng(seed ^ (0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(month)));
      const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      return u < model.probability_up;
    }
  }
  return true;
}

BreakEvenSweep break_even_sweep(const Scenario& scenario, std::int64_t min_users, std::int64_t max_users) {
  if (min_users < 0 || max_users < min_users) throw ValidationError("user_range: need 0 <= min <= max");
  const SensorCompany base = make_operating_company(scenario, CapTable{}, scenario.funding_goal);

  BreakEvenSweep out;
  for (std::int64_t users = min_users; users <= max_users; ++users) {
    SensorCompany c = base;
    SweepRow row{users, Money{}, Money{}, Money{}};
    for (int m = 1; m <= 12; ++m) {
      const auto st = project_statement(c, {m, users, uptime_for_month(scenario.uptime, scenario.seed, m)});
      row.annual_revenue += st.revenue();
      row.annual_cost += st.total_cost();
      ++c.months_operated;
    }
    row.profit = row.annual_revenue - row.annual_cost;
    if (!out.break_even_users && row.profit >= Money{}) out.break_even_users = users;
    out.rows.push_back(row);
  }
  return out;
}

namespace {

TableMetrics compute_metrics(const Scenario& scenario, const SimulationReport& report,
                             const std::vector<ServiceSpec>& priced) {
  TableMetrics m;
  m.asset_valuation =
      asset_valuation(scenario.purchase_price(), scenario.installation_cost, scenario.other_startup_costs);
  m.pre_ipo_value = scenario.pre_ipo_value;
  m.working_capital = scenario.other_startup_costs;
  m.pe_ratio = scenario.effective_pe();
  m.break_even_users = report.sweep.break_even_users;
  m.reference_users = scenario.reference_users;
  m.admin_hourly_rate = scenario.costs.maintenance_hourly_rate;
  m.admin_hours_per_year = 12.0 * scenario.costs.maintenance_hours_per_month;
  m.admin_pay_per_year = scenario.costs.maintenance_pay() * 12;
  m.annual_revenue_per_user = annual_revenue_per_user(priced);

  const std::size_t first_year = std::min<std::size_t>(12, report.statements.size());
  for (std::size_t i = 0; i < first_year; ++i) m.simulated_annual_profit += report.statements[i].profit;

  if (m.asset_valuation != m.pre_ipo_value) {
    m.flags.push_back("asset_valuation_mismatch: hardware + installation + other startup costs = " +
                      m.asset_valuation.str() + " but the pre-IPO value is " + m.pre_ipo_value.str());
  }

  if (scenario.reference_income_per_year) {
    m.income_per_year = scenario.reference_income_per_year;
  } else if (!report.statements.empty()) {
    m.income_per_year = trailing_annual_earnings(report.statements);
  }

  if (m.income_per_year && *m.income_per_year > Money{}) {
    const Money income = *m.income_per_year;
    m.market_value = market_valuation(income, m.pe_ratio);
    m.return_over_preipo_pct = appreciation_over_preipo(*m.market_value, m.pre_ipo_value);
    m.proposer_reward = proposer_reward(*m.market_value, scenario.esop_fraction);
    try {
      m.preipo_apr = preipo_apr(m.pe_ratio, income, m.pre_ipo_value, scenario.months_to_steady);
    } catch (const DomainError& e) {
      m.flags.push_back(std::string("preipo_apr_undefined: ") + e.what());
    }
    if (scenario.reference_market_value) {
      const Money ref = *scenario.reference_market_value;
      m.reference_market_value = ref;
      m.implied_reference_pe = implied_pe(ref, income);
      m.return_over_preipo_pct_at_reference = appreciation_over_preipo(ref, m.pre_ipo_value);
      m.proposer_reward_at_reference = proposer_reward(ref, scenario.esop_fraction);
      if ((ref - *m.market_value).cents > 100 || (*m.market_value - ref).cents > 100) {
        char pe[32];
        std::snprintf(pe, sizeof pe, "%.2f", *m.implied_reference_pe);
        char used[32];
        std::snprintf(used, sizeof used, "%.2f", m.pe_ratio);
        m.flags.push_back("market_value_mismatch: income " + income.str() + " x P/E " + used + " = " +
                          m.market_value->str() + " but the reference market value is " + ref.str() +
                          " (implied P/E " + pe + ")");
      }
    }
  } else {
    m.flags.push_back("no_positive_income: market approach valuation not available");
  }

  if (m.break_even_users && m.reference_users) {
    const auto diff = *m.break_even_users - *m.reference_users;
    if (diff > 2 || diff < -2) {
      m.flags.push_back("break_even_mismatch: simulated break-even at " + std::to_string(*m.break_even_users) +
                        " users, reference " + std::to_string(*m.reference_users));
    }
  } else if (!m.break_even_users) {
    m.flags.push_back("no_break_even: no user count in the sweep range reaches non-negative first-year profit");
  }
  if (report.ipo.outcome == RoundState::Terminated) {
    m.flags.push_back("ipo_undersubscribed: pledged " + report.ipo.total_pledged.str() + " of goal " +
                      scenario.funding_goal.str() + "; company terminated and all pledges refunded");
  }
  if (report.company.state == CompanyState::Bankrupt) {
    m.flags.push_back("bankrupt: company liquidated");
  }
  return m;
}

} // namespace

SimulationReport run_scenario(const Scenario& scenario) {
  if (auto issues = scenario.check(); !issues.empty()) throw ValidationError(std::move(issues));

  SimulationReport report;
  report.scenario_name = scenario.name;

  IpoProposal proposal;
  proposal.company_id = scenario.company_id;
  proposal.funding_goal = scenario.funding_goal;
  proposal.share_price = scenario.share_price;
  proposal.window_months = scenario.window_months;
  proposal.esop_fraction = scenario.esop_fraction;
  proposal.proposer_id = scenario.proposer_id;
  proposal.cost_plan = scenario.costs;
  for (const auto& s : scenario.services) proposal.service_plan.push_back(s.spec);

  SensorCompany company;
  company.id = scenario.company_id;
  FundingRound round = open_ipo(std::move(proposal));
  company.move_to(CompanyState::Funding);

  auto pledges = scenario.pledges;
  std::stable_sort(pledges.begin(), pledges.end(),
                   [](const ScheduledPledge& a, const ScheduledPledge& b) { return a.month < b.month; });
  for (const auto& p : pledges) round = pledge(std::move(round), p.investor, p.amount);
  report.ipo = settle_ipo(round);

  const SensorCompany priced = make_operating_company(scenario, CapTable{}, Money{});
  for (const auto& s : priced.services) {
    report.service_ids.push_back(s.id);
    report.prices.push_back(s.unit_price);
  }

  if (report.ipo.outcome == RoundState::Terminated) {
    company.move_to(CompanyState::Terminated);
    report.company = std::move(company);
  } else {
    company = make_operating_company(scenario, report.ipo.cap_table, report.ipo.cash);
    company.founding_month = scenario.window_months;
    for (int m = 1; m <= scenario.months; ++m) {
      const ScenarioMonth month{m, scenario.users_in_month(m), uptime_for_month(scenario.uptime, scenario.seed, m)};
      auto [next, statement] = step_month(std::move(company), month);
      report.statements.push_back(std::move(statement));
      company = lifecycle_transition(std::move(next), report.statements);
      if (company.state == CompanyState::Bankrupt) break;
    }
    report.company = std::move(company);
  }

  report.sweep = break_even_sweep(scenario, scenario.sweep_min_users, scenario.sweep_max_users);
  report.metrics = compute_metrics(scenario, report, priced.services);
  return report;
}

} // namespace sensorco
