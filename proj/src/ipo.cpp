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

#include "sensorco/ipo.hpp"

#include <algorithm>
#include <cmath>

#include "sensorco/error.hpp"

namespace sensorco {

const char* to_string(RoundState s) {
  switch (s) {
    case RoundState::Open: return "Open";
    case RoundState::Funded: return "Funded";
    case RoundState::Terminated: return "Terminated";
  }
  return "?";
}

std::vector<std::string> IpoProposal::check(const std::string& path) const {
  std::vector<std::string> issues;
  if (company_id.empty()) issues.push_back(path + ".company_id: must not be empty");
  if (proposer_id.empty()) issues.push_back(path + ".proposer_id: must not be empty");
  if (funding_goal <= Money{}) issues.push_back(path + ".funding_goal: must be > 0");
  if (share_price <= Money{}) {
    issues.push_back(path + ".share_price: must be > 0");
  } else if (funding_goal > Money{} && funding_goal.cents % share_price.cents != 0) {
    issues.push_back(path + ".funding_goal: " + funding_goal.str() + " is not a whole number of shares at " +
                     share_price.str());
  }
  if (window_months < 1) issues.push_back(path + ".window_months: must be >= 1");
  if (!(esop_fraction >= 0.0 && esop_fraction < 1.0)) issues.push_back(path + ".esop_fraction: must be in [0, 1)");
  auto cost_issues = cost_plan.check(path + ".cost_plan");
  issues.insert(issues.end(), cost_issues.begin(), cost_issues.end());
  return issues;
}

Money FundingRound::total_pledged() const {
  Money total;
  for (const auto& p : pledges) total += p.amount;
  return total;
}

Money Settlement::total_refunded() const {
  Money total;
  for (const auto& [investor, amount] : refunds) total += amount;
  return total;
}

FundingRound open_ipo(IpoProposal proposal) {
  auto issues = proposal.check();
  if (!issues.empty()) throw ValidationError(std::move(issues));
  return FundingRound{std::move(proposal), {}, RoundState::Open};
}

FundingRound pledge(FundingRound round, const HolderId& investor, Money amount) {
  if (round.state != RoundState::Open) {
    throw StateError(std::string("cannot pledge to a ") + to_string(round.state) + " round");
  }
  if (investor.empty()) throw ValidationError("investor: must not be empty");
  const Money price = round.proposal.share_price;
  if (amount <= Money{} || amount.cents % price.cents != 0) {
    throw ValidationError("amount: " + amount.str() + " is not a positive whole number of shares at " + price.str());
  }
  round.pledges.push_back({investor, amount});
  return round;
}

Settlement settle_ipo(FundingRound& round) {
  if (round.state != RoundState::Open) {
    throw StateError(std::string("round already settled as ") + to_string(round.state));
  }
  Settlement out;
  out.total_pledged = round.total_pledged();
  const Money goal = round.proposal.funding_goal;
  const Money price = round.proposal.share_price;

  if (out.total_pledged < goal) {
    out.outcome = RoundState::Terminated;
    for (const auto& p : round.pledges) out.refunds[p.investor] += p.amount;
  } else {
    out.outcome = RoundState::Funded;
    Money remaining = goal;
    for (const auto& p : round.pledges) {
      const Money kept = std::min(p.amount, remaining);
      remaining -= kept;
      if (kept > Money{}) out.cap_table = issue_equity(out.cap_table, p.investor, kept.cents / price.cents);
      if (p.amount > kept) out.refunds[p.investor] += p.amount - kept;
    }
    out.cash = goal;
  }
  round.state = out.outcome;
  return out;
}

CapTable grant_esop(EsopGrant& grant, const CapTable& table) {
  if (grant.granted) throw StateError("ESOP already granted to " + grant.proposer);
  if (!(grant.fraction >= 0.0 && grant.fraction < 1.0)) throw ValidationError("esop_fraction: must be in [0, 1)");
  if (grant.fraction > 0.0 && grant.proposer.empty()) throw ValidationError("proposer: must not be empty");
  grant.granted = true;
  if (grant.fraction == 0.0) return table;

  // Solve (p + n) / (S + n) = f for the new issuance n.
  const double f = grant.fraction;
  const double held = static_cast<double>(table.shares(grant.proposer));
  const double total = static_cast<double>(table.total_shares());
  const auto issue = static_cast<std::int64_t>(std::llround((f * total - held) / (1.0 - f)));
  if (issue <= 0) return table;
  return issue_equity(table, grant.proposer, issue);
}

} // namespace sensorco
