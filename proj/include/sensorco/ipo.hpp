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

#ifndef SENSORCO_IPO_HPP
#define SENSORCO_IPO_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "sensorco/ledger.hpp"
#include "sensorco/money.hpp"
#include "sensorco/pricing.hpp"

namespace sensorco {

struct IpoProposal {
  std::string company_id;
  Money funding_goal;
  Money share_price = 1_usd;
  int window_months = 3;
  double esop_fraction = 0.0;
  HolderId proposer_id;
  CostStructure cost_plan;
  std::vector<ServiceSpec> service_plan;

  std::vector<std::string> check(const std::string& path = "proposal") const;
  std::int64_t goal_shares() const { return funding_goal.cents / share_price.cents; }
};

enum class RoundState { Open, Funded, Terminated };

const char* to_string(RoundState s);

struct Pledge {
  HolderId investor;
  Money amount;
};

struct FundingRound {
  IpoProposal proposal;
  std::vector<Pledge> pledges;
  RoundState state = RoundState::Open;

  Money total_pledged() const;
};

struct Settlement {
  RoundState outcome = RoundState::Open;
  CapTable cap_table;
  /// Retained by the company: the goal when funded, zero otherwise.
  Money cash;
  /// Per investor, summed over all their pledges.
  std::map<HolderId, Money> refunds;
  Money total_pledged;

  Money total_refunded() const;
};

FundingRound open_ipo(IpoProposal proposal);

/// Appends a pledge. Amounts must be positive whole multiples of the share price.
FundingRound pledge(FundingRound round, const HolderId& investor, Money amount);

/// All-or-nothing settlement. Funded rounds keep exactly the goal, issuing
/// shares first come first served; everything else is refunded. Moves the
/// round out of Open, so a second call throws StateError.
Settlement settle_ipo(FundingRound& round);

struct EsopGrant {
  HolderId proposer;
  double fraction = 0.0;
  bool granted = false;
};

/// Dilutive issuance that brings the proposer to `grant.fraction` of the new
/// total (within one share). Throws StateError when already granted.
CapTable grant_esop(EsopGrant& grant, const CapTable& table);

} // namespace sensorco

#endif
