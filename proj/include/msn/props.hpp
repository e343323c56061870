// Copyright 2026 The Authors.
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

#ifndef MSN_PROPS_HPP_
#define MSN_PROPS_HPP_

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "msn/classical.hpp"
#include "msn/meta.hpp"
#include "msn/netgraph.hpp"
#include "msn/rng.hpp"

namespace msn {

// A mechanism under test, closed over everything but the reports.
struct MechanismRunner {
  std::string label;
  std::function<Outcome(const SocialNetwork&, const GlobalProfile&)> run;
};

// Which unilateral deviations to enumerate for a buyer.
struct DeviationPolicy {
  bool scale_values = true;      // x0, half, double (floored)
  bool swap_values = true;       // exchange valuations with another buyer
  bool vary_demand = true;       // single-minded demand changes
  bool vary_neighbours = true;   // misreport neighbour subsets
  int max_neighbour_subsets = 16;
  std::vector<Valuation> custom_values;  // extra value reports to try
};

struct PropertyViolation {
  std::string property;   // "ic", "ir", "nd", "non_sensitivity"
  NodeId buyer = -1;
  std::string detail;     // human-readable reproduction note
};

// Incentive compatibility: no joined buyer gains (strictly, in true-value
// utility) from any enumerated unilateral misreport.
std::optional<PropertyViolation> check_ic(const MechanismRunner& mech,
                                          const SocialNetwork& net,
                                          const GlobalProfile& truth,
                                          const DeviationPolicy& policy,
                                          Rng& rng);

// Individual rationality: truthful utility of every joined buyer is >= 0.
std::optional<PropertyViolation> check_ir(const MechanismRunner& mech,
                                          const SocialNetwork& net,
                                          const GlobalProfile& truth);

// No deficit: the seller collects a nonnegative total payment.
std::optional<PropertyViolation> check_nd(const MechanismRunner& mech,
                                          const SocialNetwork& net,
                                          const GlobalProfile& truth);

// Non-sensitivity of a classical mechanism: when a winner changes only its
// value report, it either loses everything or the allocations of all buyers
// stay the same.
std::optional<PropertyViolation> check_non_sensitivity(
    const ClassicalMechanism& mech, Bundle avail, const ValuationView& vals,
    const std::vector<Valuation>& deviations, Rng& rng);

}  // namespace msn

#endif  // MSN_PROPS_HPP_
