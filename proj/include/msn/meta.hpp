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

#ifndef MSN_META_HPP_
#define MSN_META_HPP_

#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "msn/classical.hpp"
#include "msn/netgraph.hpp"
#include "msn/types.hpp"

namespace msn {

// Network lifting strategies. Both explore the market outward from the
// seller's reported neighbours, re-running the inner auction as newly
// invited buyers join.
//   kMsn:  commits one provisional winner per iteration, chosen by the
//          largest reported neighbourhood (ties to the lowest id).
//   kMsnM: commits every provisional winner of the final inner run of the
//          iteration at once.
enum class MetaKind { kMsn, kMsnM };

std::string meta_name(MetaKind kind);

struct MetaIteration {
  Bundle avail_before;            // x at iteration start
  std::vector<NodeId> provisional;  // P after the inner loop settles
  std::vector<NodeId> committed;    // subset of provisional committed now
  Outcome inner;                    // inner auction outcome used to commit
};

struct MetaResult {
  Outcome outcome;                 // cumulative allocation and payments
  std::set<NodeId> joined;         // buyers reachable under the reports
  std::set<NodeId> explored;       // buyers ever added to the explored set
  std::set<NodeId> exhausted;      // buyers permanently barred from winning
  Bundle final_avail;              // residual availability at termination
  std::vector<NodeId> final_potential;  // last potential-winner set
  std::vector<MetaIteration> trace;
  int iterations() const { return static_cast<int>(trace.size()); }
};

// Runs the lifted auction. Joined buyers are those reachable from the
// seller through reported neighbours; a reachable buyer missing from
// `profile` participates with the null profile (zero valuation, no
// neighbours).
MetaResult run_meta(MetaKind kind, const ClassicalMechanism& mech,
                    const SocialNetwork& net, const GlobalProfile& profile,
                    int m);

struct TerminationVerdict {
  bool valid = false;             // state partitions as required
  bool supply_exhausted = false;  // terminated with no items left
  bool no_potential = false;      // terminated with no selectable winners
  std::string detail;
};

// Confirms the run ended in a legal state: residual supply empty or no
// uncommitted potential winner remains, and every explored buyer is a
// winner, exhausted, or an unselected potential winner.
TerminationVerdict check_termination_state(const MetaResult& result);

nlohmann::json trace_to_json(const MetaResult& result);

}  // namespace msn

#endif  // MSN_META_HPP_
