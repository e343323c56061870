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

#ifndef MSN_BENCH_HPP_
#define MSN_BENCH_HPP_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "msn/meta.hpp"
#include "msn/netgraph.hpp"

namespace msn {

// Flat key=value experiment description. Unknown keys are rejected.
struct Scenario {
  std::string name = "scenario";
  std::uint64_t seed = 1;
  int repeats = 1;
  int n = 10;            // buyer count
  std::string graph = "preferential";  // preferential | erdos | bounded
  double edge_p = 0.1;   // erdos only
  int attach_k = 2;      // preferential only
  int max_out = 4;       // bounded only
  std::vector<int> item_counts = {1};
  std::vector<std::string> mechanisms = {"second_price"};
  std::vector<std::string> metas = {"msn", "msnm"};
  std::string valuation = "single_minded";  // single_minded|coverage|sqrt
  Money avg_lo = 0;
  Money avg_hi = 200000;
  Ratio eps{1, 100};     // dns only; written as a fraction, e.g. 1/100
};

Scenario parse_scenario(std::istream& in);
Scenario parse_scenario_file(const std::string& path);

// One row of the results table.
struct RunRecord {
  std::string run_id;
  NodeId seller = 0;
  std::string mechanism;   // e.g. "msn/los" or baseline name
  int m = 0;
  Money sw = 0;
  Money revenue = 0;
  int joined = 0;
  int winners = 0;
  int iterations = 0;
  std::int64_t ms = 0;     // zeroed in emitted CSV for reproducibility
};

// Deterministic given the scenario: streams are forked per (repeat, m,
// mechanism) so rows never depend on evaluation order.
std::vector<RunRecord> run_scenario(const Scenario& s);

// Baselines for comparison: the inner auction run directly over the
// seller's own neighbours only, and over all buyers as if fully connected.
Outcome run_first_ring(const ClassicalMechanism& mech, const SocialNetwork& net,
                       const GlobalProfile& profile, int m);
Outcome run_all_buyers(const ClassicalMechanism& mech, const SocialNetwork& net,
                       const GlobalProfile& profile, int m);

// Header: run_id,seller,mechanism,m,sw,revenue,joined,winners,iterations,ms
// Rows sorted by run_id; output is byte-identical across runs.
void emit_csv(const std::vector<RunRecord>& rows, std::ostream& out);

}  // namespace msn

#endif  // MSN_BENCH_HPP_
