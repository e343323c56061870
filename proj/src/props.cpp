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

#include "msn/props.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace msn {
namespace {

long long utility(const Valuation& truth, const Outcome& out, NodeId b) {
  return static_cast<long long>(truth.value(out.allocation(b))) -
         static_cast<long long>(out.payment(b));
}

std::vector<std::vector<NodeId>> neighbour_reports(
    const std::vector<NodeId>& truth_r, const DeviationPolicy& policy,
    Rng& rng) {
  std::vector<std::vector<NodeId>> reports;
  reports.push_back(truth_r);
  if (!policy.vary_neighbours || truth_r.empty()) return reports;
  int k = static_cast<int>(truth_r.size());
  if (k <= 4) {
    // All proper subsets, the empty report included.
    for (int mask = 0; mask < (1 << k) - 1; ++mask) {
      std::vector<NodeId> sub;
      for (int j = 0; j < k; ++j) {
        if (mask & (1 << j)) sub.push_back(truth_r[j]);
      }
      reports.push_back(std::move(sub));
    }
  } else {
    for (int t = 0; t < policy.max_neighbour_subsets; ++t) {
      std::vector<NodeId> sub;
      for (NodeId v : truth_r) {
        if (rng.next_u64() & 1) sub.push_back(v);
      }
      reports.push_back(std::move(sub));
    }
  }
  return reports;
}

std::vector<Valuation> value_reports(NodeId i, const Valuation& truth_v,
                                     const GlobalProfile& truth,
                                     const DeviationPolicy& policy) {
  std::vector<Valuation> vals;
  vals.push_back(truth_v);
  if (policy.scale_values) {
    vals.push_back(truth_v.scaled(0, 1));
    vals.push_back(truth_v.scaled(1, 2));
    vals.push_back(truth_v.scaled(2, 1));
  }
  if (policy.swap_values) {
    for (const auto& [j, pj] : truth) {
      if (j != i && pj.valuation.items() == truth_v.items()) {
        vals.push_back(pj.valuation);
      }
    }
  }
  if (policy.vary_demand && truth_v.is_single_minded()) {
    int m = truth_v.items();
    uint32_t truth_bits = truth_v.demand().bits;
    for (uint32_t bits = 1; bits < (1u << m); ++bits) {
      if (bits == truth_bits) continue;
      vals.push_back(
          Valuation::single_minded(m, Bundle(bits, m), truth_v.demand_value()));
    }
  }
  for (const Valuation& v : policy.custom_values) vals.push_back(v);
  return vals;
}

}  // namespace

std::optional<PropertyViolation> check_ic(const MechanismRunner& mech,
                                          const SocialNetwork& net,
                                          const GlobalProfile& truth,
                                          const DeviationPolicy& policy,
                                          Rng& rng) {
  Outcome truth_out = mech.run(net, truth);
  std::set<NodeId> joined = joined_set(net, truth);
  GlobalProfile work = truth;
  for (NodeId i : joined) {
    auto it = truth.find(i);
    if (it == truth.end()) continue;  // null profile, nothing to misreport
    const Valuation& truth_v = it->second.valuation;
    long long u_truth = utility(truth_v, truth_out, i);
    std::vector<Valuation> vals = value_reports(i, truth_v, truth, policy);
    std::vector<std::vector<NodeId>> nbrs =
        neighbour_reports(it->second.reported_neighbours, policy, rng);
    for (size_t vi = 0; vi < vals.size(); ++vi) {
      for (size_t ni = 0; ni < nbrs.size(); ++ni) {
        if (vi == 0 && ni == 0) continue;  // the truthful report itself
        work[i] = Profile{vals[vi], nbrs[ni]};
        Outcome dev_out = mech.run(net, work);
        long long u_dev = utility(truth_v, dev_out, i);
        if (u_dev > u_truth) {
          work[i] = it->second;
          return PropertyViolation{
              "ic", i,
              "buyer " + std::to_string(i) + " raises utility from " +
                  std::to_string(u_truth) + " to " + std::to_string(u_dev) +
                  " under " + mech.label + " (value report " +
                  std::to_string(vi) + ", neighbour report " +
                  std::to_string(ni) + ")"};
        }
      }
    }
    work[i] = it->second;
  }
  return std::nullopt;
}

std::optional<PropertyViolation> check_ir(const MechanismRunner& mech,
                                          const SocialNetwork& net,
                                          const GlobalProfile& truth) {
  Outcome out = mech.run(net, truth);
  for (const auto& [id, entry] : out.entries) {
    auto it = truth.find(id);
    long long value =
        it == truth.end() ? 0 : it->second.valuation.value(entry.first);
    long long u = value - static_cast<long long>(entry.second);
    if (u < 0) {
      return PropertyViolation{
          "ir", id,
          "buyer " + std::to_string(id) + " has truthful utility " +
              std::to_string(u) + " under " + mech.label};
    }
  }
  return std::nullopt;
}

std::optional<PropertyViolation> check_nd(const MechanismRunner& mech,
                                          const SocialNetwork& net,
                                          const GlobalProfile& truth) {
  Outcome out = mech.run(net, truth);
  Money total = out.total_payment();
  if (total < 0) {
    return PropertyViolation{
        "nd", -1,
        "seller collects " + std::to_string(total) + " under " + mech.label};
  }
  return std::nullopt;
}

std::optional<PropertyViolation> check_non_sensitivity(
    const ClassicalMechanism& mech, Bundle avail, const ValuationView& vals,
    const std::vector<Valuation>& deviations, Rng& rng) {
  Outcome base = mech.run(avail, vals);
  for (NodeId w : base.winners()) {
    const Valuation& truth_v = *vals.at(w);
    std::vector<Valuation> devs;
    devs.push_back(truth_v.scaled(0, 1));
    devs.push_back(truth_v.scaled(1, 2));
    devs.push_back(truth_v.scaled(2, 1));
    if (truth_v.is_single_minded()) {
      // The demanded bundle is public knowledge; only the value may move.
      Money v = truth_v.demand_value();
      for (int t = 0; t < 4; ++t) {
        Money alt = rng.uniform_int(0, 2 * v + 1);
        devs.push_back(Valuation::single_minded(truth_v.items(),
                                                truth_v.demand(), alt));
      }
    } else {
      for (const auto& [j, vj] : vals) {
        if (j != w && vj->items() == truth_v.items()) devs.push_back(*vj);
      }
    }
    for (const Valuation& d : deviations) {
      if (d.items() == truth_v.items()) devs.push_back(d);
    }
    for (size_t di = 0; di < devs.size(); ++di) {
      ValuationView dev_view = vals;
      dev_view[w] = &devs[di];
      Outcome dev = mech.run(avail, dev_view);
      if (dev.allocation(w).empty()) continue;  // ceased to win: allowed
      for (const auto& [b, vb] : vals) {
        if (!(base.allocation(b) == dev.allocation(b))) {
          return PropertyViolation{
              "non_sensitivity", w,
              "winner " + std::to_string(w) + " deviation " +
                  std::to_string(di) + " moves buyer " + std::to_string(b) +
                  " from " + base.allocation(b).to_string() + " to " +
                  dev.allocation(b).to_string() + " under " + mech.name()};
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace msn
