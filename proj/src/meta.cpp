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

#include "msn/meta.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "msn/valuation.hpp"

namespace msn {
namespace {

// Exploration state shared by both lifting strategies.
struct Explorer {
  const SocialNetwork& net;
  const GlobalProfile& profile;
  Valuation null_val;
  std::set<NodeId> frontier;  // explored buyers (the seller is implicit)

  Explorer(const SocialNetwork& n, const GlobalProfile& gp, int m)
      : net(n), profile(gp), null_val(Valuation::zero(m)) {}

  const Valuation* valuation_of(NodeId b) const {
    auto it = profile.find(b);
    return it == profile.end() ? &null_val : &it->second.valuation;
  }

  // Reported neighbours restricted to real buyers; missing profiles report
  // nothing.
  std::vector<NodeId> reports_of(NodeId b) const {
    auto it = profile.find(b);
    std::vector<NodeId> out;
    if (it == profile.end()) return out;
    for (NodeId v : it->second.reported_neighbours) {
      if (net.is_buyer(v)) out.push_back(v);
    }
    return out;
  }

  int sigma(NodeId b) const {
    auto it = profile.find(b);
    if (it == profile.end()) return 0;
    return static_cast<int>(it->second.reported_neighbours.size());
  }

  void absorb(NodeId b) {
    if (net.is_buyer(b)) frontier.insert(b);
  }
};

}  // namespace

std::string meta_name(MetaKind kind) {
  return kind == MetaKind::kMsn ? "meta_msn" : "meta_msn_m";
}

MetaResult run_meta(MetaKind kind, const ClassicalMechanism& mech,
                    const SocialNetwork& net, const GlobalProfile& profile,
                    int m) {
  if (m < 1 || m > kMaxItems) {
    throw ContractError("run_meta: item count out of range");
  }
  MetaResult res;
  res.outcome.m = m;
  res.joined = joined_set(net, profile);

  Explorer ex(net, profile, m);
  Bundle x = Bundle::all(m);
  std::set<NodeId> winners;
  std::set<NodeId> barred;  // never again counted as potential winners
  std::set<NodeId> marked;
  bool seller_marked = false;

  auto view = [&]() {
    ValuationView v;
    for (NodeId b : ex.frontier) {
      if (!winners.count(b)) v[b] = ex.valuation_of(b);
    }
    return v;
  };
  auto filter_potential = [&](const Outcome& raw) {
    std::vector<NodeId> p;
    for (NodeId w : raw.winners()) {
      if (!barred.count(w)) p.push_back(w);
    }
    return p;
  };

  // Seed potential winners from the seller's own neighbourhood before any
  // exploration happens.
  Outcome raw;
  {
    ValuationView seed;
    for (NodeId b : net.out(net.seller)) {
      if (net.is_buyer(b)) seed[b] = ex.valuation_of(b);
    }
    raw = mech.run(x, seed);
  }
  std::vector<NodeId> potential = raw.winners();

  auto potential_without_winners = [&]() {
    std::vector<NodeId> p;
    for (NodeId b : potential) {
      if (!winners.count(b)) p.push_back(b);
    }
    return p;
  };

  for (;;) {
    if (x.empty()) break;
    if (kind == MetaKind::kMsn && potential_without_winners().empty()) break;

    // Re-run the inner auction over the current market before exploring:
    // selections from an earlier, larger supply must never leak in.
    raw = mech.run(x, view());
    potential = filter_potential(raw);

    // Invite the neighbourhoods of everyone who cannot still win (plus the
    // seller), lowest id first, re-running the auction after each invite.
    for (;;) {
      NodeId next = -1;
      bool next_is_seller = false;
      if (!seller_marked) {
        next = net.seller;
        next_is_seller = true;
      } else {
        for (NodeId b : ex.frontier) {
          if (marked.count(b)) continue;
          bool potential_now =
              std::find(potential.begin(), potential.end(), b) !=
              potential.end();
          if (winners.count(b) || !potential_now) {
            next = b;
            break;
          }
        }
      }
      if (next == -1 && !next_is_seller) break;
      if (next_is_seller) {
        seller_marked = true;
        for (NodeId b : net.out(net.seller)) ex.absorb(b);
      } else {
        marked.insert(next);
        for (NodeId b : ex.reports_of(next)) ex.absorb(b);
      }
      raw = mech.run(x, view());
      potential = filter_potential(raw);
    }

    if (potential.empty()) {
      // Nobody explored can still win: freeze the remaining market.
      for (NodeId b : ex.frontier) {
        if (!winners.count(b)) barred.insert(b);
      }
      break;
    }

    std::vector<NodeId> commit;
    if (kind == MetaKind::kMsn) {
      NodeId best = potential.front();
      for (NodeId b : potential) {
        if (ex.sigma(b) > ex.sigma(best)) best = b;
      }
      commit.push_back(best);
    } else {
      commit = potential;
    }

    MetaIteration it;
    it.avail_before = x;
    it.provisional = potential;
    it.committed = commit;
    it.inner = raw;
    for (NodeId b : commit) {
      const auto& entry = raw.entries.at(b);
      if (!entry.first.subset_of(x)) {
        throw ContractError("run_meta: inner auction exceeded availability");
      }
      res.outcome.entries[b] = entry;
      x = x - entry.first;
      winners.insert(b);
    }
    res.trace.push_back(std::move(it));

    // Everyone explored who neither won nor remains provisional is out for
    // good; later supply changes must not revive them.
    for (NodeId b : ex.frontier) {
      bool still_potential = std::find(potential.begin(), potential.end(),
                                       b) != potential.end();
      if (!winners.count(b) && !still_potential) barred.insert(b);
    }
  }

  res.explored = ex.frontier;
  res.final_avail = x;
  res.final_potential = potential_without_winners();
  for (NodeId b : ex.frontier) {
    if (barred.count(b)) res.exhausted.insert(b);
  }
  return res;
}

TerminationVerdict check_termination_state(const MetaResult& result) {
  TerminationVerdict v;
  v.supply_exhausted = result.final_avail.empty();
  v.no_potential = result.final_potential.empty();
  if (!v.supply_exhausted && !v.no_potential) {
    v.detail = "supply remains and potential winners remain";
    return v;
  }
  std::set<NodeId> winners;
  for (const auto& [id, entry] : result.outcome.entries) winners.insert(id);
  for (NodeId b : result.explored) {
    bool is_winner = winners.count(b) > 0;
    bool is_exhausted = result.exhausted.count(b) > 0;
    bool is_potential =
        std::find(result.final_potential.begin(), result.final_potential.end(),
                  b) != result.final_potential.end();
    int roles = int(is_winner) + int(is_exhausted) + int(is_potential);
    if (roles != 1) {
      v.detail = "explored buyer " + std::to_string(b) +
                 " holds " + std::to_string(roles) + " roles";
      return v;
    }
  }
  for (NodeId b : winners) {
    if (!result.explored.count(b)) {
      v.detail = "winner " + std::to_string(b) + " was never explored";
      return v;
    }
  }
  v.valid = true;
  v.detail = v.supply_exhausted ? "terminated with supply exhausted"
                                : "terminated with no potential winners";
  return v;
}

nlohmann::json trace_to_json(const MetaResult& result) {
  using nlohmann::json;
  auto entries_json = [](const Outcome& o) {
    json e = json::object();
    for (const auto& [id, entry] : o.entries) {
      e[std::to_string(id)] = {{"bundle", entry.first.to_string()},
                               {"pay", entry.second}};
    }
    return e;
  };
  json iters = json::array();
  for (const auto& it : result.trace) {
    iters.push_back({{"avail", it.avail_before.to_string()},
                     {"provisional", it.provisional},
                     {"committed", it.committed},
                     {"inner", entries_json(it.inner)}});
  }
  return json{{"iterations", iters},
              {"outcome", entries_json(result.outcome)},
              {"joined", std::vector<NodeId>(result.joined.begin(),
                                             result.joined.end())},
              {"exhausted", std::vector<NodeId>(result.exhausted.begin(),
                                                result.exhausted.end())},
              {"final_avail", result.final_avail.to_string()},
              {"final_potential", result.final_potential}};
}

}  // namespace msn
