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

#ifndef MSN_NETGRAPH_HPP_
#define MSN_NETGRAPH_HPP_

#include <iosfwd>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "msn/rng.hpp"
#include "msn/types.hpp"
#include "msn/valuation.hpp"

namespace msn {

// Directed social network: one seller plus buyers, no self-loops.
struct SocialNetwork {
  NodeId seller = 0;
  std::vector<NodeId> buyers;                   // sorted, unique, seller excluded
  std::map<NodeId, std::vector<NodeId>> edges;  // out-neighbours, sorted, unique

  const std::vector<NodeId>& out(NodeId v) const;
  bool is_buyer(NodeId v) const;
};

// Validates: seller not a buyer, no self-loops, endpoints known.
SocialNetwork make_network(NodeId seller, std::vector<NodeId> buyers,
                           const std::vector<std::pair<NodeId, NodeId>>& edges);

// Unrooted edge list as loaded from disk; seller is chosen by the caller.
struct EdgeListGraph {
  std::vector<NodeId> nodes;                          // sorted, unique
  std::vector<std::pair<NodeId, NodeId>> edges;       // deduplicated
};

// Accepts "u v" per line, '#' comments and blank lines. Rejects self-loops
// and malformed lines with the offending line number. Duplicate edges are
// dropped; symmetrize adds the reverse of every edge.
EdgeListGraph load_edge_list(std::istream& in, bool symmetrize);
EdgeListGraph load_edge_list_file(const std::string& path, bool symmetrize);

SocialNetwork rooted_at(const EdgeListGraph& g, NodeId seller);

// Reported type of a buyer: valuation plus the reported neighbour set
// (a subset of her true out-neighbourhood).
struct Profile {
  Valuation valuation;
  std::vector<NodeId> reported_neighbours;  // sorted, unique
};

using GlobalProfile = std::map<NodeId, Profile>;

// Every buyer reports truthfully: valuation as given, full neighbour set.
GlobalProfile truthful_profile(const SocialNetwork& net,
                               const std::map<NodeId, Valuation>& valuations);

// Least fixed point of "reachable from the seller via reported edges".
// The seller's neighbour set comes from the network, buyers' from profiles.
std::set<NodeId> joined_set(const SocialNetwork& net, const GlobalProfile& gp);

// Profiles outside `ids` become null (zero valuation, no neighbours).
GlobalProfile restrict(const GlobalProfile& gp, const std::set<NodeId>& ids);

// Synthetic generators. Seller is node 0, buyers 1..n.
SocialNetwork gen_erdos_renyi(int n, double p, Rng& rng);
SocialNetwork gen_preferential_attachment(int n, int k, Rng& rng);
// Random directed network with per-node out-degree at most max_out and a
// nonempty seller neighbourhood.
SocialNetwork gen_bounded_outdeg(int n, int max_out, Rng& rng);

}  // namespace msn

#endif  // MSN_NETGRAPH_HPP_
