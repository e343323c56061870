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

#include "msn/netgraph.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <sstream>
#include <string>

namespace msn {
namespace {

const std::vector<NodeId> kNoNeighbours;

std::vector<NodeId> sorted_unique(std::vector<NodeId> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

const std::vector<NodeId>& SocialNetwork::out(NodeId v) const {
  auto it = edges.find(v);
  return it == edges.end() ? kNoNeighbours : it->second;
}

bool SocialNetwork::is_buyer(NodeId v) const {
  return std::binary_search(buyers.begin(), buyers.end(), v);
}

SocialNetwork make_network(NodeId seller, std::vector<NodeId> buyers,
                           const std::vector<std::pair<NodeId, NodeId>>& edges) {
  SocialNetwork net;
  net.seller = seller;
  net.buyers = sorted_unique(std::move(buyers));
  if (net.is_buyer(seller)) throw ContractError("seller cannot be a buyer");
  for (const auto& [u, v] : edges) {
    if (u == v) throw ContractError("self-loop edge");
    const bool u_ok = u == seller || net.is_buyer(u);
    const bool v_ok = v == seller || net.is_buyer(v);
    if (!u_ok || !v_ok) throw ContractError("edge endpoint is not a known node");
    net.edges[u].push_back(v);
  }
  for (auto& [u, outs] : net.edges) outs = sorted_unique(std::move(outs));
  return net;
}

EdgeListGraph load_edge_list(std::istream& in, bool symmetrize) {
  EdgeListGraph g;
  std::set<std::pair<NodeId, NodeId>> seen;
  std::set<NodeId> nodes;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    NodeId u, v;
    if (!(ls >> u)) {
      if (line.find_first_not_of(" \t\r") != std::string::npos)
        throw ParseError("line " + std::to_string(lineno) +
                         ": expected two node ids");
      continue;  // blank or comment-only line
    }
    std::string extra;
    if (!(ls >> v) || (ls >> extra))
      throw ParseError("line " + std::to_string(lineno) +
                       ": expected two node ids");
    if (u < 0 || v < 0)
      throw ParseError("line " + std::to_string(lineno) + ": negative node id");
    if (u == v)
      throw ParseError("line " + std::to_string(lineno) + ": self-loop");
    nodes.insert(u);
    nodes.insert(v);
    seen.insert({u, v});
    if (symmetrize) seen.insert({v, u});
  }
  g.nodes.assign(nodes.begin(), nodes.end());
  g.edges.assign(seen.begin(), seen.end());
  return g;
}

EdgeListGraph load_edge_list_file(const std::string& path, bool symmetrize) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open edge list: " + path);
  return load_edge_list(in, symmetrize);
}

SocialNetwork rooted_at(const EdgeListGraph& g, NodeId seller) {
  if (!std::binary_search(g.nodes.begin(), g.nodes.end(), seller))
    throw ContractError("seller is not a node of the graph");
  std::vector<NodeId> buyers;
  buyers.reserve(g.nodes.size());
  for (NodeId v : g.nodes)
    if (v != seller) buyers.push_back(v);
  return make_network(seller, std::move(buyers), g.edges);
}

GlobalProfile truthful_profile(const SocialNetwork& net,
                               const std::map<NodeId, Valuation>& valuations) {
  GlobalProfile gp;
  for (NodeId b : net.buyers) {
    auto it = valuations.find(b);
    if (it == valuations.end())
      throw ContractError("missing valuation for buyer " + std::to_string(b));
    std::vector<NodeId> nbrs;
    for (NodeId j : net.out(b))
      if (net.is_buyer(j)) nbrs.push_back(j);
    gp[b] = Profile{it->second, std::move(nbrs)};
  }
  return gp;
}

std::set<NodeId> joined_set(const SocialNetwork& net, const GlobalProfile& gp) {
  std::set<NodeId> joined;
  std::deque<NodeId> queue;
  for (NodeId v : net.out(net.seller))
    if (net.is_buyer(v)) queue.push_back(v);
  while (!queue.empty()) {
    const NodeId b = queue.front();
    queue.pop_front();
    if (joined.count(b)) continue;
    joined.insert(b);
    auto it = gp.find(b);
    if (it == gp.end()) continue;  // null profile: spreads nothing
    for (NodeId j : it->second.reported_neighbours)
      if (net.is_buyer(j) && !joined.count(j)) queue.push_back(j);
  }
  return joined;
}

GlobalProfile restrict(const GlobalProfile& gp, const std::set<NodeId>& ids) {
  GlobalProfile out;
  for (const auto& [b, prof] : gp) {
    if (ids.count(b)) {
      out[b] = prof;
    } else {
      out[b] = Profile{Valuation::zero(prof.valuation.items()), {}};
    }
  }
  return out;
}

SocialNetwork gen_erdos_renyi(int n, double p, Rng& rng) {
  if (n < 1) throw ContractError("need at least one buyer");
  if (p < 0.0 || p > 1.0) throw ContractError("edge probability out of range");
  std::vector<NodeId> buyers(n);
  for (int i = 0; i < n; ++i) buyers[i] = i + 1;
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (NodeId u = 0; u <= n; ++u)
    for (NodeId v = 0; v <= n; ++v)
      if (u != v && v != 0 && rng.uniform01() < p) edges.push_back({u, v});
  return make_network(0, std::move(buyers), edges);
}

SocialNetwork gen_preferential_attachment(int n, int k, Rng& rng) {
  if (n < 1) throw ContractError("need at least one buyer");
  if (k < 1) throw ContractError("need at least one attachment edge");
  std::vector<NodeId> buyers(n);
  for (int i = 0; i < n; ++i) buyers[i] = i + 1;
  std::vector<std::pair<NodeId, NodeId>> edges;
  // Degree-proportional endpoint pool; every undirected edge contributes
  // both endpoints. Edges are stored in both directions.
  std::vector<NodeId> pool;
  for (NodeId t = 1; t <= n; ++t) {
    const int deg = std::min<int>(k, static_cast<int>(t));
    std::set<NodeId> targets;
    while (static_cast<int>(targets.size()) < deg) {
      NodeId cand;
      if (pool.empty()) {
        cand = 0;
      } else {
        cand = pool[static_cast<std::size_t>(
            rng.uniform_int(0, static_cast<std::int64_t>(pool.size()) - 1))];
      }
      if (cand == t || targets.count(cand)) {
        // Fall back to a uniform node to guarantee progress.
        cand = static_cast<NodeId>(rng.uniform_int(0, t - 1));
        if (cand == t || targets.count(cand)) continue;
      }
      targets.insert(cand);
    }
    for (NodeId u : targets) {
      edges.push_back({u, t});
      edges.push_back({t, u});
      pool.push_back(u);
      pool.push_back(t);
    }
  }
  return make_network(0, std::move(buyers), edges);
}

SocialNetwork gen_bounded_outdeg(int n, int max_out, Rng& rng) {
  if (n < 1) throw ContractError("need at least one buyer");
  if (max_out < 1) throw ContractError("need max_out >= 1");
  std::vector<NodeId> buyers(n);
  for (int i = 0; i < n; ++i) buyers[i] = i + 1;
  std::vector<std::pair<NodeId, NodeId>> edges;
  std::vector<NodeId> cands;
  auto pick = [&](NodeId self, int deg) {
    cands.clear();
    for (NodeId b = 1; b <= n; ++b)
      if (b != self) cands.push_back(b);
    rng.shuffle(cands);
    for (int i = 0; i < deg && i < static_cast<int>(cands.size()); ++i)
      edges.push_back({self, cands[i]});
  };
  pick(0, static_cast<int>(rng.uniform_int(1, std::min(max_out, n))));
  for (NodeId b = 1; b <= n; ++b)
    pick(b, static_cast<int>(rng.uniform_int(0, max_out)));
  return make_network(0, std::move(buyers), edges);
}

}  // namespace msn
