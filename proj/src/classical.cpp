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

#include "msn/classical.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <vector>

namespace msn {
namespace {

using BigInt = boost::multiprecision::cpp_int;

Money floor_div(__int128 num, __int128 den) {
  return static_cast<Money>(num / den);  // both operands nonnegative
}

// Ascending enumeration of all submasks of `mask`, including 0 and mask.
template <typename Fn>
void for_each_submask(std::uint32_t mask, Fn&& fn) {
  std::uint32_t s = 0;
  for (;;) {
    fn(s);
    if (s == mask) break;
    s = (s - mask) & mask;
  }
}

}  // namespace

Bundle Outcome::allocation(NodeId id) const {
  auto it = entries.find(id);
  return it == entries.end() ? Bundle::none(m) : it->second.first;
}

Money Outcome::payment(NodeId id) const {
  auto it = entries.find(id);
  return it == entries.end() ? 0 : it->second.second;
}

std::vector<NodeId> Outcome::winners() const {
  std::vector<NodeId> w;
  w.reserve(entries.size());
  for (const auto& [id, e] : entries) w.push_back(id);
  return w;
}

Money Outcome::total_payment() const {
  Money total = 0;
  for (const auto& [id, e] : entries) total += e.second;
  return total;
}

Money Outcome::social_welfare(const ValuationView& vals) const {
  Money total = 0;
  for (const auto& [id, e] : entries) {
    auto it = vals.find(id);
    if (it == vals.end())
      throw ContractError("welfare of a buyer outside the valuation view");
    total += it->second->value(e.first);
  }
  return total;
}

Outcome SecondPriceAuction::run(Bundle avail, const ValuationView& vals) const {
  Outcome out;
  out.m = avail.width;
  if (avail.empty()) return out;
  if (avail.count() != 1)
    throw ContractError("second_price requires a single available item");
  NodeId winner = -1;
  Money best = -1, second = 0;
  for (const auto& [id, v] : vals) {
    const Money s = v->value(avail);
    if (s > best) {
      second = best < 0 ? 0 : best;
      best = s;
      winner = id;
    } else if (s > second) {
      second = s;
    }
  }
  if (winner < 0) return out;
  out.entries[winner] = {avail, second};
  return out;
}

Outcome MultiUnitPriceAuction::run(Bundle avail, const ValuationView& vals) const {
  Outcome out;
  out.m = avail.width;
  const int k = avail.count();
  if (k == 0 || vals.empty()) return out;
  std::vector<int> items;
  for (int j = 0; j < avail.width; ++j)
    if (avail.has(j)) items.push_back(j);
  std::vector<std::pair<Money, NodeId>> scored;
  scored.reserve(vals.size());
  for (const auto& [id, v] : vals) {
    const Money s = v->value(Bundle(1u << items[0], avail.width));
    for (int j : items)
      if (v->value(Bundle(1u << j, avail.width)) != s)
        throw ContractError("mpa requires homogeneous item values");
    if (v->value(avail) != s)
      throw ContractError("mpa requires unit-demand buyers");
    scored.push_back({s, id});
  }
  std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
    return a.first != b.first ? a.first > b.first : a.second < b.second;
  });
  const int nwin = std::min<int>(k, static_cast<int>(scored.size()));
  const Money pay =
      static_cast<int>(scored.size()) > k ? scored[k].first : 0;
  std::vector<NodeId> winners;
  for (int i = 0; i < nwin; ++i) winners.push_back(scored[i].second);
  std::sort(winners.begin(), winners.end());
  for (int i = 0; i < nwin; ++i)
    out.entries[winners[i]] = {Bundle(1u << items[i], avail.width), pay};
  return out;
}

Outcome LosAuction::run(Bundle avail, const ValuationView& vals) const {
  Outcome out;
  out.m = avail.width;
  if (vals.empty()) return out;
  struct Bidder {
    NodeId id;
    Bundle demand;
    Money value;
    Ratio av;
  };
  std::vector<Bidder> bidders;
  bidders.reserve(vals.size());
  for (const auto& [id, v] : vals) {
    if (!v->is_single_minded())
      throw ContractError("los requires single-minded valuations");
    bidders.push_back({id, v->demand(), v->demand_value(),
                       average_per_item(*v)});
  }
  std::sort(bidders.begin(), bidders.end(), [](const Bidder& a, const Bidder& b) {
    if (a.av != b.av) return a.av > b.av;
    return a.id < b.id;
  });
  // Greedy scan; `skip` excludes one bidder for critical-payment reruns.
  auto greedy = [&](int skip) {
    std::vector<bool> granted(bidders.size(), false);
    Bundle rem = avail;
    for (std::size_t t = 0; t < bidders.size(); ++t) {
      if (static_cast<int>(t) == skip) continue;
      if (bidders[t].demand.subset_of(rem)) {
        granted[t] = true;
        rem = rem - bidders[t].demand;
      }
    }
    return granted;
  };
  const std::vector<bool> granted = greedy(-1);
  for (std::size_t t = 0; t < bidders.size(); ++t) {
    if (!granted[t]) continue;
    const Bidder& w = bidders[t];
    Money pay = 0;
    if (payment_ == Payment::kNextInSequence) {
      if (t + 1 < bidders.size()) {
        const Bidder& nxt = bidders[t + 1];
        pay = floor_div(static_cast<__int128>(nxt.value) * w.demand.count(),
                        nxt.demand.count());
      }
    } else {
      const std::vector<bool> without = greedy(static_cast<int>(t));
      for (std::size_t u = t + 1; u < bidders.size(); ++u) {
        if (!granted[u] && without[u]) {
          pay = floor_div(
              static_cast<__int128>(bidders[u].value) * w.demand.count(),
              bidders[u].demand.count());
          break;
        }
      }
    }
    out.entries[w.id] = {w.demand, pay};
  }
  return out;
}

Outcome BruteVcgAuction::run(Bundle avail, const ValuationView& vals) const {
  Outcome out;
  out.m = avail.width;
  if (vals.empty() || avail.empty()) return out;
  if (vals.size() > 10 || avail.count() > 5)
    throw ContractError("brute_vcg size bound exceeded");
  std::vector<int> pos;
  for (int j = 0; j < avail.width; ++j)
    if (avail.has(j)) pos.push_back(j);
  const int a = static_cast<int>(pos.size());
  const std::uint32_t cfull = (1u << a) - 1u;
  auto decompress = [&](std::uint32_t cs) {
    std::uint32_t bits = 0;
    for (int r = 0; r < a; ++r)
      if ((cs >> r) & 1u) bits |= 1u << pos[r];
    return Bundle(bits, avail.width);
  };
  std::vector<NodeId> ids;
  std::vector<const Valuation*> vs;
  for (const auto& [id, v] : vals) {
    ids.push_back(id);
    vs.push_back(v);
  }
  const int n = static_cast<int>(ids.size());
  // best[i][cs]: max welfare over buyers i..n-1 using item set cs.
  auto solve_from = [&](int exclude) {
    std::vector<std::vector<Money>> best(
        n + 1, std::vector<Money>(cfull + 1, 0));
    for (int i = n - 1; i >= 0; --i) {
      if (i == exclude) {
        best[i] = best[i + 1];
        continue;
      }
      for (std::uint32_t cs = 0; cs <= cfull; ++cs) {
        Money b = 0;
        for_each_submask(cs, [&](std::uint32_t csub) {
          const Money w = vs[i]->value(decompress(csub)) +
                          best[i + 1][cs & ~csub];
          if (w > b) b = w;
        });
        best[i][cs] = b;
      }
    }
    return best;
  };
  const auto best = solve_from(-1);
  // Forward reconstruction; ties prefer the numerically greatest bundle for
  // the lowest-id buyer first.
  std::vector<std::uint32_t> chosen(n, 0);
  std::uint32_t cs = cfull;
  for (int i = 0; i < n; ++i) {
    std::uint32_t pick = 0;
    for_each_submask(cs, [&](std::uint32_t csub) {
      if (vs[i]->value(decompress(csub)) + best[i + 1][cs & ~csub] ==
          best[i][cs])
        pick = csub;  // ascending enumeration: last hit is the greatest
    });
    chosen[i] = pick;
    cs &= ~pick;
  }
  const Money total = best[0][cfull];
  for (int i = 0; i < n; ++i) {
    if (chosen[i] == 0) continue;
    const Bundle x = decompress(chosen[i]);
    const Money others_with = total - vs[i]->value(x);
    const Money others_without = solve_from(i)[0][cfull];
    out.entries[ids[i]] = {x, others_without - others_with};
  }
  return out;
}

CoinRecord::Group CoinRecord::group_of(NodeId id) const {
  auto it = groups.find(id);
  if (it == groups.end())
    throw ContractError("dns coins missing buyer " + std::to_string(id));
  return it->second;
}

std::vector<NodeId> CoinRecord::order_for(
    const std::vector<NodeId>& present) const {
  auto it = order_overrides.find(present);
  return it == order_overrides.end() ? base_order : it->second;
}

DnsAuction::DnsAuction(CoinRecord coins, Ratio eps)
    : coins_(std::move(coins)), eps_(eps) {
  if (eps_.num <= 0 || !(eps_ < Ratio(1)))
    throw ContractError("dns requires 0 < eps < 1");
}

Rat DnsAuction::stat_optimum(Bundle avail, const ValuationView& vals) const {
  ValuationView stat;
  for (const auto& [id, v] : vals)
    if (coins_.group_of(id) == CoinRecord::Group::kStat) stat[id] = v;
  if (stat.empty() || avail.empty()) return Rat(0);
  return solve(build_config_lp(avail, stat)).optimum;
}

Money DnsAuction::reserve_from_optimum(const Rat& opt, int m) {
  if (opt <= 0) return 0;
  if (m < 1) throw ContractError("reserve needs m >= 1");
  const BigInt num = boost::multiprecision::numerator(opt);
  const BigInt den = boost::multiprecision::denominator(opt);
  const BigInt lhs_unit = BigInt(m) * den * den;
  const BigInt rhs = num * num;
  // Smallest z >= 0 with z^2 * m * den^2 >= num^2, i.e. z >= opt / sqrt(m).
  BigInt lo = 0, hi = 1;
  while (hi * hi * lhs_unit < rhs) hi <<= 1;
  while (lo < hi) {
    const BigInt mid = (lo + hi) / 2;
    if (mid * mid * lhs_unit >= rhs)
      hi = mid;
    else
      lo = mid + 1;
  }
  return lo.convert_to<Money>();
}

Outcome DnsAuction::run(Bundle avail, const ValuationView& vals) const {
  Outcome out;
  out.m = avail.width;
  if (avail.empty() || vals.empty()) return out;
  std::vector<NodeId> present;
  for (const auto& [id, v] : vals) {
    coins_.group_of(id);  // validates coverage
    present.push_back(id);
  }
  const Rat opt = stat_optimum(avail, vals);
  const Money reserve = reserve_from_optimum(opt, avail.width);

  // Stage 1: second-price with reserve for the whole availability bundle.
  NodeId sec_winner = -1;
  Money sec_best = -1, sec_second = 0;
  for (const auto& [id, v] : vals) {
    if (coins_.group_of(id) != CoinRecord::Group::kSecPrice) continue;
    const Money s = v->value(avail);
    if (s > sec_best) {
      sec_second = sec_best < 0 ? 0 : sec_best;
      sec_best = s;
      sec_winner = id;
    } else if (s > sec_second) {
      sec_second = s;
    }
  }
  if (sec_winner >= 0 && sec_best >= reserve) {
    out.entries[sec_winner] = {avail, std::max(sec_second, reserve)};
    return out;
  }

  // Stage 2: fixed-price pass over the Fixed group in coin order.
  Rat price;  // per still-available item
  if (coins_.fixed_item_price) {
    price = Rat(*coins_.fixed_item_price);
  } else {
    price = Rat(eps_.num) * opt / (Rat(eps_.den) * Rat(8) * Rat(avail.width));
  }
  const BigInt pnum = boost::multiprecision::numerator(price);
  const BigInt pden = boost::multiprecision::denominator(price);
  const std::vector<NodeId> order = coins_.order_for(present);
  Bundle rem = avail;
  for (NodeId id : order) {
    auto vit = vals.find(id);
    if (vit == vals.end()) continue;
    if (coins_.group_of(id) != CoinRecord::Group::kFixed) continue;
    if (rem.empty()) break;
    const Valuation& v = *vit->second;
    // argmax over y <= rem of v(y) - price * |y|; ties to the smaller
    // cardinality, then the numerically smaller bundle. y = 0 is included
    // at utility 0, so a buyer never buys at a loss.
    std::uint32_t best_bits = 0;
    int best_count = 0;
    Rat best_util = 0;
    for_each_submask(rem.bits, [&](std::uint32_t ybits) {
      if (ybits == 0) return;
      const Bundle y(ybits, avail.width);
      const Rat util = Rat(v.value(y)) - price * y.count();
      if (util > best_util ||
          (util == best_util && best_bits != 0 && y.count() < best_count)) {
        best_bits = ybits;
        best_count = y.count();
        best_util = util;
      }
    });
    if (best_bits == 0) continue;
    const Bundle y(best_bits, avail.width);
    const Money pay =
        BigInt((pnum * y.count()) / pden).convert_to<Money>();
    out.entries[id] = {y, pay};
    rem = rem - y;
  }
  // Verify the coin ordering covered every present Fixed buyer.
  for (NodeId id : present) {
    if (coins_.group_of(id) != CoinRecord::Group::kFixed) continue;
    if (std::find(order.begin(), order.end(), id) == order.end())
      throw ContractError("dns ordering missing buyer " + std::to_string(id));
  }
  return out;
}

}  // namespace msn
