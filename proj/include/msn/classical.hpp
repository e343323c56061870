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

#ifndef MSN_CLASSICAL_HPP_
#define MSN_CLASSICAL_HPP_

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "msn/lpsolve.hpp"
#include "msn/types.hpp"
#include "msn/valuation.hpp"

namespace msn {

using ValuationView = std::map<NodeId, const Valuation*>;

// Result of one auction run: per-winner bundle and payment.
struct Outcome {
  int m = 0;
  std::map<NodeId, std::pair<Bundle, Money>> entries;

  Bundle allocation(NodeId id) const;
  Money payment(NodeId id) const;
  std::vector<NodeId> winners() const;
  Money total_payment() const;
  Money social_welfare(const ValuationView& vals) const;
};

// A classical (single-market) auction: allocates sub-bundles of avail and
// charges payments. Implementations must be deterministic.
class ClassicalMechanism {
 public:
  virtual ~ClassicalMechanism() = default;
  virtual std::string name() const = 0;
  virtual Outcome run(Bundle avail, const ValuationView& vals) const = 0;
};

// Single-item second-price auction. Requires |avail| <= 1; empty
// availability yields an empty outcome. Ties break to the lowest id.
class SecondPriceAuction : public ClassicalMechanism {
 public:
  std::string name() const override { return "second_price"; }
  Outcome run(Bundle avail, const ValuationView& vals) const override;
};

// Uniform-price auction for k identical copies: each of the top k bidders
// (by per-copy value) gets one available item and pays the (k+1)-th value.
// Requires every bidder to be unit-demand over identical items.
class MultiUnitPriceAuction : public ClassicalMechanism {
 public:
  std::string name() const override { return "mpa"; }
  Outcome run(Bundle avail, const ValuationView& vals) const override;
};

// Greedy single-minded auction: grants demands in decreasing order of
// per-item average value. Requires single-minded bidders.
class LosAuction : public ClassicalMechanism {
 public:
  enum class Payment {
    // Per denied critical competitor: first bidder after i that is granted
    // without i but denied with i present.
    kCritical,
    // Next bidder in the greedy order, regardless of conflict.
    kNextInSequence,
  };

  explicit LosAuction(Payment payment = Payment::kCritical)
      : payment_(payment) {}
  std::string name() const override { return "los"; }
  Outcome run(Bundle avail, const ValuationView& vals) const override;

 private:
  Payment payment_;
};

// Exact welfare-maximizing combinatorial auction with Clarke payments.
// Exponential in |avail|; bounded to <= 10 bidders and <= 5 items.
class BruteVcgAuction : public ClassicalMechanism {
 public:
  std::string name() const override { return "brute_vcg"; }
  Outcome run(Bundle avail, const ValuationView& vals) const override;
};

// Fixed coin outcomes consumed by DnsAuction, one record per run.
struct CoinRecord {
  enum class Group { kSecPrice, kFixed, kStat };

  std::map<NodeId, Group> groups;
  // Visitation order for the fixed-price stage.
  std::vector<NodeId> base_order;
  // Optional per-buyer-set order replacements, keyed by the sorted set of
  // buyers present in the run.
  std::map<std::vector<NodeId>, std::vector<NodeId>> order_overrides;
  // Overrides the per-item fixed price derived from the statistics group.
  std::optional<Money> fixed_item_price;

  Group group_of(NodeId id) const;
  std::vector<NodeId> order_for(const std::vector<NodeId>& present) const;
};

// Draw-and-sell combinatorial auction for subadditive bidders. Buyers are
// split into a second-price group, a fixed-price group, and a statistics
// group by pre-drawn coins; the run is deterministic given the record.
class DnsAuction : public ClassicalMechanism {
 public:
  DnsAuction(CoinRecord coins, Ratio eps);
  std::string name() const override { return "dns"; }
  Outcome run(Bundle avail, const ValuationView& vals) const override;

  // Exposed for tests: fractional cover optimum of the statistics group
  // restricted to avail, and the reserve ceil(opt / sqrt(m)).
  Rat stat_optimum(Bundle avail, const ValuationView& vals) const;
  static Money reserve_from_optimum(const Rat& opt, int m);

 private:
  CoinRecord coins_;
  Ratio eps_;
};

}  // namespace msn

#endif  // MSN_CLASSICAL_HPP_
