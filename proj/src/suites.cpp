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

#include "msn/suites.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "msn/lpsolve.hpp"
#include "msn/meta.hpp"
#include "msn/props.hpp"
#include "msn/rng.hpp"
#include "msn/valuation.hpp"

namespace msn {
namespace {

void note(SuiteResult& res, std::string text) {
  if (res.notes.size() < 6) res.notes.push_back(std::move(text));
}

ValuationView view_of(const std::map<NodeId, Valuation>& vals) {
  ValuationView view;
  for (const auto& [id, v] : vals) view[id] = &v;
  return view;
}

Valuation random_monotone_table(int m, Money hi, Rng& rng) {
  std::vector<Money> v(std::size_t{1} << m, 0);
  for (std::size_t mask = 1; mask < v.size(); ++mask) {
    Money floor_v = 0;
    for (int b = 0; b < m; ++b) {
      if (mask & (std::size_t{1} << b)) {
        floor_v = std::max(floor_v, v[mask ^ (std::size_t{1} << b)]);
      }
    }
    v[mask] = std::max(rng.uniform_int(0, hi), floor_v);
  }
  return Valuation::table(m, std::move(v));
}

Valuation homogeneous_table(int m, Money unit) {
  std::vector<Money> v(std::size_t{1} << m, unit);
  v[0] = 0;
  return Valuation::table(m, std::move(v));
}

std::map<NodeId, Valuation> draw_monotone_tables(const SocialNetwork& net,
                                                 int m, Money hi, Rng& rng) {
  std::map<NodeId, Valuation> vals;
  for (NodeId b : net.buyers) vals.emplace(b, random_monotone_table(m, hi, rng));
  return vals;
}

CoinRecord draw_coins(const std::vector<NodeId>& buyers, Ratio eps, Rng& rng) {
  CoinRecord coins;
  double p_sec = 1.0 - static_cast<double>(eps.num) / eps.den;
  double p_fixed = (1.0 - p_sec) / 2.0;
  for (NodeId b : buyers) {
    double u = rng.uniform01();
    coins.groups[b] = u < p_sec ? CoinRecord::Group::kSecPrice
                      : u < p_sec + p_fixed ? CoinRecord::Group::kFixed
                                            : CoinRecord::Group::kStat;
  }
  coins.base_order = buyers;
  rng.shuffle(coins.base_order);
  return coins;
}

SocialNetwork star_with_chatter(int n, double p, Rng& rng) {
  std::vector<NodeId> buyers;
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (NodeId b = 1; b <= n; ++b) {
    buyers.push_back(b);
    edges.emplace_back(0, b);
  }
  for (NodeId u = 1; u <= n; ++u) {
    for (NodeId v = 1; v <= n; ++v) {
      if (u != v && rng.uniform01() < p) edges.emplace_back(u, v);
    }
  }
  return make_network(0, buyers, edges);
}

}  // namespace

RunningExample make_running_example() {
  RunningExample ex;
  ex.net = make_network(0, {1, 2, 3}, {{0, 1}, {0, 2}, {2, 3}});
  ex.valuations.emplace(1, Valuation::table(2, {0, 4, 0, 5}));
  ex.valuations.emplace(2, Valuation::table(2, {0, 0, 3, 3}));
  ex.valuations.emplace(3, Valuation::table(2, {0, 5, 0, 5}));
  ex.truth = truthful_profile(ex.net, ex.valuations);
  for (NodeId b : ex.net.buyers) {
    ex.coins.groups[b] = CoinRecord::Group::kFixed;
  }
  ex.coins.base_order = {1, 2, 3};
  ex.coins.order_overrides[{1, 3}] = {3, 1};
  ex.coins.fixed_item_price = 2;
  ex.eps = Ratio{1, 100};
  ex.m = 2;
  ex.deviation_a = Valuation::table(2, {0, 4, 0, 7});
  return ex;
}

SuiteResult run_suite_ic_lifted(std::uint64_t seed, int instances) {
  SuiteResult res;
  res.name = "ic-lifted";
  res.instances = instances;
  SecondPriceAuction sp;
  MultiUnitPriceAuction mpa;
  LosAuction los;
  for (int inst = 0; inst < instances; ++inst) {
    Rng rng = Rng(seed).fork("ic-lifted").fork(static_cast<uint64_t>(inst));
    int n = static_cast<int>(rng.uniform_int(3, 12));
    SocialNetwork net = gen_bounded_outdeg(n, 4, rng);
    const ClassicalMechanism* mech = nullptr;
    int m = 1;
    std::map<NodeId, Valuation> vals;
    switch (inst % 3) {
      case 0:
        mech = &sp;
        m = 1;
        for (NodeId b : net.buyers) {
          vals.emplace(b, Valuation::table(1, {0, rng.uniform_int(0, 1000)}));
        }
        break;
      case 1:
        mech = &mpa;
        m = static_cast<int>(rng.uniform_int(1, 4));
        for (NodeId b : net.buyers) {
          vals.emplace(b, homogeneous_table(m, rng.uniform_int(0, 1000)));
        }
        break;
      default:
        mech = &los;
        m = static_cast<int>(rng.uniform_int(1, 3));
        for (NodeId b : net.buyers) {
          uint32_t bits = static_cast<uint32_t>(
              rng.uniform_int(1, (std::int64_t{1} << m) - 1));
          vals.emplace(b, Valuation::single_minded(m, Bundle(bits, m),
                                                   rng.uniform_int(0, 1000)));
        }
        break;
    }
    GlobalProfile truth = truthful_profile(net, vals);
    MechanismRunner runner{
        "meta_msn/" + mech->name(),
        [mech, m](const SocialNetwork& nw, const GlobalProfile& gp) {
          return run_meta(MetaKind::kMsn, *mech, nw, gp, m).outcome;
        }};
    MetaResult truthful = run_meta(MetaKind::kMsn, *mech, net, truth, m);
    TerminationVerdict tv = check_termination_state(truthful);
    if (!tv.valid) {
      ++res.violations;
      note(res, "instance " + std::to_string(inst) + ": bad termination: " +
                    tv.detail);
    }
    DeviationPolicy policy;
    policy.max_neighbour_subsets = 8;
    std::optional<PropertyViolation> hit;
    if ((hit = check_ic(runner, net, truth, policy, rng)) ||
        (hit = check_ir(runner, net, truth)) ||
        (hit = check_nd(runner, net, truth))) {
      ++res.violations;
      note(res, "instance " + std::to_string(inst) + ": " + hit->detail);
    }
  }
  res.pass = res.violations == 0;
  return res;
}

SuiteResult run_suite_ic_dns_universal(std::uint64_t seed, int instances) {
  SuiteResult res;
  res.name = "ic-dns-universal";
  res.instances = instances;
  Ratio eps{1, 100};
  for (int inst = 0; inst < instances; ++inst) {
    Rng rng = Rng(seed).fork("ic-dns").fork(static_cast<uint64_t>(inst));
    int n = static_cast<int>(rng.uniform_int(3, 8));
    int m = static_cast<int>(rng.uniform_int(1, 4));
    SocialNetwork net = gen_bounded_outdeg(n, 3, rng);
    std::vector<Valuation> drawn;
    if (inst % 2 == 0) {
      drawn = gen_coverage(CoverageConfig{m}, n, rng);
    } else {
      drawn = gen_sqrt_subadditive(SqrtConfig{m}, n, rng);
    }
    std::map<NodeId, Valuation> vals;
    for (int i = 0; i < n; ++i) vals.emplace(net.buyers[i], drawn[i]);
    GlobalProfile truth = truthful_profile(net, vals);
    CoinRecord coins = draw_coins(net.buyers, eps, rng);
    DnsAuction dns(coins, eps);
    MechanismRunner runner{
        "meta_msn_m/dns",
        [&dns, m](const SocialNetwork& nw, const GlobalProfile& gp) {
          return run_meta(MetaKind::kMsnM, dns, nw, gp, m).outcome;
        }};
    MetaResult truthful = run_meta(MetaKind::kMsnM, dns, net, truth, m);
    TerminationVerdict tv = check_termination_state(truthful);
    if (!tv.valid) {
      ++res.violations;
      note(res, "instance " + std::to_string(inst) + ": bad termination: " +
                    tv.detail);
    }
    DeviationPolicy policy;
    policy.max_neighbour_subsets = 8;
    std::optional<PropertyViolation> hit;
    if ((hit = check_ic(runner, net, truth, policy, rng)) ||
        (hit = check_ir(runner, net, truth)) ||
        (hit = check_nd(runner, net, truth))) {
      ++res.violations;
      note(res, "instance " + std::to_string(inst) + ": " + hit->detail);
    }
  }
  res.pass = res.violations == 0;
  return res;
}

SuiteResult run_suite_non_sensitivity(std::uint64_t seed, int instances) {
  SuiteResult res;
  res.name = "non-sensitivity";
  res.instances = instances;
  SecondPriceAuction sp;
  MultiUnitPriceAuction mpa;
  LosAuction los;
  struct CleanCase {
    const ClassicalMechanism* mech;
    int tag;
  };
  const CleanCase clean[] = {{&los, 0}, {&sp, 1}, {&mpa, 2}};
  for (const CleanCase& c : clean) {
    for (int inst = 0; inst < instances; ++inst) {
      Rng rng = Rng(seed).fork("non-sens").fork(
          static_cast<uint64_t>(c.tag * 1000003 + inst));
      int n = static_cast<int>(rng.uniform_int(2, 8));
      int m = c.mech == &sp ? 1 : static_cast<int>(rng.uniform_int(1, 4));
      std::map<NodeId, Valuation> vals;
      for (NodeId b = 1; b <= n; ++b) {
        if (c.mech == &sp) {
          vals.emplace(b, Valuation::table(1, {0, rng.uniform_int(0, 1000)}));
        } else if (c.mech == &mpa) {
          vals.emplace(b, homogeneous_table(m, rng.uniform_int(0, 1000)));
        } else {
          uint32_t bits = static_cast<uint32_t>(
              rng.uniform_int(1, (std::int64_t{1} << m) - 1));
          vals.emplace(b, Valuation::single_minded(m, Bundle(bits, m),
                                                   rng.uniform_int(0, 1000)));
        }
      }
      auto view = view_of(vals);
      auto hit = check_non_sensitivity(*c.mech, Bundle::all(m), view, {}, rng);
      if (hit) {
        ++res.violations;
        note(res, c.mech->name() + " instance " + std::to_string(inst) + ": " +
                      hit->detail);
      }
    }
  }
  for (int inst = 0; inst < instances; ++inst) {
    Rng rng = Rng(seed).fork("non-sens-dns").fork(static_cast<uint64_t>(inst));
    if (inst == 0) {
      RunningExample ex = make_running_example();
      DnsAuction dns(ex.coins, ex.eps);
      auto view = view_of(ex.valuations);
      auto hit = check_non_sensitivity(dns, Bundle::all(ex.m), view,
                                       {ex.deviation_a}, rng);
      if (hit) {
        ++res.counterexamples;
        note(res, "dns counterexample (worked example): " + hit->detail);
      }
      continue;
    }
    int n = static_cast<int>(rng.uniform_int(2, 6));
    int m = static_cast<int>(rng.uniform_int(1, 3));
    std::map<NodeId, Valuation> vals;
    std::vector<NodeId> ids;
    for (NodeId b = 1; b <= n; ++b) {
      ids.push_back(b);
      vals.emplace(b, random_monotone_table(m, 1000, rng));
    }
    Ratio eps{1, 2};
    CoinRecord coins = draw_coins(ids, eps, rng);
    DnsAuction dns(coins, eps);
    auto view = view_of(vals);
    auto hit = check_non_sensitivity(dns, Bundle::all(m), view, {}, rng);
    if (hit) ++res.counterexamples;
  }
  res.pass = res.violations == 0 && res.counterexamples >= 1;
  return res;
}

SuiteResult run_suite_welfare_bound(std::uint64_t seed, int instances) {
  SuiteResult res;
  res.name = "welfare-bound";
  res.instances = instances;
  BruteVcgAuction vcg;
  for (int inst = 0; inst < instances; ++inst) {
    Rng rng = Rng(seed).fork("welfare").fork(static_cast<uint64_t>(inst));
    int n = static_cast<int>(rng.uniform_int(2, 8));
    int m = static_cast<int>(rng.uniform_int(1, 4));
    SocialNetwork net = gen_bounded_outdeg(n, 3, rng);
    std::map<NodeId, Valuation> vals = draw_monotone_tables(net, m, 1000, rng);
    GlobalProfile truth = truthful_profile(net, vals);
    auto full_view = view_of(vals);
    ValuationView first_view;
    for (NodeId b : net.out(net.seller)) {
      if (net.is_buyer(b)) first_view[b] = &vals.at(b);
    }
    Money sw_first =
        vcg.run(Bundle::all(m), first_view).social_welfare(full_view);
    for (MetaKind kind : {MetaKind::kMsn, MetaKind::kMsnM}) {
      Money sw = run_meta(kind, vcg, net, truth, m)
                     .outcome.social_welfare(full_view);
      if (sw < sw_first) {
        ++res.violations;
        note(res, "instance " + std::to_string(inst) + ": " +
                      meta_name(kind) + " welfare " + std::to_string(sw) +
                      " < direct-neighbour optimum " +
                      std::to_string(sw_first));
      }
    }
  }
  res.pass = res.violations == 0;
  return res;
}

SuiteResult run_suite_lp(std::uint64_t seed, int instances) {
  SuiteResult res;
  res.name = "lp";
  res.instances = instances;
  BruteVcgAuction vcg;
  for (int inst = 0; inst < instances; ++inst) {
    Rng rng = Rng(seed).fork("lp").fork(static_cast<uint64_t>(inst));
    int n = static_cast<int>(rng.uniform_int(1, 6));
    int m = static_cast<int>(rng.uniform_int(1, 4));
    std::map<NodeId, Valuation> vals;
    for (NodeId b = 1; b <= n; ++b) {
      vals.emplace(b, random_monotone_table(m, 1000, rng));
    }
    auto view = view_of(vals);
    LpSolution sol = solve(build_config_lp(Bundle::all(m), view));
    Money integral = vcg.run(Bundle::all(m), view).social_welfare(view);
    if (sol.optimum < Rat(integral)) {
      ++res.violations;
      note(res, "instance " + std::to_string(inst) +
                    ": relaxation below integral optimum " +
                    std::to_string(integral));
    }
  }
  {
    // Three buyers demanding the three distinct pairs of three items at value
    // 1 each: half of every pair is optimal, worth exactly 3/2.
    std::map<NodeId, Valuation> vals;
    vals.emplace(1, Valuation::single_minded(3, Bundle(0b011u, 3), 1));
    vals.emplace(2, Valuation::single_minded(3, Bundle(0b110u, 3), 1));
    vals.emplace(3, Valuation::single_minded(3, Bundle(0b101u, 3), 1));
    auto view = view_of(vals);
    LpSolution sol = solve(build_config_lp(Bundle::all(3), view));
    if (sol.optimum != Rat(3, 2)) {
      ++res.violations;
      note(res, "pair-cover relaxation is not 3/2");
    }
  }
  res.pass = res.violations == 0;
  return res;
}

SuiteResult run_suite_star_equivalence(std::uint64_t seed, int instances) {
  SuiteResult res;
  res.name = "star-equivalence";
  res.instances = instances;
  SecondPriceAuction sp;
  MultiUnitPriceAuction mpa;
  LosAuction los;
  BruteVcgAuction vcg;
  for (int inst = 0; inst < instances; ++inst) {
    Rng rng = Rng(seed).fork("star").fork(static_cast<uint64_t>(inst));
    int n = static_cast<int>(rng.uniform_int(2, 8));
    SocialNetwork net = star_with_chatter(n, 0.3, rng);
    auto compare = [&](const ClassicalMechanism& mech, int m,
                       const std::map<NodeId, Valuation>& vals,
                       bool rv_single_commit) {
      auto view = view_of(vals);
      GlobalProfile truth = truthful_profile(net, vals);
      Outcome classical = mech.run(Bundle::all(m), view);
      Money sw_c = classical.social_welfare(view);
      Money rv_c = classical.total_payment();
      for (MetaKind kind : {MetaKind::kMsn, MetaKind::kMsnM}) {
        Outcome lifted = run_meta(kind, mech, net, truth, m).outcome;
        Money sw = lifted.social_welfare(view);
        Money rv = lifted.total_payment();
        bool want_rv = kind == MetaKind::kMsnM || rv_single_commit;
        if (sw != sw_c || (want_rv && rv != rv_c)) {
          ++res.violations;
          note(res, "instance " + std::to_string(inst) + ": " +
                        meta_name(kind) + "/" + mech.name() + " sw " +
                        std::to_string(sw) + "/" + std::to_string(sw_c) +
                        " rv " + std::to_string(rv) + "/" +
                        std::to_string(rv_c));
        }
      }
    };
    {
      std::map<NodeId, Valuation> vals;
      for (NodeId b : net.buyers) {
        vals.emplace(b,
                     Valuation::table(1, {0, rng.uniform_int(0, 1000000000)}));
      }
      compare(sp, 1, vals, true);
    }
    {
      int m = static_cast<int>(rng.uniform_int(1, 4));
      std::map<NodeId, Valuation> vals;
      for (NodeId b : net.buyers) {
        vals.emplace(b, homogeneous_table(m, rng.uniform_int(0, 1000000000)));
      }
      compare(mpa, m, vals, true);
    }
    {
      // Single-commit lifting can lower a critical payment when a blocking
      // bidder no longer fits the residual supply, so revenue equality is
      // asserted only for the full-commit lifting here.
      int m = static_cast<int>(rng.uniform_int(1, 4));
      std::map<NodeId, Valuation> vals;
      for (NodeId b : net.buyers) {
        uint32_t bits = static_cast<uint32_t>(
            rng.uniform_int(1, (std::int64_t{1} << m) - 1));
        vals.emplace(b, Valuation::single_minded(
                            m, Bundle(bits, m),
                            rng.uniform_int(0, 1000000000)));
      }
      compare(los, m, vals, false);
    }
    {
      // Clarke payments recomputed on residual supply genuinely shift, so
      // revenue equality is asserted only for the full-commit lifting.
      int m = static_cast<int>(rng.uniform_int(1, 4));
      compare(vcg, m, draw_monotone_tables(net, m, 1000000000, rng), false);
    }
    {
      int m = static_cast<int>(rng.uniform_int(1, 4));
      std::map<NodeId, Valuation> vals =
          draw_monotone_tables(net, m, 1000000000, rng);
      CoinRecord coins;
      for (NodeId b : net.buyers) {
        coins.groups[b] = CoinRecord::Group::kFixed;
      }
      coins.base_order = net.buyers;
      rng.shuffle(coins.base_order);
      coins.fixed_item_price = rng.uniform_int(1, 50);
      DnsAuction dns(coins, Ratio{1, 2});
      compare(dns, m, vals, true);
    }
  }
  res.pass = res.violations == 0;
  return res;
}

}  // namespace msn
