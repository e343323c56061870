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
//
// Release gate: every check below must print [PASS] within its budget.
// Budgets are wall-clock milliseconds, pinned here and nowhere else.

#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "msn/bench.hpp"
#include "msn/meta.hpp"
#include "msn/props.hpp"
#include "msn/suites.hpp"

namespace {

using namespace msn;

struct Gate {
  int id;
  const char* what;
  long budget_ms;
  std::function<bool(std::string&)> run;
};

bool from_suite(const SuiteResult& res, std::string& detail) {
  std::ostringstream os;
  os << "instances=" << res.instances << " violations=" << res.violations
     << " counterexamples=" << res.counterexamples;
  for (const std::string& n : res.notes) os << "\n        note: " << n;
  detail = os.str();
  return res.pass;
}

// The two-item worked example: truthful trace, the profitable overbid under
// the single-commit lifting, and its disappearance under the full commit.
bool criterion1(std::string& detail) {
  RunningExample ex = make_running_example();
  DnsAuction dns(ex.coins, ex.eps);
  const Bundle item1(0b01u, 2), item2(0b10u, 2);
  bool ok = true;
  auto expect = [&](bool cond, const char* what) {
    if (!cond) {
      ok = false;
      detail += std::string(detail.empty() ? "" : "; ") + what;
    }
  };

  MetaResult t = run_meta(MetaKind::kMsn, dns, ex.net, ex.truth, ex.m);
  expect(t.trace.size() == 2, "truthful single-commit trace length");
  expect(t.trace.size() == 2 && t.trace[0].committed == std::vector<NodeId>{2},
         "first commit");
  expect(t.outcome.allocation(1).empty(), "buyer 1 empty-handed");
  expect(t.outcome.allocation(2) == item2 && t.outcome.payment(2) == 2,
         "buyer 2 outcome");
  expect(t.outcome.allocation(3) == item1 && t.outcome.payment(3) == 2,
         "buyer 3 outcome");
  expect(t.exhausted == std::set<NodeId>{1}, "exhausted set");

  GlobalProfile dev = ex.truth;
  dev[1].valuation = ex.deviation_a;
  MetaResult lied = run_meta(MetaKind::kMsn, dns, ex.net, dev, ex.m);
  expect(lied.outcome.allocation(1) == Bundle::all(2) &&
             lied.outcome.payment(1) == 4,
         "overbid grabs the pair for 4");

  MetaResult full = run_meta(MetaKind::kMsnM, dns, ex.net, ex.truth, ex.m);
  expect(full.outcome.allocation(1) == item1 && full.outcome.payment(1) == 2,
         "full commit keeps buyer 1 truthful outcome");

  DeviationPolicy policy;
  policy.custom_values.push_back(ex.deviation_a);
  auto lifted = [&](MetaKind kind) {
    return MechanismRunner{
        meta_name(kind),
        [kind, &dns, &ex](const SocialNetwork& net, const GlobalProfile& gp) {
          return run_meta(kind, dns, net, gp, ex.m).outcome;
        }};
  };
  Rng r1(7);
  auto hit = check_ic(lifted(MetaKind::kMsn), ex.net, ex.truth, policy, r1);
  expect(hit.has_value() && hit->buyer == 1,
         "single-commit deviation is flagged");
  Rng r2(7);
  expect(!check_ic(lifted(MetaKind::kMsnM), ex.net, ex.truth, policy, r2)
              .has_value(),
         "full commit survives the same grid");
  return ok;
}

Scenario scale_scenario() {
  Scenario s;
  s.name = "scale";
  s.seed = 20260815;
  s.repeats = 20;
  s.n = 1000;
  s.graph = "preferential";
  s.attach_k = 3;
  s.item_counts = {10, 15, 20};
  s.mechanisms = {"los"};
  s.metas = {"msn", "msnm"};
  s.valuation = "single_minded";
  return s;
}

// Aggregate welfare and revenue per (m, label); repeats share the label so
// comparing sums compares means.
bool criterion7(std::string& detail) {
  std::vector<RunRecord> rows = run_scenario(scale_scenario());
  std::map<std::pair<int, std::string>, std::pair<Money, Money>> agg;
  for (const RunRecord& r : rows) {
    auto& [sw, rv] = agg[{r.m, r.mechanism}];
    sw += r.sw;
    rv += r.revenue;
  }
  bool ok = true;
  std::ostringstream os;
  for (int m : {10, 15, 20}) {
    auto first = agg.at({m, "first/los"});
    auto all = agg.at({m, "all/los"});
    auto msn = agg.at({m, "msn/los"});
    auto msnm = agg.at({m, "msnm/los"});
    const std::vector<std::pair<std::string, std::pair<Money, Money>>>
        liftings = {{"msn", msn}, {"msnm", msnm}};
    for (const auto& [label, lifted] : liftings) {
      if (!(first.first <= lifted.first && lifted.first <= all.first)) {
        ok = false;
        os << " m=" << m << " " << label << " welfare outside [first, all];";
      }
      if (!(first.second <= lifted.second && lifted.second <= all.second)) {
        ok = false;
        os << " m=" << m << " " << label << " revenue outside [first, all];";
      }
    }
    os << "\n        m=" << m << " sw first/msn/msnm/all=" << first.first
       << "/" << msn.first << "/" << msnm.first << "/" << all.first
       << " rv=" << first.second << "/" << msn.second << "/" << msnm.second
       << "/" << all.second;
  }
  detail = os.str();
  return ok;
}

bool criterion8(std::string& detail) {
  Scenario s;
  s.name = "repeat";
  s.seed = 99;
  s.repeats = 3;
  s.n = 40;
  s.graph = "erdos";
  s.edge_p = 0.15;
  s.item_counts = {1, 2, 3};
  s.mechanisms = {"los", "dns"};
  s.valuation = "single_minded";
  std::ostringstream a, b;
  emit_csv(run_scenario(s), a);
  emit_csv(run_scenario(s), b);
  std::ostringstream os;
  os << "bytes=" << a.str().size();
  detail = os.str();
  return !a.str().empty() && a.str() == b.str() &&
         a.str().rfind("run_id,seller,", 0) == 0;
}

}  // namespace

int main() {
  const std::vector<Gate> gates = {
      {1, "worked example reproduces bit-exactly", 1000, criterion1},
      {2,
       "lifted second_price/mpa/los keep truthfulness, rationality and "
       "nonnegative revenue on 200 markets",
       120000,
       [](std::string& d) { return from_suite(run_suite_ic_lifted(1, 200), d); }},
      {3,
       "full-commit lifted draw-and-sell is clean on 100 markets",
       300000,
       [](std::string& d) {
         return from_suite(run_suite_ic_dns_universal(1, 100), d);
       }},
      {4,
       "non-sensitivity holds for los/second_price/mpa and fails for "
       "draw-and-sell (500 markets each)",
       120000,
       [](std::string& d) {
         return from_suite(run_suite_non_sensitivity(1, 500), d);
       }},
      {5,
       "lifting never falls below the direct-neighbour exact optimum on 200 "
       "markets",
       120000,
       [](std::string& d) {
         return from_suite(run_suite_welfare_bound(1, 200), d);
       }},
      {6,
       "fractional cover optimum bounds the integral optimum; pair-cover "
       "solves to exactly 3/2 (100 programs)",
       60000,
       [](std::string& d) { return from_suite(run_suite_lp(1, 100), d); }},
      {7,
       "1000-buyer scale run keeps both liftings between the first-ring and "
       "all-buyer baselines",
       300000, criterion7},
      {8, "same seed twice yields byte-identical CSV", 60000, criterion8},
      {9,
       "star networks make the liftings match the classical run on 100 "
       "markets",
       120000,
       [](std::string& d) {
         return from_suite(run_suite_star_equivalence(1, 100), d);
       }},
  };

  int failures = 0;
  for (const Gate& g : gates) {
    std::string detail;
    bool ok = false;
    auto start = std::chrono::steady_clock::now();
    try {
      ok = g.run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - start)
                  .count();
    if (ms > g.budget_ms) {
      ok = false;
      detail += (detail.empty() ? "" : "; ") + std::string("over budget");
    }
    std::cout << (ok ? "[PASS]" : "[FAIL]") << " criterion " << g.id << ": "
              << g.what << " (" << ms << " ms, budget " << g.budget_ms
              << " ms)";
    if (!detail.empty()) std::cout << "\n        " << detail;
    std::cout << "\n";
    if (!ok) ++failures;
  }
  std::cout << "acceptance: " << (9 - failures) << "/9 criteria passed\n";
  return failures;
}
