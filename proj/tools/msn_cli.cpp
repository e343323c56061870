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

#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "msn/bench.hpp"
#include "msn/meta.hpp"
#include "msn/props.hpp"
#include "msn/suites.hpp"

namespace {

using namespace msn;  // NOLINT

int do_run(const std::string& path, const std::string& out_path) {
  auto t0 = std::chrono::steady_clock::now();
  Scenario s = parse_scenario_file(path);
  std::vector<RunRecord> rows = run_scenario(s);
  auto t1 = std::chrono::steady_clock::now();
  if (out_path.empty()) {
    emit_csv(rows, std::cout);
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot write " << out_path << "\n";
      return 2;
    }
    emit_csv(rows, out);
  }
  auto ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
  std::cerr << "scenario " << s.name << ": " << rows.size() << " rows in "
            << ms << " ms\n";
  return 0;
}

void print_suite(const SuiteResult& r) {
  std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.name
            << ": instances=" << r.instances
            << " violations=" << r.violations
            << " counterexamples=" << r.counterexamples << "\n";
  for (const std::string& n : r.notes) std::cout << "    " << n << "\n";
}

int do_check(const std::string& suite, int instances, std::uint64_t seed) {
  struct Entry {
    const char* name;
    SuiteResult (*fn)(std::uint64_t, int);
    int def;
  };
  const Entry entries[] = {
      {"ic-lifted", run_suite_ic_lifted, 200},
      {"ic-dns-universal", run_suite_ic_dns_universal, 100},
      {"non-sensitivity", run_suite_non_sensitivity, 500},
      {"welfare-bound", run_suite_welfare_bound, 200},
      {"lp", run_suite_lp, 100},
      {"star-equivalence", run_suite_star_equivalence, 100},
  };
  int fails = 0;
  bool known = false;
  for (const Entry& e : entries) {
    if (suite != "all" && suite != e.name) continue;
    known = true;
    SuiteResult r = e.fn(seed, instances > 0 ? instances : e.def);
    print_suite(r);
    if (!r.pass) ++fails;
  }
  if (!known) {
    std::cerr << "error: unknown suite '" << suite
              << "' (try: ic-lifted, ic-dns-universal, non-sensitivity, "
                 "welfare-bound, lp, star-equivalence, all)\n";
    return 2;
  }
  return fails == 0 ? 0 : 1;
}

int do_repro_proposition() {
  RunningExample ex = make_running_example();
  DnsAuction dns(ex.coins, ex.eps);
  bool ok = true;
  auto expect = [&ok](bool cond, const std::string& what) {
    std::cout << (cond ? "  ok: " : "  MISMATCH: ") << what << "\n";
    ok = ok && cond;
  };
  const Valuation& v_a = ex.valuations.at(1);
  const Bundle item1(0b01u, 2);
  const Bundle item2(0b10u, 2);

  MetaResult truthful = run_meta(MetaKind::kMsn, dns, ex.net, ex.truth, ex.m);
  std::cout << "single-commit lifting over dns, truthful reports:\n"
            << trace_to_json(truthful).dump(2) << "\n";
  expect(truthful.trace.size() == 2, "two committing iterations");
  if (truthful.trace.size() == 2) {
    const Outcome& inner1 = truthful.trace[0].inner;
    expect(inner1.allocation(1) == item1 && inner1.payment(1) == 2,
           "iteration 1 sub-run sells item 1 to buyer 1 at 2");
    expect(inner1.allocation(2) == item2 && inner1.payment(2) == 2,
           "iteration 1 sub-run sells item 2 to buyer 2 at 2");
    expect(truthful.trace[0].committed == std::vector<NodeId>{2},
           "buyer 2 (larger neighbourhood) is committed first");
    expect(truthful.trace[1].committed == std::vector<NodeId>{3},
           "buyer 3 is committed second");
  }
  expect(truthful.outcome.allocation(1).empty() &&
             truthful.outcome.payment(1) == 0,
         "buyer 1 ends with nothing");
  expect(v_a.value(truthful.outcome.allocation(1)) -
                 truthful.outcome.payment(1) ==
             0,
         "truthful utility of buyer 1 is 0");
  expect(truthful.outcome.allocation(2) == item2 &&
             truthful.outcome.payment(2) == 2,
         "buyer 2 wins item 2 at 2");
  expect(truthful.outcome.allocation(3) == item1 &&
             truthful.outcome.payment(3) == 2,
         "buyer 3 wins item 1 at 2");

  GlobalProfile dev = ex.truth;
  dev[1].valuation = ex.deviation_a;
  MetaResult deviating = run_meta(MetaKind::kMsn, dns, ex.net, dev, ex.m);
  std::cout << "single-commit lifting, buyer 1 reports the pair at 7:\n"
            << trace_to_json(deviating).dump(2) << "\n";
  expect(deviating.outcome.allocation(1) == Bundle::all(2),
         "buyer 1 now takes both items");
  expect(deviating.outcome.payment(1) == 4, "buyer 1 pays 4");
  expect(v_a.value(deviating.outcome.allocation(1)) -
                 deviating.outcome.payment(1) ==
             1,
         "true utility rises to 1: the misreport pays off");

  Rng rng(7);
  DeviationPolicy policy;
  policy.custom_values.push_back(ex.deviation_a);
  MechanismRunner msn_runner{
      "meta_msn/dns",
      [&dns, &ex](const SocialNetwork& nw, const GlobalProfile& gp) {
        return run_meta(MetaKind::kMsn, dns, nw, gp, ex.m).outcome;
      }};
  auto flagged = check_ic(msn_runner, ex.net, ex.truth, policy, rng);
  expect(flagged.has_value() && flagged->buyer == 1,
         "checker flags the single-commit lifting as manipulable");
  if (flagged) std::cout << "    " << flagged->detail << "\n";

  MetaResult full = run_meta(MetaKind::kMsnM, dns, ex.net, ex.truth, ex.m);
  expect(full.outcome.allocation(1) == item1 && full.outcome.payment(1) == 2,
         "full-commit lifting: buyer 1 keeps item 1 at 2 (utility 2)");
  MechanismRunner msnm_runner{
      "meta_msn_m/dns",
      [&dns, &ex](const SocialNetwork& nw, const GlobalProfile& gp) {
        return run_meta(MetaKind::kMsnM, dns, nw, gp, ex.m).outcome;
      }};
  auto clean = check_ic(msnm_runner, ex.net, ex.truth, policy, rng);
  expect(!clean.has_value(),
         "full-commit lifting passes the same checks with the same coins");

  std::cout << (ok ? "PASS\n" : "FAIL\n");
  return ok ? 0 : 1;
}

int do_repro_los_example() {
  std::map<NodeId, Valuation> vals;
  vals.emplace(1, Valuation::single_minded(3, Bundle(0b011u, 3), 10));
  vals.emplace(2, Valuation::single_minded(3, Bundle(0b010u, 3), 4));
  vals.emplace(3, Valuation::single_minded(3, Bundle(0b100u, 3), 3));
  ValuationView view;
  for (const auto& [id, v] : vals) view[id] = &v;
  bool ok = true;
  auto expect = [&ok](bool cond, const std::string& what) {
    std::cout << (cond ? "  ok: " : "  MISMATCH: ") << what << "\n";
    ok = ok && cond;
  };
  for (auto rule : {LosAuction::Payment::kCritical,
                    LosAuction::Payment::kNextInSequence}) {
    LosAuction los(rule);
    Outcome out = los.run(Bundle::all(3), view);
    std::cout << (rule == LosAuction::Payment::kCritical
                      ? "critical payment rule:\n"
                      : "next-in-sequence payment rule:\n");
    for (const auto& [id, entry] : out.entries) {
      std::cout << "  buyer " << id << " gets " << entry.first.to_string()
                << " pays " << entry.second << "\n";
    }
    expect(out.allocation(1) == Bundle(0b011u, 3) && out.payment(1) == 8,
           "buyer 1 wins items {1,2} and pays 8");
    expect(out.allocation(2).empty(), "buyer 2 is skipped");
    expect(out.allocation(3) == Bundle(0b100u, 3) && out.payment(3) == 0,
           "buyer 3 wins item 3 and pays 0");
    expect(out.total_payment() == 8, "revenue 8");
    expect(out.social_welfare(view) == 13, "welfare 13");
  }
  std::cout << (ok ? "PASS\n" : "FAIL\n");
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"social-network auction lifting toolkit"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string out_path;
  CLI::App* run_cmd =
      app.add_subcommand("run", "execute a scenario file and emit CSV");
  run_cmd->add_option("scenario", scenario_path, "scenario file")->required();
  run_cmd->add_option("-o,--output", out_path, "CSV path (default stdout)");

  std::string suite;
  int instances = 0;
  std::uint64_t seed = 1;
  CLI::App* check_cmd = app.add_subcommand("check", "run a property suite");
  check_cmd->add_option("suite", suite, "suite name or 'all'")->required();
  check_cmd->add_option("--seeds", instances,
                        "instance count (0 = suite default)");
  check_cmd->add_option("--seed", seed, "base RNG seed");

  std::string target;
  CLI::App* repro_cmd =
      app.add_subcommand("repro", "replay a pinned worked example");
  repro_cmd->add_option("target", target, "proposition | los-example")
      ->required()
      ->check(CLI::IsMember({"proposition", "los-example"}));

  CLI11_PARSE(app, argc, argv);
  try {
    if (run_cmd->parsed()) return do_run(scenario_path, out_path);
    if (check_cmd->parsed()) return do_check(suite, instances, seed);
    if (target == "proposition") return do_repro_proposition();
    return do_repro_los_example();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
