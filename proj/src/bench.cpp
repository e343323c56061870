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

#include "msn/bench.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <memory>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "msn/rng.hpp"
#include "msn/valuation.hpp"

namespace msn {
namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, ',')) {
    part = trim(part);
    if (!part.empty()) out.push_back(part);
  }
  return out;
}

[[noreturn]] void fail(int line, const std::string& what) {
  throw ParseError("scenario line " + std::to_string(line) + ": " + what);
}

std::int64_t parse_int(int line, const std::string& v) {
  try {
    std::size_t used = 0;
    std::int64_t x = std::stoll(v, &used);
    if (used != v.size()) fail(line, "trailing characters in '" + v + "'");
    return x;
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception&) {
    fail(line, "expected an integer, got '" + v + "'");
  }
}

double parse_double(int line, const std::string& v) {
  try {
    std::size_t used = 0;
    double x = std::stod(v, &used);
    if (used != v.size()) fail(line, "trailing characters in '" + v + "'");
    return x;
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception&) {
    fail(line, "expected a number, got '" + v + "'");
  }
}

Ratio parse_fraction(int line, const std::string& v) {
  std::size_t slash = v.find('/');
  if (slash == std::string::npos) fail(line, "expected a fraction like 1/100");
  std::int64_t num = parse_int(line, trim(v.substr(0, slash)));
  std::int64_t den = parse_int(line, trim(v.substr(slash + 1)));
  if (num < 0 || den <= 0) fail(line, "fraction out of range");
  return Ratio{num, den};
}

const std::set<std::string> kMechNames = {"second_price", "mpa", "los",
                                          "brute_vcg", "dns"};
const std::set<std::string> kMetaNames = {"msn", "msnm"};
const std::set<std::string> kGraphNames = {"preferential", "erdos", "bounded"};
const std::set<std::string> kValNames = {"single_minded", "coverage", "sqrt"};

struct MechHandle {
  std::unique_ptr<ClassicalMechanism> owner;
  const ClassicalMechanism* mech = nullptr;
};

MechHandle make_mechanism(const std::string& name, const Scenario& s,
                          const std::vector<NodeId>& buyers, Rng& coin_rng) {
  MechHandle h;
  if (name == "second_price") {
    h.owner = std::make_unique<SecondPriceAuction>();
  } else if (name == "mpa") {
    h.owner = std::make_unique<MultiUnitPriceAuction>();
  } else if (name == "los") {
    h.owner = std::make_unique<LosAuction>();
  } else if (name == "brute_vcg") {
    h.owner = std::make_unique<BruteVcgAuction>();
  } else if (name == "dns") {
    CoinRecord coins;
    double p_sec = 1.0 - static_cast<double>(s.eps.num) / s.eps.den;
    double p_fixed = (1.0 - p_sec) / 2.0;
    for (NodeId b : buyers) {
      double u = coin_rng.uniform01();
      coins.groups[b] = u < p_sec ? CoinRecord::Group::kSecPrice
                        : u < p_sec + p_fixed ? CoinRecord::Group::kFixed
                                              : CoinRecord::Group::kStat;
    }
    coins.base_order = buyers;
    coin_rng.shuffle(coins.base_order);
    h.owner = std::make_unique<DnsAuction>(coins, s.eps);
  } else {
    throw Error("unknown mechanism '" + name + "'");
  }
  h.mech = h.owner.get();
  return h;
}

std::string pad(int value, int width) {
  std::string s = std::to_string(value);
  while (static_cast<int>(s.size()) < width) s.insert(s.begin(), '0');
  return s;
}

}  // namespace

Scenario parse_scenario(std::istream& in) {
  Scenario s;
  std::set<std::string> seen;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::size_t hash = raw.find('#');
    if (hash != std::string::npos) raw = raw.substr(0, hash);
    std::string line = trim(raw);
    if (line.empty()) continue;
    std::size_t eq = line.find('=');
    if (eq == std::string::npos) fail(line_no, "expected key=value");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty()) fail(line_no, "empty key");
    if (!seen.insert(key).second) fail(line_no, "duplicate key '" + key + "'");
    if (key == "name") {
      if (value.empty()) fail(line_no, "empty name");
      s.name = value;
    } else if (key == "seed") {
      s.seed = static_cast<std::uint64_t>(parse_int(line_no, value));
    } else if (key == "repeats") {
      s.repeats = static_cast<int>(parse_int(line_no, value));
      if (s.repeats < 1) fail(line_no, "repeats must be positive");
    } else if (key == "n") {
      s.n = static_cast<int>(parse_int(line_no, value));
      if (s.n < 1) fail(line_no, "n must be positive");
    } else if (key == "graph") {
      if (!kGraphNames.count(value)) fail(line_no, "unknown graph '" + value + "'");
      s.graph = value;
    } else if (key == "edge_p") {
      s.edge_p = parse_double(line_no, value);
      if (s.edge_p < 0.0 || s.edge_p > 1.0) fail(line_no, "edge_p outside [0,1]");
    } else if (key == "attach_k") {
      s.attach_k = static_cast<int>(parse_int(line_no, value));
      if (s.attach_k < 1) fail(line_no, "attach_k must be positive");
    } else if (key == "max_out") {
      s.max_out = static_cast<int>(parse_int(line_no, value));
      if (s.max_out < 1) fail(line_no, "max_out must be positive");
    } else if (key == "item_counts") {
      s.item_counts.clear();
      for (const std::string& part : split_list(value)) {
        int m = static_cast<int>(parse_int(line_no, part));
        if (m < 1 || m > kMaxItems) fail(line_no, "item count out of range");
        s.item_counts.push_back(m);
      }
      if (s.item_counts.empty()) fail(line_no, "empty item_counts");
    } else if (key == "mechanisms") {
      s.mechanisms = split_list(value);
      if (s.mechanisms.empty()) fail(line_no, "empty mechanisms");
      for (const std::string& name : s.mechanisms) {
        if (!kMechNames.count(name)) fail(line_no, "unknown mechanism '" + name + "'");
      }
    } else if (key == "metas") {
      s.metas = split_list(value);
      for (const std::string& name : s.metas) {
        if (!kMetaNames.count(name)) fail(line_no, "unknown meta '" + name + "'");
      }
    } else if (key == "valuation") {
      if (!kValNames.count(value)) fail(line_no, "unknown valuation '" + value + "'");
      s.valuation = value;
    } else if (key == "avg_lo") {
      s.avg_lo = parse_int(line_no, value);
      if (s.avg_lo < 0) fail(line_no, "avg_lo must be nonnegative");
    } else if (key == "avg_hi") {
      s.avg_hi = parse_int(line_no, value);
      if (s.avg_hi < 0) fail(line_no, "avg_hi must be nonnegative");
    } else if (key == "eps") {
      s.eps = parse_fraction(line_no, value);
      if (!(s.eps.num > 0 && s.eps.num < s.eps.den)) {
        fail(line_no, "eps must lie strictly between 0 and 1");
      }
    } else {
      fail(line_no, "unknown key '" + key + "'");
    }
  }
  if (s.avg_lo > s.avg_hi) throw ParseError("scenario: avg_lo exceeds avg_hi");
  return s;
}

Scenario parse_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open scenario file " + path);
  return parse_scenario(in);
}

Outcome run_first_ring(const ClassicalMechanism& mech, const SocialNetwork& net,
                       const GlobalProfile& profile, int m) {
  Valuation null_val = Valuation::zero(m);
  ValuationView view;
  for (NodeId b : net.out(net.seller)) {
    if (!net.is_buyer(b)) continue;
    auto it = profile.find(b);
    view[b] = it == profile.end() ? &null_val : &it->second.valuation;
  }
  return mech.run(Bundle::all(m), view);
}

Outcome run_all_buyers(const ClassicalMechanism& mech, const SocialNetwork& net,
                       const GlobalProfile& profile, int m) {
  Valuation null_val = Valuation::zero(m);
  ValuationView view;
  for (NodeId b : net.buyers) {
    auto it = profile.find(b);
    view[b] = it == profile.end() ? &null_val : &it->second.valuation;
  }
  return mech.run(Bundle::all(m), view);
}

std::vector<RunRecord> run_scenario(const Scenario& s) {
  std::vector<RunRecord> rows;
  for (int r = 0; r < s.repeats; ++r) {
    Rng rep = Rng(s.seed).fork("repeat").fork(static_cast<uint64_t>(r));
    Rng graph_rng = rep.fork("graph");
    SocialNetwork net;
    if (s.graph == "preferential") {
      net = gen_preferential_attachment(s.n, s.attach_k, graph_rng);
    } else if (s.graph == "erdos") {
      net = gen_erdos_renyi(s.n, s.edge_p, graph_rng);
    } else if (s.graph == "bounded") {
      net = gen_bounded_outdeg(s.n, s.max_out, graph_rng);
    } else {
      throw Error("unknown graph '" + s.graph + "'");
    }
    for (int m : s.item_counts) {
      Rng val_rng = rep.fork("vals").fork(static_cast<uint64_t>(m));
      std::vector<Valuation> drawn;
      if (s.valuation == "single_minded") {
        drawn = gen_single_minded(SingleMindedConfig{m, s.avg_lo, s.avg_hi},
                                  s.n, val_rng);
      } else if (s.valuation == "coverage") {
        drawn = gen_coverage(CoverageConfig{m}, s.n, val_rng);
      } else if (s.valuation == "sqrt") {
        drawn = gen_sqrt_subadditive(SqrtConfig{m}, s.n, val_rng);
      } else {
        throw Error("unknown valuation '" + s.valuation + "'");
      }
      std::map<NodeId, Valuation> vals;
      for (int i = 0; i < s.n; ++i) vals.emplace(net.buyers[i], drawn[i]);
      GlobalProfile truth = truthful_profile(net, vals);
      ValuationView full_view;
      for (const auto& [id, v] : vals) full_view[id] = &v;
      int first_ring = 0;
      for (NodeId b : net.out(net.seller)) {
        if (net.is_buyer(b)) ++first_ring;
      }
      for (const std::string& mech_name : s.mechanisms) {
        Rng coin_rng = rep.fork("coins").fork(static_cast<uint64_t>(m));
        MechHandle handle = make_mechanism(mech_name, s, net.buyers, coin_rng);
        auto emit = [&](const std::string& label, const Outcome& out,
                        int joined, int iterations) {
          RunRecord rec;
          rec.run_id = s.name + "/r" + pad(r, 3) + "/m" + pad(m, 2) + "/" +
                       label;
          rec.seller = net.seller;
          rec.mechanism = label;
          rec.m = m;
          rec.sw = out.social_welfare(full_view);
          rec.revenue = out.total_payment();
          rec.joined = joined;
          rec.winners = static_cast<int>(out.winners().size());
          rec.iterations = iterations;
          rec.ms = 0;
          rows.push_back(std::move(rec));
        };
        emit("first/" + mech_name,
             run_first_ring(*handle.mech, net, truth, m), first_ring, 0);
        emit("all/" + mech_name, run_all_buyers(*handle.mech, net, truth, m),
             static_cast<int>(net.buyers.size()), 0);
        for (const std::string& meta : s.metas) {
          MetaKind kind = meta == "msn" ? MetaKind::kMsn : MetaKind::kMsnM;
          MetaResult mr = run_meta(kind, *handle.mech, net, truth, m);
          emit(meta + "/" + mech_name, mr.outcome,
               static_cast<int>(mr.joined.size()), mr.iterations());
        }
      }
    }
  }
  return rows;
}

void emit_csv(const std::vector<RunRecord>& rows, std::ostream& out) {
  std::vector<const RunRecord*> sorted;
  sorted.reserve(rows.size());
  for (const RunRecord& r : rows) sorted.push_back(&r);
  std::sort(sorted.begin(), sorted.end(),
            [](const RunRecord* a, const RunRecord* b) {
              return a->run_id < b->run_id;
            });
  out << "run_id,seller,mechanism,m,sw,revenue,joined,winners,iterations,ms\n";
  for (const RunRecord* r : sorted) {
    out << r->run_id << ',' << r->seller << ',' << r->mechanism << ','
        << r->m << ',' << r->sw << ',' << r->revenue << ',' << r->joined
        << ',' << r->winners << ',' << r->iterations << ',' << r->ms << '\n';
  }
}

}  // namespace msn
