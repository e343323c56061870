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

#include "msn/valuation.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <utility>

namespace msn {
namespace {

void check_items(int m) {
  if (m < 0 || m > kMaxItems) throw ContractError("item count out of range");
}

Money floor_scale(Money v, std::int64_t num, std::int64_t den) {
  return static_cast<Money>(static_cast<__int128>(v) * num / den);
}

}  // namespace

Valuation Valuation::zero(int m) {
  check_items(m);
  Valuation v;
  v.kind_ = Kind::kZero;
  v.m_ = m;
  return v;
}

Valuation Valuation::table(int m, std::vector<Money> values) {
  check_items(m);
  if (values.size() != (std::size_t{1} << m))
    throw ContractError("table size must be 2^m");
  if (values[0] != 0) throw ContractError("table not normalized: v(empty) != 0");
  for (std::uint32_t x = 0; x < values.size(); ++x) {
    for (int j = 0; j < m; ++j) {
      if ((x >> j) & 1u) {
        if (values[x] < values[x & ~(1u << j)])
          throw ContractError("table not monotone");
      }
    }
  }
  Valuation v;
  v.kind_ = Kind::kTable;
  v.m_ = m;
  v.table_ = std::move(values);
  return v;
}

Valuation Valuation::single_minded(int m, Bundle demand, Money value) {
  check_items(m);
  if (demand.width != m) throw ContractError("demand width mismatch");
  if (demand.empty()) throw ContractError("single-minded demand must be nonempty");
  if (value < 0) throw ContractError("negative value");
  Valuation v;
  v.kind_ = Kind::kSingleMinded;
  v.m_ = m;
  v.demand_ = demand;
  v.value_ = value;
  return v;
}

Valuation Valuation::coverage(
    int m, int ground_size,
    std::vector<std::vector<std::int32_t>> item_elements) {
  check_items(m);
  if (ground_size < 1) throw ContractError("ground set must be nonempty");
  if (item_elements.size() != static_cast<std::size_t>(m))
    throw ContractError("coverage needs one element set per item");
  Valuation v;
  v.kind_ = Kind::kCoverage;
  v.m_ = m;
  v.ground_size_ = ground_size;
  const std::size_t words = (static_cast<std::size_t>(ground_size) + 63) / 64;
  v.covers_.assign(m, std::vector<std::uint64_t>(words, 0));
  for (int j = 0; j < m; ++j) {
    for (std::int32_t e : item_elements[j]) {
      if (e < 0 || e >= ground_size)
        throw ContractError("coverage element out of range");
      v.covers_[j][e / 64] |= 1ull << (e % 64);
    }
  }
  return v;
}

Valuation Valuation::sqrt_additive(int m, std::vector<std::int64_t> weights,
                                   std::int64_t scale) {
  check_items(m);
  if (weights.size() != static_cast<std::size_t>(m))
    throw ContractError("sqrt valuation needs one weight per item");
  for (std::int64_t w : weights)
    if (w < 0) throw ContractError("negative weight");
  if (scale < 0) throw ContractError("negative scale");
  Valuation v;
  v.kind_ = Kind::kSqrtAdditive;
  v.m_ = m;
  v.weights_ = std::move(weights);
  v.scale_ = scale;
  return v;
}

Money Valuation::value(const Bundle& x) const {
  if (x.width != m_) throw ContractError("bundle width mismatch");
  switch (kind_) {
    case Kind::kZero:
      return 0;
    case Kind::kTable:
      return table_[x.bits];
    case Kind::kSingleMinded:
      return demand_.subset_of(x) ? value_ : 0;
    case Kind::kCoverage: {
      if (x.empty()) return 0;
      const std::size_t words = covers_[0].size();
      Money total = 0;
      for (std::size_t w = 0; w < words; ++w) {
        std::uint64_t acc = 0;
        for (int j = 0; j < m_; ++j)
          if (x.has(j)) acc |= covers_[j][w];
        total += __builtin_popcountll(acc);
      }
      return total;
    }
    case Kind::kSqrtAdditive: {
      std::int64_t sum = 0;
      for (int j = 0; j < m_; ++j)
        if (x.has(j)) sum += weights_[j];
      return static_cast<Money>(
          std::llround(static_cast<double>(scale_) *
                       std::sqrt(static_cast<double>(sum))));
    }
  }
  throw Error("unreachable valuation kind");
}

Bundle Valuation::demand() const {
  if (kind_ != Kind::kSingleMinded)
    throw ContractError("demand() requires a single-minded valuation");
  return demand_;
}

Money Valuation::demand_value() const {
  if (kind_ != Kind::kSingleMinded)
    throw ContractError("demand_value() requires a single-minded valuation");
  return value_;
}

Valuation Valuation::scaled(std::int64_t num, std::int64_t den) const {
  if (num < 0 || den <= 0) throw ContractError("scale requires num >= 0, den > 0");
  switch (kind_) {
    case Kind::kZero:
      return zero(m_);
    case Kind::kTable: {
      std::vector<Money> t(table_.size());
      for (std::size_t i = 0; i < t.size(); ++i)
        t[i] = floor_scale(table_[i], num, den);
      return table(m_, std::move(t));
    }
    case Kind::kSingleMinded:
      return single_minded(m_, demand_, floor_scale(value_, num, den));
    case Kind::kCoverage:
    case Kind::kSqrtAdditive: {
      std::vector<Money> t(std::size_t{1} << m_);
      for (std::uint32_t x = 0; x < t.size(); ++x)
        t[x] = floor_scale(value(Bundle(x, m_)), num, den);
      return table(m_, std::move(t));
    }
  }
  throw Error("unreachable valuation kind");
}

nlohmann::json Valuation::to_json() const {
  nlohmann::json j;
  j["m"] = m_;
  switch (kind_) {
    case Kind::kZero:
      j["kind"] = "zero";
      break;
    case Kind::kTable:
      j["kind"] = "table";
      j["values"] = table_;
      break;
    case Kind::kSingleMinded:
      j["kind"] = "single_minded";
      j["demand"] = demand_.bits;
      j["value"] = value_;
      break;
    case Kind::kCoverage: {
      j["kind"] = "coverage";
      j["ground"] = ground_size_;
      std::vector<std::vector<std::int32_t>> items(m_);
      for (int jj = 0; jj < m_; ++jj)
        for (int e = 0; e < ground_size_; ++e)
          if ((covers_[jj][e / 64] >> (e % 64)) & 1ull) items[jj].push_back(e);
      j["items"] = items;
      break;
    }
    case Kind::kSqrtAdditive:
      j["kind"] = "sqrt_additive";
      j["weights"] = weights_;
      j["scale"] = scale_;
      break;
  }
  return j;
}

Valuation Valuation::from_json(const nlohmann::json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  const int m = j.at("m").get<int>();
  if (kind == "zero") return zero(m);
  if (kind == "table")
    return table(m, j.at("values").get<std::vector<Money>>());
  if (kind == "single_minded")
    return single_minded(m, Bundle(j.at("demand").get<std::uint32_t>(), m),
                         j.at("value").get<Money>());
  if (kind == "coverage")
    return coverage(m, j.at("ground").get<int>(),
                    j.at("items").get<std::vector<std::vector<std::int32_t>>>());
  if (kind == "sqrt_additive")
    return sqrt_additive(m, j.at("weights").get<std::vector<std::int64_t>>(),
                         j.at("scale").get<std::int64_t>());
  throw ParseError("unknown valuation kind: " + kind);
}

bool Valuation::operator==(const Valuation& o) const {
  if (kind_ != o.kind_ || m_ != o.m_) return false;
  switch (kind_) {
    case Kind::kZero:
      return true;
    case Kind::kTable:
      return table_ == o.table_;
    case Kind::kSingleMinded:
      return demand_ == o.demand_ && value_ == o.value_;
    case Kind::kCoverage:
      return ground_size_ == o.ground_size_ && covers_ == o.covers_;
    case Kind::kSqrtAdditive:
      return weights_ == o.weights_ && scale_ == o.scale_;
  }
  return false;
}

Ratio average_per_item(const Valuation& v) {
  const Bundle d = v.demand();
  return Ratio(v.demand_value(), d.count());
}

std::vector<Valuation> gen_single_minded(const SingleMindedConfig& cfg, int n,
                                         Rng& rng) {
  check_items(cfg.m);
  if (cfg.m < 1 || n < 1) throw ContractError("need m >= 1 and n >= 1");
  if (!cfg.normal && (cfg.avg_lo < 0 || cfg.avg_hi < cfg.avg_lo))
    throw ContractError("invalid uniform bounds");
  if (cfg.normal && cfg.stddev <= 0) throw ContractError("invalid stddev");
  std::vector<Valuation> out;
  out.reserve(n);
  const std::uint32_t full = (1u << cfg.m) - 1u;
  for (int i = 0; i < n; ++i) {
    const auto bits = static_cast<std::uint32_t>(rng.uniform_int(1, full));
    Bundle demand(bits, cfg.m);
    Money avg;
    if (cfg.normal) {
      avg = static_cast<Money>(std::llround(rng.normal(cfg.mean, cfg.stddev)));
      if (avg < 0) avg = 0;
    } else {
      avg = rng.uniform_int(cfg.avg_lo, cfg.avg_hi);
    }
    out.push_back(
        Valuation::single_minded(cfg.m, demand, avg * demand.count()));
  }
  return out;
}

std::vector<Valuation> gen_coverage(const CoverageConfig& cfg, int n, Rng& rng) {
  check_items(cfg.m);
  if (cfg.m < 1 || n < 1) throw ContractError("need m >= 1 and n >= 1");
  if (cfg.ground_size < 2) throw ContractError("ground set too small");
  std::vector<Valuation> out;
  out.reserve(n);
  const int g = cfg.ground_size;
  for (int i = 0; i < n; ++i) {
    std::vector<std::vector<std::int32_t>> items(cfg.m);
    for (int j = 0; j < cfg.m; ++j) {
      const int size =
          static_cast<int>(rng.uniform_int(1, std::max(1, g / 2)));
      // Floyd's sampling: `size` distinct elements of [0, g).
      std::set<std::int32_t> chosen;
      for (int t = g - size; t < g; ++t) {
        const auto e = static_cast<std::int32_t>(rng.uniform_int(0, t));
        if (!chosen.insert(e).second) chosen.insert(t);
      }
      items[j].assign(chosen.begin(), chosen.end());
    }
    out.push_back(Valuation::coverage(cfg.m, g, std::move(items)));
  }
  return out;
}

std::vector<Valuation> gen_sqrt_subadditive(const SqrtConfig& cfg, int n,
                                            Rng& rng) {
  check_items(cfg.m);
  if (cfg.m < 1 || n < 1) throw ContractError("need m >= 1 and n >= 1");
  if (cfg.w_lo < 0 || cfg.w_hi < cfg.w_lo || cfg.scale < 0)
    throw ContractError("invalid sqrt generator bounds");
  std::vector<Valuation> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) {
    std::vector<std::int64_t> w(cfg.m);
    for (int j = 0; j < cfg.m; ++j) w[j] = rng.uniform_int(cfg.w_lo, cfg.w_hi);
    out.push_back(Valuation::sqrt_additive(cfg.m, std::move(w), cfg.scale));
  }
  return out;
}

}  // namespace msn
