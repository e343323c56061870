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

#ifndef MSN_VALUATION_HPP_
#define MSN_VALUATION_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "msn/rng.hpp"
#include "msn/types.hpp"

namespace msn {

// Monotone, normalized (v(0) = 0) valuation over bundles of m items.
class Valuation {
 public:
  enum class Kind { kZero, kTable, kSingleMinded, kCoverage, kSqrtAdditive };

  Valuation() : kind_(Kind::kZero), m_(0) {}

  static Valuation zero(int m);
  // `values` indexed by bundle bits; must be normalized and monotone.
  static Valuation table(int m, std::vector<Money> values);
  // v(y) = value iff y is a superset of demand, else 0.
  static Valuation single_minded(int m, Bundle demand, Money value);
  // v(y) = |union of the element sets of the items in y|; submodular.
  static Valuation coverage(int m, int ground_size,
                            std::vector<std::vector<std::int32_t>> item_elements);
  // v(y) = round(scale * sqrt(sum of item weights in y)); subadditive.
  static Valuation sqrt_additive(int m, std::vector<std::int64_t> weights,
                                 std::int64_t scale);

  Money value(const Bundle& x) const;
  Kind kind() const { return kind_; }
  int items() const { return m_; }
  bool is_single_minded() const { return kind_ == Kind::kSingleMinded; }

  // Single-minded accessors; ContractError for other kinds.
  Bundle demand() const;
  Money demand_value() const;

  // floor(v * num / den) pointwise. Coverage and sqrt kinds are
  // materialized into tables (monotonicity survives flooring).
  Valuation scaled(std::int64_t num, std::int64_t den) const;

  nlohmann::json to_json() const;
  static Valuation from_json(const nlohmann::json& j);

  bool operator==(const Valuation& o) const;

 private:
  Kind kind_;
  int m_;
  std::vector<Money> table_;                         // kTable
  Bundle demand_{};                                  // kSingleMinded
  Money value_ = 0;                                  // kSingleMinded
  int ground_size_ = 0;                              // kCoverage
  std::vector<std::vector<std::uint64_t>> covers_;   // kCoverage, bitset per item
  std::vector<std::int64_t> weights_;                // kSqrtAdditive
  std::int64_t scale_ = 0;                           // kSqrtAdditive
};

// Exact per-item average of a single-minded valuation.
Ratio average_per_item(const Valuation& v);

struct SingleMindedConfig {
  int m = 1;
  // Uniform average-per-item draw, inclusive bounds.
  Money avg_lo = 0;
  Money avg_hi = 200000;
  // When set, averages come from a clamped rounded normal instead.
  bool normal = false;
  double mean = 100000.0;
  double stddev = 4000.0;
};

struct CoverageConfig {
  int m = 1;
  int ground_size = 4000;  // item element-set sizes drawn U(1, ground_size/2)
};

struct SqrtConfig {
  int m = 1;
  std::int64_t w_lo = 1000000;
  std::int64_t w_hi = 1000000000;
  std::int64_t scale = 5;
};

// Each generated buyer draws a uniformly random nonempty demand bundle and
// value = average * |demand|.
std::vector<Valuation> gen_single_minded(const SingleMindedConfig& cfg, int n,
                                         Rng& rng);
std::vector<Valuation> gen_coverage(const CoverageConfig& cfg, int n, Rng& rng);
std::vector<Valuation> gen_sqrt_subadditive(const SqrtConfig& cfg, int n,
                                            Rng& rng);

}  // namespace msn

#endif  // MSN_VALUATION_HPP_
