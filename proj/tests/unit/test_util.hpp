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

#ifndef MSN_TESTS_UNIT_TEST_UTIL_HPP_
#define MSN_TESTS_UNIT_TEST_UTIL_HPP_

#include <algorithm>
#include <map>
#include <vector>

#include "msn/classical.hpp"
#include "msn/rng.hpp"
#include "msn/types.hpp"
#include "msn/valuation.hpp"

namespace msn::test {

inline ValuationView view_of(const std::map<NodeId, Valuation>& vals) {
  ValuationView view;
  for (const auto& [id, v] : vals) view[id] = &v;
  return view;
}

// Random normalized monotone table with entries in [0, hi].
inline Valuation random_monotone_table(int m, Money hi, Rng& rng) {
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

}  // namespace msn::test

#endif  // MSN_TESTS_UNIT_TEST_UTIL_HPP_
