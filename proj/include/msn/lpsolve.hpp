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

#ifndef MSN_LPSOLVE_HPP_
#define MSN_LPSOLVE_HPP_

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <map>
#include <vector>

#include "msn/types.hpp"
#include "msn/valuation.hpp"

namespace msn {

using Rat = boost::multiprecision::cpp_rational;

// Fractional-cover relaxation of the winner determination problem:
//   max sum z_{i,S} * v_i(S)
//   s.t. sum_S z_{i,S} <= 1            for every buyer i
//        sum_{(i,S): j in S} z_{i,S} <= 1   for every item j in avail
//        z >= 0
// with one variable per buyer and nonempty S subseteq avail.
struct ConfigVar {
  NodeId buyer;
  std::uint32_t bundle_bits;
  Money value;
};

struct ConfigLp {
  int m = 0;       // item universe width
  Bundle avail;    // items offered
  std::vector<NodeId> buyers;
  std::vector<ConfigVar> vars;
};

inline constexpr std::size_t kMaxLpVars = 50000;

// Enumerates all nonempty sub-bundles of avail per buyer.
// Throws ContractError when the variable count would exceed kMaxLpVars.
ConfigLp build_config_lp(Bundle avail,
                         const std::map<NodeId, const Valuation*>& vals);

struct LpSolution {
  Rat optimum;             // exact optimal objective
  std::vector<Rat> values; // parallel to ConfigLp::vars
};

// Exact primal simplex (Bland's rule) over rationals. Every solve is
// certified by an exactly feasible dual with matching objective.
LpSolution solve(const ConfigLp& lp);

}  // namespace msn

#endif  // MSN_LPSOLVE_HPP_
