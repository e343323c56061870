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

#include "msn/lpsolve.hpp"

#include <cstddef>
#include <vector>

namespace msn {
namespace {

// Ascending enumeration of the nonempty submasks of `mask`.
std::vector<std::uint32_t> nonempty_submasks(std::uint32_t mask) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t s = 0;;) {
    s = (s - mask) & mask;
    if (s == 0) break;
    out.push_back(s);
  }
  return out;
}

}  // namespace

ConfigLp build_config_lp(Bundle avail,
                         const std::map<NodeId, const Valuation*>& vals) {
  ConfigLp lp;
  lp.m = avail.width;
  lp.avail = avail;
  const std::vector<std::uint32_t> subs = nonempty_submasks(avail.bits);
  const std::size_t total = vals.size() * subs.size();
  if (total > kMaxLpVars)
    throw ContractError("configuration LP exceeds the variable bound");
  lp.vars.reserve(total);
  for (const auto& [buyer, v] : vals) {
    lp.buyers.push_back(buyer);
    for (std::uint32_t s : subs)
      lp.vars.push_back({buyer, s, v->value(Bundle(s, lp.m))});
  }
  return lp;
}

LpSolution solve(const ConfigLp& lp) {
  const std::size_t nv = lp.vars.size();
  LpSolution sol;
  sol.optimum = 0;
  sol.values.assign(nv, Rat(0));
  if (nv == 0) return sol;

  // Row layout: one <=1 row per buyer, then one <=1 row per available item.
  std::vector<int> item_of;
  for (int j = 0; j < lp.m; ++j)
    if (lp.avail.has(j)) item_of.push_back(j);
  std::map<NodeId, std::size_t> buyer_row;
  for (std::size_t i = 0; i < lp.buyers.size(); ++i)
    buyer_row[lp.buyers[i]] = i;
  const std::size_t rows = lp.buyers.size() + item_of.size();
  const std::size_t cols = nv + rows;  // structural + slack

  // Tableau: row 0 is the objective (minimize -c), rows 1..rows are
  // constraints with the slack identity; last column is the RHS.
  std::vector<std::vector<Rat>> t(rows + 1, std::vector<Rat>(cols + 1, Rat(0)));
  for (std::size_t j = 0; j < nv; ++j) t[0][j] = Rat(-lp.vars[j].value);
  for (std::size_t j = 0; j < nv; ++j) {
    const ConfigVar& var = lp.vars[j];
    t[1 + buyer_row.at(var.buyer)][j] = 1;
    for (std::size_t r = 0; r < item_of.size(); ++r)
      if ((var.bundle_bits >> item_of[r]) & 1u)
        t[1 + lp.buyers.size() + r][j] = 1;
  }
  std::vector<std::size_t> basis(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    t[1 + r][nv + r] = 1;
    t[1 + r][cols] = 1;
    basis[r] = nv + r;
  }

  for (;;) {
    // Bland's rule: entering = lowest-index column with negative cost.
    std::size_t enter = cols;
    for (std::size_t j = 0; j < cols; ++j) {
      if (t[0][j] < 0) {
        enter = j;
        break;
      }
    }
    if (enter == cols) break;
    // Leaving: minimum ratio; ties to the lowest basic variable index.
    std::size_t leave = rows;
    Rat best_ratio;
    for (std::size_t r = 0; r < rows; ++r) {
      if (t[1 + r][enter] <= 0) continue;
      const Rat ratio = t[1 + r][cols] / t[1 + r][enter];
      if (leave == rows || ratio < best_ratio ||
          (ratio == best_ratio && basis[r] < basis[leave])) {
        leave = r;
        best_ratio = ratio;
      }
    }
    if (leave == rows)
      throw Error("configuration LP is unbounded");  // impossible: b = 1 rows
    const Rat pivot = t[1 + leave][enter];
    for (std::size_t j = 0; j <= cols; ++j) t[1 + leave][j] /= pivot;
    for (std::size_t r = 0; r <= rows; ++r) {
      if (r == 1 + leave) continue;
      const Rat f = t[r][enter];
      if (f == 0) continue;
      for (std::size_t j = 0; j <= cols; ++j)
        t[r][j] -= f * t[1 + leave][j];
    }
    basis[leave] = enter;
  }

  sol.optimum = t[0][cols];
  for (std::size_t r = 0; r < rows; ++r)
    if (basis[r] < nv) sol.values[basis[r]] = t[1 + r][cols];

  // Exact certificate. Primal: z >= 0, A z <= 1, c^T z = optimum.
  Rat primal_obj = 0;
  for (std::size_t j = 0; j < nv; ++j) {
    if (sol.values[j] < 0) throw Error("lp certificate: negative variable");
    primal_obj += sol.values[j] * Rat(lp.vars[j].value);
  }
  if (primal_obj != sol.optimum)
    throw Error("lp certificate: objective mismatch");
  std::vector<Rat> row_sum(rows, Rat(0));
  for (std::size_t j = 0; j < nv; ++j) {
    if (sol.values[j] == 0) continue;
    row_sum[buyer_row.at(lp.vars[j].buyer)] += sol.values[j];
    for (std::size_t r = 0; r < item_of.size(); ++r)
      if ((lp.vars[j].bundle_bits >> item_of[r]) & 1u)
        row_sum[lp.buyers.size() + r] += sol.values[j];
  }
  for (const Rat& s : row_sum)
    if (s > 1) throw Error("lp certificate: primal infeasible");
  // Dual: y = objective-row coefficients of the slack columns; needs
  // y >= 0, A^T y >= c, and y^T 1 = optimum (strong duality).
  std::vector<Rat> y(rows);
  Rat dual_obj = 0;
  for (std::size_t r = 0; r < rows; ++r) {
    y[r] = t[0][nv + r];
    if (y[r] < 0) throw Error("lp certificate: negative dual");
    dual_obj += y[r];
  }
  if (dual_obj != sol.optimum)
    throw Error("lp certificate: duality gap");
  for (std::size_t j = 0; j < nv; ++j) {
    Rat covered = y[buyer_row.at(lp.vars[j].buyer)];
    for (std::size_t r = 0; r < item_of.size(); ++r)
      if ((lp.vars[j].bundle_bits >> item_of[r]) & 1u)
        covered += y[lp.buyers.size() + r];
    if (covered < Rat(lp.vars[j].value))
      throw Error("lp certificate: dual infeasible");
  }
  return sol;
}

}  // namespace msn
