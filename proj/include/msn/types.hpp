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

#ifndef MSN_TYPES_HPP_
#define MSN_TYPES_HPP_

#include <cstdint>
#include <stdexcept>
#include <string>

namespace msn {

// Monetary amounts are integral minor units; all comparisons are exact.
using Money = std::int64_t;
using NodeId = std::int32_t;

inline constexpr int kMaxItems = 20;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Violated precondition of a documented operation contract.
class ContractError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

// Item bundle over a fixed item count, item j <-> bit j.
struct Bundle {
  std::uint32_t bits = 0;
  std::int32_t width = 0;

  Bundle() = default;
  Bundle(std::uint32_t b, std::int32_t w) : bits(b), width(w) {
    if (w < 0 || w > kMaxItems) throw ContractError("bundle width out of range");
    if (w < 32 && (b >> w) != 0) throw ContractError("bundle bits exceed width");
  }

  static Bundle none(std::int32_t w) { return Bundle(0, w); }
  static Bundle all(std::int32_t w) {
    return Bundle(w == 0 ? 0u : ((1u << w) - 1u), w);
  }

  int count() const { return __builtin_popcount(bits); }
  bool empty() const { return bits == 0; }
  bool has(int item) const { return ((bits >> item) & 1u) != 0; }

  bool subset_of(const Bundle& o) const {
    check_same_width(o);
    return (bits & ~o.bits) == 0;
  }
  bool intersects(const Bundle& o) const {
    check_same_width(o);
    return (bits & o.bits) != 0;
  }
  Bundle operator|(const Bundle& o) const {
    check_same_width(o);
    return Bundle(bits | o.bits, width);
  }
  Bundle operator&(const Bundle& o) const {
    check_same_width(o);
    return Bundle(bits & o.bits, width);
  }
  // Set difference.
  Bundle operator-(const Bundle& o) const {
    check_same_width(o);
    return Bundle(bits & ~o.bits, width);
  }
  bool operator==(const Bundle& o) const = default;

  void check_same_width(const Bundle& o) const {
    if (width != o.width) throw ContractError("bundle width mismatch");
  }

  std::string to_string() const {
    std::string s = "(";
    for (int j = 0; j < width; ++j) {
      if (j) s += ',';
      s += has(j) ? '1' : '0';
    }
    s += ')';
    return s;
  }
};

// Exact nonnegative rational with small operands; used for per-item
// averages and for eps. Comparisons cross-multiply in 128 bits.
struct Ratio {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Ratio() = default;
  Ratio(std::int64_t n, std::int64_t d) : num(n), den(d) {
    if (d <= 0 || n < 0) throw ContractError("ratio requires n >= 0, d > 0");
    normalize();
  }
  Ratio(std::int64_t n) : num(n), den(1) {  // NOLINT(runtime/explicit)
    if (n < 0) throw ContractError("ratio requires n >= 0");
  }

  void normalize() {
    std::int64_t a = num, b = den;
    while (b) {
      std::int64_t t = a % b;
      a = b;
      b = t;
    }
    if (a > 1) {
      num /= a;
      den /= a;
    }
  }

  friend bool operator==(const Ratio& x, const Ratio& y) {
    return static_cast<__int128>(x.num) * y.den ==
           static_cast<__int128>(y.num) * x.den;
  }
  friend bool operator<(const Ratio& x, const Ratio& y) {
    return static_cast<__int128>(x.num) * y.den <
           static_cast<__int128>(y.num) * x.den;
  }
  friend bool operator>(const Ratio& x, const Ratio& y) { return y < x; }
  friend bool operator<=(const Ratio& x, const Ratio& y) { return !(y < x); }
  friend bool operator>=(const Ratio& x, const Ratio& y) { return !(x < y); }

  std::string to_string() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
  }
};

}  // namespace msn

#endif  // MSN_TYPES_HPP_
