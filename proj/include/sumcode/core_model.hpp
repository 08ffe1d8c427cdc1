#pragma once

#include <compare>
#include <cstdint>
#include <vector>

#include "sumcode/rational.hpp"

namespace sumcode {

using Bit = std::uint8_t;

// k-length binary realization observed at one of the three source nodes.
struct MessageVector {
  std::vector<Bit> bits;

  MessageVector() = default;
  explicit MessageVector(std::vector<Bit> b);

  // Component i is bit i of `mask`; requires 1 <= k <= 64.
  static MessageVector from_mask(std::uint64_t mask, int k);
  std::uint64_t to_mask() const;

  int size() const { return static_cast<int>(bits.size()); }
  auto operator<=>(const MessageVector&) const = default;
};

// Component-wise integer sum of the three messages; each value in {0,1,2,3}.
// x counts components equal to 1, y counts components equal to 2; both are
// recomputed from `values` on construction.
struct SumVector {
  std::vector<std::uint8_t> values;
  int x = 0;
  int y = 0;

  SumVector() = default;
  explicit SumVector(std::vector<std::uint8_t> v);

  int size() const { return static_cast<int>(values.size()); }
  auto operator<=>(const SumVector&) const = default;
};

// L = 2^(x+y) distinct x3 values and M = 3^(x+y) input tuples share a sum
// class; every label probability conditioned on the class is a multiple of 1/M.
struct SumClassConstants {
  int x = 0;
  int y = 0;
  std::int64_t L = 1;
  std::int64_t M = 1;
};

SumVector arithmetic_sum(const MessageVector& x1, const MessageVector& x2,
                         const MessageVector& x3);

// Exact pmf of one sum component under iid uniform sources:
// 1/8 for beta in {0,3} and 3/8 for beta in {1,2}.
Rational sum_component_pmf(int beta);

// Entropy of one sum component in bits: 0.75 * (4 - log2 3) ~ 1.8113.
double sum_entropy_per_component();

SumClassConstants sum_class_constants(int x, int y);
SumClassConstants sum_class_constants(const SumVector& sigma);

// Small integer helpers shared across modules; throw DomainError on overflow.
std::int64_t pow2_i64(int e);
std::int64_t pow3_i64(int e);
std::int64_t binomial_i64(int n, int k);

}
