#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "sumcode/core_model.hpp"

namespace sumcode {

// Sizes of the x3-partitions of the M input tuples sharing a sum class:
// for each u in 0..x+y there are C(x+y, u) partitions of size L / 2^u.
struct PartitionProfile {
  int x = 0;
  int y = 0;
  std::vector<std::int64_t> sizes;  // nonincreasing, sizes[0] == L
  std::int64_t total = 1;           // == M
};

// Entropy-minimizing label distribution for a sum class. masses[j] equals
// (number of partitions of size > j) / M — the column sums of the staircase
// of left-aligned partition indicators — and is nonincreasing in j.
struct ClumpyDistribution {
  int x = 0;
  int y = 0;
  std::vector<Rational> masses;  // length L, denominator M
};

// The x3 value with the largest partition: 0 where sigma in {0,1},
// 1 where sigma in {2,3}.
MessageVector x3_tilde(const SumVector& sigma);

// All input tuples with arithmetic sum sigma, grouped by the value of x3.
// Exhaustive; guarded by the enumeration cap (default k <= 12).
std::map<MessageVector, std::vector<std::pair<MessageVector, MessageVector>>>
partition_by_x3(const SumVector& sigma);

PartitionProfile partition_profile(int x, int y);

ClumpyDistribution clumpy_distribution(int x, int y);

// Closed-form entropy of the clumpy distribution in bits, summed band by band
// over labels of equal repetition count (no materialization of the vector).
double clumpy_entropy(int x, int y);

// (x+y) L/M (log2 3 - 1) [(3/2)^(x+y) - 1/2]; drops the band-size ceiling, so
// it lower-bounds clumpy_entropy.
double clumpy_entropy_closed_lower_bound(int x, int y);

// (log2 3 - 1) k [3/4 - (1/3)(3/4)^k]: the multinomial average of the closed
// lower bound over all sum classes; per component it tends to
// 0.75 (log2 3 - 1) ~ 0.43872 bits.
double conditional_entropy_lower_bound(int k);

struct CapacityBounds {
  std::optional<double> lower;  // achievable 0.8; only claimed for |Z| = 2
  double upper = 0.0;           // 2/2.25 = 8/9, any alphabet
};

// hn_en_slack adds a finite-k H(N)/E N allowance to the upper bound (0 gives
// the limiting 8/9).
CapacityBounds capacity_bounds(int alphabet_size, double hn_en_slack = 0.0);

}
