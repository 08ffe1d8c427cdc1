#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "sumcode/core_model.hpp"

namespace sumcode {

// A label pmf of the form (1/M) * sum of L indicator vectors e_i, where e_i
// has exactly n_i ones (n_i = the i-th x3-partition size). witnesses holds
// the e_i rows when x+y is small enough to store them (<= 12); masses are
// exact either way.
struct LabelFamilyVector {
  int x = 0;
  int y = 0;
  std::vector<Rational> masses;            // length L, denominator M
  std::vector<std::vector<Bit>> witnesses;  // L rows of length L, or empty
};

// Uniform draw of each e_i among the C(L, n_i) binary vectors with n_i ones.
LabelFamilyVector sample_family_member(int x, int y, std::uint64_t seed);

// All distinct mass vectors of the family; exhaustive, x+y <= 2 only
// (the witness product space grows too fast beyond that — sample instead).
std::vector<std::vector<Rational>> enumerate_family(int x, int y);

struct ExhaustiveOracle {};
struct SampledOracle {
  std::uint64_t trials = 100000;
  std::uint64_t seed = 0;
};
using OracleMode = std::variant<ExhaustiveOracle, SampledOracle>;

struct MinEntropyResult {
  double min_entropy = 0.0;
  std::vector<Rational> argmin;
  std::uint64_t candidates = 0;  // distinct members scanned / samples drawn
};

// Brute-force minimum entropy over the family. Exhaustive mode is a true
// minimum (x+y <= 2); sampled mode is one-sided — it certifies that every
// sample stays at or above the clumpy entropy, never global minimality.
MinEntropyResult min_entropy_oracle(int x, int y, const OracleMode& mode);

// Every prefix sum of (clumpy - p.masses) is >= 0; exact rational arithmetic.
bool prefix_dominance_check(const LabelFamilyVector& p);

// One convex-combination atom: the vector with value clumpy[permutation[pos]]
// at position pos, taken with the given weight.
struct DecompositionAtom {
  double weight = 0.0;
  std::vector<std::uint32_t> permutation;
};

struct Decomposition {
  std::vector<DecompositionAtom> atoms;  // weight-descending, ties by perm
  int iterations = 0;
  double residual = 0.0;  // max abs reconstruction error vs the input
};

// Writes p (any component order) as a convex combination of permuted clumpy
// vectors by repeated pair swaps between the first over-filled and first
// under-filled positions. Exact rationals drive the index tests; weights are
// accumulated in doubles and validated by reconstruction. Throws
// DiagnosticFailure when the input is provably outside the family hull
// (lambda outside [0,1], more than L iterations, or residual above 1e-8).
Decomposition decompose_into_permuted_clumpy(const std::vector<Rational>& p,
                                             int x, int y);

// Minimum-entropy pmf on u outcomes with every mass at least c:
// (1 - (u-1)c, c, ..., c).
struct FloorConstrainedPmf {
  double floor_value = 0.0;
  int support = 0;
  std::vector<double> masses;
};

struct FloorResult {
  FloorConstrainedPmf pmf;
  double entropy = 0.0;
};

FloorResult min_entropy_floor(double c, int u);

}
