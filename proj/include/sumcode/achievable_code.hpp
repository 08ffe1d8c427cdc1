#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "sumcode/core_model.hpp"

namespace sumcode {

// Finite string over the binary code alphabet transmitted on one edge.
struct CodeWord {
  std::vector<Bit> symbols;

  CodeWord() = default;
  explicit CodeWord(std::vector<Bit> s);

  int length() const { return static_cast<int>(symbols.size()); }
  std::string to_string() const;
  static CodeWord from_string(std::string_view s);
  auto operator<=>(const CodeWord&) const = default;
};

// Half-block of pairwise component sums; alphabet {0,1,2}.
struct TernaryBlock {
  std::vector<std::uint8_t> values;

  TernaryBlock() = default;
  explicit TernaryBlock(std::vector<std::uint8_t> v);

  int size() const { return static_cast<int>(values.size()); }
  int ones() const;
  auto operator<=>(const TernaryBlock&) const = default;
};

// Code-length bookkeeping for one edge. A typical half-block is sent as its
// rank inside the typical set (typical_code_len bits); anything else is sent
// as its base-3 value (atypical_code_len bits). One flag bit tells the
// decoder which case it is in.
struct TypicalityParams {
  double epsilon = 0.05;
  int half_len = 0;
  double source_entropy = 1.5;  // bits per component of a pairwise sum
  int typical_code_len = 0;     // ceil(half_len * (1.5 + epsilon))
  int atypical_code_len = 0;    // ceil(half_len * log2 3)

  static TypicalityParams make(int k, double epsilon);
};

enum class Half { First, Second };
enum class Role { S1, S2 };

struct StoppingOutcome {
  std::size_t stopping_time = 0;  // symbol pairs read before deciding
  SumVector sum;
};

TernaryBlock pairwise_sum_half(const MessageVector& x, const MessageVector& x3,
                               Half half);

// Weak typicality of the block under the pairwise-sum pmf (1/4, 1/2, 1/4):
// the empirical -log2(probability)/n must be within epsilon of 1.5 bits.
bool is_weakly_typical(const TernaryBlock& block, const TypicalityParams& params);

// Edge codeword: [flag][k/2 uncoded own bits][payload for the coded block].
// Role S1 codes the first half of x_own + x3 and sends the second half of
// x_own uncoded; role S2 mirrors this (uncoded first half, coded second half).
CodeWord encode_edge(const MessageVector& x_own, const MessageVector& x3,
                     Role role, const TypicalityParams& params);

// Reads 1 + k/2 symbols per edge, then exactly the payload each flag
// announces; trailing symbols beyond that are ignored (the stopped stream may
// keep running). stopping_time = 1 + k/2 + max of the two payload lengths.
StoppingOutcome decode(const CodeWord& z1, const CodeWord& z2,
                       const TypicalityParams& params);

struct ExactMode {};
struct MonteCarloMode {
  std::uint64_t trials = 100000;
  std::uint64_t seed = 0;
};
using StoppingEvalMode = std::variant<ExactMode, MonteCarloMode>;

struct StoppingTimeEstimate {
  double expected_n = 0.0;
  double rate = 0.0;             // k / expected_n for the binary alphabet
  double pr_edge_typical = 0.0;  // one edge's coded block is typical
  double pr_both_typical = 0.0;
};

// Exact mode evaluates the stopping-time law in closed form (the two edges'
// typicality events are independent and depend only on the ones-count of the
// coded block); Monte-Carlo samples input tuples with per-trial derived seeds.
StoppingTimeEstimate expected_stopping_time(int k, const TypicalityParams& params,
                                            const StoppingEvalMode& mode);

// Exact probability that one edge's coded half-block is typical
// (binomial tail with denominator 2^half_len).
double exact_edge_typicality_probability(const TypicalityParams& params);

struct ZeroErrorReport {
  bool pass = false;
  std::uint64_t tuples_checked = 0;
  bool injectivity_ok = false;
  std::optional<std::array<MessageVector, 3>> counterexample;
};

// Exhaustive check over all 2^(3k) input tuples: decode(encode) must equal
// the arithmetic sum, and for each fixed x3 the per-edge encoder must be
// injective in its own source.
ZeroErrorReport verify_zero_error(int k, const TypicalityParams& params);

// Exact distribution of the stopping time under iid uniform inputs,
// probabilities with denominator 2^k.
std::map<std::size_t, Rational> exhaustive_stopping_histogram(
    int k, const TypicalityParams& params);

}
