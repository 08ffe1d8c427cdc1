#include "sumcode/achievable_code.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

#include "sumcode/config.hpp"
#include "sumcode/errors.hpp"
#include "sumcode/rng.hpp"

namespace sumcode {

using boost::multiprecision::cpp_int;

CodeWord::CodeWord(std::vector<Bit> s) : symbols(std::move(s)) {
  for (Bit v : symbols)
    if (v > 1) throw DomainError("codeword symbol outside {0,1}");
}

std::string CodeWord::to_string() const {
  std::string s;
  s.reserve(symbols.size());
  for (Bit v : symbols) s.push_back(v ? '1' : '0');
  return s;
}

CodeWord CodeWord::from_string(std::string_view s) {
  std::vector<Bit> symbols;
  symbols.reserve(s.size());
  for (char c : s) {
    if (c != '0' && c != '1') throw DomainError("codeword string must be over '0'/'1'");
    symbols.push_back(static_cast<Bit>(c - '0'));
  }
  return CodeWord(std::move(symbols));
}

TernaryBlock::TernaryBlock(std::vector<std::uint8_t> v) : values(std::move(v)) {
  for (std::uint8_t s : values)
    if (s > 2) throw DomainError("ternary block component outside {0,1,2}");
}

int TernaryBlock::ones() const {
  int c = 0;
  for (std::uint8_t v : values) c += (v == 1);
  return c;
}

TypicalityParams TypicalityParams::make(int k, double epsilon) {
  if (k < 2 || k % 2 != 0) throw BlockLengthError("block length k must be even and >= 2");
  if (!(epsilon > 0.0)) throw DomainError("epsilon must be positive");
  const int n = k / 2;
  const double tl = std::ceil(n * (1.5 + epsilon));
  const double al = std::ceil(n * std::log2(3.0));
  if (tl > 1e9) throw DomainError("epsilon too large for a sensible code length");
  TypicalityParams p;
  p.epsilon = epsilon;
  p.half_len = n;
  p.source_entropy = 1.5;
  p.typical_code_len = static_cast<int>(tl);
  p.atypical_code_len = static_cast<int>(al);
  return p;
}

namespace {

// The pairwise sum has pmf (1/4, 1/2, 1/4), so -log2 Pr(block) = 2n - ones
// and typicality depends on the ones-count alone.
bool ones_count_typical(int ones, const TypicalityParams& p) {
  const double n = p.half_len;
  const double empirical = (2.0 * n - ones) / n;
  return std::fabs(empirical - p.source_entropy) <= p.epsilon;
}

// Lexicographic (0 < 1 < 2) rank of a block within the typical set, computed
// from completion counts: completions(i, p) = number of ways to extend a
// length-i prefix holding p ones into a full typical block.
template <class Count>
class TypicalRanker {
 public:
  explicit TypicalRanker(const TypicalityParams& params)
      : n_(params.half_len), table_(static_cast<std::size_t>(n_ + 1) * (n_ + 2), Count(0)) {
    for (int p = 0; p <= n_; ++p)
      at(n_, p) = ones_count_typical(p, params) ? Count(1) : Count(0);
    for (int i = n_ - 1; i >= 0; --i)
      for (int p = 0; p <= i; ++p) at(i, p) = 2 * at(i + 1, p) + at(i + 1, p + 1);
  }

  Count total() const { return at(0, 0); }

  Count rank(const TernaryBlock& block) const {
    Count r = 0;
    int p = 0;
    for (int i = 0; i < n_; ++i) {
      const std::uint8_t s = block.values[static_cast<std::size_t>(i)];
      if (s >= 1) r += at(i + 1, p);      // blocks continuing with 0
      if (s == 2) r += at(i + 1, p + 1);  // blocks continuing with 1
      p += (s == 1);
    }
    return r;
  }

  // Fills out.values (resized by the caller) with the block of the given rank.
  void unrank(Count r, std::vector<std::uint8_t>& out) const {
    int p = 0;
    for (int i = 0; i < n_; ++i) {
      const Count c0 = at(i + 1, p);
      if (r < c0) {
        out[static_cast<std::size_t>(i)] = 0;
        continue;
      }
      r -= c0;
      const Count c1 = at(i + 1, p + 1);
      if (r < c1) {
        out[static_cast<std::size_t>(i)] = 1;
        ++p;
        continue;
      }
      r -= c1;
      out[static_cast<std::size_t>(i)] = 2;
    }
  }

 private:
  Count& at(int i, int p) { return table_[static_cast<std::size_t>(i) * (n_ + 2) + p]; }
  const Count& at(int i, int p) const {
    return table_[static_cast<std::size_t>(i) * (n_ + 2) + p];
  }

  int n_;
  std::vector<Count> table_;
};

template <class Count>
Count pow3_count(int n) {
  Count v = 1;
  for (int i = 0; i < n; ++i) v *= 3;
  return v;
}

template <class Count>
void append_bits(std::vector<Bit>& out, const Count& value, int width) {
  for (int j = width - 1; j >= 0; --j) {
    bool bit;
    if constexpr (std::is_same_v<Count, std::uint64_t>) {
      bit = j < 64 && ((value >> j) & 1u);
    } else {
      bit = boost::multiprecision::bit_test(value, static_cast<unsigned>(j));
    }
    out.push_back(bit ? 1 : 0);
  }
}

template <class Count>
Count read_bits(const std::vector<Bit>& symbols, std::size_t offset, int width) {
  Count v = 0;
  for (int j = 0; j < width; ++j) {
    v <<= 1;
    v += symbols[offset + static_cast<std::size_t>(j)];
  }
  return v;
}

template <class Count>
Count base3_value(const std::vector<std::uint8_t>& digits) {
  Count v = 0;
  for (std::uint8_t d : digits) v = v * 3 + d;
  return v;
}

template <class Count>
void base3_digits(Count v, std::vector<std::uint8_t>& out, int n) {
  for (int i = n - 1; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(v % 3);
    v /= 3;
  }
}

// Per-edge code tables. Half-blocks up to 39 components count typical blocks
// in 64 bits (3^39 < 2^63); longer blocks switch to arbitrary precision.
struct EdgeCodec {
  TypicalityParams params;
  bool wide;
  std::optional<TypicalRanker<std::uint64_t>> fast_ranker;
  std::optional<TypicalRanker<cpp_int>> wide_ranker;

  explicit EdgeCodec(const TypicalityParams& p) : params(p), wide(p.half_len > 39) {
    if (wide)
      wide_ranker.emplace(p);
    else
      fast_ranker.emplace(p);
  }
};

template <class Count>
void encode_payload(const TypicalRanker<Count>& ranker, const TernaryBlock& block,
                    bool typical, const TypicalityParams& params, std::vector<Bit>& out) {
  if (typical) {
    append_bits(out, ranker.rank(block), params.typical_code_len);
  } else {
    append_bits(out, base3_value<Count>(block.values), params.atypical_code_len);
  }
}

void encode_edge_with(const EdgeCodec& codec, const MessageVector& x_own,
                      const MessageVector& x3, Role role, CodeWord& out) {
  const TypicalityParams& params = codec.params;
  const int n = params.half_len;
  const int k = 2 * n;
  if (x_own.size() != k || x3.size() != k)
    throw DimensionError("message length does not match the code parameters");

  const Half coded_half = role == Role::S1 ? Half::First : Half::Second;
  const TernaryBlock block = pairwise_sum_half(x_own, x3, coded_half);
  const bool typical = is_weakly_typical(block, params);

  out.symbols.clear();
  out.symbols.reserve(1 + static_cast<std::size_t>(n) +
                      std::max(params.typical_code_len, params.atypical_code_len));
  out.symbols.push_back(typical ? 1 : 0);
  const int uncoded_offset = role == Role::S1 ? n : 0;
  for (int i = 0; i < n; ++i)
    out.symbols.push_back(x_own.bits[static_cast<std::size_t>(uncoded_offset + i)]);
  if (codec.wide)
    encode_payload(*codec.wide_ranker, block, typical, params, out.symbols);
  else
    encode_payload(*codec.fast_ranker, block, typical, params, out.symbols);
}

struct EdgeParse {
  bool typical = false;
  int payload_len = 0;
  std::vector<std::uint8_t> block;  // coded half, length n
  std::vector<Bit> uncoded;         // own-source half, length n
};

template <class Count>
void parse_payload(const TypicalRanker<Count>& ranker, const std::vector<Bit>& symbols,
                   std::size_t offset, const TypicalityParams& params, EdgeParse& out) {
  if (out.typical) {
    const Count r = read_bits<Count>(symbols, offset, params.typical_code_len);
    if (r >= ranker.total()) throw DecodeError("typical-set rank out of range");
    ranker.unrank(r, out.block);
  } else {
    const Count v = read_bits<Count>(symbols, offset, params.atypical_code_len);
    if (v >= pow3_count<Count>(params.half_len))
      throw DecodeError("base-3 payload out of range");
    base3_digits(v, out.block, params.half_len);
  }
}

void parse_edge(const EdgeCodec& codec, const CodeWord& z, EdgeParse& out) {
  const TypicalityParams& params = codec.params;
  const int n = params.half_len;
  if (z.length() < 1 + n) throw DecodeError("codeword shorter than flag + uncoded half");
  out.typical = z.symbols[0] != 0;
  out.payload_len = out.typical ? params.typical_code_len : params.atypical_code_len;
  if (z.length() < 1 + n + out.payload_len)
    throw DecodeError("codeword truncated inside the payload");
  out.uncoded.assign(z.symbols.begin() + 1, z.symbols.begin() + 1 + n);
  out.block.resize(static_cast<std::size_t>(n));
  if (codec.wide)
    parse_payload(*codec.wide_ranker, z.symbols, static_cast<std::size_t>(1 + n), params, out);
  else
    parse_payload(*codec.fast_ranker, z.symbols, static_cast<std::size_t>(1 + n), params, out);
}

void decode_with(const EdgeCodec& codec, const CodeWord& z1, const CodeWord& z2,
                 EdgeParse& p1, EdgeParse& p2, StoppingOutcome& out) {
  parse_edge(codec, z1, p1);
  parse_edge(codec, z2, p2);
  const int n = codec.params.half_len;
  auto& values = out.sum.values;
  values.resize(static_cast<std::size_t>(2 * n));
  int x = 0, y = 0;
  for (int i = 0; i < n; ++i) {
    const std::uint8_t first = static_cast<std::uint8_t>(
        p1.block[static_cast<std::size_t>(i)] + p2.uncoded[static_cast<std::size_t>(i)]);
    const std::uint8_t second = static_cast<std::uint8_t>(
        p1.uncoded[static_cast<std::size_t>(i)] + p2.block[static_cast<std::size_t>(i)]);
    values[static_cast<std::size_t>(i)] = first;
    values[static_cast<std::size_t>(n + i)] = second;
    x += (first == 1) + (second == 1);
    y += (first == 2) + (second == 2);
  }
  out.sum.x = x;
  out.sum.y = y;
  out.stopping_time =
      static_cast<std::size_t>(1 + n + std::max(p1.payload_len, p2.payload_len));
}

void check_block_params(const TernaryBlock& block, const TypicalityParams& params) {
  if (block.size() != params.half_len)
    throw DimensionError("block length does not match the code parameters");
}

}  // namespace

TernaryBlock pairwise_sum_half(const MessageVector& x, const MessageVector& x3, Half half) {
  if (x.size() != x3.size())
    throw DimensionError("pairwise_sum_half requires vectors of equal length");
  if (x.size() % 2 != 0) throw BlockLengthError("pairwise_sum_half requires an even k");
  const int n = x.size() / 2;
  const int offset = half == Half::First ? 0 : n;
  std::vector<std::uint8_t> values(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    values[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(
        x.bits[static_cast<std::size_t>(offset + i)] +
        x3.bits[static_cast<std::size_t>(offset + i)]);
  return TernaryBlock(std::move(values));
}

bool is_weakly_typical(const TernaryBlock& block, const TypicalityParams& params) {
  check_block_params(block, params);
  return ones_count_typical(block.ones(), params);
}

CodeWord encode_edge(const MessageVector& x_own, const MessageVector& x3, Role role,
                     const TypicalityParams& params) {
  EdgeCodec codec(params);
  CodeWord out;
  encode_edge_with(codec, x_own, x3, role, out);
  return out;
}

StoppingOutcome decode(const CodeWord& z1, const CodeWord& z2,
                       const TypicalityParams& params) {
  EdgeCodec codec(params);
  EdgeParse p1, p2;
  StoppingOutcome out;
  decode_with(codec, z1, z2, p1, p2, out);
  return out;
}

double exact_edge_typicality_probability(const TypicalityParams& params) {
  const int n = params.half_len;
  // The ones-count of a pairwise-sum block is Binomial(n, 1/2).
  if (n <= 1000) {
    cpp_int typical_count = 0;
    cpp_int binom = 1;
    for (int ones = 0; ones <= n; ++ones) {
      if (ones_count_typical(ones, params)) typical_count += binom;
      binom = binom * (n - ones) / (ones + 1);
    }
    return typical_count.convert_to<double>() / std::ldexp(1.0, n);
  }
  // Beyond that the counts overflow doubles; sum normalized terms instead.
  const double ln2 = std::log(2.0);
  double q = 0.0;
  for (int ones = 0; ones <= n; ++ones) {
    if (!ones_count_typical(ones, params)) continue;
    const double log2_binom =
        (std::lgamma(n + 1.0) - std::lgamma(ones + 1.0) - std::lgamma(n - ones + 1.0)) / ln2;
    q += std::exp2(log2_binom - n);
  }
  return std::min(q, 1.0);
}

StoppingTimeEstimate expected_stopping_time(int k, const TypicalityParams& params,
                                            const StoppingEvalMode& mode) {
  if (k != 2 * params.half_len)
    throw DimensionError("k does not match the code parameters");
  const int n = params.half_len;
  const int tl = params.typical_code_len;
  const int al = params.atypical_code_len;

  StoppingTimeEstimate est;
  if (std::holds_alternative<ExactMode>(mode)) {
    const int cap = max_exhaustive_k(24);
    if (k > cap)
      throw ResourceError("exact stopping-time evaluation capped at k = " +
                          std::to_string(cap));
    const double q = exact_edge_typicality_probability(params);
    const double both = q * q;
    const double mixed = 2.0 * q * (1.0 - q);
    const double neither = (1.0 - q) * (1.0 - q);
    est.expected_n = 1.0 + n + both * tl + mixed * std::max(tl, al) + neither * al;
    est.pr_edge_typical = q;
    est.pr_both_typical = both;
  } else {
    const auto& mc = std::get<MonteCarloMode>(mode);
    if (mc.trials == 0) throw DomainError("monte-carlo mode needs at least one trial");
    const int words = (n + 63) / 64;
    const std::uint64_t last_mask =
        (n % 64 == 0) ? ~std::uint64_t{0} : ((std::uint64_t{1} << (n % 64)) - 1);
    std::uint64_t sum_n = 0;
    std::uint64_t edge_typical = 0;
    std::uint64_t both_typical = 0;
    for (std::uint64_t t = 0; t < mc.trials; ++t) {
      DetRng rng(derive_stream_seed(mc.seed, t));
      auto sample_ones = [&]() {
        // ones-count of (a + b) on one half: popcount of a XOR b.
        int ones = 0;
        for (int w = 0; w < words; ++w) {
          const std::uint64_t a = rng.next();
          const std::uint64_t b = rng.next();
          std::uint64_t x = a ^ b;
          if (w == words - 1) x &= last_mask;
          ones += std::popcount(x);
        }
        return ones;
      };
      const bool typ1 = ones_count_typical(sample_ones(), params);
      const bool typ2 = ones_count_typical(sample_ones(), params);
      const int len1 = typ1 ? tl : al;
      const int len2 = typ2 ? tl : al;
      sum_n += static_cast<std::uint64_t>(1 + n + std::max(len1, len2));
      edge_typical += static_cast<std::uint64_t>(typ1) + static_cast<std::uint64_t>(typ2);
      both_typical += static_cast<std::uint64_t>(typ1 && typ2);
    }
    est.expected_n = static_cast<double>(sum_n) / static_cast<double>(mc.trials);
    est.pr_edge_typical =
        static_cast<double>(edge_typical) / (2.0 * static_cast<double>(mc.trials));
    est.pr_both_typical =
        static_cast<double>(both_typical) / static_cast<double>(mc.trials);
  }
  est.rate = k / est.expected_n;
  return est;
}

ZeroErrorReport verify_zero_error(int k, const TypicalityParams& params) {
  if (k != 2 * params.half_len)
    throw DimensionError("k does not match the code parameters");
  const int cap = max_exhaustive_k(8);
  if (k > cap)
    throw ResourceError("zero-error verification capped at k = " + std::to_string(cap));
  if (k > 20) throw ResourceError("zero-error verification limited to k <= 20");

  const EdgeCodec codec(params);
  const std::uint32_t count = std::uint32_t{1} << k;

  // spread(m) places bit i of m into 2-bit lane i, so packed sums of three
  // masks never carry between lanes.
  std::vector<std::uint64_t> spread(count);
  for (std::uint32_t m = 0; m < count; ++m) {
    std::uint64_t s = 0;
    for (int i = 0; i < k; ++i) s |= static_cast<std::uint64_t>((m >> i) & 1u) << (2 * i);
    spread[m] = s;
  }

  ZeroErrorReport report;
  report.pass = true;
  report.injectivity_ok = true;

  std::vector<CodeWord> row1(count), row2(count);
  std::vector<std::vector<Bit>> seen;
  EdgeParse p1, p2;
  StoppingOutcome outcome;

  for (std::uint32_t x3 = 0; x3 < count; ++x3) {
    const MessageVector x3v = MessageVector::from_mask(x3, k);
    for (std::uint32_t own = 0; own < count; ++own) {
      const MessageVector ownv = MessageVector::from_mask(own, k);
      encode_edge_with(codec, ownv, x3v, Role::S1, row1[own]);
      encode_edge_with(codec, ownv, x3v, Role::S2, row2[own]);
    }
    for (const auto* row : {&row1, &row2}) {
      seen.clear();
      seen.reserve(count);
      for (const CodeWord& cw : *row) seen.push_back(cw.symbols);
      std::sort(seen.begin(), seen.end());
      if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
        report.injectivity_ok = false;
    }
    for (std::uint32_t x1 = 0; x1 < count; ++x1) {
      const std::uint64_t partial = spread[x1] + spread[x3];
      for (std::uint32_t x2 = 0; x2 < count; ++x2) {
        decode_with(codec, row1[x1], row2[x2], p1, p2, outcome);
        std::uint64_t packed = 0;
        for (int i = 0; i < k; ++i)
          packed |= static_cast<std::uint64_t>(outcome.sum.values[static_cast<std::size_t>(i)])
                    << (2 * i);
        ++report.tuples_checked;
        if (packed != partial + spread[x2]) {
          report.pass = false;
          if (!report.counterexample) {
            report.counterexample = {MessageVector::from_mask(x1, k),
                                     MessageVector::from_mask(x2, k),
                                     MessageVector::from_mask(x3, k)};
          }
          return report;
        }
      }
    }
  }
  report.pass = report.pass && report.injectivity_ok;
  return report;
}

std::map<std::size_t, Rational> exhaustive_stopping_histogram(
    int k, const TypicalityParams& params) {
  if (k != 2 * params.half_len)
    throw DimensionError("k does not match the code parameters");
  const int cap = max_exhaustive_k(8);
  if (k > cap)
    throw ResourceError("stopping-time histogram capped at k = " + std::to_string(cap));
  const int n = params.half_len;
  if (2 * n > 62) throw ResourceError("histogram denominators limited to 2^62");

  // The stopping time depends only on the two coded blocks' ones-counts,
  // each Binomial(n, 1/2) and independent of the other.
  std::vector<std::int64_t> ones_weight(static_cast<std::size_t>(n) + 1);
  std::vector<int> length(static_cast<std::size_t>(n) + 1);
  for (int c = 0; c <= n; ++c) {
    ones_weight[static_cast<std::size_t>(c)] = binomial_i64(n, c);
    length[static_cast<std::size_t>(c)] = ones_count_typical(c, params)
                                              ? params.typical_code_len
                                              : params.atypical_code_len;
  }
  const std::int64_t denom = pow2_i64(2 * n);
  std::map<std::size_t, std::int64_t> counts;
  for (int c1 = 0; c1 <= n; ++c1)
    for (int c2 = 0; c2 <= n; ++c2) {
      const std::size_t stop = static_cast<std::size_t>(
          1 + n +
          std::max(length[static_cast<std::size_t>(c1)], length[static_cast<std::size_t>(c2)]));
      counts[stop] += ones_weight[static_cast<std::size_t>(c1)] *
                      ones_weight[static_cast<std::size_t>(c2)];
    }
  std::map<std::size_t, Rational> hist;
  for (const auto& [stop, c] : counts) hist.emplace(stop, Rational(c, denom));
  return hist;
}

}
