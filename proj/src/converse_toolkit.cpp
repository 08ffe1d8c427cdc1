#include "sumcode/converse_toolkit.hpp"

#include <algorithm>
#include <cmath>

#include "sumcode/config.hpp"
#include "sumcode/errors.hpp"

namespace sumcode {

MessageVector x3_tilde(const SumVector& sigma) {
  std::vector<Bit> bits(sigma.values.size());
  for (std::size_t i = 0; i < bits.size(); ++i)
    bits[i] = sigma.values[i] >= 2 ? 1 : 0;
  return MessageVector(std::move(bits));
}

std::map<MessageVector, std::vector<std::pair<MessageVector, MessageVector>>>
partition_by_x3(const SumVector& sigma) {
  const int k = sigma.size();
  const int cap = max_exhaustive_k(12);
  if (k > cap)
    throw ResourceError("partition_by_x3 enumeration capped at k = " + std::to_string(cap));

  // Components with sigma in {1,2} leave x3 free; the rest force it. Within a
  // partition, each component with residual sigma - x3 == 1 contributes the
  // two splits (0,1) and (1,0) to (x1, x2).
  std::vector<int> free_pos;
  std::vector<Bit> base(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    const std::uint8_t s = sigma.values[static_cast<std::size_t>(i)];
    if (s == 0)
      base[static_cast<std::size_t>(i)] = 0;
    else if (s == 3)
      base[static_cast<std::size_t>(i)] = 1;
    else
      free_pos.push_back(i);
  }

  std::map<MessageVector, std::vector<std::pair<MessageVector, MessageVector>>> result;
  const std::uint64_t free_count = std::uint64_t{1} << free_pos.size();
  for (std::uint64_t fm = 0; fm < free_count; ++fm) {
    std::vector<Bit> x3 = base;
    for (std::size_t j = 0; j < free_pos.size(); ++j)
      x3[static_cast<std::size_t>(free_pos[j])] = static_cast<Bit>((fm >> j) & 1u);

    // Residuals: 0 -> (0,0); 2 -> (1,1); 1 -> either split.
    std::vector<int> split_pos;
    std::vector<Bit> x1_base(static_cast<std::size_t>(k), 0);
    for (int i = 0; i < k; ++i) {
      const int r = sigma.values[static_cast<std::size_t>(i)] - x3[static_cast<std::size_t>(i)];
      if (r == 2)
        x1_base[static_cast<std::size_t>(i)] = 1;
      else if (r == 1)
        split_pos.push_back(i);
    }
    std::vector<std::pair<MessageVector, MessageVector>> pairs;
    const std::uint64_t split_count = std::uint64_t{1} << split_pos.size();
    pairs.reserve(static_cast<std::size_t>(split_count));
    for (std::uint64_t sm = 0; sm < split_count; ++sm) {
      std::vector<Bit> x1 = x1_base;
      for (std::size_t j = 0; j < split_pos.size(); ++j)
        x1[static_cast<std::size_t>(split_pos[j])] = static_cast<Bit>((sm >> j) & 1u);
      std::vector<Bit> x2(static_cast<std::size_t>(k));
      for (int i = 0; i < k; ++i)
        x2[static_cast<std::size_t>(i)] = static_cast<Bit>(
            sigma.values[static_cast<std::size_t>(i)] - x3[static_cast<std::size_t>(i)] -
            x1[static_cast<std::size_t>(i)]);
      pairs.emplace_back(MessageVector(std::move(x1)), MessageVector(std::move(x2)));
    }
    result.emplace(MessageVector(std::move(x3)), std::move(pairs));
  }
  return result;
}

PartitionProfile partition_profile(int x, int y) {
  if (x < 0 || y < 0) throw DomainError("class counts must be nonnegative");
  const int w = x + y;
  if (w > 20) throw ResourceError("partition_profile materialization limited to x + y <= 20");
  const SumClassConstants c = sum_class_constants(x, y);
  PartitionProfile profile;
  profile.x = x;
  profile.y = y;
  profile.total = c.M;
  profile.sizes.reserve(static_cast<std::size_t>(c.L));
  for (int u = 0; u <= w; ++u) {
    const std::int64_t size = c.L >> u;
    const std::int64_t copies = binomial_i64(w, u);
    for (std::int64_t i = 0; i < copies; ++i) profile.sizes.push_back(size);
  }
  return profile;
}

ClumpyDistribution clumpy_distribution(int x, int y) {
  if (x < 0 || y < 0) throw DomainError("class counts must be nonnegative");
  const int w = x + y;
  if (w > 20) throw ResourceError("clumpy_distribution materialization limited to x + y <= 20");
  const SumClassConstants c = sum_class_constants(x, y);

  ClumpyDistribution dist;
  dist.x = x;
  dist.y = y;
  dist.masses.assign(static_cast<std::size_t>(c.L), Rational(0));
  // Label j receives one unit from every partition of size >= j; partitions of
  // size L/2^u with multiplicity C(w, u) cover labels (L/2^(u+1), L/2^u].
  std::int64_t cumulative = 0;
  for (int u = 0; u <= w; ++u) {
    cumulative += binomial_i64(w, u);
    const std::int64_t hi = c.L >> u;
    const std::int64_t lo = (u == w) ? 1 : (c.L >> (u + 1)) + 1;
    for (std::int64_t j = lo; j <= hi; ++j)
      dist.masses[static_cast<std::size_t>(j - 1)] = Rational(cumulative, c.M);
  }
  return dist;
}

double clumpy_entropy(int x, int y) {
  if (x < 0 || y < 0) throw DomainError("class counts must be nonnegative");
  const int w = x + y;
  if (w > 30) throw DomainError("clumpy_entropy limited to x + y <= 30");
  if (w == 0) return 0.0;
  const double log3 = std::log2(3.0);
  const double m = static_cast<double>(pow3_i64(w));
  // Band j holds ceil(2^(w-j)) labels repeated sum_{s<j} C(w,s) times each;
  // only the last band's ceiling differs from the plain power.
  double h = 0.0;
  std::int64_t cumulative = 0;
  for (int j = 1; j <= w + 1; ++j) {
    cumulative += binomial_i64(w, j - 1);
    const std::int64_t band = (j <= w) ? pow2_i64(w - j) : 1;
    const double count = static_cast<double>(cumulative);
    h += static_cast<double>(band) * count * (w * log3 - std::log2(count));
  }
  return h / m;
}

double clumpy_entropy_closed_lower_bound(int x, int y) {
  if (x < 0 || y < 0) throw DomainError("class counts must be nonnegative");
  const int w = x + y;
  const double log3 = std::log2(3.0);
  return w * std::pow(2.0 / 3.0, w) * (log3 - 1.0) * (std::pow(1.5, w) - 0.5);
}

double conditional_entropy_lower_bound(int k) {
  if (k < 1) throw DomainError("block length must be >= 1");
  const double log3 = std::log2(3.0);
  return (log3 - 1.0) * k * (0.75 - std::pow(0.75, k) / 3.0);
}

CapacityBounds capacity_bounds(int alphabet_size, double hn_en_slack) {
  if (alphabet_size < 2) throw DomainError("alphabet size must be >= 2");
  if (hn_en_slack < 0.0) throw DomainError("H(N)/E N slack must be nonnegative");
  CapacityBounds b;
  b.upper = 2.0 / 2.25 + hn_en_slack;
  if (alphabet_size == 2) b.lower = 2.0 / 2.5;
  return b;
}

}
