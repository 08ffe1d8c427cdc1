#include "sumcode/core_model.hpp"

#include <cmath>

#include "sumcode/errors.hpp"

namespace sumcode {

MessageVector::MessageVector(std::vector<Bit> b) : bits(std::move(b)) {
  if (bits.empty()) throw DimensionError("message vector must have k >= 1 components");
  for (Bit v : bits)
    if (v > 1) throw DomainError("message component outside {0,1}");
}

MessageVector MessageVector::from_mask(std::uint64_t mask, int k) {
  if (k < 1 || k > 64) throw DimensionError("from_mask supports 1 <= k <= 64");
  std::vector<Bit> b(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) b[i] = static_cast<Bit>((mask >> i) & 1u);
  return MessageVector(std::move(b));
}

std::uint64_t MessageVector::to_mask() const {
  if (size() > 64) throw DimensionError("to_mask supports k <= 64");
  std::uint64_t m = 0;
  for (int i = 0; i < size(); ++i) m |= static_cast<std::uint64_t>(bits[i]) << i;
  return m;
}

SumVector::SumVector(std::vector<std::uint8_t> v) : values(std::move(v)) {
  if (values.empty()) throw DimensionError("sum vector must have k >= 1 components");
  for (std::uint8_t s : values) {
    if (s > 3) throw DomainError("sum component outside {0,1,2,3}");
    if (s == 1) ++x;
    if (s == 2) ++y;
  }
}

SumVector arithmetic_sum(const MessageVector& x1, const MessageVector& x2,
                         const MessageVector& x3) {
  if (x1.size() != x2.size() || x1.size() != x3.size())
    throw DimensionError("arithmetic_sum requires three vectors of equal length");
  std::vector<std::uint8_t> values(x1.bits.size());
  for (std::size_t i = 0; i < values.size(); ++i)
    values[i] = static_cast<std::uint8_t>(x1.bits[i] + x2.bits[i] + x3.bits[i]);
  return SumVector(std::move(values));
}

Rational sum_component_pmf(int beta) {
  switch (beta) {
    case 0:
    case 3:
      return Rational(1, 8);
    case 1:
    case 2:
      return Rational(3, 8);
    default:
      throw DomainError("sum component must be in {0,1,2,3}");
  }
}

double sum_entropy_per_component() {
  // -2*(1/8)log(1/8) - 2*(3/8)log(3/8) simplifies to 0.75*(4 - log2 3).
  return 0.75 * (4.0 - std::log2(3.0));
}

SumClassConstants sum_class_constants(int x, int y) {
  if (x < 0 || y < 0) throw DomainError("class counts must be nonnegative");
  const int w = x + y;
  if (w > 39) throw DomainError("x + y too large for 64-bit class constants");
  return SumClassConstants{x, y, pow2_i64(w), pow3_i64(w)};
}

SumClassConstants sum_class_constants(const SumVector& sigma) {
  return sum_class_constants(sigma.x, sigma.y);
}

std::int64_t pow2_i64(int e) {
  if (e < 0 || e > 62) throw DomainError("pow2_i64 exponent out of range");
  return std::int64_t{1} << e;
}

std::int64_t pow3_i64(int e) {
  if (e < 0 || e > 39) throw DomainError("pow3_i64 exponent out of range");
  std::int64_t v = 1;
  for (int i = 0; i < e; ++i) v *= 3;
  return v;
}

std::int64_t binomial_i64(int n, int k) {
  if (n < 0 || k < 0) throw DomainError("binomial_i64 arguments must be nonnegative");
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  unsigned __int128 acc = 1;
  for (int i = 1; i <= k; ++i) {
    acc = acc * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
    if (acc > static_cast<unsigned __int128>(INT64_MAX))
      throw DomainError("binomial_i64 overflow");
  }
  return static_cast<std::int64_t>(acc);
}

}
