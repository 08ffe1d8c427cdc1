#include "sumcode/stopping_analysis.hpp"

#include <cmath>
#include <string>

#include "sumcode/errors.hpp"

namespace sumcode {

namespace {

void check_alphabet(int alphabet_size) {
  if (alphabet_size < 2) throw DomainError("alphabet size must be >= 2");
}

double cap_rate(int alphabet_size) {
  // (3/8)^k |Z|^(2n) reaches 1 at n = k * log_{|Z|}(8/3) / 2.
  return 0.5 * std::log(8.0 / 3.0) / std::log(static_cast<double>(alphabet_size));
}

}  // namespace

DualParams DualParams::make(int k, int alphabet_size, double epsilon) {
  check_alphabet(alphabet_size);
  if (k < 1) throw DomainError("k must be >= 1");
  if (!(epsilon > 0.0)) throw DomainError("epsilon must be positive");
  DualParams p;
  p.k = k;
  p.alphabet_size = alphabet_size;
  p.epsilon = epsilon;
  p.delta = std::log2(std::exp(1.0)) / epsilon;
  p.c = cap_rate(alphabet_size);
  p.lambda = p.c * k / 2.0;
  return p;
}

DualParams DualParams::make_with_lambda(int k, int alphabet_size, double epsilon,
                                        double lambda) {
  DualParams p = make(k, alphabet_size, epsilon);
  p.lambda = lambda;
  return p;
}

double stopping_mass_bound(std::int64_t n, int k, int alphabet_size) {
  check_alphabet(alphabet_size);
  if (n < 1 || k < 1) throw DomainError("stopping_mass_bound requires n, k >= 1");
  const double log2_bound = k * std::log2(3.0 / 8.0) +
                            2.0 * static_cast<double>(n) *
                                std::log2(static_cast<double>(alphabet_size));
  const double bound = std::exp2(log2_bound);
  return std::min(bound, 1.0);
}

double dual_penalty_partial_sum(int k, int alphabet_size) {
  check_alphabet(alphabet_size);
  if (k < 1) throw DomainError("k must be >= 1");
  const int m = static_cast<int>(std::floor(cap_rate(alphabet_size) * k));
  const double base = k * std::log2(3.0 / 8.0);
  const double log2_z = std::log2(static_cast<double>(alphabet_size));
  double sum = 0.0;
  for (int i = 1; i <= m; ++i)
    sum += (m - i) * std::exp2(base + 2.0 * i * log2_z);
  return sum;
}

double dual_lower_bound(const DualParams& params) {
  const double z2 = static_cast<double>(params.alphabet_size) *
                    static_cast<double>(params.alphabet_size);
  const double m = std::floor(params.c * params.k);
  const double delta = params.delta;
  const double lambda = params.lambda;
  const double constant = z2 / ((z2 - 1.0) * (z2 - 1.0));
  const double binding = delta * m * std::exp((lambda - m - delta) / delta);
  const double tail = delta / (std::exp(1.0) - std::exp(1.0 - 1.0 / delta)) *
                      std::exp((lambda - m) / delta);
  return lambda - constant - binding - tail;
}

ThresholdSearch hn_en_threshold(int alphabet_size, double epsilon, int k_cap) {
  check_alphabet(alphabet_size);
  if (!(epsilon > 0.0)) throw DomainError("epsilon must be positive");
  if (k_cap < 1) throw DomainError("search cap must be >= 1");

  ThresholdSearch search;
  int candidate = 0;
  for (int k = 1; k <= k_cap; ++k) {
    const double bound = dual_lower_bound(DualParams::make(k, alphabet_size, epsilon));
    search.trace.emplace_back(k, bound);
    if (bound > 0.0) {
      if (candidate == 0) candidate = k;
      if (k >= 4 * candidate) {
        search.k0 = candidate;
        search.checked_to = k;
        return search;
      }
    } else {
      candidate = 0;
    }
  }
  throw ResourceError("no positivity threshold found up to k = " + std::to_string(k_cap));
}

}
