#include <doctest.h>

#include <cmath>

#include "sumcode/achievable_code.hpp"
#include "sumcode/errors.hpp"
#include "sumcode/stopping_analysis.hpp"

using namespace sumcode;

TEST_CASE("stopping mass bound values") {
  // (3/8)^4 * 2^2
  CHECK(std::fabs(stopping_mass_bound(1, 4, 2) - 0.0791015625) < 1e-12);
  CHECK(std::fabs(stopping_mass_bound(2, 4, 2) - 0.31640625) < 1e-12);

  // The bound saturates at 1 once n reaches (k/2) log_{|Z|}(8/3).
  const double threshold = 4 / 2.0 * std::log2(8.0 / 3.0);
  for (int n = 1; n <= 10; ++n) {
    const double b = stopping_mass_bound(n, 4, 2);
    if (n >= threshold) CHECK(b == 1.0);
    if (n < threshold) CHECK(b < 1.0);
  }
  CHECK_THROWS_AS(stopping_mass_bound(0, 4, 2), DomainError);
  CHECK_THROWS_AS(stopping_mass_bound(1, 4, 1), DomainError);
}

TEST_CASE("achievable scheme respects the mass bound at every n") {
  for (int k : {2, 4, 6}) {
    for (double eps : {0.05, 0.5}) {
      const auto hist = exhaustive_stopping_histogram(k, TypicalityParams::make(k, eps));
      for (const auto& [n, prob] : hist)
        CHECK(to_double(prob) <=
              stopping_mass_bound(static_cast<std::int64_t>(n), k, 2) + 1e-15);
    }
  }
}

TEST_CASE("dual params bookkeeping") {
  const DualParams p = DualParams::make(100, 2, 0.1);
  CHECK(p.delta == std::log2(std::exp(1.0)) / 0.1);
  CHECK(std::fabs(p.c - 0.5 * std::log2(8.0 / 3.0)) < 1e-15);
  CHECK(p.c > 0.0);
  CHECK(p.lambda == p.c * 100 / 2.0);
  CHECK(DualParams::make_with_lambda(100, 2, 0.1, 3.5).lambda == 3.5);
  CHECK_THROWS_AS(DualParams::make(0, 2, 0.1), DomainError);
  CHECK_THROWS_AS(DualParams::make(10, 2, 0.0), DomainError);
}

TEST_CASE("multiplier partial sum stays below |Z|^2/(|Z|^2-1)^2") {
  for (int alphabet : {2, 3}) {
    const double z2 = static_cast<double>(alphabet) * alphabet;
    const double cap = z2 / ((z2 - 1.0) * (z2 - 1.0));
    for (int k = 1; k <= 200; ++k) CHECK(dual_penalty_partial_sum(k, alphabet) <= cap);
  }
}

TEST_CASE("dual bound is negative at lambda = 0") {
  for (int k : {10, 100})
    CHECK(dual_lower_bound(DualParams::make_with_lambda(k, 2, 0.1, 0.0)) < 0.0);
}

TEST_CASE("positivity threshold exists and anchors") {
  const ThresholdSearch search = hn_en_threshold(2, 0.1);
  CHECK(search.k0 == 107);  // regression anchor for the certificate
  CHECK(search.checked_to == 4 * search.k0);
  for (int k = search.k0; k <= search.checked_to; ++k)
    CHECK(dual_lower_bound(DualParams::make(k, 2, 0.1)) > 0.0);
  CHECK(dual_lower_bound(DualParams::make(search.k0 - 1, 2, 0.1)) <= 0.0);

  // Trace covers every scanned k in order.
  CHECK(search.trace.size() == static_cast<std::size_t>(search.checked_to));
  CHECK(search.trace.front().first == 1);
  CHECK(search.trace.back().first == search.checked_to);
}

TEST_CASE("threshold shrinks as the target ratio loosens") {
  const int strict = hn_en_threshold(2, 0.05).k0;
  const int mid = hn_en_threshold(2, 0.1).k0;
  const int loose = hn_en_threshold(2, 0.5).k0;
  CHECK(strict >= mid);
  CHECK(mid >= loose);
  CHECK(loose >= 1);

  // Larger alphabets still certify.
  CHECK(hn_en_threshold(3, 0.1).k0 > 0);
  CHECK(hn_en_threshold(3, 0.05).k0 > 0);
}

TEST_CASE("search cap raises an error instead of fabricating a threshold") {
  CHECK_THROWS_AS(hn_en_threshold(2, 0.1, 50), ResourceError);
}

TEST_CASE("geometric stopping times motivate the constraint") {
  // Unconstrained geometric(1/2) N attains H(N)/E N = 1.
  double en = 0.0, h = 0.0;
  for (int i = 1; i <= 64; ++i) {
    const double p = std::ldexp(1.0, -i);
    en += i * p;
    h -= p * std::log2(p);
  }
  CHECK(std::fabs(en - 2.0) < 1e-12);
  CHECK(std::fabs(h / en - 1.0) < 1e-12);
}
