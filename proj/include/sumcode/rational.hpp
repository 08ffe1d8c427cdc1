#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <boost/rational.hpp>

namespace sumcode {

// Exact rational arithmetic for probabilities that are multiples of 1/M.
// Entropies alone are evaluated in double precision.
using Rational = boost::rational<long long>;

inline double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

// Reduced "num/den" (or plain "num" for integers).
std::string to_fraction_string(const Rational& r);

// "num/den" with the given common denominator, unreduced; `common_den` must be
// a multiple of r's reduced denominator.
std::string to_fraction_string(const Rational& r, long long common_den);

// Parses "num/den" or a bare integer.
Rational parse_fraction(std::string_view text);

// Shannon entropy in bits with the 0*log 0 = 0 convention.
double entropy_bits(const std::vector<Rational>& pmf);
double entropy_bits(const std::vector<double>& pmf);

}
