#include "sumcode/rational.hpp"

#include <cmath>
#include <charconv>
#include <stdexcept>

#include "sumcode/errors.hpp"

namespace sumcode {

std::string to_fraction_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

std::string to_fraction_string(const Rational& r, long long common_den) {
  if (common_den <= 0 || common_den % r.denominator() != 0)
    throw DomainError("common denominator must be a positive multiple of the reduced one");
  const long long scale = common_den / r.denominator();
  return std::to_string(r.numerator() * scale) + "/" + std::to_string(common_den);
}

Rational parse_fraction(std::string_view text) {
  auto parse_int = [](std::string_view s) {
    long long v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
      throw DomainError("malformed rational: '" + std::string(s) + "'");
    return v;
  };
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  const long long num = parse_int(text.substr(0, slash));
  const long long den = parse_int(text.substr(slash + 1));
  if (den == 0) throw DomainError("zero denominator");
  return Rational(num, den);
}

double entropy_bits(const std::vector<Rational>& pmf) {
  double h = 0.0;
  for (const Rational& p : pmf) {
    if (p.numerator() == 0) continue;
    const double v = to_double(p);
    h -= v * std::log2(v);
  }
  return h;
}

double entropy_bits(const std::vector<double>& pmf) {
  double h = 0.0;
  for (double v : pmf) {
    if (v <= 0.0) continue;
    h -= v * std::log2(v);
  }
  return h;
}

}
