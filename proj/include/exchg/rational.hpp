#ifndef EXCHG_RATIONAL_HPP_
#define EXCHG_RATIONAL_HPP_

#include <boost/rational.hpp>
#include <string>

namespace exchg {

using Rational = boost::rational<long long>;

inline double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) /
         static_cast<double>(r.denominator());
}

inline std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

// Accepts "p/q", integers, and decimal literals (exact decimal expansion).
Rational parse_rational(const std::string& text);

}  // namespace exchg

#endif  // EXCHG_RATIONAL_HPP_
