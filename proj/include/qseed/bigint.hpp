#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace qseed {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct DomainError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NotApplicable : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline auto to_string(const BigInt& v) -> std::string { return v.str(); }

inline auto to_string(const Rational& v) -> std::string {
  const BigInt& d = boost::multiprecision::denominator(v);
  if (d == 1) return boost::multiprecision::numerator(v).str();
  return boost::multiprecision::numerator(v).str() + "/" + d.str();
}

inline auto parse_bigint(const std::string& s) -> BigInt {
  if (s.empty()) throw DomainError("empty integer literal");
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) throw DomainError("bad integer literal: " + s);
  for (std::size_t k = i; k < s.size(); ++k)
    if (s[k] < '0' || s[k] > '9') throw DomainError("bad integer literal: " + s);
  return BigInt(s);
}

inline auto parse_rational(const std::string& s) -> Rational {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(parse_bigint(s));
  BigInt den = parse_bigint(s.substr(slash + 1));
  if (den == 0) throw DomainError("zero denominator: " + s);
  return Rational(parse_bigint(s.substr(0, slash)), den);
}

inline auto is_integer(const Rational& v) -> bool {
  return boost::multiprecision::denominator(v) == 1;
}

inline auto gcd(const BigInt& a, const BigInt& b) -> BigInt {
  return boost::multiprecision::gcd(a, b);
}

}  // namespace qseed
