#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace lgpot {

// All coefficients in this library are exact rationals. cpp_rational keeps
// values normalized (lowest terms, positive denominator) by construction.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

class error : public std::runtime_error {
 public:
  explicit error(const std::string& what) : std::runtime_error(what) {}
};

inline BigInt factorial(int n) {
  if (n < 0) throw error("factorial: negative argument " + std::to_string(n));
  BigInt r = 1;
  for (int k = 2; k <= n; ++k) r *= k;
  return r;
}

inline BigInt bigint_from_string(const std::string& s) {
  try {
    return BigInt(s);
  } catch (const std::exception&) {
    throw error("malformed integer '" + s + "'");
  }
}

// Canonical form: "n" for integers, "n/d" otherwise, denominator positive.
inline std::string to_string(const Rational& q) {
  std::string s = numerator(q).str();
  if (denominator(q) != 1) s += "/" + denominator(q).str();
  return s;
}

inline Rational rational_from_string(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(bigint_from_string(s));
  BigInt num = bigint_from_string(s.substr(0, slash));
  BigInt den = bigint_from_string(s.substr(slash + 1));
  if (den == 0) throw error("zero denominator in rational '" + s + "'");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  return Rational(num, den);
}

}  // namespace lgpot
