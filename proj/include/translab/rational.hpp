#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace translab {

// Arbitrary-precision rational for the exact oracles (brute-force game
// values, closed-form expectations, lemma verification).
using BigRat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Small exact rational used on hot paths (empirical error lives on the 1/u
// grid and must never be rounded). Always normalized: den > 0, gcd = 1.
struct Rat64 {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rat64() = default;
  Rat64(std::int64_t n, std::int64_t d) {
    if (d == 0) throw std::domain_error("Rat64: zero denominator");
    if (d < 0) { n = -n; d = -d; }
    const std::int64_t g = std::gcd(n < 0 ? -n : n, d);
    num = g ? n / g : 0;
    den = g ? d / g : 1;
  }

  static Rat64 zero() { return Rat64(0, 1); }
  static Rat64 one() { return Rat64(1, 1); }

  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
  BigRat to_big() const { return BigRat(num, den); }

  friend bool operator==(const Rat64& a, const Rat64& b) {
    return a.num == b.num && a.den == b.den;
  }
  friend bool operator!=(const Rat64& a, const Rat64& b) { return !(a == b); }
  friend bool operator<(const Rat64& a, const Rat64& b) {
    return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
  }
  friend bool operator<=(const Rat64& a, const Rat64& b) { return !(b < a); }
  friend bool operator>(const Rat64& a, const Rat64& b) { return b < a; }
  friend bool operator>=(const Rat64& a, const Rat64& b) { return !(a < b); }

  std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }
};

// Parses "3/4", "0.25", or "1e-3" into an exact rational. Decimal and
// fractional forms are exact; plain integers too.
Rat64 parse_rat64(const std::string& text);

}  // namespace translab
