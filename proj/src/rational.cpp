#include "translab/rational.hpp"

#include <cctype>
#include <cstdlib>

namespace translab {

namespace {

std::int64_t checked_pow10(int e) {
  std::int64_t v = 1;
  for (int i = 0; i < e; ++i) {
    if (v > (INT64_MAX / 10)) throw std::domain_error("rational: exponent too large");
    v *= 10;
  }
  return v;
}

}  // namespace

Rat64 parse_rat64(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("rational: empty string");
  const auto slash = text.find('/');
  if (slash != std::string::npos) {
    const std::int64_t n = std::stoll(text.substr(0, slash));
    const std::int64_t d = std::stoll(text.substr(slash + 1));
    return Rat64(n, d);
  }
  // Decimal or scientific form, parsed exactly: mantissa digits over a power
  // of ten, then the exponent applied to whichever side keeps integers.
  std::string s = text;
  int exp10 = 0;
  const auto epos = s.find_first_of("eE");
  if (epos != std::string::npos) {
    exp10 = std::stoi(s.substr(epos + 1));
    s = s.substr(0, epos);
  }
  bool neg = false;
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) neg = (s[i++] == '-');
  std::int64_t mant = 0;
  int frac_digits = 0;
  bool seen_dot = false, seen_digit = false;
  for (; i < s.size(); ++i) {
    if (s[i] == '.') {
      if (seen_dot) throw std::invalid_argument("rational: bad number: " + text);
      seen_dot = true;
      continue;
    }
    if (!std::isdigit(static_cast<unsigned char>(s[i])))
      throw std::invalid_argument("rational: bad number: " + text);
    seen_digit = true;
    if (mant > (INT64_MAX - 9) / 10) throw std::domain_error("rational: mantissa too large");
    mant = mant * 10 + (s[i] - '0');
    if (seen_dot) ++frac_digits;
  }
  if (!seen_digit) throw std::invalid_argument("rational: bad number: " + text);
  std::int64_t num = neg ? -mant : mant;
  std::int64_t den = 1;
  const int net = exp10 - frac_digits;
  if (net >= 0) {
    num *= checked_pow10(net);
  } else {
    den = checked_pow10(-net);
  }
  return Rat64(num, den);
}

}  // namespace translab
