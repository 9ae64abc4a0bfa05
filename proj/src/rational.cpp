#include "rsf/rational.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace rsf {

std::string to_string(const Rational& q) {
  return q.str();
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char ch : s)
    if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
  return true;
}

BigInt pow10(unsigned k) {
  BigInt r = 1;
  for (unsigned i = 0; i < k; ++i) r *= 10;
  return r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  if (s.empty()) throw std::invalid_argument("empty rational");

  bool negative = false;
  std::string_view body(s);
  if (body.front() == '+' || body.front() == '-') {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }

  Rational value;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    auto num = body.substr(0, slash);
    auto den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den))
      throw std::invalid_argument("malformed rational '" + s + "'");
    BigInt d{std::string(den)};
    if (d == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
    BigInt nm{std::string(num)};
    value = Rational(nm, d);
  } else {
    int exponent = 0;
    if (auto e = body.find_first_of("eE"); e != std::string_view::npos) {
      auto ex = body.substr(e + 1);
      bool eneg = false;
      if (!ex.empty() && (ex.front() == '+' || ex.front() == '-')) {
        eneg = ex.front() == '-';
        ex.remove_prefix(1);
      }
      if (!all_digits(ex)) throw std::invalid_argument("malformed exponent in '" + s + "'");
      exponent = std::stoi(std::string(ex)) * (eneg ? -1 : 1);
      body = body.substr(0, e);
    }
    std::string digits;
    int scale = 0;
    if (auto dot = body.find('.'); dot != std::string_view::npos) {
      digits = std::string(body.substr(0, dot)) + std::string(body.substr(dot + 1));
      scale = static_cast<int>(body.size() - dot - 1);
    } else {
      digits = std::string(body);
    }
    if (!all_digits(digits)) throw std::invalid_argument("malformed number '" + s + "'");
    value = Rational(BigInt(digits));
    int shift = exponent - scale;
    if (shift > 0) value *= Rational(pow10(static_cast<unsigned>(shift)));
    if (shift < 0) value /= Rational(pow10(static_cast<unsigned>(-shift)));
  }
  return negative ? Rational(-value) : value;
}

Rational rational_from_double(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("non-finite value has no rational form");
  int exp = 0;
  double mant = std::frexp(x, &exp);
  // 53 significant bits fit in an int64 after scaling.
  auto scaled = static_cast<long long>(std::ldexp(mant, 53));
  Rational r{BigInt(scaled)};
  exp -= 53;
  BigInt two_pow = 1;
  for (int i = 0; i < std::abs(exp); ++i) two_pow *= 2;
  return exp >= 0 ? Rational(r * Rational(two_pow)) : Rational(r / Rational(two_pow));
}

double to_double(const Rational& q) {
  return q.convert_to<double>();
}

}  // namespace rsf
