#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>

#include "json.hpp"

#include "rsf/rational.hpp"

namespace rsf {

/// Σ a_{k,j} N^k c^j with exact rational coefficients; zero terms are never stored.
class LaurentValue {
 public:
  using Key = std::pair<int, int>;  // (power of N, power of c)

  LaurentValue() = default;
  LaurentValue(const Rational& constant);  // NOLINT: implicit by design
  static LaurentValue monomial(const Rational& coef, int n_power, int c_power = 0);

  const std::map<Key, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool has_c() const;

  void add_term(const Rational& coef, int n_power, int c_power = 0);

  LaurentValue& operator+=(const LaurentValue& o);
  LaurentValue& operator-=(const LaurentValue& o);
  LaurentValue& operator*=(const LaurentValue& o);
  friend LaurentValue operator+(LaurentValue a, const LaurentValue& b) { return a += b; }
  friend LaurentValue operator-(LaurentValue a, const LaurentValue& b) { return a -= b; }
  friend LaurentValue operator*(LaurentValue a, const LaurentValue& b) { return a *= b; }
  LaurentValue operator-() const;
  friend bool operator==(const LaurentValue&, const LaurentValue&) = default;

  /// Multiplies by N^k.
  LaurentValue shifted(int k) const;
  /// N⁰ part, still polynomial in c.
  LaurentValue constant_term() const;
  /// Largest power of N present; nullopt for zero.
  std::optional<int> max_n_power() const;

  Rational evaluate(const Rational& N, const Rational& c = Rational(1)) const;
  /// Replaces c by a number.
  LaurentValue substitute_c(const Rational& c) const;

  /// {"N^0":"1","N^-1":"1","N^0*c^1":"2"}
  nlohmann::json to_json() const;
  static LaurentValue from_json(const nlohmann::json& j);
  /// Human-readable, e.g. "1 + N^-1".
  std::string to_string() const;

 private:
  std::map<Key, Rational> terms_;
};

}  // namespace rsf
