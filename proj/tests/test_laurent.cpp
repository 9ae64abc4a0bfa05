#include <catch_amalgamated.hpp>

#include "rsf/laurent.hpp"

using namespace rsf;

TEST_CASE("arithmetic and normal form", "[laurent]") {
  LaurentValue a = LaurentValue(1) + LaurentValue::monomial(1, -1);
  LaurentValue b = LaurentValue(1) - LaurentValue::monomial(1, -1);
  CHECK(a * b == LaurentValue(1) - LaurentValue::monomial(1, -2));
  CHECK((a - a).is_zero());
  CHECK(a.max_n_power() == 0);
  CHECK_FALSE(LaurentValue().max_n_power());
  CHECK(a.evaluate(Rational(3)) == Rational(4, 3));
  CHECK(a.shifted(1) == LaurentValue::monomial(1, 1) + LaurentValue(1));
  CHECK(a.to_string() == "1 + N^-1");
}

TEST_CASE("symbolic c", "[laurent]") {
  LaurentValue v = LaurentValue::monomial(2, 0, 1) + LaurentValue::monomial(1, -1, 2);
  CHECK(v.has_c());
  CHECK(v.constant_term() == LaurentValue::monomial(2, 0, 1));
  CHECK(v.substitute_c(Rational(1, 2)) == LaurentValue(1) + LaurentValue::monomial(Rational(1, 4), -1));
  CHECK(v.evaluate(Rational(2), Rational(3)) == Rational(6) + Rational(9, 2));
}

TEST_CASE("json round trip", "[laurent]") {
  LaurentValue v = LaurentValue(Rational(-3, 7)) + LaurentValue::monomial(5, -2, 1);
  auto j = v.to_json();
  CHECK(j.at("N^0") == "-3/7");
  CHECK(LaurentValue::from_json(j) == v);
  CHECK(LaurentValue::from_json(LaurentValue().to_json()).is_zero());
  CHECK_THROWS(LaurentValue::from_json(nlohmann::json{{"bogus", "1"}}));
}
