#include <catch_amalgamated.hpp>

#include "rsf/ensembles.hpp"
#include "rsf/expression.hpp"
#include "rsf/oracle.hpp"

using namespace rsf;

namespace {

SignedPermutation P(const char* s) { return SignedPermutation::parse(s); }

Letter L(const char* c, bool t = false, const char* label = "") { return {c, label, t}; }

LaurentValue moment(const std::string& text, const ModelMap& m) { return exact_value(parse_expression(text), m); }

RMatrix diag(std::initializer_list<int> d) {
  RMatrix m = RMatrix::Zero(d.size(), d.size());
  int i = 0;
  for (int v : d) m(i, i) = v, ++i;
  return m;
}

}  // namespace

TEST_CASE("weights", "[ensembles]") {
  auto I = interval(2);
  std::vector<Letter> tt{L("T"), L("T")};
  CHECK(weight(EnsembleModel::goe(), P("(1,2)(-1,-2)"), I, tt) == LaurentValue(1));
  std::vector<Letter> ww{L("W"), L("W")};
  CHECK(weight(EnsembleModel::wishart(), P("(1,2)(-1,-2)"), I, ww) == LaurentValue::monomial(1, 0, 1));
  CHECK(weight(EnsembleModel::wishart(Rational(1, 2)), P("(1,2)(-1,-2)"), I, ww) == LaurentValue(Rational(1, 2)));
  CHECK_THROWS(weight(EnsembleModel::goe(), P("(1,2)"), I, tt));

  auto model = EnsembleModel::wishart_explicit({{"a", diag({1, 2})}, {"b", diag({3, 0})}});
  std::vector<Letter> ab{L("V", false, "a"), L("V", false, "b")};
  // one particular cycle through both letters: tr(D_a D_b)/N = 3/N
  CHECK(weight(model, P("(1,2)(-1,-2)"), I, ab) == LaurentValue::monomial(3, -1));
  // two fixed points: tr(D_a) tr(D_b) / N² = 9/N²
  CHECK(weight(model, P("()"), I, ab) == LaurentValue::monomial(9, -2));
  std::vector<Letter> missing{L("V", false, "a"), L("V", false, "z")};
  CHECK_THROWS(weight(model, P("()"), I, missing));
}

TEST_CASE("trace along a permutation", "[ensembles]") {
  CHECK(trace_along(P("()"), {{1, RMatrix::Identity(3, 3)}}) == 3);
  CHECK(trace_along(P("(1,2)"), {{1, diag({1, 2})}, {2, diag({1, 2})}}) == 5);
  RMatrix e12 = RMatrix::Zero(2, 2);
  e12(0, 1) = 1;
  CHECK(trace_along(P("(1,-2)"), {{1, e12}, {2, e12}}) == 1);
  CHECK_THROWS(trace_along(P("(1,2)"), {{1, RMatrix::Identity(2, 2)}, {2, RMatrix::Identity(3, 3)}}));
}

TEST_CASE("small exact moments", "[ensembles]") {
  ModelMap m{{"T", EnsembleModel::goe()}, {"Z", EnsembleModel::ginibre()}, {"W", EnsembleModel::wishart()}};
  CHECK(moment("tr(T T)", m) == LaurentValue(1) + LaurentValue::monomial(1, -1));
  CHECK(moment("tr(Z Z)", m) == LaurentValue::monomial(1, -1));
  CHECK(moment("tr(Z Z')", m) == LaurentValue(1));
  CHECK(moment("tr(W)", m) == LaurentValue::monomial(1, 0, 1));
  CHECK(moment("k(Tr(W),Tr(W))", m) == LaurentValue::monomial(2, 0, 1));
  CHECK(moment("k(Tr(T),Tr(T))", m) == LaurentValue(2));
  CHECK(moment("tr(Z^3)", m).is_zero());
  CHECK(moment("k(tr(T T))", m) == moment("tr(T T)", m));
}

TEST_CASE("moments reassemble from cumulants", "[ensembles]") {
  ModelMap m{{"T", EnsembleModel::goe()}, {"W", EnsembleModel::wishart()}};
  auto prod = moment("Tr(T T) Tr(W)", m);
  auto split = moment("k(Tr(T T),Tr(W))", m) + moment("Tr(T T)", m) * moment("Tr(W)", m);
  CHECK(prod == split);
  auto same = moment("Tr(W W) Tr(W)", m);
  CHECK(same == moment("k(Tr(W W),Tr(W))", m) + moment("Tr(W W)", m) * moment("Tr(W)", m));
}

TEST_CASE("transposes", "[ensembles]") {
  ModelMap m{{"T", EnsembleModel::goe()}, {"Z", EnsembleModel::ginibre()}};
  CHECK(moment("tr(T T' T T)", m) == moment("tr(T^4)", m));
  auto w = parse_expression("tr(Z Z Z' Z Z' Z')");
  auto t = w;
  t.traces[0].letters = transpose_word(w.traces[0].letters);
  CHECK(exact_value(w, m) == exact_value(t, m));
}

TEST_CASE("centred cumulants", "[ensembles]") {
  ModelMap m{{"T", EnsembleModel::goe()}, {"T1", EnsembleModel::goe()}, {"T2", EnsembleModel::goe()}};
  CHECK(moment("tr([T1][T2])", m).is_zero());
  auto v = moment("k(Tr([T T]),Tr([T T]))", m);
  CHECK(v.constant_term() == LaurentValue(4));
  for (int N : {2, 3}) CHECK(v.evaluate(N) == oracle_value(parse_expression("k(Tr([T T]),Tr([T T]))"), m, N));
  CHECK(moment("k(Tr([T1][T2]),Tr([T1][T2]))", m).constant_term() == LaurentValue(2));
  CentredExpression empty;
  empty.traces = {{{}}};
  CHECK_THROWS(exact_centred_cumulant(empty, m));
}

TEST_CASE("term guard", "[ensembles]") {
  ModelMap m{{"T", EnsembleModel::goe()}};
  ExactOptions small;
  small.max_terms = 100;
  CHECK_THROWS_AS(exact_value(parse_expression("tr(T^12)"), m, small), GuardExceeded);
  CHECK(term_count(TraceExpression::from_traces({{L("T"), L("T")}}), m) >= 1);
}
