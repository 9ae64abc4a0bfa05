#include "rsf/asymptotics.hpp"

#include <map>
#include <stdexcept>

namespace rsf {

namespace {

// ε per position; only Ginibre keeps transposes.
std::vector<int> sign_pattern(const std::vector<Letter>& word, const EnsembleModel& model) {
  std::vector<int> eps;
  for (auto& l : word) eps.push_back(model.kind == EnsembleKind::Ginibre && l.transpose ? -1 : 1);
  return eps;
}

void require_limit_model(const EnsembleModel& model) {
  if (model.explicit_d()) throw std::invalid_argument("limits are only available for identity-D Wishart models");
}

// δ_ε π₊π₋⁻¹ δ_ε for π a permutation of a set of signed points.
SignedPermutation lift_and_twist(const SignedPermutation& pi, const IntSet& dom, const std::vector<int>& eps) {
  std::map<int, int> img;
  SignedPermutation inv = pi.inverse();
  for (int x : dom) {
    img[x] = pi(x);
    img[-x] = -inv(x);
  }
  auto de = [&](int x) { return eps[(x < 0 ? -x : x) - 1] * x; };
  std::map<int, int> tw;
  for (auto [x, y] : img) tw[de(x)] = de(y);
  return SignedPermutation::from_map(tw);
}

LaurentValue limit_weight(const EnsembleModel& model, std::size_t cycles) {
  if (model.kind != EnsembleKind::Wishart) return LaurentValue(Rational(1));
  if (model.ratio) {
    Rational v(1);
    for (std::size_t i = 0; i < cycles; ++i) v *= *model.ratio;
    return LaurentValue(v);
  }
  return LaurentValue::monomial(Rational(1), 0, static_cast<int>(cycles));
}

Rational factorial(int k) {
  Rational r(1);
  for (int i = 2; i <= k; ++i) r *= i;
  return r;
}

}  // namespace

LimitValue phi1(const std::vector<Letter>& word, const EnsembleModel& model, EnumerationGuard guard) {
  require_limit_model(model);
  LimitValue out{LaurentValue(Rational(1)), "disc-noncrossing enumeration"};
  int n = static_cast<int>(word.size());
  if (n == 0) return out;
  out.value = LaurentValue();
  IntSet I = interval(n);
  Cycle c(I.begin(), I.end());
  SignedPermutation gamma = SignedPermutation::from_cycles({c});
  auto eps = sign_pattern(word, model);
  ClassKind kind = model.premap_class();
  for_each_disc_nc(
      gamma, I,
      [&](const SignedPermutation& pi) {
        SignedPermutation s = lift_and_twist(pi, I, eps);
        if (class_contains(kind, s, I)) out.value += limit_weight(model, pi.cycle_count(I));
      },
      guard);
  return out;
}

LimitValue phi2(const std::vector<Letter>& w1, const std::vector<Letter>& w2, const EnsembleModel& model,
                EnumerationGuard guard) {
  require_limit_model(model);
  LimitValue out{LaurentValue(), "annular-noncrossing enumeration, both orientations"};
  int m = static_cast<int>(w1.size()), n = static_cast<int>(w2.size());
  if (m == 0 || n == 0) return out;
  std::vector<Letter> word = w1;
  word.insert(word.end(), w2.begin(), w2.end());
  auto eps = sign_pattern(word, model);
  ClassKind kind = model.premap_class();
  IntSet I = interval(m + n);

  Cycle a, b, b_op;
  for (int k = 1; k <= m; ++k) a.push_back(k);
  for (int k = m + 1; k <= m + n; ++k) b.push_back(k);
  for (int k = m + n; k >= m + 1; --k) b_op.push_back(-k);
  IntSet I_op;
  for (int k = 1; k <= m; ++k) I_op.push_back(k);
  for (int k = m + 1; k <= m + n; ++k) I_op.push_back(-k);
  I_op = normalize_set(I_op);

  auto visit = [&](const IntSet& dom) {
    return [&, dom](const SignedPermutation& pi) {
      SignedPermutation s = lift_and_twist(pi, dom, eps);
      if (class_contains(kind, s, I)) out.value += limit_weight(model, pi.cycle_count(dom));
    };
  };
  for_each_ann_nc(SignedPermutation::from_cycles({a, b}), I, visit(I), guard);
  for_each_ann_nc(SignedPermutation::from_cycles({a, b_op}), I_op, visit(I_op), guard);
  return out;
}

Rational catalan(int k) {
  if (k < 0) throw std::invalid_argument("negative Catalan index");
  return factorial(2 * k) / (factorial(k) * factorial(k + 1));
}

Rational closed_form_goe_fluct(int p, int q) {
  if (p < 1 || q < 1) throw std::invalid_argument("p and q must be positive");
  auto even = [](int k) { return factorial(k) / (factorial(k / 2) * factorial(k / 2 - 1)); };
  auto odd = [](int k) {
    Rational h = factorial((k - 1) / 2);
    return factorial(k) / (h * h);
  };
  Rational pre = Rational(4) / (p + q);
  if (p % 2 == 0 && q % 2 == 0) return pre * even(p) * even(q);
  if (p % 2 == 1 && q % 2 == 1) return pre * odd(p) * odd(q);
  return Rational(0);
}

Rational closed_form_wishart_fluct(int p, int q) {
  if (p < 1 || q < 1) throw std::invalid_argument("p and q must be positive");
  auto f = [](int k) { return factorial(2 * k) / (factorial(k) * factorial(k - 1)); };
  return Rational(2) / (p + q) * f(p) * f(q);
}

void require_alternating(const std::vector<std::vector<Letter>>& factors, bool cyclic) {
  if (factors.size() < 2) throw std::invalid_argument("an alternating word needs at least two factors");
  for (auto& f : factors) {
    if (f.empty()) throw std::invalid_argument("empty factor in an alternating word");
    for (auto& l : f)
      if (l.colour != f.front().colour) throw std::invalid_argument("each factor must use a single colour");
  }
  std::size_t pairs = cyclic ? factors.size() : factors.size() - 1;
  for (std::size_t i = 0; i < pairs; ++i)
    if (factors[i].front().colour == factors[(i + 1) % factors.size()].front().colour)
      throw std::invalid_argument(cyclic ? "word is not cyclically alternating in colours"
                                         : "word is not alternating in colours");
}

LaurentValue freeness_defect(const std::vector<std::vector<Letter>>& factors, const ModelMap& models,
                             const ExactOptions& opt) {
  require_alternating(factors, false);
  CentredExpression ce{{factors}};
  return exact_centred_cumulant(ce, models, opt).shifted(-1);
}

LaurentValue phi1_mixed(const std::vector<Letter>& word, const ModelMap& models, const ExactOptions& opt) {
  if (word.empty()) return LaurentValue(Rational(1));
  return exact_moment(TraceExpression::from_traces({word}), models, opt).constant_term();
}

LaurentValue second_order_rhs(const std::vector<std::vector<Letter>>& a, const std::vector<std::vector<Letter>>& b,
                              const ModelMap& models, const ExactOptions& opt) {
  require_alternating(a);
  require_alternating(b);
  if (a.size() != b.size()) return {};
  int p = static_cast<int>(a.size());
  auto centred_pair = [&](const std::vector<Letter>& x, const std::vector<Letter>& y) {
    std::vector<Letter> xy = x;
    xy.insert(xy.end(), y.begin(), y.end());
    return phi1_mixed(xy, models, opt) - phi1_mixed(x, models, opt) * phi1_mixed(y, models, opt);
  };
  auto at = [&](int j) -> const std::vector<Letter>& { return b[((j % p) + p) % p]; };
  LaurentValue total;
  for (int k = 0; k < p; ++k) {
    LaurentValue prod(Rational(1));
    for (int i = 1; i <= p && !prod.is_zero(); ++i) prod *= centred_pair(a[i - 1], at(k - i - 1));
    total += prod;
  }
  for (int k = 0; k < p; ++k) {
    LaurentValue prod(Rational(1));
    for (int i = 1; i <= p && !prod.is_zero(); ++i) prod *= centred_pair(a[i - 1], transpose_word(at(k + i - 1)));
    total += prod;
  }
  return total;
}

LaurentValue second_order_lhs(const std::vector<std::vector<Letter>>& a, const std::vector<std::vector<Letter>>& b,
                              const ModelMap& models, const ExactOptions& opt) {
  require_alternating(a);
  require_alternating(b);
  CentredExpression ce{{a, b}};
  return exact_centred_cumulant(ce, models, opt).constant_term();
}

LaurentValue higher_cumulant(const std::vector<std::vector<Letter>>& traces, const ModelMap& models,
                             const ExactOptions& opt) {
  if (traces.size() < 3) throw std::invalid_argument("higher cumulants need at least three traces");
  return exact_trace_cumulant(TraceExpression::from_traces(traces), models, opt);
}

bool vanishes_in_limit(const LaurentValue& v) {
  auto top = v.max_n_power();
  return !top || *top < 0;
}

}  // namespace rsf
