// Acceptance suite: one PASS/FAIL line per criterion; exit status 0 iff all pass.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include "rsf/asymptotics.hpp"
#include "rsf/diagrams.hpp"
#include "rsf/ensembles.hpp"
#include "rsf/expression.hpp"
#include "rsf/montecarlo.hpp"
#include "rsf/oracle.hpp"

using namespace rsf;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

Letter L(const std::string& c, bool t = false, const std::string& label = "") { return Letter{c, label, t}; }

std::vector<Letter> pw(const std::string& c, int k) { return std::vector<Letter>(k, L(c)); }

// Every permutation of [n] as a trace shape.
std::vector<SignedPermutation> all_shapes(int n) {
  std::vector<int> img(n);
  std::iota(img.begin(), img.end(), 1);
  std::vector<SignedPermutation> out;
  do {
    std::map<int, int> m;
    for (int k = 1; k <= n; ++k) m[k] = img[k - 1];
    out.push_back(SignedPermutation::from_map(m));
  } while (std::next_permutation(img.begin(), img.end()));
  return out;
}

RMatrix diag_1_to(int M) {
  RMatrix d = RMatrix::Zero(M, M);
  for (int i = 0; i < M; ++i) d(i, i) = Rational(i + 1);
  return d;
}

// exact_moment vs wick_expectation over all shapes for a list of words.
void compare_words(const std::vector<std::vector<Letter>>& words, const ModelMap& models, int N, std::size_t& cases,
                   std::size_t& bad, std::string& first_bad) {
  for (auto& w : words) {
    int n = static_cast<int>(w.size());
    for (auto& g : all_shapes(n)) {
      TraceExpression e{w, g};
      Rational x = exact_moment(e, models).evaluate(Rational(N));
      Rational o = wick_expectation(e, models, N);
      ++cases;
      if (x != o) {
        if (!bad) {
          std::ostringstream os;
          os << "gamma=" << g.to_string() << " N=" << N << " exact=" << x << " oracle=" << o;
          first_bad = os.str();
        }
        ++bad;
      }
    }
  }
}

Outcome criterion1() {
  std::size_t cases = 0, bad = 0;
  std::string first;
  for (int N : {2, 3}) {
    ModelMap models{{"Z", EnsembleModel::ginibre()},
                    {"T", EnsembleModel::goe()},
                    {"W", EnsembleModel::wishart(Rational(1))},
                    {"V", EnsembleModel::wishart_explicit({{"D", diag_1_to(N)}})}};
    for (int n = 1; n <= 4; ++n) {
      std::vector<std::vector<Letter>> words;
      for (int mask = 0; mask < (1 << n); ++mask) {
        std::vector<Letter> w;
        for (int k = 0; k < n; ++k) w.push_back(L("Z", mask >> k & 1));
        words.push_back(w);
      }
      words.push_back(pw("T", n));
      words.push_back(pw("W", n));
      words.push_back(std::vector<Letter>(n, L("V", false, "D")));
      compare_words(words, models, N, cases, bad, first);
    }
  }
  std::ostringstream os;
  os << cases << " word/shape/N cases, " << bad << " mismatches" << (bad ? "; first: " + first : "");
  return {bad == 0, os.str()};
}

Outcome criterion2() {
  std::size_t cases = 0, bad = 0;
  std::string first;
  for (int N : {2, 3}) {
    ModelMap models{{"T", EnsembleModel::goe()}, {"W", EnsembleModel::wishart(Rational(1))}};
    for (int n = 2; n <= 4; ++n) {
      std::vector<std::vector<Letter>> words;
      for (int mask = 1; mask + 1 < (1 << n); ++mask) {
        std::vector<Letter> w;
        for (int k = 0; k < n; ++k) w.push_back(L(mask >> k & 1 ? "W" : "T"));
        words.push_back(w);
      }
      compare_words(words, models, N, cases, bad, first);
    }
  }
  std::ostringstream os;
  os << cases << " two-colour cases, " << bad << " mismatches" << (bad ? "; first: " + first : "");
  return {bad == 0, os.str()};
}

Outcome criterion3() {
  std::vector<int> goe_expected{0, 1, 0, 2, 0, 5, 0, 14};
  std::vector<int> wis_expected{1, 2, 5, 14, 42};
  std::ostringstream os;
  bool ok = true;
  os << "GOE:";
  for (int n = 1; n <= 8; ++n) {
    LaurentValue v = phi1(pw("T", n), EnsembleModel::goe()).value;
    os << " " << v.to_string();
    ok = ok && v == LaurentValue(Rational(goe_expected[n - 1]));
  }
  os << "; Wishart c=1:";
  for (int n = 1; n <= 5; ++n) {
    LaurentValue v = phi1(pw("W", n), EnsembleModel::wishart(Rational(1))).value;
    os << " " << v.to_string();
    ok = ok && v == LaurentValue(Rational(wis_expected[n - 1]));
  }
  return {ok, os.str()};
}

Outcome criterion4() {
  bool ok = true;
  std::ostringstream os;
  int bad = 0;
  for (int p = 1; p <= 5; ++p)
    for (int q = 1; q <= 5; ++q) {
      LaurentValue v = phi2(pw("T", p), pw("T", q), EnsembleModel::goe()).value;
      Rational cf = closed_form_goe_fluct(p, q);
      if (!(v == LaurentValue(cf))) {
        ok = false;
        if (!bad++) os << "first mismatch (" << p << "," << q << "): phi2=" << v.to_string() << " closed=" << cf << "; ";
      }
    }
  LaurentValue v11 = phi2(pw("T", 1), pw("T", 1), EnsembleModel::goe()).value;
  LaurentValue v22 = phi2(pw("T", 2), pw("T", 2), EnsembleModel::goe()).value;
  ok = ok && v11 == LaurentValue(Rational(2)) && v22 == LaurentValue(Rational(4));
  os << "25 (p,q) pairs, " << bad << " mismatches; (1,1)=" << v11.to_string() << " (2,2)=" << v22.to_string();
  return {ok, os.str()};
}

// Joint MC of Tr W^p, p = 1..4, for identity Wishart c = 1.
struct PowerSamples {
  std::vector<std::array<double, 4>> tr;
};

PowerSamples sample_wishart_powers(int N, std::size_t samples, std::uint64_t seed) {
  EnsembleModel m = EnsembleModel::wishart(Rational(1));
  PowerSamples out;
  out.tr.resize(samples);
  const std::size_t block = 500;
  for (std::size_t b = 0; b * block < samples; ++b) {
    Rng rng(block_seed(seed, b));
    for (std::size_t i = b * block; i < std::min(samples, (b + 1) * block); ++i) {
      Eigen::MatrixXd W = sample_matrix(m, N, rng);
      Eigen::MatrixXd W2 = W * W;
      out.tr[i] = {W.trace(), W2.trace(), W2.cwiseProduct(W).sum(), W2.squaredNorm()};
    }
  }
  return out;
}

struct CovEstimate {
  double cov, se;
};

CovEstimate covariance(const PowerSamples& s, int p, int q) {
  std::size_t n = s.tr.size();
  double mx = 0, my = 0;
  for (auto& t : s.tr) {
    mx += t[p - 1];
    my += t[q - 1];
  }
  mx /= n;
  my /= n;
  std::vector<double> z(n);
  double mz = 0;
  for (std::size_t i = 0; i < n; ++i) {
    z[i] = (s.tr[i][p - 1] - mx) * (s.tr[i][q - 1] - my);
    mz += z[i];
  }
  mz /= n;
  double ss = 0;
  for (double v : z) ss += (v - mz) * (v - mz);
  return {mz * n / (n - 1), std::sqrt(ss / (n - 1) / n)};
}

Outcome criterion5() {
  ModelMap models{{"W", EnsembleModel::wishart(Rational(1))}};
  const EnsembleModel& m = models.at("W");
  std::ostringstream os;
  bool ok = true;

  LaurentValue v11 = phi2(pw("W", 1), pw("W", 1), m).value;
  bool mandatory = v11 == LaurentValue(Rational(2));
  ok = ok && mandatory;
  os << "(1,1): phi2=" << v11.to_string() << " (closed form " << closed_form_wishart_fluct(1, 1) << ")";

  const std::size_t samples = 20000;
  PowerSamples s50 = sample_wishart_powers(50, samples, 5050);
  PowerSamples s100 = sample_wishart_powers(100, samples, 100100);
  int flagged = 0, mc_bad = 0, exact_bad = 0;
  double worst_z = 0;
  for (int p = 2; p <= 4; ++p)
    for (int q = 2; q <= 4; ++q) {
      LaurentValue ph = phi2(pw("W", p), pw("W", q), m).value;
      Rational cf = closed_form_wishart_fluct(p, q);
      if (ph == LaurentValue(cf)) continue;
      ++flagged;
      LaurentValue ex = exact_trace_cumulant(TraceExpression::from_traces({pw("W", p), pw("W", q)}), models);
      if (!(ex.constant_term() == ph)) ++exact_bad;
      // Limit estimate from N = 50, 100 removing the 1/N term: 2 f(100) - f(50).
      CovEstimate a = covariance(s50, p, q), b = covariance(s100, p, q);
      double lim = 2 * b.cov - a.cov;
      double se = std::sqrt(4 * b.se * b.se + a.se * a.se);
      double z = std::abs(lim - to_double(ph.constant_term().evaluate(Rational(1)))) / se;
      worst_z = std::max(worst_z, z);
      if (z > 5) ++mc_bad;
    }
  ok = ok && exact_bad == 0 && mc_bad == 0;
  os << "; 2<=p,q<=4: " << flagged << "/9 flagged as closed-form discrepancies (closed form = 2 x phi2), "
     << exact_bad << " differ from the exact k2 constant term, " << mc_bad
     << " outside 5 SE of the extrapolated MC limit (worst |z|=" << std::fixed << std::setprecision(2) << worst_z
     << ")";
  return {ok, os.str()};
}

Outcome criterion6() {
  ModelMap models{{"T", EnsembleModel::goe()}, {"W", EnsembleModel::wishart()}};
  LaurentValue m2 = exact_moment(TraceExpression::from_traces({pw("T", 2)}), models);
  LaurentValue kt = exact_trace_cumulant(TraceExpression::from_traces({pw("T", 1), pw("T", 1)}), models);
  LaurentValue kw = exact_trace_cumulant(TraceExpression::from_traces({pw("W", 1), pw("W", 1)}), models);
  LaurentValue want_m2 = LaurentValue(Rational(1)) + LaurentValue::monomial(Rational(1), -1);
  bool ok = m2 == want_m2 && kt == LaurentValue(Rational(2)) && kw == LaurentValue::monomial(Rational(2), 0, 1);
  return {ok, "E tr T^2 = " + m2.to_string() + "; k2(Tr T,Tr T) = " + kt.to_string() +
                  "; k2(Tr W,Tr W) = " + kw.to_string()};
}

Outcome criterion7() {
  struct Pair {
    std::string a, b;
    ModelMap models;
  };
  std::vector<Pair> pairs{
      {"T1", "T2", {{"T1", EnsembleModel::goe()}, {"T2", EnsembleModel::goe()}}},
      {"T", "W", {{"T", EnsembleModel::goe()}, {"W", EnsembleModel::wishart()}}},
      {"W1", "W2", {{"W1", EnsembleModel::wishart()}, {"W2", EnsembleModel::wishart()}}},
  };
  int words = 0, bad = 0;
  std::string first;
  for (auto& pr : pairs)
    for (int len = 2; len <= 4; ++len)
      for (int start = 0; start < 2; ++start)
        for (int mask = 0; mask < (1 << len); ++mask) {
          std::vector<std::vector<Letter>> factors;
          for (int f = 0; f < len; ++f) factors.push_back(pw((f + start) % 2 ? pr.b : pr.a, (mask >> f & 1) + 1));
          LaurentValue d = freeness_defect(factors, pr.models);
          ++words;
          if (!d.constant_term().is_zero()) {
            if (!bad++) first = pr.a + "/" + pr.b + " len " + std::to_string(len) + ": " + d.to_string();
          }
        }
  std::ostringstream os;
  os << words << " alternating centred words, " << bad << " with nonzero limit" << (bad ? "; first: " + first : "");
  return {bad == 0, os.str()};
}

Outcome criterion8() {
  std::ostringstream os;
  bool ok = true;
  ModelMap tt{{"T1", EnsembleModel::goe()}, {"T2", EnsembleModel::goe()}};
  ModelMap wt{{"W1", EnsembleModel::wishart(Rational(1))}, {"T", EnsembleModel::goe()}};

  auto run = [&](const std::string& label, const std::vector<std::vector<Letter>>& a,
                 const std::vector<std::vector<Letter>>& b, const ModelMap& models,
                 std::optional<Rational> expect) {
    LaurentValue lhs = second_order_lhs(a, b, models);
    LaurentValue rhs = second_order_rhs(a, b, models);
    bool pass = lhs == rhs && (!expect || lhs == LaurentValue(*expect));
    ok = ok && pass;
    os << label << ": lhs=" << lhs.to_string() << " rhs=" << rhs.to_string() << (pass ? "" : " MISMATCH") << "; ";
  };
  run("(T1,T2|T1,T2)", {pw("T1", 1), pw("T2", 1)}, {pw("T1", 1), pw("T2", 1)}, tt, Rational(2));
  run("(W1,T|W1,T)", {pw("W1", 1), pw("T", 1)}, {pw("W1", 1), pw("T", 1)}, wt, std::nullopt);
  run("(T1,T2|T1,T2,T1,T2)", {pw("T1", 1), pw("T2", 1)}, {pw("T1", 1), pw("T2", 1), pw("T1", 1), pw("T2", 1)}, tt,
      Rational(0));
  // Wider grid: p = q = 2, up to two letters per factor, both colour pairs.
  int grid = 0, grid_bad = 0;
  for (auto* models : {&tt, &wt}) {
    std::string a = models == &tt ? "T1" : "W1", b = models == &tt ? "T2" : "T";
    for (int mask = 0; mask < 16; ++mask) {
      auto e = [&](int bit) { return (mask >> bit & 1) + 1; };
      std::vector<std::vector<Letter>> x{pw(a, e(0)), pw(b, e(1))}, y{pw(a, e(2)), pw(b, e(3))};
      ++grid;
      if (!(second_order_lhs(x, y, *models) == second_order_rhs(x, y, *models))) ++grid_bad;
    }
  }
  ok = ok && grid_bad == 0;
  os << "grid of " << grid << " p=q=2 cases: " << grid_bad << " mismatches";
  return {ok, os.str()};
}

Outcome criterion9() {
  ModelMap models{{"T", EnsembleModel::goe()},
                  {"T1", EnsembleModel::goe()},
                  {"T2", EnsembleModel::goe()},
                  {"W", EnsembleModel::wishart(Rational(1))}};
  std::vector<std::string> exprs{"tr(T T)", "k(Tr(T),Tr(T))", "k(Tr(W),Tr(W))", "tr([T1][T2][T1][T2])"};
  int cells = 0, good = 0;
  std::ostringstream os;
  os << std::setprecision(3);
  std::uint64_t seed = 20240;
  for (std::size_t i = 0; i < exprs.size(); ++i) {
    Expression e = parse_expression(exprs[i]);
    LaurentValue ex = exact_value(e, models);
    for (int N : {50, 100, 200}) {
      MCOptions mo;
      mo.samples = 20000;
      mo.seed = block_seed(seed + i, static_cast<std::uint64_t>(N));
      MCEstimate est = estimate(e, models, N, mo);
      double x = to_double(ex.evaluate(Rational(N)));
      double z = std::abs(est.mean - x) / est.std_error;
      ++cells;
      if (z <= 5) ++good;
      os << exprs[i] << "@" << N << " z=" << z << "; ";
    }
  }
  os << good << "/" << cells << " cells within 5 SE";
  return {good >= 11, os.str()};
}

// Random perfect matching on 2m slots as a premap (slot 2(k-1) is +k, 2(k-1)+1 is -k).
SignedPermutation random_premap(int m, std::mt19937_64& rng) {
  std::vector<int> slots(2 * m);
  std::iota(slots.begin(), slots.end(), 0);
  std::shuffle(slots.begin(), slots.end(), rng);
  std::vector<int> mate(2 * m);
  for (int i = 0; i < 2 * m; i += 2) {
    mate[slots[i]] = slots[i + 1];
    mate[slots[i + 1]] = slots[i];
  }
  auto elem = [](int s) { return s % 2 ? -(s / 2 + 1) : s / 2 + 1; };
  std::map<int, int> img;
  for (int s = 0; s < 2 * m; ++s) img[elem(s)] = elem(mate[s] ^ 1);
  return SignedPermutation::from_map(img);
}

SignedPermutation random_perm(int n, std::mt19937_64& rng) {
  std::vector<int> img(n);
  std::iota(img.begin(), img.end(), 1);
  std::shuffle(img.begin(), img.end(), rng);
  std::map<int, int> m;
  for (int k = 1; k <= n; ++k) m[k] = img[k - 1];
  return SignedPermutation::from_map(m);
}

SignedPermutation cycles_of_sizes(const std::vector<int>& sizes) {
  std::vector<Cycle> cs;
  int next = 1;
  for (int s : sizes) {
    Cycle c;
    for (int i = 0; i < s; ++i) c.push_back(next++);
    cs.push_back(c);
  }
  return SignedPermutation::from_cycles(cs);
}

// γ-blocks ±V joined with π: one block?
bool connected(const SignedPermutation& gamma, const SignedPermutation& pi, const IntSet& I) {
  IntSet pm = plus_minus(I);
  std::vector<IntSet> blocks;
  for (auto& c : gamma.cycles(I)) {
    IntSet b;
    for (int k : c) {
      b.push_back(k);
      b.push_back(-k);
    }
    blocks.push_back(normalize_set(b));
  }
  return join(Partition(blocks), Partition::orbits(pi, pm)).size() == 1;
}

// All compositions of n into positive parts, as trace shapes.
std::vector<std::vector<int>> compositions(int n) {
  std::vector<std::vector<int>> out;
  for (int mask = 0; mask < (1 << (n - 1)); ++mask) {
    std::vector<int> parts{1};
    for (int i = 0; i < n - 1; ++i) {
      if (mask >> i & 1)
        parts.push_back(1);
      else
        ++parts.back();
    }
    out.push_back(parts);
  }
  return out;
}

long double dfact(int k) {
  long double r = 1;
  for (; k > 1; k -= 2) r *= k;
  return r;
}

Outcome criterion10() {
  std::ostringstream os;
  int failures = 0;
  std::string first;
  auto fail = [&](const std::string& what) {
    if (!failures++) first = what;
  };
  std::size_t checks = 0;

  // Class cardinalities and premap axioms, n <= 6.
  for (int n = 1; n <= 6; ++n) {
    IntSet I = interval(n);
    for (ClassKind k : {ClassKind::AllPremaps, ClassKind::PairingPremaps, ClassKind::Ginibre}) {
      std::size_t count = 0;
      for_each_member(k, I, [&](const SignedPermutation& p) {
        ++count;
        ++checks;
        if (!is_premap(p, I)) fail("not a premap: " + p.to_string());
      });
      long double want = k == ClassKind::AllPremaps ? dfact(2 * n - 1)
                         : n % 2                    ? 0
                         : k == ClassKind::PairingPremaps ? dfact(n - 1) * std::pow(2.0L, n / 2)
                                                          : dfact(n - 1);
      if (static_cast<long double>(count) != want) fail("cardinality of " + to_string(k) + " at n=" + std::to_string(n));
    }
    // Catalan count of disc-noncrossing permutations.
    auto full = cycles_of_sizes({n});
    if (static_cast<long>(enumerate_disc_nc(full, I).size()) != catalan(n).convert_to<long>())
      fail("disc-nc count at n=" + std::to_string(n));
  }

  // χ ≤ 2 under connectivity, evenness of the geodesic defect, unoriented test ⇔ χ = 2.
  for (int n = 1; n <= 6; ++n) {
    IntSet I = interval(n);
    for (auto& shape : compositions(n)) {
      SignedPermutation g = cycles_of_sizes(shape);
      for_each_member(ClassKind::AllPremaps, I, [&](const SignedPermutation& p) {
        ++checks;
        EulerData e = euler_characteristic(g, p, I);
        if (connected(g, p, I) && e.chi > 2) fail("chi > 2 for " + p.to_string());
        if (shape.size() == 1 && unoriented_disc_test(g, p, I) != (e.chi == 2)) fail("disc test " + p.to_string());
        if (shape.size() == 2 && connected(g, p, I)) {
          AnnularOrientation o = unoriented_annular_test(g, p, I);
          if (o.planar != (e.chi == 2)) fail("annular test " + p.to_string());
        }
      });
    }
  }

  // Biane and Mingo–Nica: classification agrees with the cycle-count equality (the
  // classifiers cross-check internally and throw on disagreement).
  for (int n = 1; n <= 6; ++n) {
    IntSet I = interval(n);
    SignedPermutation full = cycles_of_sizes({n});
    std::vector<int> img(n);
    std::iota(img.begin(), img.end(), 1);
    do {
      std::map<int, int> m;
      for (int k = 1; k <= n; ++k) m[k] = img[k - 1];
      SignedPermutation pi = SignedPermutation::from_map(m);
      ++checks;
      bool eq = pi.cycle_count(I) + (full.inverse() * pi.inverse()).cycle_count(I) == static_cast<std::size_t>(n) + 1;
      if ((classify_disc(full, pi, I) == Crossing::Noncrossing) != eq) fail("disc classification " + pi.to_string());
      for (int split = 1; split < n; ++split) {
        SignedPermutation g = cycles_of_sizes({split, n - split});
        IntSet V1 = interval(split), V2;
        for (int k = split + 1; k <= n; ++k) V2.push_back(k);
        if (!connects(pi, V1, V2)) continue;
        ++checks;
        bool aeq = pi.cycle_count(I) + (g.inverse() * pi.inverse()).cycle_count(I) == static_cast<std::size_t>(n);
        if ((classify_annular(g, pi, I) == Crossing::Noncrossing) != aeq) fail("annular classification " + pi.to_string());
      }
    } while (std::next_permutation(img.begin(), img.end()));
  }

  // Randomized, 7 <= n <= 10.
  std::mt19937_64 rng(12345);
  std::size_t random_cases = 0;
  for (int it = 0; it < 2000; ++it) {
    int n = 7 + it % 4;
    IntSet I = interval(n);
    SignedPermutation p = random_premap(n, rng);
    ++random_cases;
    if (!is_premap(p, I)) fail("random premap " + p.to_string());
    int split = 1 + static_cast<int>(rng() % (n - 1));
    SignedPermutation g1 = cycles_of_sizes({n}), g2 = cycles_of_sizes({split, n - split});
    EulerData e1 = euler_characteristic(g1, p, I);
    if (e1.chi > 2) fail("random chi > 2");
    if (unoriented_disc_test(g1, p, I) != (e1.chi == 2)) fail("random disc test");
    if (connected(g2, p, I)) {
      EulerData e2 = euler_characteristic(g2, p, I);
      if (e2.chi > 2) fail("random annular chi > 2");
      if (unoriented_annular_test(g2, p, I).planar != (e2.chi == 2)) fail("random annular test");
    }
    SignedPermutation pi = random_perm(n, rng);
    bool eq = pi.cycle_count(I) + (g1.inverse() * pi.inverse()).cycle_count(I) == static_cast<std::size_t>(n) + 1;
    if ((classify_disc(g1, pi, I) == Crossing::Noncrossing) != eq) fail("random disc classification");
    IntSet V1 = interval(split), V2;
    for (int k = split + 1; k <= n; ++k) V2.push_back(k);
    if (connects(pi, V1, V2)) {
      bool aeq = pi.cycle_count(I) + (g2.inverse() * pi.inverse()).cycle_count(I) == static_cast<std::size_t>(n);
      if ((classify_annular(g2, pi, I) == Crossing::Noncrossing) != aeq) fail("random annular classification");
    }
  }
  os << checks << " exhaustive checks (n<=6), " << random_cases << " random cases (7<=n<=10), " << failures
     << " failures" << (failures ? "; first: " + first : "");
  return {failures == 0, os.str()};
}

}  // namespace

int main() {
  std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"oracle equivalence, single colour", criterion1},
      {"oracle equivalence, two colours", criterion2},
      {"Catalan moments", criterion3},
      {"GOE fluctuation closed form", criterion4},
      {"Wishart fluctuation cross-check", criterion5},
      {"exact small-case identities", criterion6},
      {"asymptotic freeness", criterion7},
      {"real second-order freeness", criterion8},
      {"Monte Carlo concordance", criterion9},
      {"structural property suites", criterion10},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.pass) ++failed;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  [" << (i + 1) << "] " << criteria[i].first << " (" << std::fixed
              << std::setprecision(1) << secs << "s): " << o.detail << std::endl;
  }
  std::cout << (failed ? "acceptance: " + std::to_string(failed) + " criteria failed" : "acceptance: all criteria passed")
            << std::endl;
  return failed ? 1 : 0;
}
