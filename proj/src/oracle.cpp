#include "rsf/oracle.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <sstream>

namespace rsf {

int oracle_rows(const EnsembleModel& m, int N) {
  if (m.kind != EnsembleKind::Wishart) return N;
  if (m.explicit_d()) return m.dimension();
  if (!m.ratio) throw std::invalid_argument("the oracle needs a numeric c for identity Wishart models");
  Rational M = *m.ratio * N;
  if (denominator(M) != 1 || M <= 0) throw std::invalid_argument("cN must be a positive integer for the oracle");
  return numerator(M).convert_to<int>();
}

namespace {

struct Term {
  int k, l;
  Rational coef;
};

struct LetterPlan {
  EnsembleKind kind;
  int colour = 0;
  int rows = 0;  // Wishart M
  bool transpose = false;
  int next = 0;  // position whose index closes this entry
  std::vector<Term> d;  // Wishart D entries
  bool unit_d = true;
};

std::int64_t double_factorial_odd(int m) {  // (m-1)!!
  std::int64_t r = 1;
  for (int k = m - 1; k > 1; k -= 2) r *= k;
  return r;
}

std::int64_t monomial_moment(const int* atoms, int count) {
  int a[16];
  std::copy(atoms, atoms + count, a);
  std::sort(a, a + count);
  std::int64_t r = 1;
  for (int i = 0; i < count;) {
    int j = i;
    while (j < count && a[j] == a[i]) ++j;
    if ((j - i) % 2) return 0;
    r *= double_factorial_odd(j - i);
    i = j;
  }
  return r;
}

Rational pow_rational(const Rational& x, int k) {
  Rational r(1);
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

}  // namespace

Rational oracle_trace_product(const std::vector<std::vector<Letter>>& traces, const ModelMap& models, int N,
                              const OracleOptions& opt) {
  if (N < 1) throw std::invalid_argument("N must be positive");
  if (N > opt.max_N) throw std::invalid_argument("the oracle supports N <= " + std::to_string(opt.max_N));
  Rational constant(1);
  std::vector<std::vector<Letter>> words;
  for (auto& t : traces) {
    if (t.empty())
      constant *= N;
    else
      words.push_back(t);
  }
  if (words.empty()) return constant;

  TraceExpression expr = TraceExpression::from_traces(words);
  expr.validate(models);
  int n = static_cast<int>(expr.size());

  std::map<std::string, int> colour_id;
  std::vector<LetterPlan> plan(n);
  int K = N;
  std::size_t atoms = 0;
  long double work = 1;
  int goe = 0, half_n = 0, full_n = 0;
  bool all_unit = true;
  for (int p = 0; p < n; ++p) {
    const Letter& l = expr.letters[p];
    const EnsembleModel& m = models.at(l.colour);
    auto& lp = plan[p];
    lp.kind = m.kind;
    lp.colour = colour_id.emplace(l.colour, static_cast<int>(colour_id.size())).first->second;
    lp.transpose = l.transpose;
    lp.next = expr.gamma(p + 1) - 1;
    work *= N;
    switch (m.kind) {
      case EnsembleKind::Ginibre:
        ++half_n;
        ++atoms;
        break;
      case EnsembleKind::GOE:
        ++goe;
        ++half_n;
        ++atoms;
        work *= 2;
        break;
      case EnsembleKind::Wishart: {
        ++full_n;
        atoms += 2;
        lp.rows = oracle_rows(m, N);
        K = std::max(K, lp.rows);
        if (m.explicit_d()) {
          const RMatrix& d = m.matrix(l.label);
          for (int k = 0; k < d.rows(); ++k)
            for (int j = 0; j < d.cols(); ++j)
              if (d(k, j) != 0) lp.d.push_back({k, j, d(k, j)});
          lp.unit_d = false;
          all_unit = false;
        } else {
          for (int k = 0; k < lp.rows; ++k) lp.d.push_back({k, k, Rational(1)});
        }
        work *= static_cast<long double>(std::max<std::size_t>(lp.d.size(), 1));
        break;
      }
    }
  }
  if (atoms > opt.max_atoms) {
    std::ostringstream os;
    os << "oracle product has " << atoms << " Gaussian atoms, above the limit of " << opt.max_atoms;
    throw GuardExceeded(os.str(), static_cast<long double>(atoms));
  }
  if (work > opt.max_work) {
    std::ostringstream os;
    os << "oracle needs about " << static_cast<double>(work) << " expansion terms, above the limit of "
       << static_cast<double>(opt.max_work);
    throw GuardExceeded(os.str(), work);
  }

  std::vector<int> idx(n, 0);
  int atom_buf[16];
  std::int64_t count = 0;
  Rational sum(0);

  auto key = [&](int colour, int r, int c) { return (colour * K + r) * K + c; };

  std::function<void(int, int, const Rational*)> dfs = [&](int p, int depth, const Rational* coef) {
    if (p == n) {
      std::int64_t mom = monomial_moment(atom_buf, depth);
      if (mom == 0) return;
      if (all_unit)
        count += mom;
      else
        sum += *coef * mom;
      return;
    }
    const LetterPlan& lp = plan[p];
    int a = idx[p], b = idx[lp.next];
    if (lp.transpose) std::swap(a, b);
    switch (lp.kind) {
      case EnsembleKind::Ginibre:
        atom_buf[depth] = key(lp.colour, a, b);
        dfs(p + 1, depth + 1, coef);
        break;
      case EnsembleKind::GOE:
        atom_buf[depth] = key(lp.colour, a, b);
        dfs(p + 1, depth + 1, coef);
        atom_buf[depth] = key(lp.colour, b, a);
        dfs(p + 1, depth + 1, coef);
        break;
      case EnsembleKind::Wishart:
        // W_ab = Σ_kl D_kl X_ka X_lb / N
        for (auto& t : lp.d) {
          atom_buf[depth] = key(lp.colour, t.k, a);
          atom_buf[depth + 1] = key(lp.colour, t.l, b);
          if (lp.unit_d) {
            dfs(p + 1, depth + 2, coef);
          } else {
            Rational c = *coef * t.coef;
            dfs(p + 1, depth + 2, &c);
          }
        }
        break;
    }
  };

  Rational one(1);
  while (true) {
    dfs(0, 0, &one);
    int i = 0;
    for (; i < n; ++i) {
      if (++idx[i] < N) break;
      idx[i] = 0;
    }
    if (i == n) break;
  }
  Rational total = all_unit ? Rational(count) : sum;
  if (total == 0) return Rational(0);
  if (goe % 2 || half_n % 2)
    throw std::logic_error("nonzero oracle sum with an odd power of sqrt(2) or sqrt(N)");
  // Entry scalings: Ginibre N^{-1/2}, GOE (2N)^{-1/2}, Wishart N^{-1}.
  total /= pow_rational(Rational(2), goe / 2);
  total /= pow_rational(Rational(N), half_n / 2 + full_n);
  return total * constant;
}

Rational wick_expectation(const TraceExpression& expr, const ModelMap& models, int N, const OracleOptions& opt) {
  expr.validate(models);
  std::vector<std::vector<Letter>> words;
  for (auto& c : expr.gamma.cycles(interval(static_cast<int>(expr.size())))) {
    std::vector<Letter> w;
    for (int k : c) w.push_back(expr.letters[k - 1]);
    words.push_back(std::move(w));
  }
  Rational v = oracle_trace_product(words, models, N, opt);
  return v / pow_rational(Rational(N), static_cast<int>(words.size()));
}

namespace {

std::string word_key(const std::vector<Letter>& w) {
  std::string s;
  for (auto& l : w) s += l.colour + "{" + l.label + "}" + (l.transpose ? "'" : "") + " ";
  return s;
}

void set_partitions(int r, const std::function<void(const std::vector<unsigned>&)>& fn) {
  std::vector<unsigned> blocks;
  std::function<void(int)> rec = [&](int i) {
    if (i == r) {
      fn(blocks);
      return;
    }
    for (auto& b : blocks) {
      b |= 1u << i;
      rec(i + 1);
      b &= ~(1u << i);
    }
    blocks.push_back(1u << i);
    rec(i + 1);
    blocks.pop_back();
  };
  rec(0);
}

Rational factorial(int k) {
  Rational r(1);
  for (int i = 2; i <= k; ++i) r *= i;
  return r;
}

class MomentCache {
 public:
  MomentCache(const ModelMap& models, int N, const OracleOptions& opt) : models_(models), N_(N), opt_(opt) {}
  Rational get(const std::vector<std::vector<Letter>>& words) {
    std::string key;
    for (auto& w : words) key += word_key(w) + "|";
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    Rational v = oracle_trace_product(words, models_, N_, opt_);
    cache_.emplace(key, v);
    return v;
  }

 private:
  const ModelMap& models_;
  int N_;
  const OracleOptions& opt_;
  std::map<std::string, Rational> cache_;
};

Rational cumulant_with(MomentCache& cache, const std::vector<std::vector<Letter>>& traces) {
  int r = static_cast<int>(traces.size());
  if (r == 0) throw std::invalid_argument("cumulant of no traces");
  if (r > 8) throw std::invalid_argument("oracle cumulants support at most 8 entries");
  Rational total(0);
  set_partitions(r, [&](const std::vector<unsigned>& blocks) {
    int b = static_cast<int>(blocks.size());
    Rational term = factorial(b - 1);
    if ((b - 1) % 2) term = -term;
    for (unsigned mask : blocks) {
      std::vector<std::vector<Letter>> sub;
      for (int i = 0; i < r; ++i)
        if (mask >> i & 1u) sub.push_back(traces[i]);
      term *= cache.get(sub);
      if (term == 0) return;
    }
    total += term;
  });
  return total;
}

}  // namespace

Rational oracle_trace_cumulant(const std::vector<std::vector<Letter>>& traces, const ModelMap& models, int N,
                               const OracleOptions& opt) {
  MomentCache cache(models, N, opt);
  return cumulant_with(cache, traces);
}

Rational oracle_centred_cumulant(const CentredExpression& expr, const ModelMap& models, int N,
                                 const OracleOptions& opt) {
  expr.validate(models);
  MomentCache cache(models, N, opt);
  int r = static_cast<int>(expr.traces.size());
  // Per trace: every subset of kept factors with its coefficient ∏ (-E tr A_j).
  struct Choice {
    std::vector<Letter> word;
    Rational coef;
  };
  std::vector<std::vector<Choice>> choices(r);
  for (int t = 0; t < r; ++t) {
    const auto& factors = expr.traces[t];
    std::vector<Rational> kappa;
    for (auto& f : factors) kappa.push_back(cache.get({f}) / N);
    std::size_t F = factors.size();
    if (F > 16) throw std::invalid_argument("too many centred factors for the oracle");
    for (unsigned mask = 0; mask < (1u << F); ++mask) {
      Choice c{{}, Rational(1)};
      for (std::size_t j = 0; j < F; ++j) {
        if (mask >> j & 1u)
          c.word.insert(c.word.end(), factors[j].begin(), factors[j].end());
        else
          c.coef *= -kappa[j];
      }
      if (c.coef != 0) choices[t].push_back(std::move(c));
    }
  }
  Rational total(0);
  std::vector<std::size_t> pick(r, 0);
  std::function<void(int, const Rational&)> rec = [&](int t, const Rational& coef) {
    if (t == r) {
      std::vector<std::vector<Letter>> words;
      for (int i = 0; i < r; ++i) words.push_back(choices[i][pick[i]].word);
      total += coef * cumulant_with(cache, words);
      return;
    }
    for (pick[t] = 0; pick[t] < choices[t].size(); ++pick[t]) rec(t + 1, coef * choices[t][pick[t]].coef);
  };
  rec(0, Rational(1));
  return total;
}

Rational oracle_value(const Expression& e, const ModelMap& models, int N, const OracleOptions& opt) {
  e.validate(models);
  int tr_count = 0;
  for (auto& t : e.traces) tr_count += t.normalized ? 1 : 0;
  Rational scale = pow_rational(Rational(1) / N, tr_count);
  if (e.centred()) {
    CentredExpression ce;
    for (auto& t : e.traces) ce.traces.push_back(t.factors);
    return oracle_centred_cumulant(ce, models, N, opt) * scale;
  }
  std::vector<std::vector<Letter>> words;
  for (auto& t : e.traces) words.push_back(t.letters);
  if (e.kind == ExpressionKind::Moment) return oracle_trace_product(words, models, N, opt) * scale;
  return oracle_trace_cumulant(words, models, N, opt) * scale;
}

Rational mc_crosscheck_value(const Expression& e, const ModelMap& models, int N, const OracleOptions& opt) {
  return oracle_value(e, models, N, opt);
}

}  // namespace rsf
