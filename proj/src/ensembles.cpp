#include "rsf/ensembles.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

namespace rsf {

std::string to_string(EnsembleKind k) {
  switch (k) {
    case EnsembleKind::Ginibre: return "ginibre";
    case EnsembleKind::GOE: return "goe";
    case EnsembleKind::Wishart: return "wishart";
  }
  return "?";
}

EnsembleKind parse_ensemble_kind(const std::string& s) {
  std::string t = s;
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char ch) { return std::tolower(ch); });
  if (t == "ginibre") return EnsembleKind::Ginibre;
  if (t == "goe") return EnsembleKind::GOE;
  if (t == "wishart") return EnsembleKind::Wishart;
  throw std::invalid_argument("unknown ensemble kind '" + s + "'");
}

EnsembleModel EnsembleModel::wishart_explicit(std::map<std::string, RMatrix> d) {
  EnsembleModel m{EnsembleKind::Wishart, std::nullopt, std::move(d)};
  if (m.D.empty()) throw std::invalid_argument("explicit Wishart model needs at least one D matrix");
  m.dimension();
  return m;
}

int EnsembleModel::dimension() const {
  if (!explicit_d()) throw std::logic_error("dimension() needs an explicit-D Wishart model");
  long M = -1;
  for (auto& [label, d] : D) {
    if (d.rows() != d.cols() || d.rows() == 0)
      throw std::invalid_argument("D matrix '" + label + "' must be square and nonempty");
    if (M >= 0 && d.rows() != M) throw std::invalid_argument("D matrices of one colour must share a size");
    M = d.rows();
  }
  return static_cast<int>(M);
}

const RMatrix& EnsembleModel::matrix(const std::string& label) const {
  auto it = D.find(label);
  if (it == D.end()) throw std::invalid_argument("no D matrix for label '" + label + "'");
  return it->second;
}

ClassKind EnsembleModel::premap_class() const {
  switch (kind) {
    case EnsembleKind::Ginibre: return ClassKind::Ginibre;
    case EnsembleKind::GOE: return ClassKind::PairingPremaps;
    case EnsembleKind::Wishart: return ClassKind::AllPremaps;
  }
  return ClassKind::AllPremaps;
}

TraceExpression TraceExpression::from_traces(const std::vector<std::vector<Letter>>& traces) {
  TraceExpression e;
  std::vector<Cycle> cycles;
  int next = 1;
  for (auto& t : traces) {
    if (t.empty()) throw std::invalid_argument("empty trace in trace expression");
    Cycle c;
    for (auto& l : t) {
      e.letters.push_back(l);
      c.push_back(next++);
    }
    cycles.push_back(std::move(c));
  }
  e.gamma = SignedPermutation::from_cycles(cycles);
  return e;
}

std::size_t TraceExpression::trace_count() const {
  return gamma.cycle_count(interval(static_cast<int>(letters.size())));
}

void TraceExpression::validate(const ModelMap& models) const {
  IntSet dom = interval(static_cast<int>(letters.size()));
  if (!is_subset(gamma.support(), dom)) throw std::invalid_argument("trace shape is not a permutation of the letters");
  for (auto& l : letters) {
    auto it = models.find(l.colour);
    if (it == models.end()) throw std::invalid_argument("undeclared colour '" + l.colour + "'");
    if (it->second.explicit_d()) it->second.matrix(l.label);
  }
}

void CentredExpression::validate(const ModelMap& models) const {
  for (auto& t : traces) {
    if (t.empty()) throw std::invalid_argument("empty trace in centred expression");
    for (auto& f : t) {
      if (f.empty()) throw std::invalid_argument("empty centred factor");
      for (auto& l : f) {
        if (l.colour != f.front().colour) throw std::invalid_argument("a centred factor must use a single colour");
        auto it = models.find(l.colour);
        if (it == models.end()) throw std::invalid_argument("undeclared colour '" + l.colour + "'");
        if (it->second.explicit_d()) it->second.matrix(l.label);
      }
    }
  }
}

Rational trace_along(const SignedPermutation& pi, const std::map<int, RMatrix>& matrices) {
  IntSet keys;
  for (auto& [k, m] : matrices) {
    if (k <= 0) throw std::invalid_argument("trace_along: matrix keys must be positive");
    keys.push_back(k);
  }
  IntSet dom;
  std::set<int> seen_abs;
  for (int k : pi.support()) dom.push_back(k);
  for (int k : keys)
    if (pi(k) == k && pi(-k) == -k) dom.push_back(k);
  dom = normalize_set(std::move(dom));
  for (int k : dom) {
    int a = k < 0 ? -k : k;
    if (!matrices.count(a)) throw std::invalid_argument("trace_along: no matrix for index " + std::to_string(k));
    if (!seen_abs.insert(a).second) throw std::invalid_argument("trace_along: both k and -k present");
  }
  Rational total(1);
  for (auto& c : pi.cycles(dom)) {
    RMatrix acc;
    bool first = true;
    for (int k : c) {
      const RMatrix& m = matrices.at(k < 0 ? -k : k);
      RMatrix x = k < 0 ? RMatrix(m.transpose()) : m;
      if (first) {
        acc = x;
        first = false;
      } else {
        if (acc.cols() != x.rows()) throw std::invalid_argument("trace_along: dimension mismatch along a cycle");
        acc = RMatrix(acc * x);
      }
    }
    if (acc.rows() != acc.cols()) throw std::invalid_argument("trace_along: cycle product is not square");
    total *= acc.trace();
  }
  return total;
}

namespace {

// Position k uses D_λ or D_λᵀ (folded transpose).
RMatrix position_matrix(const EnsembleModel& model, const Letter& l) {
  const RMatrix& d = model.matrix(l.label);
  return l.transpose ? RMatrix(d.transpose()) : d;
}

struct ExplicitWeight {
  Rational coef;
  int n_shift;
};

ExplicitWeight explicit_weight(const EnsembleModel& model, const SignedPermutation& pi, const IntSet& I,
                               const std::vector<Letter>& letters) {
  ExplicitWeight w{Rational(1), 0};
  for (auto& c : pi.inverse().cycles(plus_minus(I))) {
    if (c.front() < 0) continue;  // keep particular cycles only
    std::map<int, RMatrix> local;
    for (int k : c) {
      int a = k < 0 ? -k : k;
      local[a] = position_matrix(model, letters.at(a - 1));
    }
    w.coef *= trace_along(SignedPermutation::from_cycles({c}), local);
    w.n_shift -= 1;
  }
  return w;
}

}  // namespace

LaurentValue weight(const EnsembleModel& model, const SignedPermutation& pi, const IntSet& I,
                    const std::vector<Letter>& letters) {
  if (!class_contains(model.premap_class(), pi, I))
    throw std::invalid_argument("premap " + pi.to_string() + " is not in the " + to_string(model.premap_class()) +
                                " class");
  if (model.kind != EnsembleKind::Wishart) return LaurentValue(Rational(1));
  if (model.explicit_d()) {
    auto w = explicit_weight(model, pi, I, letters);
    return LaurentValue::monomial(w.coef, w.n_shift);
  }
  IntSet A;
  for (int k : I) A.push_back(k < 0 ? -k : k);
  int cyc = static_cast<int>(pi.cycle_count(plus_minus(normalize_set(A))) / 2);
  if (model.ratio) {
    Rational v(1);
    for (int i = 0; i < cyc; ++i) v *= *model.ratio;
    return LaurentValue(v);
  }
  return LaurentValue::monomial(Rational(1), 0, cyc);
}

namespace {

// ---- dense engine -------------------------------------------------------
// Global index of signed position ±p (p = 1..n): 2(p-1) for +p, 2(p-1)+1 for -p,
// so δ is i ↦ i^1.

using Img = std::vector<std::uint8_t>;

template <class F>
void matchings(std::vector<int>& mate, F&& f) {
  int first = -1;
  for (std::size_t i = 0; i < mate.size(); ++i)
    if (mate[i] < 0) {
      first = static_cast<int>(i);
      break;
    }
  if (first < 0) {
    f();
    return;
  }
  for (std::size_t j = first + 1; j < mate.size(); ++j) {
    if (mate[j] >= 0) continue;
    mate[first] = static_cast<int>(j);
    mate[j] = first;
    matchings(mate, f);
    mate[first] = mate[j] = -1;
  }
}

// Members of a class on m local points as images over local indices 0..2m-1.
void dense_members(ClassKind kind, int m, const std::function<void(const Img&)>& fn) {
  Img img(2 * m);
  if (kind == ClassKind::AllPremaps) {
    std::vector<int> mate(2 * m, -1);
    matchings(mate, [&] {
      for (int s = 0; s < 2 * m; ++s) img[s] = static_cast<std::uint8_t>(mate[s] ^ 1);
      fn(img);
    });
    return;
  }
  if (m % 2) return;
  std::vector<int> mate(m, -1);
  std::vector<std::pair<int, int>> pairs;
  matchings(mate, [&] {
    pairs.clear();
    for (int i = 0; i < m; ++i)
      if (i < mate[i]) pairs.emplace_back(i, mate[i]);
    unsigned choices = kind == ClassKind::Ginibre ? 1u : (1u << pairs.size());
    for (unsigned mask = 0; mask < choices; ++mask) {
      for (std::size_t j = 0; j < pairs.size(); ++j) {
        auto [k, l] = pairs[j];
        bool twisted = kind == ClassKind::Ginibre || ((mask >> j) & 1u);
        int t = twisted ? 1 : 0;
        img[2 * k] = static_cast<std::uint8_t>(2 * l + t);
        img[2 * l + t] = static_cast<std::uint8_t>(2 * k);
        img[2 * k + 1] = static_cast<std::uint8_t>(2 * l + (1 - t));
        img[2 * l + (1 - t)] = static_cast<std::uint8_t>(2 * k + 1);
      }
      fn(img);
    }
  });
}

int count_cycles(const Img& img) {
  std::uint64_t seen = 0;
  int c = 0;
  for (std::size_t i = 0; i < img.size(); ++i) {
    if (seen >> i & 1) continue;
    ++c;
    for (std::size_t j = i; !(seen >> j & 1); j = img[j]) seen |= std::uint64_t{1} << j;
  }
  return c;
}

struct MemberInfo {
  Img dst;            // σ images at the colour's source slots
  int cycles = 0;     // #π over ±P
  int flat = 0;       // contribution to the accumulator index from c powers
  int n_shift = 0;    // explicit D: -#particular cycles
  Rational coef{1};   // explicit D trace product
};

struct ColourPlan {
  const EnsembleModel* model = nullptr;
  std::vector<int> positions;  // 1-based
  Img src;                     // global slots written by this colour (after δ_ε)
  bool unit = true;
  int c_stride = 0;            // identity Wishart: stride of its c power
  int c_dim = 1;
  bool symbolic_c = false;
  Rational ratio{1};
  std::vector<MemberInfo> members;  // empty for the streamed colour
};

enum class FilterKind { None, Connected, Centred };

struct Filter {
  FilterKind kind = FilterKind::None;
  std::vector<int> block_of_pos;  // 0-based position -> block
  int nblocks = 0;
  std::vector<int> group_of_block;  // centred only
};

struct TinyDsu {
  int parent[64];
  int size[64];
  void init(int n) {
    for (int i = 0; i < n; ++i) {
      parent[i] = i;
      size[i] = 1;
    }
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (size[a] < size[b]) std::swap(a, b);
    parent[b] = a;
    size[a] += size[b];
  }
};

class Engine {
 public:
  Engine(const std::vector<Letter>& letters, const SignedPermutation& gamma, const ModelMap& models, Filter filter,
         int exponent_offset, const ExactOptions& opt)
      : letters_(letters), filter_(std::move(filter)), offset_(exponent_offset) {
    n_ = static_cast<int>(letters_.size());
    if (n_ > 32) throw std::invalid_argument("expressions longer than 32 letters are not supported");
    IntSet dom = interval(n_);
    r_ = static_cast<int>(gamma.cycle_count(dom));

    std::map<std::string, int> index;
    for (int p = 1; p <= n_; ++p) {
      const Letter& l = letters_[p - 1];
      auto [it, fresh] = index.emplace(l.colour, static_cast<int>(plans_.size()));
      if (fresh) {
        plans_.emplace_back();
        plans_.back().model = &models.at(l.colour);
      }
      plans_[it->second].positions.push_back(p);
    }
    // δ_ε: only Ginibre keeps transposes.
    tflag_.assign(2 * n_, 0);
    for (int p = 1; p <= n_; ++p) {
      const Letter& l = letters_[p - 1];
      bool t = l.transpose && models.at(l.colour).kind == EnsembleKind::Ginibre;
      tflag_[2 * (p - 1)] = tflag_[2 * (p - 1) + 1] = t ? 1 : 0;
    }

    long double total = 1;
    for (auto& pl : plans_) total *= class_size(pl.model->premap_class(), pl.positions.size());
    projected_ = total;
    if (total > opt.max_terms) {
      std::ostringstream os;
      os << "expression needs " << static_cast<double>(total) << " premap tuples, above the limit of "
         << static_cast<double>(opt.max_terms);
      throw GuardExceeded(os.str(), total);
    }
    empty_ = total == 0;

    gp_.resize(2 * n_);
    gmi_.resize(2 * n_);
    SignedPermutation ginv = gamma.inverse();
    for (int p = 1; p <= n_; ++p) {
      gp_[2 * (p - 1)] = static_cast<std::uint8_t>(2 * (gamma(p) - 1));
      gp_[2 * (p - 1) + 1] = static_cast<std::uint8_t>(2 * (p - 1) + 1);
      gmi_[2 * (p - 1)] = static_cast<std::uint8_t>(2 * (p - 1));
      gmi_[2 * (p - 1) + 1] = static_cast<std::uint8_t>(2 * (ginv(p) - 1) + 1);
    }

    // Accumulator layout: [N exponent][c powers of identity-Wishart colours].
    e_min_ = 3 - 2 * n_ + offset_ - 2;
    e_range_ = 4 * n_ + 2 * r_ + 8;
    int stride = 1;
    for (auto& pl : plans_) {
      const EnsembleModel& m = *pl.model;
      if (m.kind == EnsembleKind::Wishart && !m.explicit_d()) {
        pl.c_stride = stride;
        pl.c_dim = static_cast<int>(pl.positions.size()) + 1;
        stride *= pl.c_dim;
        pl.symbolic_c = !m.ratio.has_value();
        if (m.ratio) pl.ratio = *m.ratio;
      }
      if (m.explicit_d()) pl.unit = false;
      if (!pl.unit) unit_ = false;
    }
    c_total_ = stride;
  }

  LaurentValue run() {
    if (n_ == 0 || empty_) return {};
    for (auto& pl : plans_) build_src(pl);
    // Stream the largest colour; store the others.
    std::size_t big = 0;
    for (std::size_t i = 1; i < plans_.size(); ++i)
      if (class_size(plans_[i].model->premap_class(), plans_[i].positions.size()) >
          class_size(plans_[big].model->premap_class(), plans_[big].positions.size()))
        big = i;
    for (std::size_t i = 0; i < plans_.size(); ++i)
      if (i != big) {
        auto& pl = plans_[i];
        dense_members(pl.model->premap_class(), static_cast<int>(pl.positions.size()),
                      [&](const Img& img) { pl.members.push_back(make_member(pl, img)); });
      }
    counts_.assign(static_cast<std::size_t>(e_range_) * c_total_, 0);
    if (!unit_) sums_.assign(counts_.size(), Rational(0));
    sigma_.assign(2 * n_, 0);

    auto& bp = plans_[big];
    std::vector<std::size_t> odo(plans_.size(), 0);
    dense_members(bp.model->premap_class(), static_cast<int>(bp.positions.size()), [&](const Img& img) {
      MemberInfo mb = make_member(bp, img);
      write(bp, mb);
      // Odometer over stored colours.
      for (std::size_t i = 0; i < plans_.size(); ++i)
        if (i != big) {
          odo[i] = 0;
          write(plans_[i], plans_[i].members[0]);
        }
      while (true) {
        tally(mb, big, odo);
        std::size_t i = 0;
        for (; i < plans_.size(); ++i) {
          if (i == big) continue;
          if (++odo[i] < plans_[i].members.size()) {
            write(plans_[i], plans_[i].members[odo[i]]);
            break;
          }
          odo[i] = 0;
          write(plans_[i], plans_[i].members[0]);
        }
        if (i == plans_.size()) break;
      }
    });
    return collect();
  }

 private:
  void build_src(ColourPlan& pl) {
    int m = static_cast<int>(pl.positions.size());
    pl.src.resize(2 * m);
    for (int j = 0; j < 2 * m; ++j) pl.src[j] = conj(global(pl, j));
  }

  std::uint8_t global(const ColourPlan& pl, int local) const {
    return static_cast<std::uint8_t>(2 * (pl.positions[local / 2] - 1) + (local & 1));
  }
  std::uint8_t conj(std::uint8_t g) const { return static_cast<std::uint8_t>(g ^ tflag_[g]); }

  MemberInfo make_member(const ColourPlan& pl, const Img& img) {
    MemberInfo mb;
    int m = static_cast<int>(pl.positions.size());
    mb.dst.resize(2 * m);
    for (int j = 0; j < 2 * m; ++j) mb.dst[j] = conj(global(pl, img[j]));
    mb.cycles = count_cycles(img);
    const EnsembleModel& model = *pl.model;
    if (model.kind == EnsembleKind::Wishart) {
      if (model.explicit_d()) {
        std::map<int, int> mp;
        auto elem = [&](int local) { return (local & 1) ? -pl.positions[local / 2] : pl.positions[local / 2]; };
        for (int j = 0; j < 2 * m; ++j) mp[elem(j)] = elem(img[j]);
        IntSet P(pl.positions.begin(), pl.positions.end());
        auto w = explicit_weight(model, SignedPermutation::from_map(mp), P, letters_);
        mb.coef = w.coef;
        mb.n_shift = w.n_shift;
      } else {
        mb.flat = (mb.cycles / 2) * pl.c_stride;
      }
    }
    return mb;
  }

  void write(const ColourPlan& pl, const MemberInfo& mb) {
    for (std::size_t j = 0; j < pl.src.size(); ++j) sigma_[pl.src[j]] = mb.dst[j];
  }

  bool accept() {
    if (filter_.kind == FilterKind::None) return true;
    TinyDsu d;
    d.init(filter_.nblocks);
    for (int i = 0; i < 2 * n_; ++i) d.unite(filter_.block_of_pos[i >> 1], filter_.block_of_pos[sigma_[i] >> 1]);
    if (filter_.kind == FilterKind::Centred) {
      for (int b = 0; b < filter_.nblocks; ++b)
        if (d.size[d.find(b)] < 2) return false;
      for (int b = 1; b < filter_.nblocks; ++b)
        if (filter_.group_of_block[b] == filter_.group_of_block[b - 1]) d.unite(b, b - 1);
    }
    int root = d.find(0);
    for (int b = 1; b < filter_.nblocks; ++b)
      if (d.find(b) != root) return false;
    return true;
  }

  void tally(const MemberInfo& big_member, std::size_t big, const std::vector<std::size_t>& odo) {
    if (!accept()) return;
    int pi_cycles = big_member.cycles;
    int flat = big_member.flat;
    int shift = big_member.n_shift;
    for (std::size_t i = 0; i < plans_.size(); ++i) {
      if (i == big) continue;
      const MemberInfo& mb = plans_[i].members[odo[i]];
      pi_cycles += mb.cycles;
      flat += mb.flat;
      shift += mb.n_shift;
    }
    // Vertices: cycles of γ₋⁻¹σγ₊.
    std::uint64_t seen = 0;
    int v = 0;
    for (int i = 0; i < 2 * n_; ++i) {
      if (seen >> i & 1) continue;
      ++v;
      for (int j = i; !(seen >> j & 1); j = gmi_[sigma_[gp_[j]]]) seen |= std::uint64_t{1} << j;
    }
    if ((pi_cycles + v) % 2) throw std::logic_error("odd cycle total in the premap sum");
    int chi = r_ + (pi_cycles + v) / 2 - n_;
    int e = chi + offset_ + shift - e_min_;
    if (e < 0 || e >= e_range_) throw std::logic_error("N exponent outside the accumulator range");
    std::size_t idx = static_cast<std::size_t>(e) * c_total_ + flat;
    if (unit_) {
      ++counts_[idx];
    } else {
      Rational coef = big_member.coef;
      for (std::size_t i = 0; i < plans_.size(); ++i)
        if (i != big) coef *= plans_[i].members[odo[i]].coef;
      sums_[idx] += coef;
    }
  }

  LaurentValue collect() const {
    LaurentValue out;
    for (std::size_t idx = 0; idx < counts_.size(); ++idx) {
      Rational coef = unit_ ? Rational(counts_[idx]) : sums_[idx];
      if (coef == 0) continue;
      int e = static_cast<int>(idx / c_total_) + e_min_;
      int rest = static_cast<int>(idx % c_total_);
      int c_power = 0;
      for (auto& pl : plans_) {
        if (pl.c_stride == 0) continue;
        int k = (rest / pl.c_stride) % pl.c_dim;
        if (pl.symbolic_c) {
          c_power += k;
        } else {
          for (int i = 0; i < k; ++i) coef *= pl.ratio;
        }
      }
      out.add_term(coef, e, c_power);
    }
    return out;
  }

  std::vector<Letter> letters_;
  Filter filter_;
  int offset_;
  int n_ = 0, r_ = 0;
  std::vector<ColourPlan> plans_;
  Img tflag_, gp_, gmi_, sigma_;
  long double projected_ = 0;
  bool empty_ = false;
  bool unit_ = true;
  int e_min_ = 0, e_range_ = 0, c_total_ = 1;
  std::vector<std::int64_t> counts_;
  std::vector<Rational> sums_;
};

}  // namespace

long double term_count(const TraceExpression& expr, const ModelMap& models) {
  std::map<std::string, std::size_t> per;
  for (auto& l : expr.letters) ++per[l.colour];
  long double total = 1;
  for (auto& [c, m] : per) total *= class_size(models.at(c).premap_class(), m);
  return total;
}

LaurentValue exact_moment(const TraceExpression& expr, const ModelMap& models, const ExactOptions& opt) {
  expr.validate(models);
  if (expr.letters.empty()) return LaurentValue(Rational(1));
  int r = static_cast<int>(expr.trace_count());
  Engine eng(expr.letters, expr.gamma, models, Filter{}, -2 * r, opt);
  return eng.run();
}

LaurentValue exact_trace_cumulant(const TraceExpression& expr, const ModelMap& models, const ExactOptions& opt) {
  expr.validate(models);
  if (expr.letters.empty()) throw std::invalid_argument("cumulant of an empty expression");
  int n = static_cast<int>(expr.letters.size());
  auto cycles = expr.gamma.cycles(interval(n));
  Filter f;
  f.kind = FilterKind::Connected;
  f.nblocks = static_cast<int>(cycles.size());
  f.block_of_pos.assign(n, 0);
  for (std::size_t b = 0; b < cycles.size(); ++b)
    for (int k : cycles[b]) f.block_of_pos[k - 1] = static_cast<int>(b);
  int r = f.nblocks;
  Engine eng(expr.letters, expr.gamma, models, f, -r, opt);
  return eng.run();
}

LaurentValue exact_centred_cumulant(const CentredExpression& expr, const ModelMap& models, const ExactOptions& opt) {
  expr.validate(models);
  if (expr.traces.empty()) throw std::invalid_argument("centred cumulant of no traces");
  std::vector<std::vector<Letter>> flat_traces;
  Filter f;
  f.kind = FilterKind::Centred;
  int block = 0;
  for (std::size_t t = 0; t < expr.traces.size(); ++t) {
    std::vector<Letter> word;
    for (auto& factor : expr.traces[t]) {
      for (auto& l : factor) {
        word.push_back(l);
        f.block_of_pos.push_back(block);
      }
      f.group_of_block.push_back(static_cast<int>(t));
      ++block;
    }
    flat_traces.push_back(std::move(word));
  }
  f.nblocks = block;
  if (f.nblocks > 64) throw std::invalid_argument("too many centred factors");
  TraceExpression te = TraceExpression::from_traces(flat_traces);
  int r = static_cast<int>(expr.traces.size());
  Engine eng(te.letters, te.gamma, models, f, -r, opt);
  return eng.run();
}

}  // namespace rsf
