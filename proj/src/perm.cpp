#include "rsf/perm.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace rsf {

IntSet interval(int n) {
  IntSet r(n > 0 ? n : 0);
  std::iota(r.begin(), r.end(), 1);
  return r;
}

IntSet plus_minus(const IntSet& I) {
  IntSet r;
  r.reserve(2 * I.size());
  for (int k : I) {
    r.push_back(k);
    r.push_back(-k);
  }
  return normalize_set(std::move(r));
}

IntSet normalize_set(IntSet s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  if (std::binary_search(s.begin(), s.end(), 0))
    throw std::invalid_argument("0 is not a valid signed index");
  return s;
}

bool is_subset(const IntSet& a, const IntSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

SignedPermutation SignedPermutation::from_map(const std::map<int, int>& m) {
  SignedPermutation p;
  IntSet src, dst;
  for (auto [k, v] : m) {
    if (k == 0 || v == 0) throw std::invalid_argument("0 is not a valid signed index");
    src.push_back(k);
    dst.push_back(v);
    if (k != v) p.map_.emplace_back(k, v);
  }
  std::sort(dst.begin(), dst.end());
  if (std::adjacent_find(dst.begin(), dst.end()) != dst.end() || src != dst)
    throw std::invalid_argument("mapping is not a bijection of its support");
  return p;
}

SignedPermutation SignedPermutation::from_cycles(const std::vector<Cycle>& cycles) {
  std::map<int, int> m;
  for (const auto& c : cycles) {
    for (std::size_t i = 0; i < c.size(); ++i) {
      int k = c[i];
      if (k == 0) throw std::invalid_argument("0 is not a valid signed index");
      if (!m.emplace(k, c[(i + 1) % c.size()]).second)
        throw std::invalid_argument("element " + std::to_string(k) + " appears twice in cycle notation");
    }
  }
  return from_map(m);
}

SignedPermutation SignedPermutation::parse(std::string_view text) {
  std::vector<Cycle> cycles;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
  };
  skip();
  while (i < text.size()) {
    if (text[i] != '(')
      throw std::invalid_argument("expected '(' at offset " + std::to_string(i) + " in \"" + std::string(text) + "\"");
    ++i;
    Cycle c;
    skip();
    while (i < text.size() && text[i] != ')') {
      std::size_t start = i;
      if (text[i] == '-' || text[i] == '+') ++i;
      while (i < text.size() && text[i] >= '0' && text[i] <= '9') ++i;
      if (i == start || (i == start + 1 && (text[start] == '-' || text[start] == '+')))
        throw std::invalid_argument("expected integer at offset " + std::to_string(start) + " in \"" + std::string(text) + "\"");
      c.push_back(std::stoi(std::string(text.substr(start, i - start))));
      skip();
      if (i < text.size() && text[i] == ',') {
        ++i;
        skip();
      }
    }
    if (i >= text.size()) throw std::invalid_argument("unterminated cycle in \"" + std::string(text) + "\"");
    ++i;
    if (!c.empty()) cycles.push_back(std::move(c));
    skip();
  }
  return from_cycles(cycles);
}

int SignedPermutation::operator()(int k) const {
  auto it = std::lower_bound(map_.begin(), map_.end(), k,
                             [](const std::pair<int, int>& e, int key) { return e.first < key; });
  return (it != map_.end() && it->first == k) ? it->second : k;
}

IntSet SignedPermutation::support() const {
  IntSet s;
  s.reserve(map_.size());
  for (auto& e : map_) s.push_back(e.first);
  return s;
}

SignedPermutation SignedPermutation::inverse() const {
  SignedPermutation r;
  r.map_.reserve(map_.size());
  for (auto [k, v] : map_) r.map_.emplace_back(v, k);
  std::sort(r.map_.begin(), r.map_.end());
  return r;
}

namespace {

Cycle canonical_cycle(Cycle c) {
  auto lead = std::min_element(c.begin(), c.end(), signed_less);
  std::rotate(c.begin(), lead, c.end());
  return c;
}

void sort_cycles(std::vector<Cycle>& cs) {
  std::sort(cs.begin(), cs.end(), [](const Cycle& a, const Cycle& b) { return signed_less(a[0], b[0]); });
}

}  // namespace

std::vector<Cycle> SignedPermutation::cycles() const {
  std::vector<Cycle> out;
  IntSet seen;
  for (auto [k, v] : map_) {
    if (std::binary_search(seen.begin(), seen.end(), k)) continue;
    Cycle c;
    int x = k;
    do {
      c.push_back(x);
      x = (*this)(x);
    } while (x != k);
    seen.insert(seen.end(), c.begin(), c.end());
    std::sort(seen.begin(), seen.end());
    out.push_back(canonical_cycle(std::move(c)));
  }
  sort_cycles(out);
  return out;
}

std::vector<Cycle> SignedPermutation::cycles(const IntSet& domain) const {
  IntSet dom = normalize_set(domain);
  if (!is_subset(support(), dom)) throw std::invalid_argument("domain does not contain the support");
  auto out = cycles();
  for (int k : dom)
    if ((*this)(k) == k) out.push_back({k});
  sort_cycles(out);
  return out;
}

std::size_t SignedPermutation::cycle_count(const IntSet& domain) const {
  IntSet dom = normalize_set(domain);
  auto sup = support();
  if (!is_subset(sup, dom)) throw std::invalid_argument("domain does not contain the support");
  return cycles().size() + (dom.size() - sup.size());
}

std::string SignedPermutation::to_string() const {
  auto cs = cycles();
  if (cs.empty()) return "()";
  std::ostringstream os;
  for (auto& c : cs) {
    os << '(';
    for (std::size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
    os << ')';
  }
  return os.str();
}

std::strong_ordering operator<=>(const SignedPermutation& a, const SignedPermutation& b) {
  if (a.map_ == b.map_) return std::strong_ordering::equal;
  auto ca = a.cycles(), cb = b.cycles();
  auto elem = [](int x, int y) { return signed_less(x, y); };
  auto cyc = [&](const Cycle& x, const Cycle& y) {
    return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end(), elem);
  };
  if (std::lexicographical_compare(ca.begin(), ca.end(), cb.begin(), cb.end(), cyc))
    return std::strong_ordering::less;
  if (std::lexicographical_compare(cb.begin(), cb.end(), ca.begin(), ca.end(), cyc))
    return std::strong_ordering::greater;
  return a.map_ < b.map_ ? std::strong_ordering::less : std::strong_ordering::greater;
}

SignedPermutation compose(const SignedPermutation& p, const SignedPermutation& q) {
  auto sp = p.support(), sq = q.support();
  IntSet all;
  std::set_union(sp.begin(), sp.end(), sq.begin(), sq.end(), std::back_inserter(all));
  std::map<int, int> m;
  for (int k : all) m.emplace(k, p(q(k)));
  return SignedPermutation::from_map(m);
}

SignedPermutation restrict(const SignedPermutation& p, const IntSet& J) {
  IntSet js = normalize_set(J);
  std::map<int, int> m;
  for (int k : js) {
    int x = p(k);
    // Terminates: the orbit of k returns to k ∈ J.
    while (!std::binary_search(js.begin(), js.end(), x)) x = p(x);
    m.emplace(k, x);
  }
  return SignedPermutation::from_map(m);
}

SignPattern::SignPattern(std::vector<int> signs) : signs_(std::move(signs)) {
  for (int s : signs_)
    if (s != 1 && s != -1) throw std::invalid_argument("sign pattern entries must be +1 or -1");
}

int SignPattern::operator()(int k) const {
  int a = k < 0 ? -k : k;
  if (a < 1 || a > size()) throw std::out_of_range("sign pattern index " + std::to_string(k));
  return signs_[a - 1];
}

Partition::Partition(std::vector<IntSet> blocks) {
  for (auto& b : blocks) {
    if (b.empty()) throw std::invalid_argument("empty block");
    b = normalize_set(std::move(b));
    ground_.insert(ground_.end(), b.begin(), b.end());
  }
  std::size_t total = ground_.size();
  ground_ = normalize_set(std::move(ground_));
  if (ground_.size() != total) throw std::invalid_argument("blocks are not disjoint");
  std::sort(blocks.begin(), blocks.end());
  blocks_ = std::move(blocks);
}

Partition Partition::orbits(const SignedPermutation& p, const IntSet& domain) {
  std::vector<IntSet> bl;
  for (auto& c : p.cycles(domain)) bl.emplace_back(c.begin(), c.end());
  return Partition(std::move(bl));
}

Partition Partition::singletons(const IntSet& ground) {
  std::vector<IntSet> bl;
  for (int k : normalize_set(ground)) bl.push_back({k});
  return Partition(std::move(bl));
}

namespace {

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

}  // namespace

Partition join(const Partition& a, const Partition& b) {
  if (a.ground() != b.ground()) throw std::invalid_argument("join of partitions with different ground sets");
  const IntSet& g = a.ground();
  auto idx = [&](int k) { return static_cast<std::size_t>(std::lower_bound(g.begin(), g.end(), k) - g.begin()); };
  UnionFind uf(g.size());
  for (const Partition* p : {&a, &b})
    for (auto& bl : p->blocks())
      for (int k : bl) uf.unite(idx(k), idx(bl[0]));
  std::map<std::size_t, IntSet> groups;
  for (std::size_t i = 0; i < g.size(); ++i) groups[uf.find(i)].push_back(g[i]);
  std::vector<IntSet> bl;
  for (auto& [r, s] : groups) bl.push_back(std::move(s));
  return Partition(std::move(bl));
}

bool connects(const SignedPermutation& p, const IntSet& J, const IntSet& K) {
  IntSet ks = normalize_set(K);
  for (int j : normalize_set(J)) {
    int x = j;
    do {
      if (std::binary_search(ks.begin(), ks.end(), x)) return true;
      x = p(x);
    } while (x != j);
  }
  return false;
}

SignedPermutation delta(const IntSet& I) {
  std::map<int, int> m;
  for (int k : normalize_set(I)) {
    m[k] = -k;
    m[-k] = k;
  }
  return SignedPermutation::from_map(m);
}

SignedPermutation delta_eps(const SignPattern& e) {
  std::map<int, int> m;
  for (int k = 1; k <= e.size(); ++k) {
    m[k] = e(k) * k;
    m[-k] = -e(k) * k;
  }
  return SignedPermutation::from_map(m);
}

SignedPermutation mirror(const SignedPermutation& p) {
  std::map<int, int> m;
  for (auto [k, v] : p.moved()) m.emplace(-k, -v);
  return SignedPermutation::from_map(m);
}

SignedPermutation lift_plus(const SignedPermutation& p) {
  auto s = p.support();
  for (int k : s)
    if (std::binary_search(s.begin(), s.end(), -k))
      throw std::invalid_argument("lift_plus needs a support without both k and -k");
  return p;
}

bool is_premap(const SignedPermutation& p, const IntSet& I) {
  auto dom = plus_minus(I);
  if (!is_subset(p.support(), dom)) return false;
  if (mirror(p) != p.inverse()) return false;
  for (auto [k, v] : p.moved())
    if (v == -k) return false;
  return true;
}

std::vector<Cycle> particular_cycles(const SignedPermutation& p) {
  auto s = p.support();
  IntSet I;
  for (int k : s) I.push_back(k < 0 ? -k : k);
  I = normalize_set(std::move(I));
  if (!is_premap(p, I)) throw std::invalid_argument("particular_cycles requires a premap");
  std::vector<Cycle> out;
  for (auto& c : p.cycles(plus_minus(I)))
    if (c[0] > 0) out.push_back(c);
  return out;
}

SignedPermutation particular_permutation(const SignedPermutation& p) {
  auto cs = particular_cycles(p);
  return SignedPermutation::from_cycles(cs);
}

SignedPermutation conjugate_premap(const SignedPermutation& gamma, const SignedPermutation& pi) {
  // γ₋ = δγ₊δ, so γ₋⁻¹ = mirror(γ)⁻¹.
  return compose(mirror(gamma).inverse(), compose(pi, lift_plus(gamma)));
}

}  // namespace rsf
