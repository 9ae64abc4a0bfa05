#include "rsf/diagrams.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

namespace rsf {

namespace {

IntSet abs_set(const IntSet& I) {
  IntSet a;
  for (int k : I) a.push_back(k < 0 ? -k : k);
  auto n = a.size();
  a = normalize_set(std::move(a));
  if (a.size() != n) throw std::invalid_argument("index set contains both k and -k");
  return a;
}

IntSet negate(const IntSet& s) {
  IntSet r;
  for (int k : s) r.push_back(-k);
  return normalize_set(std::move(r));
}

void require_within(const SignedPermutation& p, const IntSet& dom, const char* what) {
  if (!is_subset(p.support(), dom)) throw std::invalid_argument(std::string(what) + " is not supported on the given set");
}

// First element of S reached from k by iterating p (the induced map on S).
int induced_next(const SignedPermutation& p, const IntSet& S, int k) {
  int x = p(k);
  while (std::find(S.begin(), S.end(), x) == S.end()) x = p(x);
  return x;
}

// Position of each element along the single cycle c.
std::map<int, int> positions(const Cycle& c) {
  std::map<int, int> pos;
  for (std::size_t i = 0; i < c.size(); ++i) pos[c[i]] = static_cast<int>(i);
  return pos;
}

template <class F>
void for_each_combination(const IntSet& set, std::size_t r, F&& f) {
  std::size_t n = set.size();
  if (r > n) return;
  std::vector<std::size_t> idx(r);
  std::iota(idx.begin(), idx.end(), 0);
  IntSet pick(r);
  while (true) {
    for (std::size_t i = 0; i < r; ++i) pick[i] = set[idx[i]];
    f(pick);
    std::size_t i = r;
    while (i > 0 && idx[i - 1] == n - r + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < r; ++j) idx[j] = idx[j - 1] + 1;
  }
}

// Sorts pick by position along a cycle.
void order_by(IntSet& pick, const std::map<int, int>& pos) {
  std::sort(pick.begin(), pick.end(), [&](int a, int b) { return pos.at(a) < pos.at(b); });
}

bool has_cycle3(const SignedPermutation& p, const IntSet& S, int a, int b, int c) {
  return induced_next(p, S, a) == b && induced_next(p, S, b) == c && induced_next(p, S, c) == a;
}

bool has_pair(const SignedPermutation& p, const IntSet& S, int a, int b) {
  return induced_next(p, S, a) == b && induced_next(p, S, b) == a;
}

bool has_cycle4(const SignedPermutation& p, const IntSet& S, int a, int b, int c, int d) {
  return induced_next(p, S, a) == b && induced_next(p, S, b) == c && induced_next(p, S, c) == d &&
         induced_next(p, S, d) == a;
}

std::string describe(const SignedPermutation& g, const SignedPermutation& p) {
  return "gamma=" + g.to_string() + " pi=" + p.to_string();
}

}  // namespace

EulerData euler_characteristic(const SignedPermutation& gamma, const SignedPermutation& pi, const IntSet& I) {
  IntSet A = abs_set(I);
  if (!is_premap(pi, A)) throw std::invalid_argument("euler_characteristic: not a premap: " + pi.to_string());
  IntSet Ipos = normalize_set(I);
  require_within(gamma, Ipos, "gamma");
  IntSet dom = plus_minus(A);
  SignedPermutation gp = lift_plus(gamma);
  SignedPermutation gm = mirror(gamma);
  std::size_t g = (gp * gm.inverse()).cycle_count(dom);
  std::size_t p = pi.cycle_count(dom);
  std::size_t f = (gp.inverse() * pi.inverse() * gm).cycle_count(dom);
  if (g % 2 || p % 2 || f % 2) throw std::logic_error("odd cycle count in Euler characteristic: " + describe(gamma, pi));
  EulerData e;
  e.gamma_half = static_cast<int>(g / 2);
  e.pi_half = static_cast<int>(p / 2);
  e.face_half = static_cast<int>(f / 2);
  e.chi = e.gamma_half + e.pi_half + e.face_half - static_cast<int>(A.size());
  return e;
}

std::size_t orbit_count(const SignedPermutation& p, const SignedPermutation& q, const IntSet& domain) {
  IntSet dom = normalize_set(domain);
  require_within(p, dom, "p");
  require_within(q, dom, "q");
  std::vector<std::size_t> parent(dom.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto idx = [&](int k) { return static_cast<std::size_t>(std::lower_bound(dom.begin(), dom.end(), k) - dom.begin()); };
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::size_t count = dom.size();
  auto unite = [&](std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) {
      parent[a] = b;
      --count;
    }
  };
  for (int k : dom) {
    unite(idx(k), idx(p(k)));
    unite(idx(k), idx(q(k)));
  }
  return count;
}

int geodesic_defect(const SignedPermutation& p, const SignedPermutation& q, const IntSet& domain) {
  IntSet dom = normalize_set(domain);
  auto orbits = orbit_count(p, q, dom);
  return static_cast<int>(dom.size() + 2 * orbits) - static_cast<int>(p.cycle_count(dom)) -
         static_cast<int>((p * q).cycle_count(dom)) - static_cast<int>(q.cycle_count(dom));
}

std::string to_string(Crossing c) {
  switch (c) {
    case Crossing::Nonstandard: return "nonstandard";
    case Crossing::Crossing: return "crossing";
    case Crossing::Noncrossing: return "noncrossing";
  }
  return "?";
}

Crossing classify_disc(const SignedPermutation& gamma, const SignedPermutation& pi, const IntSet& I) {
  IntSet dom = normalize_set(I);
  require_within(gamma, dom, "gamma");
  require_within(pi, dom, "pi");
  auto gc = gamma.cycles(dom);
  if (gc.size() != 1) throw std::invalid_argument("classify_disc needs a single-cycle gamma");
  auto pos = positions(gc[0]);

  bool nonstandard = false;
  for_each_combination(dom, 3, [&](IntSet s) {
    if (nonstandard) return;
    order_by(s, pos);
    if (has_cycle3(pi, s, s[0], s[1], s[2])) nonstandard = true;
  });
  bool crossing = false;
  if (!nonstandard) {
    for_each_combination(dom, 4, [&](IntSet s) {
      if (crossing) return;
      order_by(s, pos);
      if (has_pair(pi, s, s[0], s[2]) && has_pair(pi, s, s[1], s[3])) crossing = true;
    });
  }
  Crossing result = nonstandard ? Crossing::Nonstandard : crossing ? Crossing::Crossing : Crossing::Noncrossing;

  bool equality = pi.cycle_count(dom) + (gamma.inverse() * pi.inverse()).cycle_count(dom) == dom.size() + 1;
  if (equality != (result == Crossing::Noncrossing))
    throw std::logic_error("disc classification disagrees with the cycle-count equality: " + describe(gamma, pi));
  return result;
}

Crossing classify_annular(const SignedPermutation& gamma, const SignedPermutation& pi, const IntSet& I) {
  IntSet dom = normalize_set(I);
  require_within(gamma, dom, "gamma");
  require_within(pi, dom, "pi");
  auto gc = gamma.cycles(dom);
  if (gc.size() != 2) throw std::invalid_argument("classify_annular needs a two-cycle gamma");
  IntSet ext(gc[0].begin(), gc[0].end()), in(gc[1].begin(), gc[1].end());
  ext = normalize_set(ext);
  in = normalize_set(in);
  if (!connects(pi, ext, in)) throw std::invalid_argument("classify_annular: pi does not connect the cycles of gamma");

  std::map<int, int> which;
  for (int k : ext) which[k] = 0;
  for (int k : in) which[k] = 1;
  auto pos0 = positions(gc[0]);
  auto pos1 = positions(gc[1]);
  auto pos = pos0;
  pos.insert(pos1.begin(), pos1.end());

  bool equality = pi.cycle_count(dom) + (gamma.inverse() * pi.inverse()).cycle_count(dom) == dom.size();

  // Nonstandard conditions.
  bool nonstandard = false;
  for_each_combination(dom, 3, [&](IntSet s) {
    if (nonstandard) return;
    if (which[s[0]] != which[s[1]] || which[s[1]] != which[s[2]]) return;
    order_by(s, pos);
    if (has_cycle3(pi, s, s[0], s[1], s[2])) nonstandard = true;
  });
  if (!nonstandard) {
    for_each_combination(ext, 2, [&](const IntSet& ab) {
      if (nonstandard) return;
      for_each_combination(in, 2, [&](const IntSet& cd) {
        if (nonstandard) return;
        IntSet s{ab[0], ab[1], cd[0], cd[1]};
        int a = ab[0], b = ab[1], c = cd[0], d = cd[1];
        if (has_cycle4(pi, s, a, c, b, d) || has_cycle4(pi, s, a, d, b, c)) nonstandard = true;
      });
    });
  }

  if (gc[0].size() < 2 || gc[1].size() < 2) {
    if (equality) return Crossing::Noncrossing;
    return nonstandard ? Crossing::Nonstandard : Crossing::Crossing;
  }

  bool crossing = false;
  if (!nonstandard) {
    for (const IntSet* cyc : {&ext, &in}) {
      for_each_combination(*cyc, 4, [&](IntSet s) {
        if (crossing) return;
        order_by(s, pos);
        if (has_pair(pi, s, s[0], s[2]) && has_pair(pi, s, s[1], s[3])) crossing = true;
      });
    }
  }
  if (!nonstandard && !crossing) {
    for (int x : ext) {
      for (int y : in) {
        if (crossing) break;
        IntSet xy{x, y};
        if (!has_pair(pi, xy, x, y)) continue;
        // λ_{x,y} on I∖{x,y} is a single cycle; walk it to get positions.
        IntSet rest;
        for (int k : dom)
          if (k != x && k != y) rest.push_back(k);
        int gix = gamma.inverse()(x), giy = gamma.inverse()(y);
        auto lambda = [&](int a) {
          if (a == gix) return gamma(y);
          if (a == giy) return gamma(x);
          return gamma(a);
        };
        std::map<int, int> lpos;
        int a = rest[0];
        for (std::size_t i = 0; i < rest.size(); ++i) {
          lpos[a] = static_cast<int>(i);
          a = lambda(a);
        }
        if (lpos.size() != rest.size()) throw std::logic_error("lambda_{x,y} is not a single cycle");
        for_each_combination(rest, 3, [&](IntSet s) {
          if (crossing) return;
          order_by(s, lpos);
          IntSet t{s[0], s[1], s[2], x, y};
          if (has_cycle3(pi, t, s[0], s[1], s[2]) && has_pair(pi, t, x, y)) crossing = true;
        });
        for_each_combination(rest, 4, [&](IntSet s) {
          if (crossing) return;
          order_by(s, lpos);
          IntSet t{s[0], s[1], s[2], s[3], x, y};
          if (has_pair(pi, t, s[0], s[2]) && has_pair(pi, t, s[1], s[3]) && has_pair(pi, t, x, y)) crossing = true;
        });
      }
    }
  }
  Crossing result = nonstandard ? Crossing::Nonstandard : crossing ? Crossing::Crossing : Crossing::Noncrossing;
  if (equality != (result == Crossing::Noncrossing))
    throw std::logic_error("annular classification disagrees with the cycle-count equality: " + describe(gamma, pi));
  return result;
}

bool unoriented_disc_test(const SignedPermutation& gamma, const SignedPermutation& pi, const IntSet& I) {
  IntSet A = abs_set(I);
  bool planar = euler_characteristic(gamma, pi, A).chi == 2;
  bool alt = !connects(pi, A, negate(A)) && classify_disc(gamma, restrict(pi, A), A) == Crossing::Noncrossing;
  if (planar != alt) throw std::logic_error("unoriented disc test disagrees with chi: " + describe(gamma, pi));
  return planar;
}

AnnularOrientation unoriented_annular_test(const SignedPermutation& gamma, const SignedPermutation& pi,
                                           const IntSet& I) {
  IntSet A = abs_set(I);
  auto gc = gamma.cycles(A);
  if (gc.size() != 2) throw std::invalid_argument("unoriented_annular_test needs a two-cycle gamma");
  IntSet V1 = normalize_set(IntSet(gc[0].begin(), gc[0].end()));
  IntSet V2 = normalize_set(IntSet(gc[1].begin(), gc[1].end()));
  if (!connects(pi, plus_minus(V1), plus_minus(V2)))
    throw std::invalid_argument("unoriented_annular_test: pi does not connect the two blocks");
  bool planar = euler_characteristic(gamma, pi, A).chi == 2;

  SignedPermutation gpm = lift_plus(gamma) * mirror(gamma).inverse();
  int found = 0;
  for (int eps : {1, -1}) {
    IntSet S = V1;
    for (int k : V2) S.push_back(eps * k);
    S = normalize_set(std::move(S));
    if (connects(pi, S, negate(S))) continue;
    if (classify_annular(restrict(gpm, S), restrict(pi, S), S) == Crossing::Noncrossing) {
      found = eps;
      break;
    }
  }
  if (planar != (found != 0))
    throw std::logic_error("unoriented annular test disagrees with chi: " + describe(gamma, pi));
  return {planar, found};
}

std::string to_string(ClassKind k) {
  switch (k) {
    case ClassKind::AllPremaps: return "premaps";
    case ClassKind::PairingPremaps: return "pairing-premaps";
    case ClassKind::Ginibre: return "ginibre";
  }
  return "?";
}

ClassKind parse_class_kind(const std::string& s) {
  if (s == "premaps" || s == "all") return ClassKind::AllPremaps;
  if (s == "pairing-premaps" || s == "pairings") return ClassKind::PairingPremaps;
  if (s == "ginibre") return ClassKind::Ginibre;
  throw std::invalid_argument("unknown premap class '" + s + "'");
}

namespace {

long double double_factorial_odd(std::size_t m) {  // (2m-1)!!
  long double r = 1;
  for (std::size_t k = 1; k <= m; ++k) r *= static_cast<long double>(2 * k - 1);
  return r;
}

// Perfect matchings of {0..2m-1}; mate[i] is the partner of i.
template <class F>
void for_each_matching(std::vector<int>& mate, F&& f) {
  int first = -1;
  for (std::size_t i = 0; i < mate.size(); ++i)
    if (mate[i] < 0) {
      first = static_cast<int>(i);
      break;
    }
  if (first < 0) {
    f(mate);
    return;
  }
  for (std::size_t j = first + 1; j < mate.size(); ++j) {
    if (mate[j] >= 0) continue;
    mate[first] = static_cast<int>(j);
    mate[j] = first;
    for_each_matching(mate, f);
    mate[first] = mate[j] = -1;
  }
}

void check_guard(ClassKind kind, std::size_t m, EnumerationGuard guard) {
  if (m > guard.max_points) {
    std::ostringstream os;
    os << "enumeration of " << to_string(kind) << " on " << m << " points exceeds the guard of " << guard.max_points
       << " points (projected " << static_cast<double>(class_size(kind, m)) << " members)";
    throw GuardExceeded(os.str(), class_size(kind, m));
  }
}

}  // namespace

long double class_size(ClassKind kind, std::size_t m) {
  switch (kind) {
    case ClassKind::AllPremaps: return double_factorial_odd(m);
    case ClassKind::PairingPremaps:
      if (m % 2) return 0;
      return double_factorial_odd(m / 2) * std::pow(2.0L, static_cast<long double>(m / 2));
    case ClassKind::Ginibre:
      if (m % 2) return 0;
      return double_factorial_odd(m / 2);
  }
  return 0;
}

void for_each_member(ClassKind kind, const IntSet& I, const std::function<void(const SignedPermutation&)>& fn,
                     EnumerationGuard guard) {
  IntSet A = abs_set(I);
  std::size_t m = A.size();
  check_guard(kind, m, guard);
  if (kind == ClassKind::AllPremaps) {
    // Pairing ρ on [2m]: odd slot 2k-1 carries π(a_k), even slot 2k carries π⁻¹(a_k).
    std::vector<int> mate(2 * m, -1);
    for_each_matching(mate, [&](const std::vector<int>& r) {
      std::map<int, int> mp;
      for (std::size_t k = 0; k < m; ++k) {
        int odd = r[2 * k], even = r[2 * k + 1];
        int img = (odd % 2 == 1) ? A[odd / 2] : -A[odd / 2];
        int pre = (even % 2 == 0) ? A[even / 2] : -A[even / 2];
        mp[A[k]] = img;
        mp[-A[k]] = -pre;
      }
      fn(SignedPermutation::from_map(mp));
    });
    return;
  }
  if (m % 2) return;
  std::vector<int> mate(m, -1);
  for_each_matching(mate, [&](const std::vector<int>& r) {
    std::vector<std::pair<int, int>> pairs;
    for (std::size_t i = 0; i < m; ++i)
      if (static_cast<int>(i) < r[i]) pairs.emplace_back(A[i], A[r[i]]);
    std::size_t choices = kind == ClassKind::Ginibre ? 1 : (std::size_t{1} << pairs.size());
    for (std::size_t mask = 0; mask < choices; ++mask) {
      std::map<int, int> mp;
      for (std::size_t j = 0; j < pairs.size(); ++j) {
        auto [k, l] = pairs[j];
        bool twisted = kind == ClassKind::Ginibre || ((mask >> j) & 1);
        int t = twisted ? -l : l;
        mp[k] = t;
        mp[t] = k;
        mp[-k] = -t;
        mp[-t] = -k;
      }
      fn(SignedPermutation::from_map(mp));
    }
  });
}

std::vector<SignedPermutation> enumerate_class(ClassKind kind, const IntSet& I, EnumerationGuard guard) {
  std::vector<SignedPermutation> out;
  for_each_member(kind, I, [&](const SignedPermutation& p) { out.push_back(p); }, guard);
  std::sort(out.begin(), out.end());
  return out;
}

bool class_contains(ClassKind kind, const SignedPermutation& p, const IntSet& I) {
  IntSet A = abs_set(I);
  if (!is_premap(p, A)) return false;
  if (kind == ClassKind::AllPremaps) return true;
  for (int k : plus_minus(A)) {
    int v = p(k);
    if (v == k || p(v) != k) return false;
    if (kind == ClassKind::Ginibre && (v > 0) == (k > 0)) return false;
  }
  return true;
}

namespace {

// Brute force over S(I) with dense arrays; `accept` sees images as indices.
template <class Accept>
void for_each_dense_perm(const SignedPermutation& gamma, const IntSet& dom, EnumerationGuard guard, Accept&& accept,
                         const std::function<void(const SignedPermutation&)>& fn) {
  std::size_t n = dom.size();
  if (n > guard.max_points) {
    long double total = 1;
    for (std::size_t k = 2; k <= n; ++k) total *= static_cast<long double>(k);
    throw GuardExceeded("brute-force enumeration over S(" + std::to_string(n) + ") exceeds the guard of " +
                            std::to_string(guard.max_points) + " points",
                        total);
  }
  auto idx = [&](int k) { return static_cast<int>(std::lower_bound(dom.begin(), dom.end(), k) - dom.begin()); };
  std::vector<int> g(n), ginv(n);
  for (std::size_t i = 0; i < n; ++i) {
    g[i] = idx(gamma(dom[i]));
    ginv[g[i]] = static_cast<int>(i);
  }
  std::vector<int> p(n), pinv(n), h(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<char> seen(n);
  auto count = [&](const std::vector<int>& q) {
    std::fill(seen.begin(), seen.end(), 0);
    int c = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (seen[i]) continue;
      ++c;
      for (int j = static_cast<int>(i); !seen[j]; j = q[j]) seen[j] = 1;
    }
    return c;
  };
  do {
    for (std::size_t i = 0; i < n; ++i) pinv[p[i]] = static_cast<int>(i);
    for (std::size_t i = 0; i < n; ++i) h[i] = ginv[pinv[i]];
    if (accept(p, count(p), count(h))) {
      std::map<int, int> mp;
      for (std::size_t i = 0; i < n; ++i) mp[dom[i]] = dom[p[i]];
      fn(SignedPermutation::from_map(mp));
    }
  } while (std::next_permutation(p.begin(), p.end()));
}

}  // namespace

void for_each_disc_nc(const SignedPermutation& gamma, const IntSet& I,
                      const std::function<void(const SignedPermutation&)>& fn, EnumerationGuard guard) {
  IntSet dom = normalize_set(I);
  require_within(gamma, dom, "gamma");
  if (gamma.cycles(dom).size() != 1) throw std::invalid_argument("disc enumeration needs a single-cycle gamma");
  int target = static_cast<int>(dom.size()) + 1;
  for_each_dense_perm(
      gamma, dom, guard, [&](const std::vector<int>&, int cp, int ch) { return cp + ch == target; }, fn);
}

void for_each_ann_nc(const SignedPermutation& gamma, const IntSet& I,
                     const std::function<void(const SignedPermutation&)>& fn, EnumerationGuard guard) {
  IntSet dom = normalize_set(I);
  require_within(gamma, dom, "gamma");
  auto gc = gamma.cycles(dom);
  if (gc.size() != 2) throw std::invalid_argument("annular enumeration needs a two-cycle gamma");
  std::vector<char> side(dom.size());
  for (int k : gc[1]) side[std::lower_bound(dom.begin(), dom.end(), k) - dom.begin()] = 1;
  int target = static_cast<int>(dom.size());
  for_each_dense_perm(
      gamma, dom, guard,
      [&](const std::vector<int>& p, int cp, int ch) {
        if (cp + ch != target) return false;
        for (std::size_t i = 0; i < p.size(); ++i)
          if (side[i] != side[p[i]]) return true;
        return false;
      },
      fn);
}

std::vector<SignedPermutation> enumerate_disc_nc(const SignedPermutation& gamma, const IntSet& I,
                                                 EnumerationGuard guard) {
  std::vector<SignedPermutation> out;
  for_each_disc_nc(gamma, I, [&](const SignedPermutation& p) { out.push_back(p); }, guard);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<SignedPermutation> enumerate_ann_nc(const SignedPermutation& gamma, const IntSet& I,
                                                EnumerationGuard guard) {
  std::vector<SignedPermutation> out;
  for_each_ann_nc(gamma, I, [&](const SignedPermutation& p) { out.push_back(p); }, guard);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace rsf
