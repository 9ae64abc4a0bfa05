#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace rsf {

/// Sorted set of nonzero integers.
using IntSet = std::vector<int>;
using Cycle = std::vector<int>;

/// Ordering used for canonical cycle notation: by absolute value, positive first.
inline bool signed_less(int a, int b) {
  int aa = a < 0 ? -a : a, bb = b < 0 ? -b : b;
  if (aa != bb) return aa < bb;
  return a > b;
}

IntSet interval(int n);                      // {1,...,n}
IntSet plus_minus(const IntSet& I);          // I ∪ -I
IntSet normalize_set(IntSet s);              // sort + dedupe; throws on 0
bool is_subset(const IntSet& a, const IntSet& b);

/// Bijection of a finite set of nonzero integers; points outside the
/// support are fixed. Composition is rightmost-first: (p*q)(k) = p(q(k)).
class SignedPermutation {
 public:
  SignedPermutation() = default;

  static SignedPermutation identity() { return {}; }
  static SignedPermutation from_cycles(const std::vector<Cycle>& cycles);
  static SignedPermutation from_map(const std::map<int, int>& m);
  /// Parses "(1,-3,4)(-4,3,-1)"; "()" and "" are the identity.
  static SignedPermutation parse(std::string_view text);

  int operator()(int k) const;

  /// Moved points with their images, sorted by source.
  const std::vector<std::pair<int, int>>& moved() const { return map_; }
  IntSet support() const;
  bool is_identity() const { return map_.empty(); }

  SignedPermutation inverse() const;

  /// Nontrivial cycles in canonical form.
  std::vector<Cycle> cycles() const;
  /// All cycles over `domain` including fixed points; throws if the
  /// support is not contained in the domain.
  std::vector<Cycle> cycles(const IntSet& domain) const;
  std::size_t cycle_count(const IntSet& domain) const;

  std::string to_string() const;

  friend bool operator==(const SignedPermutation&, const SignedPermutation&) = default;
  friend std::strong_ordering operator<=>(const SignedPermutation& a, const SignedPermutation& b);

 private:
  std::vector<std::pair<int, int>> map_;
};

SignedPermutation compose(const SignedPermutation& p, const SignedPermutation& q);
inline SignedPermutation operator*(const SignedPermutation& p, const SignedPermutation& q) {
  return compose(p, q);
}

/// Induced permutation p|_J.
SignedPermutation restrict(const SignedPermutation& p, const IntSet& J);

/// ε on [n], extended evenly to -[n].
class SignPattern {
 public:
  SignPattern() = default;
  explicit SignPattern(std::vector<int> signs);  // signs[k-1] = ε(k) ∈ {+1,-1}
  static SignPattern all_plus(int n) { return SignPattern(std::vector<int>(n, 1)); }

  int operator()(int k) const;
  int size() const { return static_cast<int>(signs_.size()); }
  const std::vector<int>& signs() const { return signs_; }

 private:
  std::vector<int> signs_;
};

class Partition {
 public:
  Partition() = default;
  /// Blocks must be disjoint and nonempty.
  explicit Partition(std::vector<IntSet> blocks);
  /// Orbits of p over `domain`.
  static Partition orbits(const SignedPermutation& p, const IntSet& domain);
  static Partition singletons(const IntSet& ground);

  const std::vector<IntSet>& blocks() const { return blocks_; }
  const IntSet& ground() const { return ground_; }
  std::size_t size() const { return blocks_.size(); }

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::vector<IntSet> blocks_;  // each sorted; sorted by first element
  IntSet ground_;
};

Partition join(const Partition& a, const Partition& b);
/// True iff some orbit of p meets both J and K.
bool connects(const SignedPermutation& p, const IntSet& J, const IntSet& K);

/// δ restricted to ±I.
SignedPermutation delta(const IntSet& I);
SignedPermutation delta_eps(const SignPattern& e);
/// δ p δ, i.e. k ↦ -p(-k).
SignedPermutation mirror(const SignedPermutation& p);
/// p viewed on ±I (identity on -I); requires a sign-unambiguous support.
SignedPermutation lift_plus(const SignedPermutation& p);

bool is_premap(const SignedPermutation& p, const IntSet& I);
/// One cycle per mirror pair: the one whose min-|k| element is positive.
std::vector<Cycle> particular_cycles(const SignedPermutation& p);
SignedPermutation particular_permutation(const SignedPermutation& p);

/// γ₋⁻¹ π γ₊ for γ on I.
SignedPermutation conjugate_premap(const SignedPermutation& gamma, const SignedPermutation& pi);

}  // namespace rsf
