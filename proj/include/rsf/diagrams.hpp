#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rsf/perm.hpp"

namespace rsf {

/// Thrown when an enumeration would exceed its configured size.
class GuardExceeded : public std::runtime_error {
 public:
  GuardExceeded(const std::string& what, long double projected)
      : std::runtime_error(what), projected_(projected) {}
  long double projected() const { return projected_; }

 private:
  long double projected_;
};

struct EulerData {
  int chi = 0;
  int gamma_half = 0;  // #(γ₊γ₋⁻¹)/2
  int pi_half = 0;     // #(π)/2
  int face_half = 0;   // #(γ₊⁻¹π⁻¹γ₋)/2
};

/// χ(γ,π) for γ on I and a premap π on ±I.
EulerData euler_characteristic(const SignedPermutation& gamma, const SignedPermutation& pi, const IntSet& I);

/// |D| + 2#⟨p,q⟩ − #(p) − #(pq) − #(q) over the domain D.
int geodesic_defect(const SignedPermutation& p, const SignedPermutation& q, const IntSet& domain);

/// Number of orbits of the group generated by p and q on the domain.
std::size_t orbit_count(const SignedPermutation& p, const SignedPermutation& q, const IntSet& domain);

enum class Crossing { Nonstandard, Crossing, Noncrossing };
std::string to_string(Crossing c);

/// γ must be a single cycle on I. Throws std::logic_error if the pattern
/// tests and the cycle-count equality ever disagree.
Crossing classify_disc(const SignedPermutation& gamma, const SignedPermutation& pi, const IntSet& I);

/// γ must have two cycles on I and π must connect them. With a singleton
/// cycle only the cycle-count equality decides Noncrossing.
Crossing classify_annular(const SignedPermutation& gamma, const SignedPermutation& pi, const IntSet& I);

/// χ(γ,π) == 2 for single-cycle γ, cross-checked against the
/// orientable characterisation.
bool unoriented_disc_test(const SignedPermutation& gamma, const SignedPermutation& pi, const IntSet& I);

struct AnnularOrientation {
  bool planar = false;
  int sign = 0;  // ±1 when planar
};

/// For two-cycle γ and π connecting ±V₁, ±V₂.
AnnularOrientation unoriented_annular_test(const SignedPermutation& gamma, const SignedPermutation& pi,
                                           const IntSet& I);

enum class ClassKind { AllPremaps, PairingPremaps, Ginibre };
std::string to_string(ClassKind k);
ClassKind parse_class_kind(const std::string& s);

/// Cardinality of the class on ±I with |I| = m (as long double; may be huge).
long double class_size(ClassKind kind, std::size_t m);

struct EnumerationGuard {
  std::size_t max_points = 12;
};

/// Streams every member of the class on ±I exactly once (unordered).
void for_each_member(ClassKind kind, const IntSet& I, const std::function<void(const SignedPermutation&)>& fn,
                     EnumerationGuard guard = {});
/// All members, sorted by canonical cycle notation.
std::vector<SignedPermutation> enumerate_class(ClassKind kind, const IntSet& I, EnumerationGuard guard = {});
bool class_contains(ClassKind kind, const SignedPermutation& p, const IntSet& I);

/// Brute force over S(I) using the cycle-count equalities; sorted output.
std::vector<SignedPermutation> enumerate_disc_nc(const SignedPermutation& gamma, const IntSet& I,
                                                 EnumerationGuard guard = {10});
std::vector<SignedPermutation> enumerate_ann_nc(const SignedPermutation& gamma, const IntSet& I,
                                                EnumerationGuard guard = {10});
/// Streaming forms; the callback gets the member as images over sorted I.
void for_each_disc_nc(const SignedPermutation& gamma, const IntSet& I,
                      const std::function<void(const SignedPermutation&)>& fn, EnumerationGuard guard = {10});
void for_each_ann_nc(const SignedPermutation& gamma, const IntSet& I,
                     const std::function<void(const SignedPermutation&)>& fn, EnumerationGuard guard = {10});

}  // namespace rsf
