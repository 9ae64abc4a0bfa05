#include <catch_amalgamated.hpp>

#include <algorithm>
#include <set>

#include "rsf/diagrams.hpp"

using namespace rsf;

namespace {
SignedPermutation P(const char* s) { return SignedPermutation::parse(s); }
}  // namespace

TEST_CASE("Euler characteristic", "[diagrams]") {
  auto e = euler_characteristic(P("(1,2,3)(4,5)"), P("(1,-3,4)(-4,3,-1)(2,-5)(5,-2)"), interval(5));
  CHECK(e.chi == 0);
  CHECK(euler_characteristic(P("(1,2)"), P("(1,2)(-1,-2)"), interval(2)).chi == 2);
  CHECK(euler_characteristic(P("()"), P("()"), {1}).chi == 2);
  CHECK_THROWS(euler_characteristic(P("(1,2)"), P("(1,2)"), interval(2)));
}

TEST_CASE("geodesic defect", "[diagrams]") {
  auto I = interval(3);
  CHECK(geodesic_defect(P("()"), P("()"), I) == 0);
  CHECK(geodesic_defect(P("(1,2,3)"), P("(1,3,2)"), I) == 0);
  CHECK(geodesic_defect(P("(1,2,3)"), P("(1,2,3)"), I) == 2);
  CHECK(orbit_count(P("(1,2)"), P("()"), I) == 2);

  std::vector<SignedPermutation> s4;
  std::vector<int> img{1, 2, 3, 4};
  do {
    std::map<int, int> m;
    for (int k = 1; k <= 4; ++k) m[k] = img[k - 1];
    s4.push_back(SignedPermutation::from_map(m));
  } while (std::next_permutation(img.begin(), img.end()));
  int odd = 0, negative = 0;
  for (auto& p : s4)
    for (auto& q : s4) {
      int d = geodesic_defect(p, q, interval(4));
      odd += d % 2 != 0;
      negative += d < 0;
    }
  CHECK(odd == 0);
  CHECK(negative == 0);
}

TEST_CASE("disc classification", "[diagrams]") {
  CHECK(classify_disc(P("(1,2,3)"), P("()"), interval(3)) == Crossing::Noncrossing);
  CHECK(classify_disc(P("(1,2,3)"), P("(1,2,3)"), interval(3)) == Crossing::Nonstandard);
  CHECK(classify_disc(P("(1,2,3,4)"), P("(1,3)(2,4)"), interval(4)) == Crossing::Crossing);
  CHECK_THROWS(classify_disc(P("(1,2)(3,4)"), P("()"), interval(4)));
}

TEST_CASE("annular classification", "[diagrams]") {
  CHECK(classify_annular(P("(1,2)(3,4)"), P("(1,3)(2,4)"), interval(4)) == Crossing::Noncrossing);
  CHECK(classify_annular(P("(1,2)(3,4)"), P("(1,3,2,4)"), interval(4)) == Crossing::Nonstandard);
  CHECK(classify_annular(P("(1,2,3)(4,5,6)"), P("(1,4)(2,5)(3,6)"), interval(6)) == Crossing::Crossing);
  // The equality #π + #(γ⁻¹π⁻¹) = |I| holds for this one.
  CHECK(classify_annular(P("(1,2,3)(4,5,6)"), P("(1,4)(2,6)(3,5)"), interval(6)) == Crossing::Noncrossing);
  CHECK_THROWS(classify_annular(P("(1,2)(3,4)"), P("(1,2)"), interval(4)));
}

TEST_CASE("unoriented tests", "[diagrams]") {
  CHECK(unoriented_disc_test(P("(1,2)"), P("(1,2)(-1,-2)"), interval(2)));
  CHECK_FALSE(unoriented_disc_test(P("(1,2)"), P("(1,-2)(-1,2)"), interval(2)));
  CHECK(unoriented_disc_test(P("()"), P("()"), {1}));

  auto a = unoriented_annular_test(P("()"), P("(1,2)(-1,-2)"), interval(2));
  CHECK(a.planar);
  CHECK(a.sign == 1);
  auto b = unoriented_annular_test(P("()"), P("(1,-2)(-1,2)"), interval(2));
  CHECK(b.planar);
  CHECK(b.sign == -1);

  int nonplanar = 0;
  auto gamma = P("(1,2)(3,4)");
  for_each_member(ClassKind::PairingPremaps, interval(4), [&](const SignedPermutation& pi) {
    if (!connects(pi, {-2, -1, 1, 2}, {-4, -3, 3, 4})) return;
    if (euler_characteristic(gamma, pi, interval(4)).chi < 2) {
      ++nonplanar;
      CHECK_FALSE(unoriented_annular_test(gamma, pi, interval(4)).planar);
    }
  });
  CHECK(nonplanar > 0);
}

TEST_CASE("premap classes", "[diagrams]") {
  auto I = interval(2);
  auto all = enumerate_class(ClassKind::AllPremaps, I);
  REQUIRE(all.size() == 3);
  CHECK(std::set<SignedPermutation>(all.begin(), all.end()) ==
        std::set<SignedPermutation>{P("()"), P("(1,2)(-1,-2)"), P("(1,-2)(-1,2)")});
  auto pairs = enumerate_class(ClassKind::PairingPremaps, I);
  CHECK(pairs.size() == 2);
  auto gin = enumerate_class(ClassKind::Ginibre, I);
  REQUIRE(gin.size() == 1);
  CHECK(gin[0] == P("(1,-2)(-1,2)"));

  for (std::size_t m = 1; m <= 5; ++m) {
    std::size_t count = 0;
    for_each_member(ClassKind::AllPremaps, interval(static_cast<int>(m)), [&](const SignedPermutation&) { ++count; });
    CHECK(static_cast<long double>(count) == class_size(ClassKind::AllPremaps, m));
  }
  CHECK(class_size(ClassKind::PairingPremaps, 6) == 120);
  CHECK(class_size(ClassKind::Ginibre, 4) == 3);
  CHECK_THROWS_AS(enumerate_class(ClassKind::AllPremaps, interval(8), EnumerationGuard{6}), GuardExceeded);
}

TEST_CASE("noncrossing enumerations", "[diagrams]") {
  auto d3 = enumerate_disc_nc(P("(1,2,3)"), interval(3));
  CHECK(d3 == std::vector<SignedPermutation>{P("()"), P("(1,2)"), P("(1,3)"), P("(1,3,2)"), P("(2,3)")});
  CHECK(enumerate_disc_nc(P("(1,2)"), interval(2)).size() == 2);
  CHECK(enumerate_disc_nc(P("(1,2,3,4,5)"), interval(5)).size() == 42);
  auto a = enumerate_ann_nc(P("()"), interval(2));
  REQUIRE(a.size() == 1);
  CHECK(a[0] == P("(1,2)"));
}
