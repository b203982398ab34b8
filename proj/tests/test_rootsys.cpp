#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>

#include "adjfilter/error.hpp"
#include "adjfilter/rootsys.hpp"

using namespace adjfilter;

namespace {

int simple(const RootSystem& sys, int label) { return sys.simple_root(label - 1); }

int index_of(const RootSystem& sys, std::vector<int> c) {
  auto i = sys.index_of(c);
  REQUIRE(i.has_value());
  return *i;
}

// All decompositions r = a + b with a before b, smallest a first.
std::pair<int, int> least_decomposition(const RootSystem& sys, int r) {
  for (int a = 0; a < sys.num_positive(); ++a)
    for (int b = a + 1; b < sys.num_positive(); ++b)
      if (sys.sum(a, b) == r) return {a, b};
  return {-1, -1};
}

}  // namespace

TEST_CASE("positive root counts") {
  for (int d = 1; d <= 10; ++d) CHECK(RootSystem(Family::A, d).num_positive() == d * (d + 1) / 2);
  for (int d = 2; d <= 10; ++d) {
    CHECK(RootSystem(Family::B, d).num_positive() == d * d);
    CHECK(RootSystem(Family::C, d).num_positive() == d * d);
  }
  for (int d = 3; d <= 10; ++d) CHECK(RootSystem(Family::D, d).num_positive() == d * (d - 1));
  CHECK(RootSystem(Family::G2, 2).num_positive() == 6);
  CHECK(RootSystem(Family::D, 3).num_positive() == RootSystem(Family::A, 3).num_positive());
}

TEST_CASE("A2 roots") {
  RootSystem a2(Family::A, 2);
  std::set<std::vector<int>> got;
  for (const auto& r : a2.positive_roots()) got.insert(r.coeffs);
  CHECK(got == std::set<std::vector<int>>{{1, 0}, {0, 1}, {1, 1}});
}

TEST_CASE("heights") {
  RootSystem g2(Family::G2, 2);
  std::vector<int> h;
  for (int r = 0; r < 6; ++r) h.push_back(g2.height(r));
  std::sort(h.begin(), h.end());
  CHECK(h == std::vector<int>{1, 1, 2, 3, 4, 5});

  for (int d = 2; d <= 9; ++d) {
    CHECK(RootSystem(Family::A, d).max_height() == d);
    CHECK(RootSystem(Family::B, d).max_height() == 2 * d - 1);
    CHECK(RootSystem(Family::C, d).max_height() == 2 * d - 1);
  }
  for (int d = 4; d <= 9; ++d) CHECK(RootSystem(Family::D, d).max_height() == 2 * d - 3);

  RootSystem a4(Family::A, 4);
  CHECK(a4.height(simple(a4, 1)) == 1);
  CHECK(a4.height(index_of(a4, {1, 1, 0, 0})) == 2);
}

TEST_CASE("storage order is increasing in height") {
  for (auto [f, d] : std::vector<std::pair<Family, int>>{{Family::A, 6}, {Family::B, 5}, {Family::C, 5},
                                                         {Family::D, 6}, {Family::G2, 2}}) {
    RootSystem sys(f, d);
    for (int r = 0; r + 1 < sys.num_positive(); ++r) CHECK(sys.height(r) <= sys.height(r + 1));
    for (int i = 0; i + 1 < d; ++i) CHECK(simple(sys, i + 1) < simple(sys, i + 2));
  }
}

TEST_CASE("Cartan matrices") {
  RootSystem b3(Family::B, 3);
  CHECK(b3.cartan_matrix() == std::vector<std::vector<int>>{{2, -1, 0}, {-1, 2, -1}, {0, -2, 2}});
  RootSystem c3(Family::C, 3);
  CHECK(c3.cartan_matrix() == std::vector<std::vector<int>>{{2, -1, 0}, {-1, 2, -2}, {0, -1, 2}});
  RootSystem d4(Family::D, 4);
  CHECK(d4.cartan_matrix()[1][3] == -1);
  CHECK(d4.cartan_matrix()[2][3] == 0);
  RootSystem g2(Family::G2, 2);
  CHECK(g2.cartan_matrix() == std::vector<std::vector<int>>{{2, -3}, {-1, 2}});
}

TEST_CASE("extraspecial pairs") {
  RootSystem a4(Family::A, 4);
  CHECK(a4.extraspecial_pair(index_of(a4, {1, 1, 0, 0})) ==
        std::pair<int, int>{simple(a4, 1), simple(a4, 2)});
  CHECK(a4.extraspecial_pair(index_of(a4, {1, 1, 1, 0})) ==
        std::pair<int, int>{simple(a4, 1), index_of(a4, {0, 1, 1, 0})});
  CHECK_THROWS_AS(a4.extraspecial_pair(simple(a4, 3)), Error);

  for (auto [f, d] : std::vector<std::pair<Family, int>>{{Family::A, 5}, {Family::B, 4}, {Family::C, 4},
                                                         {Family::D, 5}, {Family::G2, 2}}) {
    RootSystem sys(f, d);
    for (int r = 0; r < sys.num_positive(); ++r) {
      if (sys.height(r) < 2) continue;
      CHECK(sys.extraspecial_pair(r) == least_decomposition(sys, r));
    }
  }
  RootSystem b4(Family::B, 4);
  const int r = index_of(b4, {0, 0, 1, 2});
  CHECK(b4.extraspecial_pair(r) == least_decomposition(b4, r));
}

TEST_CASE("structure constants have size v+1 and are antisymmetric") {
  for (auto [f, d] : std::vector<std::pair<Family, int>>{{Family::A, 4}, {Family::B, 4}, {Family::C, 4},
                                                         {Family::D, 5}, {Family::G2, 2}}) {
    RootSystem sys(f, d);
    const int n = 2 * sys.num_positive();
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        const int nab = sys.structure_constant(a, b);
        CHECK(nab == -sys.structure_constant(b, a));
        if (sys.signed_sum(a, b) < 0) {
          CHECK(nab == 0);
        } else {
          CHECK(std::abs(nab) == sys.string_down(a, b) + 1);
        }
      }
  }
  RootSystem g2(Family::G2, 2);
  int largest = 0;
  for (int a = 0; a < 12; ++a)
    for (int b = 0; b < 12; ++b) largest = std::max(largest, std::abs(g2.structure_constant(a, b)));
  CHECK(largest == 3);
}

TEST_CASE("commutator terms") {
  RootSystem a5(Family::A, 5);
  for (int i = 1; i < 5; ++i) {
    const auto& t = a5.commutator_root_terms(simple(a5, i), simple(a5, i + 1));
    REQUIRE(t.size() == 1);
    CHECK(t[0].i == 1);
    CHECK(t[0].j == 1);
    CHECK(t[0].root == a5.sum(simple(a5, i), simple(a5, i + 1)));
    CHECK(std::abs(t[0].constant) == 1);
  }
  CHECK(a5.commutator_root_terms(simple(a5, 1), simple(a5, 3)).empty());
  CHECK(a5.commutator_root_terms(simple(a5, 2), simple(a5, 5)).empty());

  RootSystem b4(Family::B, 4);
  const auto& t = b4.commutator_root_terms(simple(b4, 4), simple(b4, 3));
  REQUIRE(t.size() == 2);
  CHECK(t[0].root == index_of(b4, {0, 0, 1, 1}));
  CHECK(t[1].root == index_of(b4, {0, 0, 1, 2}));
  CHECK(t[1].i == 2);
  CHECK(t[1].j == 1);

  RootSystem g2(Family::G2, 2);
  CHECK(g2.commutator_root_terms(simple(g2, 1), simple(g2, 2)).size() == 4);
}

TEST_CASE("diagram reversal of A") {
  RootSystem a6(Family::A, 6);
  for (int r = 0; r < a6.num_positive(); ++r) {
    auto c = a6.root(r).coeffs;
    std::reverse(c.begin(), c.end());
    CHECK(a6.root(a6.reversed(r)).coeffs == c);
  }
  CHECK_THROWS_AS(RootSystem(Family::B, 3).reversed(0), Error);
}

TEST_CASE("fault injection copy") {
  RootSystem a3(Family::A, 3);
  const int p1 = simple(a3, 1), p2 = simple(a3, 2);
  RootSystem bad = a3.with_structure_constant(p1, p2, 2 * a3.structure_constant(p1, p2));
  CHECK(bad.structure_constant(p1, p2) == 2 * a3.structure_constant(p1, p2));
  CHECK(bad.structure_constant(p2, p1) == a3.structure_constant(p2, p1));
}

TEST_CASE("parsing and errors") {
  CHECK(parse_family("G2") == Family::G2);
  CHECK(parse_family("D") == Family::D);
  CHECK_THROWS_AS(parse_family("E"), Error);
  CHECK(parse_root("1,0,2").coeffs == std::vector<int>{1, 0, 2});
  CHECK(format_root(Root{{0, 1, 1}}) == "0,1,1");
  CHECK(system_name(Family::G2, 2) == "G2");
  CHECK(system_name(Family::B, 4) == "B4");
  CHECK_THROWS_AS(RootSystem(Family::D, 2), Error);
  CHECK_THROWS_AS(RootSystem(Family::G2, 3), Error);
  ErrorCode code = ErrorCode::InvalidArgument;
  try {
    RootSystem(Family::B, 1);
  } catch (const Error& e) {
    code = e.code();
  }
  CHECK(code == ErrorCode::UnsupportedRank);
}
