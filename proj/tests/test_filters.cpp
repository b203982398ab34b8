#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <functional>

#include "adjfilter/adjoint_engine.hpp"
#include "adjfilter/error.hpp"
#include "adjfilter/filters.hpp"
#include "adjfilter/verify.hpp"

using namespace adjfilter;

namespace {

RootSet roots_of(const RootSystem& sys, const std::vector<std::vector<int>>& coeffs) {
  RootSet s;
  for (const auto& c : coeffs) s.set(*sys.index_of(c));
  return s;
}

RootSet height_set(const RootSystem& sys, int m) {
  RootSet s;
  for (int r = 0; r < sys.num_positive(); ++r)
    if (sys.height(r) >= m) s.set(r);
  return s;
}

// H_1 of A_d: p_1, p_d and everything of height at least 2.
RootSet a_h1(const RootSystem& sys) {
  const int d = sys.rank();
  RootSet s = height_set(sys, 2);
  s.set(sys.simple_root(0));
  s.set(sys.simple_root(d - 1));
  return s;
}

}  // namespace

TEST_CASE("lex order") {
  CHECK(lex_compare({1, 0}, {0, 5}) == 1);
  CHECK(lex_compare({1, 2}, {1, 2}) == 0);
  CHECK(lex_compare({0, 1}, {1, 0}) == -1);
  CHECK_THROWS_AS(lex_compare({1}, {1, 0}), Error);
  CHECK(format_index({1, 0, 2}) == "(1,0,2)");
}

TEST_CASE("root sets") {
  RootSet a, b;
  a.set(0);
  a.set(70);
  b.set(70);
  b.set(200);
  CHECK(a.count() == 2);
  CHECK((a | b).count() == 3);
  CHECK((a & b).members() == std::vector<int>{70});
  CHECK((a - b).members() == std::vector<int>{0});
  CHECK((a & b).subset_of(a));
  CHECK_FALSE(a.subset_of(b));
  CHECK(RootSet{}.empty());
  a.reset(0);
  CHECK(a.members() == std::vector<int>{70});
}

TEST_CASE("root set commutators") {
  for (int d = 2; d <= 7; ++d) {
    RootSystem sys(Family::A, d);
    SubgroupCalculus calc(sys, 3);
    CHECK(calc.commutator(calc.full(), calc.full()) == height_set(sys, 2));
    CHECK(calc.commutator(height_set(sys, 2), RootSet{}).empty());
    CHECK(calc.height_at_least(3) == height_set(sys, 3));
  }
  RootSystem b3(Family::B, 3);
  SubgroupCalculus c3(b3, 3);
  CHECK(c3.commutator(c3.full(), c3.full()) == height_set(b3, 2));
  const int p3 = b3.simple_root(2);
  RootSet x;
  x.set(p3);
  CHECK(c3.commutator(x, x).empty());
  CHECK(c3.ideal_closure(x) == roots_of(b3, {{0, 0, 1}, {0, 1, 1}, {0, 1, 2}, {1, 1, 1}, {1, 1, 2}, {1, 2, 2}}));
}

TEST_CASE("lower central filter") {
  RootSystem a2(Family::A, 2);
  SubgroupCalculus c2(a2, 3);
  const auto f2 = lower_central_filter(c2);
  CHECK(f2.factor_log_orders() == std::vector<int>{2, 1});

  for (int d = 3; d <= 8; ++d) {
    RootSystem sys(Family::A, d);
    SubgroupCalculus calc(sys, 5);
    const auto f = lower_central_filter(calc);
    CHECK(f.factor_log_orders().size() == static_cast<std::size_t>(d));
    CHECK(f.factor_log_orders()[0] == d);
    CHECK(f.factor_log_orders()[1] == d - 1);
    for (int m = 1; m <= d + 1; ++m) {
      CHECK(f.at({m}) == height_set(sys, m));
      CHECK(f.boundary({m}) == height_set(sys, m + 1));
    }
    std::vector<int> simple;
    for (int i = 0; i < d; ++i) simple.push_back(sys.simple_root(i));
    CHECK(f.graded_component({1}) == simple);
    CHECK(f.graded_component({d + 1}).empty());
    CHECK(f.at({0}) == calc.full());
  }
}

TEST_CASE("filter chains validate their terms") {
  RootSystem a2(Family::A, 2);
  SubgroupCalculus calc(a2, 3);
  FilterTerm top{{0}, {1}, calc.full()};
  FilterTerm bottom{{2}, {2}, RootSet{}};
  CHECK_NOTHROW(FilterChain(1, {top, bottom}));
  CHECK_THROWS(FilterChain(1, {bottom, top}));
  CHECK_THROWS(FilterChain(1, {top}));
}

TEST_CASE("graded bracket") {
  RootSystem a4(Family::A, 4);
  SubgroupCalculus calc(a4, 5);
  const auto f = lower_central_filter(calc);
  std::vector<Residue> u(4, 0), v(4, 0);
  u[0] = 1;
  v[1] = 1;
  const auto w = graded_bracket(calc, f, {1}, {1}, u, v);
  const auto basis = f.graded_component({2});
  REQUIRE(w.size() == basis.size());
  const int target = *a4.index_of({1, 1, 0, 0});
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (basis[i] == target)
      CHECK((w[i] == 1 || w[i] == 4));
    else
      CHECK(w[i] == 0);
  }
  CHECK(graded_bracket(calc, f, {1}, {1}, u, u) == std::vector<Residue>(3, 0));
  std::vector<Residue> far(4, 0);
  far[2] = 1;
  CHECK(graded_bracket(calc, f, {1}, {1}, u, far) == std::vector<Residue>(3, 0));
  CHECK_THROWS_AS(graded_bracket(calc, f, {1}, {1}, std::vector<Residue>(2, 0), v), Error);
}

TEST_CASE("second filter of A4") {
  RootSystem a4(Family::A, 4);
  const auto a = stable_adjoint_series(a4, 3);
  REQUIRE(a.history.size() >= 2);
  const FilterChain& f = a.history[1];
  CHECK(f.arity() == 2);
  CHECK(f.at({1, 0}) == f.at({0, 5}));
  CHECK(f.graded_component({1, 0}) == std::vector<int>{a4.simple_root(1), a4.simple_root(2)});
  CHECK(f.boundary({1, 0}) == a_h1(a4));
  CHECK(f.at({1, 1}) == a_h1(a4));
  CHECK(f.at({2, 0}) == height_set(a4, 2));
}

TEST_CASE("generated filter evaluation") {
  for (int d : {3, 4, 6}) {
    RootSystem sys(Family::A, d);
    SubgroupCalculus calc(sys, 3);
    const auto lcs = lower_central_filter(calc);
    const auto r = refine_once(calc, lcs);
    REQUIRE_FALSE(r.stable);
    GeneratedFilter gen(calc, refinement_generators(calc, lcs, r.s, r.subgroups),
                        refinement_saturation(lcs, r.s, r.subgroups));
    CHECK(gen.evaluate({1, 0}) == calc.full());
    CHECK(gen.evaluate({1, 1}) == a_h1(sys));
    CHECK(gen.evaluate({2, 0}) == gen.evaluate_all_paths({2, 0}));
    CHECK(gen.evaluate({2, 0}) == height_set(sys, 2));
    CHECK(gen.evaluate({d + 1, 0}).empty());
  }
  RootSystem a3(Family::A, 3);
  SubgroupCalculus c3(a3, 3);
  CHECK_THROWS(refinement_generators(c3, lower_central_filter(c3), {2}, {}));
}

TEST_CASE("length-n1 shortcut equals path enumeration") {
  for (auto [fam, d] : std::vector<std::pair<Family, int>>{{Family::A, 4}, {Family::B, 3}, {Family::C, 3}}) {
    RootSystem sys(fam, d);
    SubgroupCalculus calc(sys, 3);
    const auto a = stable_adjoint_series(sys, 3);
    CHECK_FALSE(generated_filter_failure(calc, a, 4, 3).has_value());
  }
}

TEST_CASE("filter axiom and Lie ring on computed filters") {
  for (auto [fam, d] : std::vector<std::pair<Family, int>>{
           {Family::A, 5}, {Family::B, 4}, {Family::C, 4}, {Family::D, 5}, {Family::G2, 2}}) {
    RootSystem sys(fam, d);
    const Residue p = fam == Family::G2 ? 5 : 3;
    SubgroupCalculus calc(sys, p);
    const auto a = stable_adjoint_series(sys, p);
    for (const auto& f : a.history) {
      CHECK_FALSE(filter_axiom_failure(calc, f).has_value());
      CHECK_FALSE(lie_ring_failure(calc, f, 300, 3).has_value());
    }
  }
}
