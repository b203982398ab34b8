#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "adjfilter/error.hpp"
#include "adjfilter/fplinalg.hpp"

using namespace adjfilter;

namespace {

using Element = MatAlgebra::Element;

Element unit(std::size_t n, std::size_t i, std::size_t j) {
  Element e(n * n, 0);
  e[i * n + j] = 1;
  return e;
}

Element eye(std::size_t n) {
  Element e(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) e[i * n + i] = 1;
  return e;
}

bool nilpotent(const MatAlgebra& a, const Element& x) {
  Element y = x;
  for (std::size_t k = 0; k < a.matrix_degree(); ++k) y = a.multiply(y, x);
  for (auto v : y)
    if (v) return false;
  return true;
}

// x is in the radical iff a x is nilpotent for every a in the algebra.
FpSubspace brute_radical(const MatAlgebra& a) {
  const Residue p = a.modulus();
  const auto basis = a.basis_elements();
  const std::size_t n = basis.size();
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= p;
  std::vector<Element> all;
  for (std::size_t code = 0; code < total; ++code) {
    Element x(a.element_length(), 0);
    std::size_t c = code;
    for (std::size_t i = 0; i < n; ++i, c /= p)
      for (std::size_t k = 0; k < x.size(); ++k) x[k] = (x[k] + (c % p) * basis[i][k]) % p;
    all.push_back(x);
  }
  std::vector<std::vector<Residue>> rad;
  for (const auto& x : all) {
    bool in = true;
    for (const auto& y : all)
      if (!nilpotent(a, a.multiply(y, x))) {
        in = false;
        break;
      }
    if (in) rad.push_back(x);
  }
  return FpSubspace::span(rad, a.element_length(), p);
}

}  // namespace

TEST_CASE("primes and residues") {
  CHECK(is_prime(2));
  CHECK(is_prime(97));
  CHECK_FALSE(is_prime(91));
  CHECK_FALSE(is_prime(1));
  CHECK_NOTHROW(require_odd_prime(3));
  CHECK_THROWS_AS(require_odd_prime(2), Error);
  CHECK_THROWS_AS(require_odd_prime(9), Error);
  CHECK(mod_reduce(-1, 5) == 4);
  CHECK(mod_reduce(-15, 5) == 0);
  for (Residue a = 1; a < 7; ++a) CHECK(a * mod_inverse(a, 7) % 7 == 1);
}

TEST_CASE("rref") {
  const auto zero = rref(FpMatrix(3, 4, 5));
  CHECK(zero.rank == 0);
  const auto id = rref(FpMatrix::identity(4, 7));
  CHECK(id.rank == 4);
  CHECK(id.matrix == FpMatrix::identity(4, 7));

  const auto r = rref(FpMatrix::from_rows({{1, 2}, {2, 4}}, 5));
  CHECK(r.rank == 1);
  CHECK(r.pivots == std::vector<std::size_t>{0});

  const auto s = rref(FpMatrix::from_rows({{0, 2, 1}, {3, 1, 0}}, 5));
  CHECK(s.rank == 2);
  CHECK(s.matrix(0, 0) == 1);
  CHECK(s.matrix(1, 1) == 1);
  CHECK(s.matrix(1, 0) == 0);
}

TEST_CASE("solve_homogeneous") {
  CHECK(solve_homogeneous(FpMatrix::identity(3, 5)).dim() == 0);
  CHECK(solve_homogeneous(FpMatrix(2, 3, 5)).dim() == 3);
  const auto k = solve_homogeneous(FpMatrix::from_rows({{1, 1}}, 3));
  REQUIRE(k.dim() == 1);
  CHECK(k.contains(std::vector<Residue>{1, 2}));

  std::mt19937 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const Residue p = trial % 2 ? 5 : 3;
    FpMatrix m(3, 6, p);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 6; ++j) m.set(i, j, rng() % p);
    const auto ker = solve_homogeneous(m);
    CHECK(ker.dim() + rref(m).rank == 6);
    for (std::size_t b = 0; b < ker.dim(); ++b) {
      const auto v = ker.basis().row(b);
      for (std::size_t i = 0; i < 3; ++i) {
        std::uint64_t acc = 0;
        for (std::size_t j = 0; j < 6; ++j) acc += std::uint64_t{m(i, j)} * v[j];
        CHECK(acc % p == 0);
      }
    }
  }
}

TEST_CASE("subspaces") {
  const auto a = FpSubspace::span({{1, 0, 0}, {0, 1, 0}}, 3, 3);
  const auto b = FpSubspace::span({{1, 1, 0}}, 3, 3);
  CHECK(a.contains(b));
  CHECK_FALSE(b.contains(a));
  CHECK((a + b) == a);
  std::vector<std::size_t> coords;
  CHECK(a.is_coordinate_subspace(&coords));
  CHECK(coords == std::vector<std::size_t>{0, 1});
  CHECK_FALSE(b.is_coordinate_subspace());
}

TEST_CASE("algebra closure") {
  CHECK(algebra_closure({eye(2)}, {2}, 5).dim() == 1);
  const auto nil = algebra_closure({unit(2, 0, 1)}, {2}, 5);
  CHECK(nil.dim() == 2);
  CHECK(nil.basis().contains(unit(2, 0, 1)));
  CHECK(nil.basis().contains(eye(2)));
  CHECK(algebra_closure({unit(2, 0, 1), unit(2, 1, 0)}, {2}, 5).dim() == 4);
  CHECK_THROWS_AS(algebra_closure({unit(3, 0, 1)}, {2}, 5), Error);
}

TEST_CASE("jacobson radical examples") {
  const auto m2 = algebra_closure({unit(2, 0, 1), unit(2, 1, 0)}, {2}, 3);
  CHECK(jacobson_radical(m2).dim() == 0);

  const auto nil = algebra_closure({unit(2, 0, 1)}, {2}, 5);
  const auto j = jacobson_radical(nil);
  CHECK(j.dim() == 1);
  CHECK(j.contains(unit(2, 0, 1)));

  // Scalars in degree p: the trace form alone vanishes identically here.
  const auto scalars = algebra_closure({eye(3)}, {3}, 3);
  CHECK(jacobson_radical(scalars).dim() == 0);
  const auto diag = algebra_closure({unit(6, 0, 0), unit(6, 1, 1)}, {6}, 3);
  CHECK(jacobson_radical(diag).dim() == 0);
}

TEST_CASE("jacobson radical against brute force") {
  std::mt19937 rng(17);
  int tested = 0, nontrivial = 0;
  for (int trial = 0; trial < 200 && tested < 25; ++trial) {
    const Residue p = trial % 3 == 0 ? 5 : 3;
    const std::size_t limit = p == 3 ? 6 : 4;
    const std::size_t n = 2 + rng() % 3;
    // block upper triangular generators with a random split
    const std::size_t split = 1 + rng() % (n - 1);
    std::vector<Element> gens;
    for (int g = 0; g < 2; ++g) {
      Element e(n * n, 0);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k)
          if (!(i >= split && k < split) && rng() % 2) e[i * n + k] = rng() % p;
      gens.push_back(e);
    }
    const auto a = algebra_closure(gens, {n}, p);
    if (a.dim() > limit) continue;
    ++tested;
    const auto j = brute_radical(a);
    nontrivial += j.dim() > 0;
    CHECK(jacobson_radical(a) == j);
  }
  CHECK(tested >= 10);
  CHECK(nontrivial >= 3);
}

TEST_CASE("ideal powers") {
  std::vector<Element> gens{unit(3, 0, 1), unit(3, 1, 2)};
  const auto a = algebra_closure(gens, {3}, 5);
  CHECK(a.dim() == 4);
  const auto j = FpSubspace::span({unit(3, 0, 1), unit(3, 1, 2), unit(3, 0, 2)}, 9, 5);
  CHECK(jacobson_radical(a) == j);
  CHECK(ideal_power(a, j, 0) == a.basis());
  CHECK(ideal_power(a, j, 1) == j);
  const auto j2 = ideal_power(a, j, 2);
  CHECK(j2 == FpSubspace::span({unit(3, 0, 2)}, 9, 5));
  CHECK(ideal_power(a, j, 3).dim() == 0);
}

TEST_CASE("block algebras multiply blockwise") {
  const auto a = algebra_closure({Element{1, 0, 0, 0, 0}, Element{0, 1, 0, 0, 1}}, {2, 1}, 3);
  const auto blocks = a.blocks_of(Element{1, 2, 0, 1, 2});
  REQUIRE(blocks.size() == 2);
  CHECK(blocks[0](0, 1) == 2);
  CHECK(blocks[1](0, 0) == 2);
  CHECK(a.from_blocks(blocks) == Element{1, 2, 0, 1, 2});
  CHECK(a.identity() == Element{1, 0, 0, 1, 1});
}
