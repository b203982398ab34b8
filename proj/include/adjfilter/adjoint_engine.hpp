#pragma once

// Adjoint refinement of root-set filters and the stable adjoint series.

#include <optional>
#include <utility>
#include <vector>

#include "adjfilter/filters.hpp"
#include "adjfilter/fplinalg.hpp"
#include "adjfilter/rootsys.hpp"

namespace adjfilter {

// u o v = sum_l (u gram[l] v^T) cod[l], u and v row vectors over the root
// bases dom_s and dom_t.
struct BilinearMap {
  std::vector<int> dom_s;
  std::vector<int> dom_t;
  std::vector<int> cod;
  std::vector<FpMatrix> gram;
  Residue p = 0;

  bool is_zero() const;
  std::vector<Residue> apply(const std::vector<Residue>& u, const std::vector<Residue>& v) const;
};

// Throws TrivialComponent when L_s or L_t is zero.
BilinearMap commutation_gram(SubgroupCalculus& calc, const FilterChain& f, const Index& s, const Index& t);

// Adjoint pairs (f, g) with uf o v = u o vg, stored as blocks (f, g^T) so
// that the ring product is blockwise.
struct AdjointResult {
  MatAlgebra adjoint;
  FpSubspace radical;
  std::vector<FpSubspace> radical_powers;  // J^0, J^1, ..., ending with 0
};

AdjointResult adjoint_ring(const BilinearMap& b);

// Span of the rows of the first blocks of a subspace of pairs, i.e. L_s X.
FpSubspace left_image(const MatAlgebra& a, const FpSubspace& x);

// H_0 = f(s) >= H_1 >= ... >= H_N = df(s) with H_i / df(s) = L_s J^i.
// Throws NonRootSpan if some L_s J^i is not spanned by root vectors.
std::vector<RootSet> radical_subgroups(SubgroupCalculus& calc, const FilterChain& f, const Index& s,
                                       const AdjointResult& res);

enum class PairScan {
  FirstFactor,  // only L_s x L_s -> L_2s for the lex-least nontrivial s
  AllPairs,     // every (s, t) with nontrivial components, lex order
};

struct RefineOptions {
  PairScan scan = PairScan::FirstFactor;
  bool scan_all = false;  // AllPairs: keep scanning after the first hit
};

struct RefineResult {
  bool stable = true;
  std::optional<FilterChain> chain;
  Index s, t;
  std::vector<RootSet> subgroups;  // H_0 .. H_N
  std::vector<std::pair<Index, Index>> later_nontrivial;
  int pairs_scanned = 0;
};

RefineResult refine_once(SubgroupCalculus& calc, const FilterChain& f, const RefineOptions& opts = {});

// Generator assignment used by refine_once, exposed for tests.
GeneratorAssignment refinement_generators(SubgroupCalculus& calc, const FilterChain& f, const Index& s,
                                          const std::vector<RootSet>& subgroups);
int refinement_saturation(const FilterChain& f, const Index& s, const std::vector<RootSet>& subgroups);

struct AlphaSeries {
  Family family = Family::A;
  int rank = 0;
  Residue prime = 0;
  std::vector<FilterChain> history;  // alpha^(1), alpha^(2), ...
  int grading_dim = 0;
  int iterations = 0;
  std::vector<int> factor_log_orders;
  int lcs_length = 0;
  std::vector<std::pair<Index, Index>> refinement_pairs;
  std::vector<std::vector<RootSet>> refinement_subgroups;  // H_0 .. H_N per round

  const FilterChain& chain() const { return history.back(); }
  int alpha_length() const { return static_cast<int>(factor_log_orders.size()); }
};

// Throws BadPrime for p < 3 (p < 5 for G2).
AlphaSeries stable_adjoint_series(const RootSystem& sys, Residue p, const RefineOptions& opts = {});

struct TopProfile {
  int top = 0;                // log_p |U / H_{m-1}|
  std::vector<int> steps;     // log_p |H_{k+1} / H_k| for k = 1 .. m-2
  int h1_over_gamma2 = 0;     // log_p |H_1 / gamma_2|
  std::vector<int> abelianization;  // factor dimensions of U/U' from the top
};

TopProfile top_factor_profile(const RootSystem& sys, const AlphaSeries& series);

}  // namespace adjfilter
