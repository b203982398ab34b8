#include "adjfilter/adjoint_engine.hpp"

#include <algorithm>
#include <stdexcept>

#include "adjfilter/error.hpp"

namespace adjfilter {

bool BilinearMap::is_zero() const {
  return std::all_of(gram.begin(), gram.end(), [](const FpMatrix& g) { return g.is_zero(); });
}

std::vector<Residue> BilinearMap::apply(const std::vector<Residue>& u, const std::vector<Residue>& v) const {
  if (u.size() != dom_s.size() || v.size() != dom_t.size()) throw Error(ErrorCode::DimensionMismatch, "apply");
  std::vector<Residue> out(cod.size(), 0);
  for (std::size_t l = 0; l < cod.size(); ++l) {
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < u.size(); ++i) {
      if (!u[i]) continue;
      for (std::size_t j = 0; j < v.size(); ++j)
        acc = (acc + std::uint64_t{u[i]} * gram[l](i, j) % p * v[j]) % p;
    }
    out[l] = static_cast<Residue>(acc);
  }
  return out;
}

BilinearMap commutation_gram(SubgroupCalculus& calc, const FilterChain& f, const Index& s, const Index& t) {
  BilinearMap b;
  b.p = calc.prime();
  b.dom_s = f.graded_component(s);
  b.dom_t = f.graded_component(t);
  if (b.dom_s.empty() || b.dom_t.empty())
    throw Error(ErrorCode::TrivialComponent, "L" + format_index(b.dom_s.empty() ? s : t) + " is trivial");
  Index st(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) st[i] = s[i] + t[i];
  b.cod = f.graded_component(st);
  const std::size_t a = b.dom_s.size(), c = b.dom_t.size();
  b.gram.assign(b.cod.size(), FpMatrix(a, c, b.p));
  if (b.cod.empty()) return b;
  for (std::size_t i = 0; i < a; ++i)
    for (std::size_t j = 0; j < c; ++j) {
      std::vector<Residue> u(a, 0), v(c, 0);
      u[i] = 1;
      v[j] = 1;
      const auto w = graded_bracket(calc, f, s, t, u, v);
      for (std::size_t l = 0; l < w.size(); ++l) b.gram[l].set(i, j, w[l]);
    }
  return b;
}

AdjointResult adjoint_ring(const BilinearMap& b) {
  const std::size_t a = b.dom_s.size(), c = b.dom_t.size();
  const Residue p = b.p;
  // F gram_l = gram_l K for every l, unknowns vec(F) then vec(K).
  FpMatrix constraints(0, a * a + c * c, p);
  std::vector<Residue> row(a * a + c * c);
  for (const auto& g : b.gram) {
    for (std::size_t i = 0; i < a; ++i)
      for (std::size_t j = 0; j < c; ++j) {
        std::fill(row.begin(), row.end(), 0);
        bool any = false;
        for (std::size_t k = 0; k < a; ++k)
          if (g(k, j)) {
            row[i * a + k] = g(k, j);
            any = true;
          }
        for (std::size_t k = 0; k < c; ++k)
          if (g(i, k)) {
            row[a * a + k * c + j] = (p - g(i, k)) % p;
            any = true;
          }
        if (any) constraints.append_row(row);
      }
  }
  MatAlgebra alg({a, c}, solve_homogeneous(constraints));
  FpSubspace rad = jacobson_radical(alg);
  std::vector<FpSubspace> powers{alg.basis()};
  for (int i = 1;; ++i) {
    powers.push_back(ideal_power(alg, rad, i));
    if (powers.back().dim() == 0) break;
    if (i > static_cast<int>(a + c) + 1) throw std::logic_error("radical is not nilpotent");
  }
  return AdjointResult{std::move(alg), std::move(rad), std::move(powers)};
}

FpSubspace left_image(const MatAlgebra& a, const FpSubspace& x) {
  const std::size_t n = a.block_sizes().front();
  FpMatrix rows(0, n, a.modulus());
  for (std::size_t k = 0; k < x.dim(); ++k) {
    auto el = x.basis().row(k);
    for (std::size_t i = 0; i < n; ++i) rows.append_row(el.subspan(i * n, n));
  }
  return FpSubspace::span(rows);
}

std::vector<RootSet> radical_subgroups(SubgroupCalculus& calc, const FilterChain& f, const Index& s,
                                       const AdjointResult& res) {
  const auto basis = f.graded_component(s);
  const RootSet low = f.boundary(s);
  std::vector<RootSet> out;
  for (const auto& power : res.radical_powers) {
    const FpSubspace img = left_image(res.adjoint, power);
    std::vector<std::size_t> coords;
    if (!img.is_coordinate_subspace(&coords))
      throw Error(ErrorCode::NonRootSpan, "L" + format_index(s) + " J^" + std::to_string(out.size()) +
                                              " is not spanned by root vectors");
    RootSet h = low;
    for (auto c : coords) h.set(basis[c]);
    if (!calc.is_ideal_closed(h)) throw std::logic_error("radical subgroup is not normal");
    out.push_back(h);
  }
  return out;
}

GeneratorAssignment refinement_generators(SubgroupCalculus& calc, const FilterChain& f, const Index& s,
                                          const std::vector<RootSet>& subgroups) {
  if (s.empty() || s[0] != 1)
    throw std::logic_error("refinement at " + format_index(s) + ": only first coordinate 1 is handled");
  const int k = f.arity();
  const RootSet full = calc.full();
  GeneratorAssignment pi;
  pi.arity = k + 1;
  pi.value = [f, s, subgroups, full, k](const Index& n) -> RootSet {
    if (n[0] == 0) return full;
    const Index head(n.begin(), n.begin() + k);
    if (head == s) {
      const std::size_t i = std::min<std::size_t>(n[k], subgroups.size() - 1);
      return subgroups[i];
    }
    return f.at(head);
  };
  return pi;
}

int refinement_saturation(const FilterChain& f, const Index& s, const std::vector<RootSet>& subgroups) {
  (void)s;
  int k = static_cast<int>(subgroups.size());
  for (const auto& t : f.terms())
    if (t.start[0] <= 1)
      for (std::size_t q = 1; q < t.start.size(); ++q) k = std::max(k, t.start[q] + 1);
  return k + 1;
}

RefineResult refine_once(SubgroupCalculus& calc, const FilterChain& f, const RefineOptions& opts) {
  RefineResult out;
  auto idx = f.nontrivial_indices();
  if (opts.scan == PairScan::FirstFactor && !idx.empty()) idx.resize(1);
  for (const auto& s : idx) {
    for (const auto& t : idx) {
      Index st(s.size());
      for (std::size_t i = 0; i < s.size(); ++i) st[i] = s[i] + t[i];
      if (f.graded_component(st).empty()) continue;
      const BilinearMap b = commutation_gram(calc, f, s, t);
      ++out.pairs_scanned;
      if (b.is_zero()) continue;  // Adj = End x End^op, semisimple
      AdjointResult res = adjoint_ring(b);
      if (res.radical.dim() == 0) continue;
      if (!out.stable) {
        out.later_nontrivial.emplace_back(s, t);
        continue;
      }
      out.stable = false;
      out.s = s;
      out.t = t;
      out.subgroups = radical_subgroups(calc, f, s, res);
      if (!opts.scan_all) break;
    }
    if (!out.stable && !opts.scan_all) break;
  }
  if (out.stable) return out;
  GeneratedFilter gen(calc, refinement_generators(calc, f, out.s, out.subgroups),
                      refinement_saturation(f, out.s, out.subgroups));
  out.chain = gen.chain();
  return out;
}

AlphaSeries stable_adjoint_series(const RootSystem& sys, Residue p, const RefineOptions& opts) {
  require_odd_prime(p);
  if (sys.family() == Family::G2 && p < 5) throw Error(ErrorCode::BadPrime, "G2 needs p >= 5");
  SubgroupCalculus calc(sys, p);
  AlphaSeries a;
  a.family = sys.family();
  a.rank = sys.rank();
  a.prime = p;
  a.history.push_back(lower_central_filter(calc));
  a.lcs_length = static_cast<int>(a.history.back().factor_log_orders().size());
  for (;;) {
    RefineResult r = refine_once(calc, a.history.back(), opts);
    if (r.stable) break;
    a.refinement_pairs.emplace_back(r.s, r.t);
    a.refinement_subgroups.push_back(r.subgroups);
    a.history.push_back(std::move(*r.chain));
    ++a.iterations;
  }
  const FilterChain& top = a.history.back();
  for (std::size_t i = 1; i < top.terms().size(); ++i)
    if (lex_compare(top.terms()[i - 1].canonical, top.terms()[i].canonical) >= 0)
      throw std::logic_error("canonical indices out of order");
  a.grading_dim = top.arity();
  a.factor_log_orders = top.factor_log_orders();
  return a;
}

TopProfile top_factor_profile(const RootSystem& sys, const AlphaSeries& series) {
  RootSet gamma2;
  for (int r = 0; r < sys.num_positive(); ++r)
    if (sys.height(r) >= 2) gamma2.set(r);
  const auto& terms = series.chain().terms();
  std::size_t g = 0;
  while (g < terms.size() && !(terms[g].roots == gamma2)) ++g;
  if (g == terms.size()) throw std::logic_error("gamma_2 is not a term of the series");
  TopProfile prof;
  for (std::size_t i = 0; i < g; ++i)
    prof.abelianization.push_back(terms[i].roots.count() - terms[i + 1].roots.count());
  prof.top = prof.abelianization.front();
  if (g >= 2) {
    prof.h1_over_gamma2 = prof.abelianization.back();
    for (std::size_t k = 1; k + 1 < g; ++k) prof.steps.push_back(prof.abelianization[g - k - 1]);
  }
  return prof;
}

}  // namespace adjfilter
