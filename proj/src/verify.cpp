#include "adjfilter/verify.hpp"

#include <functional>
#include <ostream>
#include <random>
#include <sstream>

#include "adjfilter/error.hpp"

namespace adjfilter {

namespace {

std::string basis_name(const RootSystem& sys, int i) {
  if (i < sys.rank()) return "h" + std::to_string(i + 1);
  return "e" + describe_root(sys, i - sys.rank());
}

std::string pair_name(const RootSystem& sys, int a, int b) {
  return "root pair " + describe_root(sys, a) + ", " + describe_root(sys, b);
}

Index add(const Index& a, const Index& b) {
  Index s(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) s[i] = a[i] + b[i];
  return s;
}

std::vector<Residue> random_vector(std::mt19937_64& rng, std::size_t n, Residue p) {
  std::uniform_int_distribution<Residue> dist(0, p - 1);
  std::vector<Residue> v(n);
  for (auto& x : v) x = dist(rng);
  return v;
}

void add_into(std::vector<Residue>& acc, const std::vector<Residue>& v, Residue p) {
  for (std::size_t i = 0; i < acc.size(); ++i) acc[i] = (acc[i] + v[i]) % p;
}

bool all_zero(const std::vector<Residue>& v) {
  for (auto x : v)
    if (x) return false;
  return true;
}

std::string label_of(const RootSystem& sys, Residue p) {
  return system_name(sys.family(), sys.rank()) + " p=" + std::to_string(p);
}

}  // namespace

bool InstanceReport::failed() const {
  for (const auto& o : outcomes)
    if (o.status == CheckStatus::Fail) return true;
  return false;
}

std::vector<VerifyInstance> default_verify_instances() {
  return {{Family::A, 2, 3}, {Family::A, 3, 3}, {Family::B, 2, 3}, {Family::B, 3, 3},
          {Family::C, 3, 3}, {Family::D, 4, 3}, {Family::A, 2, 5}, {Family::G2, 2, 5}};
}

std::string describe_root(const RootSystem& sys, int signed_id) {
  const int n = sys.num_positive();
  if (signed_id < n) return "(" + format_root(sys.root(signed_id)) + ")";
  return "-(" + format_root(sys.root(signed_id - n)) + ")";
}

std::optional<std::string> structure_constant_failure(const RootSystem& sys) {
  const int total = 2 * sys.num_positive();
  for (int a = 0; a < total; ++a)
    for (int b = 0; b < total; ++b) {
      const int nab = sys.structure_constant(a, b);
      const int nba = sys.structure_constant(b, a);
      if (sys.signed_sum(a, b) < 0) {
        if (nab != 0) return pair_name(sys, a, b) + ": N = " + std::to_string(nab) + " but the sum is not a root";
        continue;
      }
      const int expect = sys.string_down(a, b) + 1;
      if (nab != expect && nab != -expect)
        return pair_name(sys, a, b) + ": N = " + std::to_string(nab) + ", expected +-" + std::to_string(expect);
      if (nab != -nba)
        return pair_name(sys, a, b) + ": N = " + std::to_string(nab) + " but reversed pair gives " +
               std::to_string(nba);
    }
  return std::nullopt;
}

std::optional<std::string> commutator_formula_failure(const GroupOracle& g) {
  const RootSystem& sys = g.algebra().system();
  const int n = sys.num_positive();
  for (int r = 0; r < n; ++r)
    for (int s = 0; s < n; ++s) {
      if (r == s) continue;
      for (long long t : {1, 2})
        for (long long u : {1, 2}) {
          const auto lhs = g.commutator(g.root_element(s, u), g.root_element(r, t));
          auto rhs = g.identity();
          for (const auto& term : sys.commutator_root_terms(r, s)) {
            long long v = term.constant;
            for (int k = 0; k < term.i; ++k) v *= -t;
            for (int k = 0; k < term.j; ++k) v *= u;
            rhs = g.multiply(rhs, g.root_element(term.root, v));
          }
          if (lhs != rhs)
            return pair_name(sys, r, s) + ": [x_s(" + std::to_string(u) + "), x_r(" + std::to_string(t) +
                   ")] does not match the commutator formula";
        }
    }
  return std::nullopt;
}

std::optional<std::string> one_parameter_failure(const GroupOracle& g) {
  const RootSystem& sys = g.algebra().system();
  const long long p = g.prime();
  for (int r = 0; r < sys.num_positive(); ++r)
    for (long long s = 0; s < p; ++s)
      for (long long t = 0; t < p; ++t)
        if (g.multiply(g.root_element(r, s), g.root_element(r, t)) != g.root_element(r, s + t))
          return "root " + describe_root(sys, r) + ": x(" + std::to_string(s) + ") x(" + std::to_string(t) +
                 ") != x(" + std::to_string(s + t) + ")";
  return std::nullopt;
}

std::optional<std::string> automorphism_failure(const GroupOracle& g, int samples, std::uint64_t seed) {
  const ChevalleyAlgebra& alg = g.algebra();
  const RootSystem& sys = alg.system();
  const Residue p = g.prime();
  const auto dim = static_cast<std::size_t>(alg.dim());
  std::mt19937_64 rng(seed);
  auto act = [&](const FpMatrix& m, const std::vector<Residue>& v) {
    std::vector<long long> out(dim, 0);
    for (std::size_t i = 0; i < dim; ++i) {
      std::uint64_t acc = 0;
      for (std::size_t j = 0; j < dim; ++j) acc = (acc + std::uint64_t{m(i, j)} * v[j]) % p;
      out[i] = static_cast<long long>(acc);
    }
    return out;
  };
  auto reduce = [&](const std::vector<long long>& v) {
    std::vector<Residue> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = mod_reduce(v[i], p);
    return out;
  };
  for (int r = 0; r < sys.num_positive(); ++r) {
    const FpMatrix m = g.to_matrix(g.root_element(r, 1));
    for (int k = 0; k < samples; ++k) {
      const auto v = random_vector(rng, dim, p);
      const auto w = random_vector(rng, dim, p);
      std::vector<long long> vl(v.begin(), v.end()), wl(w.begin(), w.end());
      const auto lhs = reduce(alg.bracket(act(m, v), act(m, w)));
      const auto vw = reduce(alg.bracket(vl, wl));
      const auto rhs = reduce(act(m, vw));
      if (lhs != rhs) return "x" + describe_root(sys, r) + "(1) does not preserve the bracket";
    }
  }
  return std::nullopt;
}

std::optional<std::string> filter_axiom_failure(SubgroupCalculus& calc, const FilterChain& f) {
  for (const auto& x : f.terms())
    for (const auto& y : f.terms())
      for (const Index* m : {&x.start, &x.canonical})
        for (const Index* n : {&y.start, &y.canonical})
          if (!calc.commutator(f.at(*m), f.at(*n)).subset_of(f.at(add(*m, *n))))
            return "[f" + format_index(*m) + ", f" + format_index(*n) + "] is not inside f" +
                   format_index(add(*m, *n));
  return std::nullopt;
}

std::optional<std::string> lie_ring_failure(SubgroupCalculus& calc, const FilterChain& f, int samples,
                                            std::uint64_t seed) {
  const auto idx = f.nontrivial_indices();
  if (idx.empty()) return std::nullopt;
  const Residue p = calc.prime();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, idx.size() - 1);
  auto dim = [&](const Index& n) { return f.graded_component(n).size(); };
  auto br = [&](const Index& a, const Index& b, const std::vector<Residue>& u, const std::vector<Residue>& v) {
    return graded_bracket(calc, f, a, b, u, v);
  };
  for (int k = 0; k < samples; ++k) {
    const Index& a = idx[pick(rng)];
    const Index& b = idx[pick(rng)];
    const Index& c = idx[pick(rng)];
    const auto u = random_vector(rng, dim(a), p);
    const auto v = random_vector(rng, dim(b), p);
    const auto w = random_vector(rng, dim(c), p);
    if (!all_zero(br(a, a, u, u))) return "[u, u] != 0 for u in L" + format_index(a);
    auto uv = br(a, b, u, v);
    add_into(uv, br(b, a, v, u), p);
    if (!all_zero(uv))
      return "[u, v] + [v, u] != 0 for L" + format_index(a) + " x L" + format_index(b);
    const Index abc = add(add(a, b), c);
    std::vector<Residue> sum(dim(abc), 0);
    add_into(sum, br(add(a, b), c, br(a, b, u, v), w), p);
    add_into(sum, br(add(b, c), a, br(b, c, v, w), u), p);
    add_into(sum, br(add(c, a), b, br(c, a, w, u), v), p);
    if (!all_zero(sum))
      return "Jacobi fails on L" + format_index(a) + ", L" + format_index(b) + ", L" + format_index(c);
  }
  return std::nullopt;
}

std::optional<std::string> generated_filter_failure(SubgroupCalculus& calc, const AlphaSeries& a,
                                                    int max_first, int max_tail) {
  for (std::size_t k = 0; k + 1 < a.history.size(); ++k) {
    const FilterChain& prev = a.history[k];
    const Index& s = a.refinement_pairs[k].first;
    const auto& subs = a.refinement_subgroups[k];
    GeneratedFilter gen(calc, refinement_generators(calc, prev, s, subs), refinement_saturation(prev, s, subs));
    const int m = prev.arity() + 1;
    Index n(m, 0);
    std::optional<std::string> bad;
    std::function<void(int)> walk = [&](int q) {
      if (bad) return;
      if (q == m) {
        if (!(gen.evaluate(n) == gen.evaluate_all_paths(n)))
          bad = "round " + std::to_string(k + 1) + ": shortcut differs at " + format_index(n);
        return;
      }
      for (int v = 0; v <= (q == 0 ? max_first : max_tail); ++v) {
        n[q] = v;
        walk(q + 1);
      }
    };
    walk(0);
    if (bad) return bad;
  }
  return std::nullopt;
}

bool oracle_feasible(const RootSystem& sys, Residue p, std::size_t cap) {
  std::size_t order = 1;
  for (int i = 0; i < sys.num_positive(); ++i) {
    if (order > cap / p) return false;
    order *= p;
  }
  const std::size_t dim = sys.rank() + 2 * sys.num_positive();
  return order <= cap && order * dim * dim * 2 <= kOracleMemoryBudget;
}

InstanceReport verify_system(const RootSystem& sys, Residue p, std::size_t cap) {
  InstanceReport rep;
  rep.label = label_of(sys, p);
  auto run = [&](const std::string& name, const std::function<std::optional<std::string>()>& fn) {
    CheckOutcome o{name, CheckStatus::Pass, ""};
    try {
      if (auto msg = fn()) {
        o.status = CheckStatus::Fail;
        o.detail = *msg;
      }
    } catch (const std::exception& e) {
      o.status = CheckStatus::Fail;
      o.detail = e.what();
    }
    rep.outcomes.push_back(o);
    return o.status == CheckStatus::Pass;
  };
  auto skip = [&](const std::string& name, const std::string& why) {
    rep.outcomes.push_back({name, CheckStatus::Skip, why});
  };

  run("structure constants", [&] { return structure_constant_failure(sys); });
  const ChevalleyAlgebra alg(sys);
  run("lie algebra", [&]() -> std::optional<std::string> {
    if (!alg.antisymmetric()) {
      for (int i = 0; i < alg.dim(); ++i)
        for (int j = 0; j < alg.dim(); ++j)
          for (int k = 0; k < alg.dim(); ++k)
            if (alg.bracket(i, j)[k] != -alg.bracket(j, i)[k])
              return "bracket of " + basis_name(sys, i) + ", " + basis_name(sys, j) + " is not antisymmetric";
    }
    if (auto t = alg.jacobi_failure())
      return "Jacobi fails on " + basis_name(sys, (*t)[0]) + ", " + basis_name(sys, (*t)[1]) + ", " +
             basis_name(sys, (*t)[2]);
    return std::nullopt;
  });

  std::optional<GroupOracle> oracle;
  try {
    oracle.emplace(sys, p);
  } catch (const Error& e) {
    skip("group model", e.what());
  }
  if (oracle) {
    run("one-parameter", [&] { return one_parameter_failure(*oracle); });
    run("commutator formula", [&] { return commutator_formula_failure(*oracle); });
    run("automorphism", [&] { return automorphism_failure(*oracle, 200, 7); });
  }

  std::optional<AlphaSeries> series;
  SubgroupCalculus calc(sys, p);
  run("adjoint series", [&]() -> std::optional<std::string> {
    series = stable_adjoint_series(sys, p);
    return std::nullopt;
  });
  if (series) {
    run("filter axiom", [&]() -> std::optional<std::string> {
      for (const auto& f : series->history)
        if (auto m = filter_axiom_failure(calc, f)) return m;
      return std::nullopt;
    });
    run("lie ring", [&]() -> std::optional<std::string> {
      std::uint64_t seed = 11;
      for (const auto& f : series->history)
        if (auto m = lie_ring_failure(calc, f, 1000, seed++)) return m;
      return std::nullopt;
    });
    run("generated filter", [&] { return generated_filter_failure(calc, *series, 4, 3); });
  }

  const char* brute[] = {"lower central series", "term orders", "commutators"};
  if (!oracle || !series) {
    for (auto* b : brute) skip(b, "prerequisite failed");
  } else if (!oracle_feasible(sys, p, cap)) {
    for (auto* b : brute)
      skip(b, "|U| = " + std::to_string(p) + "^" + std::to_string(sys.num_positive()) +
                  " is beyond the enumeration budget; spot checks only");
  } else {
    const GroupOracle& g = *oracle;
    run("lower central series", [&]() -> std::optional<std::string> {
      const auto lcs = g.lower_central_series(cap);
      if (static_cast<int>(lcs.size()) != sys.max_height() + 1)
        return "class " + std::to_string(lcs.size() - 1) + ", expected " + std::to_string(sys.max_height());
      for (std::size_t m = 0; m < lcs.size(); ++m) {
        const RootSet um = calc.height_at_least(static_cast<int>(m) + 1);
        if (!(g.root_support(lcs[m]) == um) || !(lcs[m] == g.subgroup_from_rootset(um, cap)))
          return "gamma_" + std::to_string(m + 1) + " differs from U_" + std::to_string(m + 1);
      }
      return std::nullopt;
    });
    std::vector<EnumeratedSubgroup> terms;
    const bool orders_ok = run("term orders", [&]() -> std::optional<std::string> {
      for (const auto& t : series->chain().terms()) terms.push_back(g.subgroup_from_rootset(t.roots, cap));
      return std::nullopt;
    });
    if (!orders_ok) {
      skip("commutators", "term orders failed");
    } else {
      run("commutators", [&]() -> std::optional<std::string> {
        const auto& ts = series->chain().terms();
        for (std::size_t i = 0; i < ts.size(); ++i)
          for (std::size_t j = 0; j < ts.size(); ++j) {
            const RootSet c = calc.commutator(ts[i].roots, ts[j].roots);
            if (!(g.commutator_subgroup(terms[i], terms[j], cap) == g.subgroup_from_rootset(c, cap)))
              return "[alpha" + format_index(ts[i].canonical) + ", alpha" + format_index(ts[j].canonical) +
                     "] differs from its root-set prediction";
          }
        return std::nullopt;
      });
    }
  }
  return rep;
}

InstanceReport verify_instance(const VerifyInstance& inst, std::size_t cap) {
  const RootSystem sys(inst.family, inst.rank);
  return verify_system(sys, inst.prime, cap);
}

int print_reports(const std::vector<InstanceReport>& reports, std::ostream& os) {
  int pass = 0, fail = 0, skipped = 0;
  for (const auto& r : reports)
    for (const auto& o : r.outcomes) {
      switch (o.status) {
        case CheckStatus::Pass:
          os << "PASS  ";
          ++pass;
          break;
        case CheckStatus::Fail:
          os << "FAIL  ";
          ++fail;
          break;
        case CheckStatus::Skip:
          os << "SKIP  ";
          ++skipped;
          break;
      }
      os << r.label << "  " << o.check;
      if (!o.detail.empty()) os << ": " << o.detail;
      os << '\n';
    }
  os << pass << " passed, " << fail << " failed, " << skipped << " skipped\n";
  return fail ? 1 : 0;
}

}  // namespace adjfilter
