#include "adjfilter/filters.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

#include "adjfilter/error.hpp"

namespace adjfilter {

int lex_compare(const Index& m, const Index& n) {
  if (m.size() != n.size()) {
    throw Error(ErrorCode::ArityMismatch,
                "indices of arity " + std::to_string(m.size()) + " and " + std::to_string(n.size()));
  }
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] < n[i]) return -1;
    if (m[i] > n[i]) return 1;
  }
  return 0;
}

std::string format_index(const Index& n) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < n.size(); ++i) os << (i ? "," : "") << n[i];
  os << ')';
  return os.str();
}

std::vector<int> RootSet::members() const {
  std::vector<int> out;
  for (int k = 0; k < 4; ++k) {
    std::uint64_t w = w_[k];
    while (w) {
      out.push_back(k * 64 + std::countr_zero(w));
      w &= w - 1;
    }
  }
  return out;
}

SubgroupCalculus::SubgroupCalculus(const RootSystem& sys, Residue p) : sys_(&sys), p_(p) {
  const int n = sys.num_positive();
  if (n > kMaxRoots) throw Error(ErrorCode::UnsupportedRank, "too many positive roots for a root set");
  for (int r = 0; r < n; ++r) full_.set(r);
  live_.assign(n, std::vector<RootSet>(n));
  for (int r = 0; r < n; ++r)
    for (int s = 0; s < n; ++s) {
      if (r == s) continue;
      for (const auto& t : sys.commutator_root_terms(r, s))
        if (mod_reduce(t.constant, p) != 0) live_[r][s].set(t.root);
    }
  // Roots are sorted by height, so walking down fills up_ from the top.
  up_.assign(n, RootSet{});
  for (int r = n - 1; r >= 0; --r) {
    up_[r].set(r);
    for (int s = 0; s < n; ++s)
      if (int q = sys.sum(r, s); q >= 0) up_[r] |= up_[q];
  }
}

RootSet SubgroupCalculus::from_roots(const std::vector<int>& roots) const {
  RootSet s;
  for (int r : roots) {
    if (r < 0 || r >= sys_->num_positive()) throw Error(ErrorCode::InvalidArgument, "root index out of range");
    s.set(r);
  }
  return s;
}

RootSet SubgroupCalculus::height_at_least(int m) const {
  RootSet s;
  for (int r = 0; r < sys_->num_positive(); ++r)
    if (sys_->height(r) >= m) s.set(r);
  return s;
}

RootSet SubgroupCalculus::ideal_closure(const RootSet& s) const {
  RootSet out;
  for (int r : s.members()) out |= up_[r];
  return out;
}

RootSet SubgroupCalculus::commutator(const RootSet& h, const RootSet& k) {
  if (h.empty() || k.empty()) return {};
  const auto key = std::make_pair(h, k);
  if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  RootSet raw;
  const auto hm = h.members();
  const auto km = k.members();
  for (int r : hm)
    for (int s : km)
      if (r != s) raw |= live_[r][s];
  RootSet out = ideal_closure(raw);
  cache_.emplace(key, out);
  return out;
}

FilterChain::FilterChain(int arity, std::vector<FilterTerm> terms) : arity_(arity), terms_(std::move(terms)) {
  if (terms_.empty()) throw Error(ErrorCode::InvalidArgument, "empty filter");
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (static_cast<int>(terms_[i].start.size()) != arity_) throw Error(ErrorCode::ArityMismatch, "term index");
    if (i > 0) {
      if (lex_compare(terms_[i - 1].start, terms_[i].start) >= 0)
        throw Error(ErrorCode::InvalidArgument, "term starts must increase");
      if (!terms_[i].roots.subset_of(terms_[i - 1].roots) || terms_[i].roots == terms_[i - 1].roots)
        throw Error(ErrorCode::InvalidArgument, "terms must strictly descend");
    }
  }
  if (lex_compare(terms_.front().start, Index(arity_, 0)) != 0)
    throw Error(ErrorCode::InvalidArgument, "first term must start at 0");
  if (!terms_.back().roots.empty()) throw Error(ErrorCode::InvalidArgument, "last term must be trivial");
}

std::size_t FilterChain::term_index(const Index& n) const {
  // largest i with start_i <= n
  auto it = std::upper_bound(terms_.begin(), terms_.end(), n, [](const Index& x, const FilterTerm& t) {
    return lex_compare(x, t.start) < 0;
  });
  return static_cast<std::size_t>(it - terms_.begin()) - 1;
}

RootSet FilterChain::boundary(const Index& n) const {
  Index m = n;
  m.back() += 1;
  return at(m);
}

std::vector<int> FilterChain::graded_component(const Index& n) const {
  return (at(n) - boundary(n)).members();
}

std::vector<Index> FilterChain::nontrivial_indices() const {
  std::vector<Index> out;
  for (std::size_t i = 1; i < terms_.size(); ++i) {
    if (terms_[i].start.back() == 0) continue;
    Index n = terms_[i].start;
    n.back() -= 1;
    out.push_back(n);
  }
  return out;
}

std::vector<int> FilterChain::factor_log_orders() const {
  std::vector<int> out;
  for (std::size_t i = 0; i + 1 < terms_.size(); ++i)
    out.push_back(terms_[i].roots.count() - terms_[i + 1].roots.count());
  return out;
}

void assign_canonical_indices(std::vector<FilterTerm>& terms) {
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const Index& start = terms[i].start;
    Index lead(start.size(), 0);
    if (i + 1 == terms.size()) {
      // Unbounded interval; by convention one past the first coordinate
      // where the filter dies.
      const bool tail_zero = std::all_of(start.begin() + 1, start.end(), [](int x) { return x == 0; });
      lead[0] = tail_zero ? start[0] : start[0] + 1;
      terms[i].canonical = lead;
      continue;
    }
    const Index& next = terms[i + 1].start;
    lead[0] = next[0];
    if (lex_compare(lead, next) >= 0) lead[0] = next[0] - 1;
    terms[i].canonical = lex_compare(lead, start) < 0 ? start : lead;
  }
}

FilterChain lower_central_filter(SubgroupCalculus& calc) {
  const int c = calc.system().max_height();
  std::vector<FilterTerm> terms;
  terms.push_back({{0}, {}, calc.full()});
  for (int m = 2; m <= c + 1; ++m) terms.push_back({{m}, {}, calc.height_at_least(m)});
  assign_canonical_indices(terms);
  return FilterChain(1, std::move(terms));
}

std::vector<Residue> graded_bracket(SubgroupCalculus& calc, const FilterChain& f, const Index& s,
                                    const Index& t, const std::vector<Residue>& u,
                                    const std::vector<Residue>& v) {
  const auto bs = f.graded_component(s);
  const auto bt = f.graded_component(t);
  if (u.size() != bs.size() || v.size() != bt.size())
    throw Error(ErrorCode::DimensionMismatch, "bracket arguments do not match component dimensions");
  Index st(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) st[i] = s[i] + t[i];
  const RootSet top = f.at(st);
  const RootSet low = f.boundary(st);
  const auto bst = (top - low).members();
  std::vector<int> slot(calc.system().num_positive(), -1);
  for (std::size_t i = 0; i < bst.size(); ++i) slot[bst[i]] = static_cast<int>(i);

  const RootSystem& sys = calc.system();
  const Residue p = calc.prime();
  std::vector<Residue> out(bst.size(), 0);
  for (std::size_t i = 0; i < bs.size(); ++i) {
    if (!u[i]) continue;
    for (std::size_t j = 0; j < bt.size(); ++j) {
      if (!v[j] || bs[i] == bt[j]) continue;
      // [x_a(u), x_b(v)] = prod x_{ib+ja}(C_{ijba} (-v)^i u^j)
      for (const auto& term : sys.commutator_root_terms(bt[j], bs[i])) {
        if (mod_reduce(term.constant, p) == 0) continue;
        if (term.i == 1 && term.j == 1) {
          if (!top.test(term.root))
            throw Error(ErrorCode::GradingViolation,
                        "[" + format_root(sys.root(bs[i])) + "], [" + format_root(sys.root(bt[j])) +
                            "] leaves f" + format_index(st));
          if (low.test(term.root)) continue;
          const long long c = -static_cast<long long>(term.constant);
          const std::uint64_t add = std::uint64_t{mod_reduce(c, p)} * u[i] % p * v[j] % p;
          auto& cell = out[slot[term.root]];
          cell = static_cast<Residue>((cell + add) % p);
        } else if (!low.test(term.root)) {
          throw Error(ErrorCode::GradingViolation,
                      "higher commutator term " + format_root(sys.root(term.root)) + " outside boundary of f" +
                          format_index(st));
        }
      }
    }
  }
  return out;
}

GeneratedFilter::GeneratedFilter(SubgroupCalculus& calc, GeneratorAssignment pi, int saturation)
    : calc_(&calc), pi_(std::move(pi)), saturation_(saturation) {
  if (pi_.arity < 1) throw Error(ErrorCode::InvalidArgument, "arity must be positive");
  const int c = calc.system().max_height();
  for (int m = 0; m <= c + 2; ++m) gamma_.push_back(m <= 1 ? calc.full() : calc.height_at_least(m));
}

RootSet GeneratedFilter::pi_tail(const Index& x) {
  if (auto it = pi_memo_.find(x); it != pi_memo_.end()) return it->second;
  Index n;
  n.reserve(x.size() + 1);
  n.push_back(1);
  n.insert(n.end(), x.begin(), x.end());
  RootSet v = pi_.value(n);
  pi_memo_.emplace(x, v);
  return v;
}

RootSet GeneratedFilter::tail_product(int j, const Index& v) {
  if (j == 1) return pi_tail(v);
  if (static_cast<int>(tail_memo_.size()) <= j) tail_memo_.resize(j + 1);
  auto& memo = tail_memo_[j];
  if (auto it = memo.find(v); it != memo.end()) return it->second;
  RootSet out;
  // Run over x <= v componentwise; the left part gets v - x.
  Index x(v.size(), 0);
  Index rest = v;
  for (;;) {
    // [left, pi] lies in the normal subgroup left, so covered lefts add nothing.
    const RootSet left = tail_product(j - 1, rest);
    if (!left.subset_of(out)) out |= calc_->commutator(left, pi_tail(x));
    std::size_t q = 0;
    while (q < x.size() && x[q] == v[q]) {
      x[q] = 0;
      rest[q] = v[q];
      ++q;
    }
    if (q == x.size()) break;
    ++x[q];
    --rest[q];
  }
  memo.emplace(v, out);
  return out;
}

RootSet GeneratedFilter::evaluate(const Index& n) {
  if (static_cast<int>(n.size()) != pi_.arity) throw Error(ErrorCode::ArityMismatch, "index arity");
  if (n[0] == 0) return calc_->full();
  const int n1 = n[0];
  if (n1 + 1 >= static_cast<int>(gamma_.size())) return {};
  const Index tail(n.begin() + 1, n.end());
  return tail_product(n1, tail) | gamma_[n1 + 1];
}

RootSet GeneratedFilter::evaluate_all_paths(const Index& n) {
  if (static_cast<int>(n.size()) != pi_.arity) throw Error(ErrorCode::ArityMismatch, "index arity");
  if (std::all_of(n.begin(), n.end(), [](int x) { return x == 0; })) return calc_->full();
  const int max_len = n[0] + 1;
  std::map<std::tuple<Index, int, std::vector<int>>, RootSet> memo;
  // Extend a path whose commutator so far is `acc` (the empty path has
  // acc unset); `remaining` is what the rest of the path must sum to.
  std::function<RootSet(const Index&, int, const RootSet*)> walk = [&](const Index& remaining, int len,
                                                                      const RootSet* acc) -> RootSet {
    const bool done = std::all_of(remaining.begin(), remaining.end(), [](int x) { return x == 0; });
    RootSet out;
    if (done && acc) out = *acc;
    if (len == max_len) return out;
    if (acc && acc->empty()) return out;
    std::tuple<Index, int, std::vector<int>> key{remaining, len, acc ? acc->members() : std::vector<int>{-1}};
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    // every generator g <= remaining with g_1 <= 1
    Index g(remaining.size(), 0);
    for (;;) {
      if (g[0] <= 1) {
        Index rest = remaining;
        for (std::size_t i = 0; i < g.size(); ++i) rest[i] -= g[i];
        const RootSet val = g[0] == 0 ? calc_->full() : pi_.value(g);
        const RootSet next = acc ? calc_->commutator(*acc, val) : val;
        out |= walk(rest, len + 1, &next);
      }
      std::size_t q = 0;
      while (q < g.size() && g[q] == remaining[q]) g[q++] = 0;
      if (q == g.size()) break;
      ++g[q];
    }
    memo.emplace(std::move(key), out);
    return out;
  };
  return walk(n, 0, nullptr);
}

Index GeneratedFilter::first_exclusion(int root) {
  const int m = pi_.arity;
  const int top = static_cast<int>(gamma_.size());
  auto excluded = [&](const Index& n) { return !evaluate(n).test(root); };
  Index n(m, 0);
  for (int q = 0; q < m; ++q) {
    // Least value at coordinate q for which some continuation excludes the
    // root; continuations are checked at a saturated value of q+1.
    int b = 0;
    for (;; ++b) {
      Index probe = n;
      probe[q] = b;
      if (q + 1 < m) probe[q + 1] = std::max(1, probe[0]) * saturation_ + 1;
      if (excluded(probe)) break;
      if (q == 0 && b > top) throw std::logic_error("root never leaves the generated filter");
    }
    n[q] = b;
  }
  return n;
}

FilterChain GeneratedFilter::chain() {
  const RootSystem& sys = calc_->system();
  std::vector<Index> exit(sys.num_positive());
  std::set<Index, bool (*)(const Index&, const Index&)> starts(
      [](const Index& a, const Index& b) { return lex_compare(a, b) < 0; });
  starts.insert(Index(pi_.arity, 0));
  for (int r = 0; r < sys.num_positive(); ++r) {
    exit[r] = first_exclusion(r);
    starts.insert(exit[r]);
  }
  std::vector<FilterTerm> terms;
  for (const auto& st : starts) {
    RootSet expected;
    for (int r = 0; r < sys.num_positive(); ++r)
      if (lex_compare(exit[r], st) > 0) expected.set(r);
    const RootSet value = evaluate(st);
    if (!(value == expected)) throw std::logic_error("generated filter is not a chain at " + format_index(st));
    terms.push_back({st, {}, value});
  }
  assign_canonical_indices(terms);
  return FilterChain(pi_.arity, std::move(terms));
}

}  // namespace adjfilter
