#pragma once

// Filters N^k -> subgroups of U under the lexicographic order. Every subgroup
// that occurs is generated by full root subgroups X_r over an ideal-closed set
// of positive roots, so it is stored as a bitset over root indices.

#include <array>
#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "adjfilter/fplinalg.hpp"
#include "adjfilter/rootsys.hpp"

namespace adjfilter {

using Index = std::vector<int>;

// -1, 0, 1; throws ArityMismatch.
int lex_compare(const Index& m, const Index& n);
std::string format_index(const Index& n);

constexpr int kMaxRoots = 256;

class RootSet {
 public:
  bool test(int i) const { return (w_[i >> 6] >> (i & 63)) & 1U; }
  void set(int i) { w_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(int i) { w_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  int count() const {
    int c = 0;
    for (auto w : w_) c += std::popcount(w);
    return c;
  }
  bool empty() const { return (w_[0] | w_[1] | w_[2] | w_[3]) == 0; }
  bool subset_of(const RootSet& o) const {
    for (int k = 0; k < 4; ++k)
      if (w_[k] & ~o.w_[k]) return false;
    return true;
  }
  std::vector<int> members() const;

  RootSet& operator|=(const RootSet& o) {
    for (int k = 0; k < 4; ++k) w_[k] |= o.w_[k];
    return *this;
  }
  friend RootSet operator|(RootSet a, const RootSet& b) { return a |= b; }
  friend RootSet operator&(RootSet a, const RootSet& b) {
    for (int k = 0; k < 4; ++k) a.w_[k] &= b.w_[k];
    return a;
  }
  // Set difference.
  friend RootSet operator-(RootSet a, const RootSet& b) {
    for (int k = 0; k < 4; ++k) a.w_[k] &= ~b.w_[k];
    return a;
  }
  friend bool operator==(const RootSet&, const RootSet&) = default;

  std::size_t hash() const {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (auto w : w_) h = (h ^ w) * 0x100000001b3ULL + (h >> 29);
    return static_cast<std::size_t>(h);
  }

 private:
  std::array<std::uint64_t, 4> w_{};
};

struct RootSetHash {
  std::size_t operator()(const RootSet& s) const { return s.hash(); }
};

// Root-set subgroup arithmetic for one root system at one prime. Commutators
// are cached, so an instance is not safe to share between threads.
class SubgroupCalculus {
 public:
  SubgroupCalculus(const RootSystem& sys, Residue p);

  const RootSystem& system() const { return *sys_; }
  Residue prime() const { return p_; }

  RootSet full() const { return full_; }
  RootSet from_roots(const std::vector<int>& roots) const;
  RootSet height_at_least(int m) const;  // U_m
  int log_order(const RootSet& s) const { return s.count(); }

  // Smallest ideal-closed set containing s.
  RootSet ideal_closure(const RootSet& s) const;
  bool is_ideal_closed(const RootSet& s) const { return ideal_closure(s) == s; }

  // Ideal closure of {ir+js : r in h, s in k, C_ijrs != 0 mod p}.
  RootSet commutator(const RootSet& h, const RootSet& k);

 private:
  const RootSystem* sys_;
  Residue p_;
  RootSet full_;
  // live_[r][s]: roots ir+js with nonzero constant, as a set
  std::vector<std::vector<RootSet>> live_;
  std::vector<RootSet> up_;  // up_[r]: ideal closure of {r}
  struct PairHash {
    std::size_t operator()(const std::pair<RootSet, RootSet>& k) const {
      return k.first.hash() * 31 + k.second.hash();
    }
  };
  std::unordered_map<std::pair<RootSet, RootSet>, RootSet, PairHash> cache_;
};

struct FilterTerm {
  Index start;      // lex-least index with this image
  Index canonical;  // largest first coordinate, then lex-least
  RootSet roots;
};

// A filter whose images form a chain. Term i is the value on the lex
// interval [terms[i].start, terms[i+1].start); the first start is 0 and the
// last term is trivial.
class FilterChain {
 public:
  FilterChain(int arity, std::vector<FilterTerm> terms);

  int arity() const { return arity_; }
  const std::vector<FilterTerm>& terms() const { return terms_; }
  std::size_t term_index(const Index& n) const;
  RootSet at(const Index& n) const { return terms_[term_index(n)].roots; }

  // d f(n) = f(n + e_k): e_k is the least nonzero element of N^k.
  RootSet boundary(const Index& n) const;
  // Roots in f(n) minus d f(n), in root-index order.
  std::vector<int> graded_component(const Index& n) const;
  // All n with L_n nontrivial, lex increasing.
  std::vector<Index> nontrivial_indices() const;

  // Nontrivial factor orders (log_p) from the top down.
  std::vector<int> factor_log_orders() const;

 private:
  int arity_;
  std::vector<FilterTerm> terms_;
};

// Assigns canonical indices to terms given their starts, in place.
void assign_canonical_indices(std::vector<FilterTerm>& terms);

FilterChain lower_central_filter(SubgroupCalculus& calc);

// Coordinate vector of the graded bracket of u in L_s and v in L_t over the
// basis graded_component(s + t). Throws GradingViolation.
std::vector<Residue> graded_bracket(SubgroupCalculus& calc, const FilterChain& f, const Index& s,
                                    const Index& t, const std::vector<Residue>& u,
                                    const std::vector<Residue>& v);

// Generator values on S = {n : n_1 <= 1} (the interval below 2e_1).
struct GeneratorAssignment {
  int arity = 0;
  std::function<RootSet(const Index&)> value;
};

// The filter generated by a generator assignment, together with the class
// filtration gamma_m of U.
class GeneratedFilter {
 public:
  GeneratedFilter(SubgroupCalculus& calc, GeneratorAssignment pi, int saturation);

  int arity() const { return pi_.arity; }

  // Product over length-n_1 paths times gamma_{n_1 + 1}.
  RootSet evaluate(const Index& n);

  // Unrestricted product over every path of length <= n_1 + 1 (no shortcut).
  RootSet evaluate_all_paths(const Index& n);

  // The distinct terms with their starts and canonical indices.
  FilterChain chain();

 private:
  RootSet tail_product(int j, const Index& v);
  Index first_exclusion(int root);

  SubgroupCalculus* calc_;
  GeneratorAssignment pi_;
  int saturation_;
  std::vector<RootSet> gamma_;
  std::map<Index, RootSet> pi_memo_;
  std::vector<std::map<Index, RootSet>> tail_memo_;
  RootSet pi_tail(const Index& x);
};

}  // namespace adjfilter
