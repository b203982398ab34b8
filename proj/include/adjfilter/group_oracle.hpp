#pragma once

// Brute-force model of U: the Chevalley group elements x_r(t) = exp(t ad e_r)
// acting on the Lie algebra over Z/pZ, with explicit subgroup enumeration.
// Only meant for small groups.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "adjfilter/filters.hpp"
#include "adjfilter/fplinalg.hpp"
#include "adjfilter/rootsys.hpp"

namespace adjfilter {

using IntMatrix = std::vector<std::vector<long long>>;

// Chevalley basis h_1..h_d, e_r (r > 0), e_{-r}. Basis position of e_a is
// rank + a for a signed root id a.
class ChevalleyAlgebra {
 public:
  explicit ChevalleyAlgebra(const RootSystem& sys);

  const RootSystem& system() const { return *sys_; }
  int dim() const { return dim_; }
  int root_position(int signed_id) const { return sys_->rank() + signed_id; }

  // Coefficients of [b_i, b_j].
  const std::vector<long long>& bracket(int i, int j) const { return table_[i * dim_ + j]; }
  std::vector<long long> bracket(const std::vector<long long>& x, const std::vector<long long>& y) const;

  // Matrix of ad e_a on column coordinate vectors.
  IntMatrix ad_matrix(int signed_id) const;
  int nilpotency_index(int signed_id) const;

  // First basis triple violating Jacobi, if any.
  std::optional<std::array<int, 3>> jacobi_failure() const;
  bool antisymmetric() const;

 private:
  const RootSystem* sys_;
  int dim_;
  std::vector<std::vector<long long>> table_;
};

struct EnumeratedSubgroup {
  std::vector<std::string> generators;
  std::vector<std::string> elements;
  std::unordered_set<std::string> members;

  std::size_t order() const { return elements.size(); }
  bool contains(const std::string& g) const { return members.count(g) > 0; }
  friend bool operator==(const EnumeratedSubgroup& a, const EnumeratedSubgroup& b) {
    return a.members == b.members;
  }
};

class GroupOracle {
 public:
  static constexpr std::size_t kDefaultCap = 1000000;

  // Throws BadPrime for p < 3 (p < 5 for G2) and for p > 255.
  GroupOracle(const RootSystem& sys, Residue p);

  const ChevalleyAlgebra& algebra() const { return alg_; }
  Residue prime() const { return p_; }

  // Elements are row-major matrices packed one byte per entry.
  std::string identity() const;
  std::string root_element(int signed_id, long long t) const;
  std::string multiply(const std::string& a, const std::string& b) const;
  std::string inverse(const std::string& a) const;
  std::string commutator(const std::string& a, const std::string& b) const;  // a^-1 b^-1 a b
  FpMatrix to_matrix(const std::string& a) const;
  std::string from_matrix(const FpMatrix& m) const;

  EnumeratedSubgroup enumerate(const std::vector<std::string>& gens, std::size_t cap = kDefaultCap) const;
  EnumeratedSubgroup unipotent(std::size_t cap = kDefaultCap) const;

  // Generated by x_r(1), r in s; throws OrderMismatch unless |G| = p^|s|.
  EnumeratedSubgroup subgroup_from_rootset(const RootSet& s, std::size_t cap = kDefaultCap) const;

  // [H, K] for normal subgroups of U, as the normal closure in U of the
  // commutators of generators.
  EnumeratedSubgroup commutator_subgroup(const EnumeratedSubgroup& h, const EnumeratedSubgroup& k,
                                         std::size_t cap = kDefaultCap) const;
  // [H, K] from every pair of elements; quadratic, small groups only.
  EnumeratedSubgroup commutator_subgroup_all_pairs(const EnumeratedSubgroup& h, const EnumeratedSubgroup& k,
                                                   std::size_t cap = kDefaultCap) const;

  // gamma_1 >= gamma_2 >= ... ending with the trivial group.
  std::vector<EnumeratedSubgroup> lower_central_series(std::size_t cap = kDefaultCap) const;

  // Positive roots r with X_r inside g.
  RootSet root_support(const EnumeratedSubgroup& g) const;

 private:
  const RootSystem* sys_;
  Residue p_;
  ChevalleyAlgebra alg_;
  std::vector<std::vector<IntMatrix>> powers_;  // (ad e_a)^k / k! per signed root id
  std::vector<std::string> simple_gens_;
  std::vector<std::string> simple_inv_;
};

}  // namespace adjfilter
