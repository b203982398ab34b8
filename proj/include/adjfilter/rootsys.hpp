#pragma once

// Root systems of types A_d, B_d, C_d, D_d and G2 together with a signed
// Chevalley basis.
//
// Fundamental roots are labelled along the Dynkin diagram so that p_i is
// joined to p_{i+1}:
//   A_d  chain p_1 - ... - p_d
//   B_d  chain with a double bond p_{d-1} => p_d, p_d short
//   C_d  chain with a double bond p_{d-1} <= p_d, p_d long
//   D_d  chain p_1 - ... - p_{d-2}, with p_{d-2} joined to both p_{d-1}, p_d
//   G2   p_1 short, p_2 long
// For C_d this is the usual drawing read from the other end; the incidence
// (p_d is the end node of the double bond) is what the rest of the code relies
// on, and it keeps p_1 and p_d the two end nodes in every chain type.
//
// Positive roots are stored in the total order  r < s  iff
// (height, c_d, c_{d-1}, ..., c_1) is lexicographically smaller. This is a
// linear order compatible with addition and puts p_i before p_j for i < j,
// so a root's position in positive_roots() is its rank in that order.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace adjfilter {

enum class Family { A, B, C, D, G2 };

std::string to_string(Family f);
Family parse_family(const std::string& text);
// "A5", "G2"
std::string system_name(Family f, int rank);

struct Root {
  std::vector<int> coeffs;

  int height() const;
  friend bool operator==(const Root&, const Root&) = default;
};

// "1,1,0"
std::string format_root(const Root& r);
Root parse_root(const std::string& text);

// One factor x_{ir+js}(C (-t)^i u^j) of the Chevalley commutator formula
// [x_s(u), x_r(t)] = prod x_{ir+js}(C_{ijrs} (-t)^i u^j).
struct CommutatorTerm {
  int i = 0;
  int j = 0;
  int root = -1;  // positive root index of ir+js
  int constant = 0;
};

class RootSystem {
 public:
  RootSystem(Family family, int rank);

  Family family() const { return family_; }
  int rank() const { return rank_; }
  int num_positive() const { return static_cast<int>(roots_.size()); }
  const std::vector<Root>& positive_roots() const { return roots_; }
  const Root& root(int index) const { return roots_.at(index); }
  int height(int index) const { return heights_.at(index); }
  int max_height() const;

  // Carter convention A_ij = 2(p_i,p_j)/(p_i,p_i).
  const std::vector<std::vector<int>>& cartan_matrix() const { return cartan_; }

  // Symmetric integer form on the root lattice (scaled so short roots of B/C
  // have squared length 2 and long roots 4; G2 uses 2 and 6).
  int inner(const std::vector<int>& a, const std::vector<int>& b) const;
  int inner(int i, int j) const;

  std::optional<int> index_of(const std::vector<int>& coeffs) const;
  int simple_root(int i) const { return simple_.at(i); }  // 0-based label i -> index

  // index of r+s if it is a positive root, -1 otherwise.
  int sum(int r, int s) const { return sum_.at(r).at(s); }

  // Order of the positive roots used for extraspecial pairs.
  bool precedes(int r, int s) const { return r < s; }

  // Unique extraspecial pair (r1, s1) with r1 + s1 = r. Throws
  // NotDecomposable for fundamental roots.
  std::pair<int, int> extraspecial_pair(int r) const;

  // Largest v >= 0 with s - v*r a root (of the full system, 0 excluded);
  // both arguments are signed root ids (see below).
  int string_down(int r_id, int s_id) const;

  // Signed root ids run over all of Phi: id < N is the positive root with
  // that index, id >= N is the negative of root id - N.
  int negate(int id) const;
  int signed_sum(int a, int b) const;  // id of a+b, -1 if not a root (or zero)
  std::vector<int> signed_coeffs(int id) const;

  // N_{a,b} with [e_a, e_b] = N_{a,b} e_{a+b}; zero when a+b is not a root.
  int structure_constant(int a, int b) const { return n_.at(a).at(b); }

  // Terms of [x_s(u), x_r(t)] for positive r != s, in increasing i+j.
  const std::vector<CommutatorTerm>& commutator_root_terms(int r, int s) const {
    return terms_.at(r).at(s);
  }

  // Copy with one structure constant replaced (commutator terms are rebuilt
  // from the modified table). Used for fault injection in verification tests.
  RootSystem with_structure_constant(int a, int b, int value) const;

  // Index of the root obtained by the diagram symmetry i -> d+1-i of A_d.
  int reversed(int index) const;

 private:
  void enumerate_roots();
  void build_structure_constants();
  void build_commutator_terms();

  Family family_;
  int rank_;
  std::vector<std::vector<int>> form_;
  std::vector<std::vector<int>> cartan_;
  std::vector<Root> roots_;
  std::vector<int> heights_;
  std::vector<int> simple_;
  std::map<std::vector<int>, int> lookup_;
  std::vector<std::vector<int>> sum_;
  std::vector<std::vector<int>> n_;  // over signed ids
  std::vector<std::vector<std::vector<CommutatorTerm>>> terms_;
};

}  // namespace adjfilter
