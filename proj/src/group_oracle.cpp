#include "adjfilter/group_oracle.hpp"

#include <stdexcept>

#include "adjfilter/error.hpp"

namespace adjfilter {

ChevalleyAlgebra::ChevalleyAlgebra(const RootSystem& sys) : sys_(&sys) {
  const int d = sys.rank();
  const int n = sys.num_positive();
  dim_ = d + 2 * n;
  table_.assign(static_cast<std::size_t>(dim_) * dim_, std::vector<long long>(dim_, 0));
  auto put = [&](int i, int j, int k, long long c) {
    table_[i * dim_ + j][k] += c;
    table_[j * dim_ + i][k] -= c;
  };
  std::vector<int> sq(d);
  for (int i = 0; i < d; ++i) sq[i] = sys.inner(sys.simple_root(i), sys.simple_root(i));
  for (int a = 0; a < 2 * n; ++a) {
    const auto ca = sys.signed_coeffs(a);
    // [h_i, e_a] = <a, p_i^vee> e_a
    for (int i = 0; i < d; ++i) {
      std::vector<int> pi(d, 0);
      pi[i] = 1;
      const long long c = 2LL * sys.inner(ca, pi) / sq[i];
      if (c) put(i, root_position(a), root_position(a), c);
    }
    for (int b = a + 1; b < 2 * n; ++b) {
      if (b == sys.negate(a)) {
        // [e_r, e_{-r}] = h_r = sum c_i (p_i,p_i)/(r,r) h_i for positive r
        const int r = a < n ? a : b;
        const int neg = a < n ? b : a;
        const auto cr = sys.root(r).coeffs;
        const int rr = sys.inner(r, r);
        for (int i = 0; i < d; ++i) {
          const long long num = 1LL * cr[i] * sq[i];
          if (num % rr != 0) throw std::logic_error("non-integral coroot");
          if (num) put(root_position(r), root_position(neg), i, num / rr);
        }
        continue;
      }
      const int s = sys.signed_sum(a, b);
      if (s < 0) continue;
      const int c = sys.structure_constant(a, b);
      put(root_position(a), root_position(b), root_position(s), c);
      // structure_constant(b, a) is read from the table independently; a
      // corrupted table shows up as an antisymmetry or Jacobi failure.
      table_[root_position(b) * dim_ + root_position(a)][root_position(s)] +=
          sys.structure_constant(b, a) + c;
    }
  }
}

std::vector<long long> ChevalleyAlgebra::bracket(const std::vector<long long>& x,
                                                 const std::vector<long long>& y) const {
  std::vector<long long> out(dim_, 0);
  for (int i = 0; i < dim_; ++i) {
    if (!x[i]) continue;
    for (int j = 0; j < dim_; ++j) {
      if (!y[j]) continue;
      const auto& b = table_[i * dim_ + j];
      for (int k = 0; k < dim_; ++k)
        if (b[k]) out[k] += x[i] * y[j] * b[k];
    }
  }
  return out;
}

IntMatrix ChevalleyAlgebra::ad_matrix(int signed_id) const {
  const int a = root_position(signed_id);
  IntMatrix m(dim_, std::vector<long long>(dim_, 0));
  for (int j = 0; j < dim_; ++j) {
    const auto& col = table_[a * dim_ + j];
    for (int i = 0; i < dim_; ++i) m[i][j] = col[i];
  }
  return m;
}

namespace {

IntMatrix int_mul(const IntMatrix& a, const IntMatrix& b) {
  const std::size_t n = a.size();
  IntMatrix c(n, std::vector<long long>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      if (!a[i][k]) continue;
      for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
    }
  return c;
}

bool int_zero(const IntMatrix& a) {
  for (const auto& row : a)
    for (auto x : row)
      if (x) return false;
  return true;
}

}  // namespace

int ChevalleyAlgebra::nilpotency_index(int signed_id) const {
  const IntMatrix m = ad_matrix(signed_id);
  IntMatrix pw = m;
  int k = 1;
  while (!int_zero(pw)) {
    pw = int_mul(pw, m);
    ++k;
    if (k > dim_ + 1) throw std::logic_error("ad e_r is not nilpotent");
  }
  return k;
}

bool ChevalleyAlgebra::antisymmetric() const {
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j)
      for (int k = 0; k < dim_; ++k)
        if (table_[i * dim_ + j][k] != -table_[j * dim_ + i][k]) return false;
  return true;
}

std::optional<std::array<int, 3>> ChevalleyAlgebra::jacobi_failure() const {
  auto unit = [&](int i) {
    std::vector<long long> v(dim_, 0);
    v[i] = 1;
    return v;
  };
  for (int x = 0; x < dim_; ++x)
    for (int y = x + 1; y < dim_; ++y)
      for (int z = y + 1; z < dim_; ++z) {
        const auto a = bracket(unit(x), bracket(unit(y), unit(z)));
        const auto b = bracket(unit(y), bracket(unit(z), unit(x)));
        const auto c = bracket(unit(z), bracket(unit(x), unit(y)));
        for (int k = 0; k < dim_; ++k)
          if (a[k] + b[k] + c[k] != 0) return std::array<int, 3>{x, y, z};
      }
  return std::nullopt;
}

GroupOracle::GroupOracle(const RootSystem& sys, Residue p) : sys_(&sys), p_(p), alg_(sys) {
  require_odd_prime(p);
  if (sys.family() == Family::G2 && p < 5) throw Error(ErrorCode::BadPrime, "G2 needs p >= 5");
  if (p > 255) throw Error(ErrorCode::BadPrime, "oracle elements store one byte per entry");
  const int n = sys.num_positive();
  powers_.resize(2 * n);
  for (int a = 0; a < 2 * n; ++a) {
    const IntMatrix m = alg_.ad_matrix(a);
    IntMatrix cur(alg_.dim(), std::vector<long long>(alg_.dim(), 0));
    for (int i = 0; i < alg_.dim(); ++i) cur[i][i] = 1;
    powers_[a].push_back(cur);
    for (int k = 1;; ++k) {
      cur = int_mul(cur, m);
      if (int_zero(cur)) break;
      for (auto& row : cur)
        for (auto& x : row) {
          if (x % k != 0) throw std::logic_error("divided power of ad e_r is not integral");
          x /= k;
        }
      powers_[a].push_back(cur);
    }
  }
  for (int i = 0; i < sys.rank(); ++i) {
    simple_gens_.push_back(root_element(sys.simple_root(i), 1));
    simple_inv_.push_back(root_element(sys.simple_root(i), -1));
  }
}

std::string GroupOracle::identity() const {
  const int n = alg_.dim();
  std::string s(static_cast<std::size_t>(n) * n, '\0');
  for (int i = 0; i < n; ++i) s[i * n + i] = 1;
  return s;
}

std::string GroupOracle::root_element(int signed_id, long long t) const {
  const int n = alg_.dim();
  const auto& pw = powers_.at(signed_id);
  std::vector<long long> acc(static_cast<std::size_t>(n) * n, 0);
  long long tk = 1;
  for (const auto& m : pw) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) acc[i * n + j] += mod_reduce(m[i][j], p_) * tk;
    tk = mod_reduce(tk * mod_reduce(t, p_), p_);
  }
  std::string s(acc.size(), '\0');
  for (std::size_t k = 0; k < acc.size(); ++k) s[k] = static_cast<char>(mod_reduce(acc[k], p_));
  return s;
}

std::string GroupOracle::multiply(const std::string& a, const std::string& b) const {
  const int n = alg_.dim();
  std::vector<std::uint32_t> acc(static_cast<std::size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      const std::uint32_t x = static_cast<unsigned char>(a[i * n + k]);
      if (!x) continue;
      const auto* brow = reinterpret_cast<const unsigned char*>(b.data()) + k * n;
      auto* crow = acc.data() + i * n;
      for (int j = 0; j < n; ++j) crow[j] += x * brow[j];
    }
  std::string c(acc.size(), '\0');
  for (std::size_t k = 0; k < acc.size(); ++k) c[k] = static_cast<char>(acc[k] % p_);
  return c;
}

std::string GroupOracle::inverse(const std::string& a) const {
  const std::string one = identity();
  std::string prev = one, cur = a;
  while (cur != one) {
    prev = cur;
    cur = multiply(cur, a);
  }
  return prev;
}

std::string GroupOracle::commutator(const std::string& a, const std::string& b) const {
  return multiply(multiply(inverse(a), inverse(b)), multiply(a, b));
}

FpMatrix GroupOracle::to_matrix(const std::string& a) const {
  const int n = alg_.dim();
  FpMatrix m(n, n, p_);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m.set(i, j, static_cast<unsigned char>(a[i * n + j]));
  return m;
}

std::string GroupOracle::from_matrix(const FpMatrix& m) const {
  std::string s(m.data().size(), '\0');
  for (std::size_t k = 0; k < s.size(); ++k) s[k] = static_cast<char>(m.data()[k]);
  return s;
}

EnumeratedSubgroup GroupOracle::enumerate(const std::vector<std::string>& gens, std::size_t cap) const {
  EnumeratedSubgroup g;
  g.generators = gens;
  const std::string one = identity();
  g.elements.push_back(one);
  g.members.insert(one);
  for (std::size_t head = 0; head < g.elements.size(); ++head) {
    for (const auto& x : gens) {
      std::string y = multiply(g.elements[head], x);
      if (g.members.insert(y).second) {
        g.elements.push_back(std::move(y));
        if (g.elements.size() > cap)
          throw Error(ErrorCode::CapExceeded, "subgroup exceeds " + std::to_string(cap) + " elements");
      }
    }
  }
  return g;
}

EnumeratedSubgroup GroupOracle::unipotent(std::size_t cap) const { return enumerate(simple_gens_, cap); }

EnumeratedSubgroup GroupOracle::subgroup_from_rootset(const RootSet& s, std::size_t cap) const {
  std::vector<std::string> gens;
  for (int r : s.members()) gens.push_back(root_element(r, 1));
  EnumeratedSubgroup g = enumerate(gens, cap);
  std::size_t expected = 1;
  for (int i = 0; i < s.count(); ++i) expected *= p_;
  if (g.order() != expected)
    throw Error(ErrorCode::OrderMismatch, "root set of size " + std::to_string(s.count()) + " generates " +
                                              std::to_string(g.order()) + " elements");
  return g;
}

EnumeratedSubgroup GroupOracle::commutator_subgroup(const EnumeratedSubgroup& h, const EnumeratedSubgroup& k,
                                                    std::size_t cap) const {
  std::vector<std::string> gens;
  std::unordered_set<std::string> seen;
  const std::string one = identity();
  for (const auto& x : h.generators)
    for (const auto& y : k.generators) {
      std::string c = commutator(x, y);
      if (c != one && seen.insert(c).second) gens.push_back(std::move(c));
    }
  EnumeratedSubgroup n = enumerate(gens, cap);
  for (;;) {
    std::vector<std::string> extra;
    for (std::size_t u = 0; u < simple_gens_.size(); ++u)
      for (const auto& g : n.generators) {
        std::string c = multiply(multiply(simple_inv_[u], g), simple_gens_[u]);
        if (!n.contains(c) && seen.insert(c).second) extra.push_back(std::move(c));
      }
    if (extra.empty()) return n;
    gens.insert(gens.end(), extra.begin(), extra.end());
    n = enumerate(gens, cap);
  }
}

EnumeratedSubgroup GroupOracle::commutator_subgroup_all_pairs(const EnumeratedSubgroup& h,
                                                              const EnumeratedSubgroup& k,
                                                              std::size_t cap) const {
  std::unordered_set<std::string> seen;
  std::vector<std::string> gens;
  const std::string one = identity();
  std::vector<std::string> hinv, kinv;
  for (const auto& x : h.elements) hinv.push_back(inverse(x));
  for (const auto& y : k.elements) kinv.push_back(inverse(y));
  for (std::size_t i = 0; i < h.elements.size(); ++i)
    for (std::size_t j = 0; j < k.elements.size(); ++j) {
      std::string c = multiply(multiply(hinv[i], kinv[j]), multiply(h.elements[i], k.elements[j]));
      if (c != one && seen.insert(c).second) gens.push_back(std::move(c));
    }
  return enumerate(gens, cap);
}

std::vector<EnumeratedSubgroup> GroupOracle::lower_central_series(std::size_t cap) const {
  std::vector<EnumeratedSubgroup> out{unipotent(cap)};
  while (out.back().order() > 1) out.push_back(commutator_subgroup(out.back(), out.front(), cap));
  return out;
}

RootSet GroupOracle::root_support(const EnumeratedSubgroup& g) const {
  RootSet s;
  for (int r = 0; r < sys_->num_positive(); ++r)
    if (g.contains(root_element(r, 1))) s.set(r);
  return s;
}

}  // namespace adjfilter
