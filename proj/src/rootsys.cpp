#include "adjfilter/rootsys.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "adjfilter/error.hpp"

namespace adjfilter {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnsupportedRank: return "UnsupportedRank";
    case ErrorCode::UnsupportedFamily: return "UnsupportedFamily";
    case ErrorCode::NotDecomposable: return "NotDecomposable";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::BadPrime: return "BadPrime";
    case ErrorCode::InvalidIndex: return "InvalidIndex";
    case ErrorCode::GradingViolation: return "GradingViolation";
    case ErrorCode::TrivialComponent: return "TrivialComponent";
    case ErrorCode::NonRootSpan: return "NonRootSpan";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::OrderMismatch: return "OrderMismatch";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Error";
}

std::string to_string(Family f) {
  switch (f) {
    case Family::A: return "A";
    case Family::B: return "B";
    case Family::C: return "C";
    case Family::D: return "D";
    case Family::G2: return "G2";
  }
  return "?";
}

std::string system_name(Family f, int rank) {
  return f == Family::G2 ? "G2" : to_string(f) + std::to_string(rank);
}

Family parse_family(const std::string& text) {
  if (text == "A") return Family::A;
  if (text == "B") return Family::B;
  if (text == "C") return Family::C;
  if (text == "D") return Family::D;
  if (text == "G2" || text == "G") return Family::G2;
  throw Error(ErrorCode::UnsupportedFamily, "unknown family '" + text + "'");
}

int Root::height() const { return std::accumulate(coeffs.begin(), coeffs.end(), 0); }

std::string format_root(const Root& r) {
  std::string out;
  for (std::size_t i = 0; i < r.coeffs.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(r.coeffs[i]);
  }
  return out;
}

Root parse_root(const std::string& text) {
  Root r;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      r.coeffs.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidArgument, "bad root coefficient '" + item + "'");
    }
  }
  return r;
}

namespace {

std::vector<std::vector<int>> root_form(Family family, int d) {
  std::vector<std::vector<int>> f(d, std::vector<int>(d, 0));
  auto link = [&](int i, int j, int v) { f[i][j] = f[j][i] = v; };
  switch (family) {
    case Family::A:
      for (int i = 0; i < d; ++i) f[i][i] = 2;
      for (int i = 0; i + 1 < d; ++i) link(i, i + 1, -1);
      break;
    case Family::B:
      for (int i = 0; i < d; ++i) f[i][i] = (i + 1 < d) ? 4 : 2;
      for (int i = 0; i + 1 < d; ++i) link(i, i + 1, -2);
      break;
    case Family::C:
      for (int i = 0; i < d; ++i) f[i][i] = (i + 1 < d) ? 2 : 4;
      for (int i = 0; i + 2 < d; ++i) link(i, i + 1, -1);
      link(d - 2, d - 1, -2);
      break;
    case Family::D:
      for (int i = 0; i < d; ++i) f[i][i] = 2;
      for (int i = 0; i + 2 < d; ++i) link(i, i + 1, -1);
      link(d - 3, d - 1, -1);
      break;
    case Family::G2:
      f = {{2, -3}, {-3, 6}};
      break;
  }
  return f;
}

void check_rank(Family family, int d) {
  const auto bad = [&](const std::string& why) {
    throw Error(ErrorCode::UnsupportedRank, to_string(family) + std::to_string(d) + ": " + why);
  };
  switch (family) {
    case Family::A:
      if (d < 1) bad("rank must be >= 1");
      break;
    case Family::B:
    case Family::C:
      if (d < 2) bad("rank must be >= 2");
      break;
    case Family::D:
      if (d < 3) bad("rank must be >= 3");
      break;
    case Family::G2:
      if (d != 2) bad("G2 has rank 2");
      break;
  }
}

long long factorial(int n) {
  long long f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

long long exact_div(long long num, long long den, const char* what) {
  if (den == 0 || num % den != 0) {
    throw std::logic_error(std::string("non-integral structure constant in ") + what);
  }
  return num / den;
}

}  // namespace

RootSystem::RootSystem(Family family, int rank) : family_(family), rank_(rank) {
  check_rank(family, rank);
  form_ = root_form(family, rank);
  cartan_.assign(rank, std::vector<int>(rank, 0));
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j) cartan_[i][j] = 2 * form_[i][j] / form_[i][i];
  enumerate_roots();
  build_structure_constants();
  build_commutator_terms();
}

int RootSystem::inner(const std::vector<int>& a, const std::vector<int>& b) const {
  int s = 0;
  for (int i = 0; i < rank_; ++i)
    for (int j = 0; j < rank_; ++j) s += a[i] * form_[i][j] * b[j];
  return s;
}

int RootSystem::inner(int i, int j) const { return inner(signed_coeffs(i), signed_coeffs(j)); }

int RootSystem::max_height() const {
  return heights_.empty() ? 0 : *std::max_element(heights_.begin(), heights_.end());
}

void RootSystem::enumerate_roots() {
  // Grow by height: for a root r != p_i, the p_i-string through r is
  // r - a p_i, ..., r + b p_i with a - b = 2(r,p_i)/(p_i,p_i).
  std::vector<std::vector<int>> found;
  std::map<std::vector<int>, bool> seen;
  std::vector<std::vector<int>> layer;
  for (int i = 0; i < rank_; ++i) {
    std::vector<int> c(rank_, 0);
    c[i] = 1;
    layer.push_back(c);
    seen[c] = true;
  }
  while (!layer.empty()) {
    for (const auto& c : layer) found.push_back(c);
    std::vector<std::vector<int>> next;
    for (const auto& r : layer) {
      for (int i = 0; i < rank_; ++i) {
        std::vector<int> pi(rank_, 0);
        pi[i] = 1;
        if (r == pi) continue;
        int a = 0;
        for (;;) {
          std::vector<int> down = r;
          down[i] -= a + 1;
          if (down[i] < 0 || !seen.count(down)) break;
          ++a;
        }
        const int b = a - 2 * inner(r, pi) / form_[i][i];
        if (b > 0) {
          std::vector<int> up = r;
          up[i] += 1;
          if (!seen.count(up)) {
            seen[up] = true;
            next.push_back(up);
          }
        }
      }
    }
    layer = std::move(next);
  }
  auto key = [](const std::vector<int>& c) {
    std::vector<int> k;
    k.push_back(std::accumulate(c.begin(), c.end(), 0));
    k.insert(k.end(), c.rbegin(), c.rend());
    return k;
  };
  std::sort(found.begin(), found.end(),
            [&](const auto& x, const auto& y) { return key(x) < key(y); });
  for (std::size_t idx = 0; idx < found.size(); ++idx) {
    roots_.push_back(Root{found[idx]});
    heights_.push_back(roots_.back().height());
    lookup_[found[idx]] = static_cast<int>(idx);
  }
  simple_.assign(rank_, -1);
  for (int i = 0; i < rank_; ++i) {
    std::vector<int> c(rank_, 0);
    c[i] = 1;
    simple_[i] = lookup_.at(c);
  }
  const int n = num_positive();
  sum_.assign(n, std::vector<int>(n, -1));
  for (int r = 0; r < n; ++r)
    for (int s = 0; s < n; ++s) {
      std::vector<int> c = roots_[r].coeffs;
      for (int i = 0; i < rank_; ++i) c[i] += roots_[s].coeffs[i];
      if (auto it = lookup_.find(c); it != lookup_.end()) sum_[r][s] = it->second;
    }
}

std::optional<int> RootSystem::index_of(const std::vector<int>& coeffs) const {
  if (auto it = lookup_.find(coeffs); it != lookup_.end()) return it->second;
  return std::nullopt;
}

int RootSystem::negate(int id) const {
  const int n = num_positive();
  return id < n ? id + n : id - n;
}

std::vector<int> RootSystem::signed_coeffs(int id) const {
  const int n = num_positive();
  if (id < n) return roots_.at(id).coeffs;
  std::vector<int> c = roots_.at(id - n).coeffs;
  for (int& x : c) x = -x;
  return c;
}

int RootSystem::signed_sum(int a, int b) const {
  std::vector<int> c = signed_coeffs(a);
  const std::vector<int> cb = signed_coeffs(b);
  bool nonneg = true, nonpos = true, zero = true;
  for (int i = 0; i < rank_; ++i) {
    c[i] += cb[i];
    if (c[i] < 0) nonneg = false;
    if (c[i] > 0) nonpos = false;
    if (c[i] != 0) zero = false;
  }
  if (zero) return -1;
  if (nonneg) {
    auto idx = index_of(c);
    return idx ? *idx : -1;
  }
  if (nonpos) {
    for (int& x : c) x = -x;
    auto idx = index_of(c);
    return idx ? *idx + num_positive() : -1;
  }
  return -1;
}

int RootSystem::string_down(int r_id, int s_id) const {
  int v = 0;
  int cur = s_id;
  const int neg_r = negate(r_id);
  for (;;) {
    const int next = signed_sum(cur, neg_r);
    if (next < 0) return v;
    cur = next;
    ++v;
  }
}

std::pair<int, int> RootSystem::extraspecial_pair(int r) const {
  if (heights_.at(r) < 2) {
    throw Error(ErrorCode::NotDecomposable, "fundamental root " + format_root(roots_[r]));
  }
  for (int a = 0; a < r; ++a) {
    for (int b = a + 1; b < r; ++b)
      if (sum_[a][b] == r) return {a, b};
  }
  throw std::logic_error("no decomposition for a root of height >= 2");
}

void RootSystem::build_structure_constants() {
  const int n = num_positive();
  std::vector<std::vector<int>> pos(n, std::vector<int>(n, 0));
  auto sq = [&](int id) { return inner(id, id); };
  auto diff_index = [&](int x, int y) -> int {  // index of x - y if positive root
    std::vector<int> c = roots_[x].coeffs;
    for (int i = 0; i < rank_; ++i) c[i] -= roots_[y].coeffs[i];
    auto idx = index_of(c);
    return idx ? *idx : -1;
  };
  // N_{x,-y} for positive x != y from constants on positive pairs of lower height.
  auto n_pos_neg = [&](int x, int y) -> long long {
    if (int z = diff_index(x, y); z >= 0) {
      // x + (-y) + (-z) = 0 gives N_{x,-y} = -(z,z)/(x,x) N_{y,z}
      return exact_div(-1LL * sq(z) * pos[y][z], sq(x), "N_{x,-y}");
    }
    if (int z = diff_index(y, x); z >= 0) {
      // x + (-y) + z = 0 gives N_{x,-y} = (z,z)/(y,y) N_{z,x}
      return exact_div(1LL * sq(z) * pos[z][x], sq(y), "N_{x,-y}");
    }
    return 0;
  };

  for (int xi = 0; xi < n; ++xi) {
    if (heights_[xi] < 2) continue;
    const auto [a, b] = extraspecial_pair(xi);
    const int v = string_down(a, b);
    pos[a][b] = -(v + 1);
    pos[b][a] = v + 1;
    const long long nab = pos[a][b];
    for (int r = 0; r < xi; ++r) {
      for (int s = r + 1; s < xi; ++s) {
        if (sum_[r][s] != xi || r == a) continue;
        // Four-root identity on r + s + (-a) + (-b) = 0.
        long long num1 = 0, den1 = 1, num2 = 0, den2 = 1;
        if (int sa = diff_index(s, a), as = diff_index(a, s); sa >= 0 || as >= 0) {
          num1 = n_pos_neg(s, a) * n_pos_neg(r, b);
          den1 = sq(sa >= 0 ? sa : as);
        }
        if (int ra = diff_index(r, a), ar = diff_index(a, r); ra >= 0 || ar >= 0) {
          num2 = -n_pos_neg(r, a) * n_pos_neg(s, b);
          den2 = sq(ra >= 0 ? ra : ar);
        }
        const long long num = 1LL * sq(xi) * (num1 * den2 + num2 * den1);
        const long long den = den1 * den2 * nab;
        const long long nrs = exact_div(num, den, "four-root identity");
        pos[r][s] = static_cast<int>(nrs);
        pos[s][r] = -static_cast<int>(nrs);
      }
    }
  }

  n_.assign(2 * n, std::vector<int>(2 * n, 0));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      n_[x][y] = pos[x][y];
      n_[x + n][y + n] = -pos[x][y];
      if (x != y) {
        const int c = static_cast<int>(n_pos_neg(x, y));
        n_[x][y + n] = c;
        n_[y + n][x] = -c;
      }
    }
}

void RootSystem::build_commutator_terms() {
  const int n = num_positive();
  auto m_const = [&](int r, int s, int i) -> long long {
    // M_{r,s,i} = (1/i!) N_{r,s} N_{r,r+s} ... N_{r,(i-1)r+s}
    long long prod = 1;
    int cur = s;
    for (int k = 0; k < i; ++k) {
      if (cur < 0) return 0;
      prod *= n_[r][cur];
      cur = signed_sum(r, cur);
    }
    return exact_div(prod, factorial(i), "M_{r,s,i}");
  };
  terms_.assign(n, std::vector<std::vector<CommutatorTerm>>(n));
  for (int r = 0; r < n; ++r) {
    for (int s = 0; s < n; ++s) {
      if (r == s) continue;
      std::vector<CommutatorTerm> out;
      for (int total = 2; total <= 5; ++total) {
        for (int i = 1; i < total; ++i) {
          const int j = total - i;
          std::vector<int> c(rank_, 0);
          for (int k = 0; k < rank_; ++k) c[k] = i * roots_[r].coeffs[k] + j * roots_[s].coeffs[k];
          auto idx = index_of(c);
          if (!idx) continue;
          long long constant = 0;
          if (j == 1) {
            constant = m_const(r, s, i);
          } else if (i == 1) {
            constant = (j % 2 == 0 ? 1 : -1) * m_const(s, r, j);
          } else if (i == 3 && j == 2) {
            constant = exact_div(m_const(sum_[r][s], r, 2), 3, "C_32");
          } else if (i == 2 && j == 3) {
            constant = exact_div(-2 * m_const(sum_[r][s], s, 2), 3, "C_23");
          } else {
            throw std::logic_error("unexpected commutator term");
          }
          out.push_back(CommutatorTerm{i, j, *idx, static_cast<int>(constant)});
        }
      }
      terms_[r][s] = std::move(out);
    }
  }
}

RootSystem RootSystem::with_structure_constant(int a, int b, int value) const {
  RootSystem copy = *this;
  copy.n_.at(a).at(b) = value;
  copy.build_commutator_terms();
  return copy;
}

int RootSystem::reversed(int index) const {
  if (family_ != Family::A) {
    throw Error(ErrorCode::UnsupportedFamily, "diagram reversal is defined here for type A only");
  }
  std::vector<int> c = roots_.at(index).coeffs;
  std::reverse(c.begin(), c.end());
  return lookup_.at(c);
}

}  // namespace adjfilter
