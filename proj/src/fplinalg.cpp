#include "adjfilter/fplinalg.hpp"

#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

#include "adjfilter/error.hpp"

namespace adjfilter {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

void require_odd_prime(std::uint64_t p) {
  if (p < 3 || p >= (1ULL << 31) || !is_prime(p)) {
    throw Error(ErrorCode::BadPrime, "modulus must be an odd prime below 2^31, got " + std::to_string(p));
  }
}

Residue mod_reduce(long long value, Residue p) {
  long long r = value % static_cast<long long>(p);
  if (r < 0) r += p;
  return static_cast<Residue>(r);
}

Residue mod_inverse(Residue a, Residue p) {
  // Fermat: a^(p-2)
  std::uint64_t result = 1, base = a % p;
  std::uint64_t e = p - 2;
  while (e) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return static_cast<Residue>(result);
}

FpMatrix::FpMatrix(std::size_t rows, std::size_t cols, Residue p)
    : rows_(rows), cols_(cols), p_(p), data_(rows * cols, 0) {}

FpMatrix FpMatrix::identity(std::size_t n, Residue p) {
  FpMatrix m(n, n, p);
  for (std::size_t i = 0; i < n; ++i) m.data_[i * n + i] = 1 % p;
  return m;
}

FpMatrix FpMatrix::from_rows(const std::vector<std::vector<long long>>& rows, Residue p) {
  const std::size_t c = rows.empty() ? 0 : rows.front().size();
  FpMatrix m(rows.size(), c, p);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != c) throw Error(ErrorCode::DimensionMismatch, "ragged matrix rows");
    for (std::size_t j = 0; j < c; ++j) m.set(i, j, rows[i][j]);
  }
  return m;
}

void FpMatrix::append_row(std::span<const Residue> row) {
  if (rows_ == 0 && cols_ == 0) cols_ = row.size();
  if (row.size() != cols_) throw Error(ErrorCode::DimensionMismatch, "row length");
  data_.insert(data_.end(), row.begin(), row.end());
  ++rows_;
}

FpMatrix FpMatrix::operator*(const FpMatrix& other) const {
  if (cols_ != other.rows_) throw Error(ErrorCode::DimensionMismatch, "matrix product");
  FpMatrix out(rows_, other.cols_, p_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const std::uint64_t a = data_[i * cols_ + k];
      if (!a) continue;
      for (std::size_t j = 0; j < other.cols_; ++j) {
        auto& cell = out.data_[i * other.cols_ + j];
        cell = static_cast<Residue>((cell + a * other.data_[k * other.cols_ + j]) % p_);
      }
    }
  }
  return out;
}

FpMatrix FpMatrix::operator+(const FpMatrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw Error(ErrorCode::DimensionMismatch, "matrix sum");
  FpMatrix out = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = (data_[i] + other.data_[i]) % p_;
  return out;
}

FpMatrix FpMatrix::operator-(const FpMatrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw Error(ErrorCode::DimensionMismatch, "matrix difference");
  FpMatrix out = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = (data_[i] + p_ - other.data_[i]) % p_;
  return out;
}

FpMatrix FpMatrix::scaled(Residue c) const {
  FpMatrix out = *this;
  for (auto& x : out.data_) x = static_cast<Residue>(std::uint64_t{x} * c % p_);
  return out;
}

FpMatrix FpMatrix::transposed() const {
  FpMatrix out(cols_, rows_, p_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out.data_[j * rows_ + i] = data_[i * cols_ + j];
  return out;
}

bool FpMatrix::is_zero() const {
  for (auto x : data_)
    if (x) return false;
  return true;
}

std::ostream& operator<<(std::ostream& os, const FpMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << '[';
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? " " : "") << m(i, j);
    os << "]\n";
  }
  return os;
}

RrefResult rref(const FpMatrix& m) {
  RrefResult res{m, 0, {}};
  FpMatrix& a = res.matrix;
  const Residue p = m.modulus();
  const std::size_t rows = a.rows(), cols = a.cols();
  std::vector<Residue> buf = a.data();
  auto at = [&](std::size_t i, std::size_t j) -> Residue& { return buf[i * cols + j]; };
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && at(piv, c) == 0) ++piv;
    if (piv == rows) continue;
    if (piv != r)
      for (std::size_t j = 0; j < cols; ++j) std::swap(at(piv, j), at(r, j));
    const std::uint64_t inv = mod_inverse(at(r, c), p);
    for (std::size_t j = c; j < cols; ++j) at(r, j) = static_cast<Residue>(at(r, j) * inv % p);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || at(i, c) == 0) continue;
      const std::uint64_t f = at(i, c);
      for (std::size_t j = c; j < cols; ++j)
        at(i, j) = static_cast<Residue>((at(i, j) + (p - f) * at(r, j)) % p);
    }
    res.pivots.push_back(c);
    ++r;
  }
  res.rank = r;
  FpMatrix out(rows, cols, p);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) out.set(i, j, buf[i * cols + j]);
  res.matrix = std::move(out);
  return res;
}

FpSubspace::FpSubspace(std::size_t ambient_dim, Residue p)
    : ambient_(ambient_dim), p_(p), basis_(0, ambient_dim, p) {}

FpSubspace FpSubspace::span(const FpMatrix& rows) {
  FpSubspace s(rows.cols(), rows.modulus());
  const RrefResult r = rref(rows);
  for (std::size_t i = 0; i < r.rank; ++i) s.basis_.append_row(r.matrix.row(i));
  s.pivots_ = r.pivots;
  return s;
}

FpSubspace FpSubspace::span(const std::vector<std::vector<Residue>>& vectors, std::size_t ambient_dim,
                            Residue p) {
  FpMatrix m(0, ambient_dim, p);
  for (const auto& v : vectors) m.append_row(v);
  return span(m);
}

FpSubspace FpSubspace::full(std::size_t ambient_dim, Residue p) {
  return span(FpMatrix::identity(ambient_dim, p));
}

bool FpSubspace::contains(std::span<const Residue> v) const {
  if (v.size() != ambient_) throw Error(ErrorCode::DimensionMismatch, "vector length");
  std::vector<Residue> w(v.begin(), v.end());
  for (std::size_t k = 0; k < pivots_.size(); ++k) {
    const std::uint64_t f = w[pivots_[k]];
    if (!f) continue;
    auto row = basis_.row(k);
    for (std::size_t j = 0; j < ambient_; ++j) w[j] = static_cast<Residue>((w[j] + (p_ - f) * row[j]) % p_);
  }
  for (auto x : w)
    if (x) return false;
  return true;
}

bool FpSubspace::contains(const FpSubspace& other) const {
  for (std::size_t i = 0; i < other.dim(); ++i)
    if (!contains(other.basis_.row(i))) return false;
  return true;
}

FpSubspace FpSubspace::operator+(const FpSubspace& other) const {
  FpMatrix m = basis_;
  for (std::size_t i = 0; i < other.dim(); ++i) m.append_row(other.basis_.row(i));
  return span(m);
}

std::vector<Residue> FpSubspace::coordinates(std::span<const Residue> v) const {
  if (!contains(v)) throw Error(ErrorCode::InvalidArgument, "vector outside subspace");
  std::vector<Residue> c(dim());
  for (std::size_t k = 0; k < pivots_.size(); ++k) c[k] = v[pivots_[k]];
  return c;
}

bool FpSubspace::is_coordinate_subspace(std::vector<std::size_t>* coords) const {
  if (coords) coords->clear();
  for (std::size_t i = 0; i < dim(); ++i) {
    auto row = basis_.row(i);
    std::size_t nonzero = 0;
    for (auto x : row) nonzero += (x != 0);
    if (nonzero != 1) return false;
    if (coords) coords->push_back(pivots_[i]);
  }
  return true;
}

FpSubspace solve_homogeneous(const FpMatrix& constraints) {
  const std::size_t n = constraints.cols();
  const Residue p = constraints.modulus();
  const RrefResult r = rref(constraints);
  std::vector<bool> is_pivot(n, false);
  for (auto c : r.pivots) is_pivot[c] = true;
  FpMatrix kernel(0, n, p);
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Residue> v(n, 0);
    v[free] = 1;
    for (std::size_t k = 0; k < r.rank; ++k) v[r.pivots[k]] = (p - r.matrix(k, free)) % p;
    kernel.append_row(v);
  }
  return FpSubspace::span(kernel);
}

MatAlgebra::MatAlgebra(std::vector<std::size_t> block_sizes, FpSubspace basis)
    : blocks_(std::move(block_sizes)), basis_(std::move(basis)) {
  for (auto b : blocks_) length_ += b * b;
  if (basis_.ambient_dim() != length_) throw Error(ErrorCode::DimensionMismatch, "algebra basis length");
}

std::size_t MatAlgebra::matrix_degree() const {
  return std::accumulate(blocks_.begin(), blocks_.end(), std::size_t{0});
}

std::vector<MatAlgebra::Element> MatAlgebra::basis_elements() const {
  std::vector<Element> out;
  for (std::size_t i = 0; i < basis_.dim(); ++i) {
    auto r = basis_.basis().row(i);
    out.emplace_back(r.begin(), r.end());
  }
  return out;
}

MatAlgebra::Element MatAlgebra::multiply(const Element& a, const Element& b) const {
  if (a.size() != length_ || b.size() != length_) throw Error(ErrorCode::DimensionMismatch, "algebra element");
  const std::uint64_t p = modulus();
  Element out(length_, 0);
  std::size_t off = 0;
  for (auto n : blocks_) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) {
        const std::uint64_t x = a[off + i * n + k];
        if (!x) continue;
        for (std::size_t j = 0; j < n; ++j) {
          auto& cell = out[off + i * n + j];
          cell = static_cast<Residue>((cell + x * b[off + k * n + j]) % p);
        }
      }
    off += n * n;
  }
  return out;
}

MatAlgebra::Element MatAlgebra::identity() const {
  Element out(length_, 0);
  std::size_t off = 0;
  for (auto n : blocks_) {
    for (std::size_t i = 0; i < n; ++i) out[off + i * n + i] = 1;
    off += n * n;
  }
  return out;
}

std::vector<FpMatrix> MatAlgebra::blocks_of(const Element& a) const {
  std::vector<FpMatrix> out;
  std::size_t off = 0;
  for (auto n : blocks_) {
    FpMatrix m(n, n, modulus());
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m.set(i, j, a[off + i * n + j]);
    out.push_back(std::move(m));
    off += n * n;
  }
  return out;
}

MatAlgebra::Element MatAlgebra::from_blocks(const std::vector<FpMatrix>& blocks) const {
  if (blocks.size() != blocks_.size()) throw Error(ErrorCode::DimensionMismatch, "block count");
  Element out;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (blocks[b].rows() != blocks_[b] || blocks[b].cols() != blocks_[b])
      throw Error(ErrorCode::DimensionMismatch, "block shape");
    out.insert(out.end(), blocks[b].data().begin(), blocks[b].data().end());
  }
  return out;
}

FpSubspace MatAlgebra::product_span(const FpSubspace& a, const FpSubspace& b) const {
  FpMatrix rows(0, length_, modulus());
  for (std::size_t i = 0; i < a.dim(); ++i) {
    auto x = a.basis().row(i);
    Element xe(x.begin(), x.end());
    for (std::size_t j = 0; j < b.dim(); ++j) {
      auto y = b.basis().row(j);
      rows.append_row(multiply(xe, Element(y.begin(), y.end())));
    }
  }
  return FpSubspace::span(rows);
}

MatAlgebra algebra_closure(const std::vector<MatAlgebra::Element>& generators,
                           std::vector<std::size_t> block_sizes, Residue p) {
  std::size_t length = 0;
  for (auto b : block_sizes) length += b * b;
  MatAlgebra shell(block_sizes, FpSubspace(length, p));
  FpMatrix rows(0, length, p);
  rows.append_row(shell.identity());
  for (const auto& g : generators) {
    if (g.size() != length) throw Error(ErrorCode::DimensionMismatch, "generator length");
    rows.append_row(g);
  }
  FpSubspace span = FpSubspace::span(rows);
  for (;;) {
    const FpSubspace next = span + shell.product_span(span, span);
    if (next.dim() == span.dim()) break;
    span = next;
  }
  return MatAlgebra(std::move(block_sizes), std::move(span));
}

namespace {

// Trace of (lift of x)^e computed modulo m, x given blockwise with entries in [0, p).
std::uint64_t lifted_power_trace(const MatAlgebra& alg, const MatAlgebra::Element& x, std::uint64_t e,
                                 std::uint64_t m) {
  std::uint64_t trace = 0;
  std::size_t off = 0;
  for (auto n : alg.block_sizes()) {
    using Mat = std::vector<std::uint64_t>;
    auto mul = [&](const Mat& a, const Mat& b) {
      Mat c(n * n, 0);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
          const std::uint64_t v = a[i * n + k];
          if (!v) continue;
          for (std::size_t j = 0; j < n; ++j) c[i * n + j] = (c[i * n + j] + v * b[k * n + j]) % m;
        }
      return c;
    };
    Mat base(x.begin() + static_cast<std::ptrdiff_t>(off), x.begin() + static_cast<std::ptrdiff_t>(off + n * n));
    Mat result(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) result[i * n + i] = 1;
    for (std::uint64_t k = e; k; k >>= 1) {
      if (k & 1) result = mul(result, base);
      if (k > 1) base = mul(base, base);
    }
    for (std::size_t i = 0; i < n; ++i) trace = (trace + result[i * n + i]) % m;
    off += n * n;
  }
  return trace;
}

}  // namespace

FpSubspace jacobson_radical(const MatAlgebra& a) {
  // Descending chain I_{-1} = A, I_i = {x in I_{i-1} : g_i(xy) = 0 for all y},
  // g_i(z) = Tr(lift(z)^(p^i)) / p^i mod p, ending at i = floor(log_p n).
  const std::uint64_t p = a.modulus();
  const std::size_t n = a.matrix_degree();
  int top = 0;
  for (std::uint64_t q = p; q <= n; q *= p) ++top;
  const auto all = a.basis_elements();
  FpSubspace current = a.basis();
  std::uint64_t pi = 1;  // p^i
  for (int i = 0; i <= top && current.dim() > 0; ++i, pi *= p) {
    const std::uint64_t m = pi * p;
    FpMatrix g(all.size(), current.dim(), static_cast<Residue>(p));
    for (std::size_t j = 0; j < current.dim(); ++j) {
      auto row = current.basis().row(j);
      const MatAlgebra::Element x(row.begin(), row.end());
      for (std::size_t k = 0; k < all.size(); ++k) {
        const std::uint64_t t = lifted_power_trace(a, a.multiply(x, all[k]), pi, m);
        if (t % pi != 0) throw std::logic_error("radical trace functional not integral");
        g.set(k, j, static_cast<long long>(t / pi));
      }
    }
    const FpSubspace coeffs = solve_homogeneous(g);
    FpMatrix next(0, a.element_length(), static_cast<Residue>(p));
    for (std::size_t c = 0; c < coeffs.dim(); ++c) {
      std::vector<Residue> v(a.element_length(), 0);
      for (std::size_t j = 0; j < current.dim(); ++j) {
        const std::uint64_t w = coeffs.basis()(c, j);
        if (!w) continue;
        auto row = current.basis().row(j);
        for (std::size_t t = 0; t < v.size(); ++t) v[t] = static_cast<Residue>((v[t] + w * row[t]) % p);
      }
      next.append_row(v);
    }
    current = FpSubspace::span(next);
  }
  return current;
}

FpSubspace ideal_power(const MatAlgebra& a, const FpSubspace& j, int i) {
  if (i < 0) throw Error(ErrorCode::InvalidArgument, "negative ideal power");
  if (i == 0) return a.basis();
  FpSubspace cur = j;
  for (int k = 1; k < i && cur.dim() > 0; ++k) cur = a.product_span(cur, j);
  return cur;
}

}  // namespace adjfilter
