#pragma once

// Dense linear algebra over Z/pZ.

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace adjfilter {

using Residue = std::uint32_t;

// Checks 3 <= p < 2^31 and primality; throws BadPrime.
void require_odd_prime(std::uint64_t p);
bool is_prime(std::uint64_t n);

Residue mod_reduce(long long value, Residue p);
Residue mod_inverse(Residue a, Residue p);

class FpMatrix {
 public:
  FpMatrix() = default;
  FpMatrix(std::size_t rows, std::size_t cols, Residue p);

  static FpMatrix identity(std::size_t n, Residue p);
  static FpMatrix from_rows(const std::vector<std::vector<long long>>& rows, Residue p);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Residue modulus() const { return p_; }

  Residue operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  void set(std::size_t i, std::size_t j, long long value) { data_[i * cols_ + j] = mod_reduce(value, p_); }

  std::span<const Residue> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  const std::vector<Residue>& data() const { return data_; }

  void append_row(std::span<const Residue> row);

  FpMatrix operator*(const FpMatrix& other) const;
  FpMatrix operator+(const FpMatrix& other) const;
  FpMatrix operator-(const FpMatrix& other) const;
  FpMatrix scaled(Residue c) const;
  FpMatrix transposed() const;
  bool is_zero() const;

  friend bool operator==(const FpMatrix&, const FpMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  Residue p_ = 0;
  std::vector<Residue> data_;
};

std::ostream& operator<<(std::ostream& os, const FpMatrix& m);

struct RrefResult {
  FpMatrix matrix;
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;
};

// Reduced row echelon form, first nonzero entry as pivot.
RrefResult rref(const FpMatrix& m);

// Row space of a matrix, kept as a reduced echelon basis with zero rows removed.
class FpSubspace {
 public:
  FpSubspace() = default;
  FpSubspace(std::size_t ambient_dim, Residue p);

  static FpSubspace span(const FpMatrix& rows);
  static FpSubspace span(const std::vector<std::vector<Residue>>& vectors, std::size_t ambient_dim,
                         Residue p);
  static FpSubspace full(std::size_t ambient_dim, Residue p);

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return basis_.rows(); }
  Residue modulus() const { return p_; }
  const FpMatrix& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  bool contains(std::span<const Residue> v) const;
  bool contains(const FpSubspace& other) const;
  FpSubspace operator+(const FpSubspace& other) const;

  // Coordinates of v in the echelon basis; v must lie in the subspace.
  std::vector<Residue> coordinates(std::span<const Residue> v) const;

  // If the subspace is spanned by standard basis vectors, their positions.
  bool is_coordinate_subspace(std::vector<std::size_t>* coords = nullptr) const;

  friend bool operator==(const FpSubspace& a, const FpSubspace& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }

 private:
  std::size_t ambient_ = 0;
  Residue p_ = 0;
  FpMatrix basis_;
  std::vector<std::size_t> pivots_;
};

// Null space {x : constraints * x^T = 0}.
FpSubspace solve_homogeneous(const FpMatrix& constraints);

// Associative algebra of block-diagonal matrices. Elements are flat vectors
// holding the blocks one after another in row-major order; the product is
// blockwise. A pair algebra inside End(V) x End(W)^op is represented with
// blocks (f, g^T) so that its product is componentwise too.
class MatAlgebra {
 public:
  using Element = std::vector<Residue>;

  MatAlgebra(std::vector<std::size_t> block_sizes, FpSubspace basis);

  const std::vector<std::size_t>& block_sizes() const { return blocks_; }
  std::size_t element_length() const { return length_; }
  std::size_t matrix_degree() const;  // sum of block sizes
  Residue modulus() const { return basis_.modulus(); }
  const FpSubspace& basis() const { return basis_; }
  std::size_t dim() const { return basis_.dim(); }
  std::vector<Element> basis_elements() const;

  Element multiply(const Element& a, const Element& b) const;
  Element identity() const;
  std::vector<FpMatrix> blocks_of(const Element& a) const;
  Element from_blocks(const std::vector<FpMatrix>& blocks) const;

  // Span of products x*y for x in a, y in b.
  FpSubspace product_span(const FpSubspace& a, const FpSubspace& b) const;

 private:
  std::vector<std::size_t> blocks_;
  std::size_t length_ = 0;
  FpSubspace basis_;
};

// Smallest product-closed subspace containing the generators and identity.
// Throws DimensionMismatch when a generator has the wrong length.
MatAlgebra algebra_closure(const std::vector<MatAlgebra::Element>& generators,
                           std::vector<std::size_t> block_sizes, Residue p);

// Jacobson radical of a unital matrix algebra over Z/pZ.
FpSubspace jacobson_radical(const MatAlgebra& a);

// j^i with j^0 = a.
FpSubspace ideal_power(const MatAlgebra& a, const FpSubspace& j, int i);

}  // namespace adjfilter
