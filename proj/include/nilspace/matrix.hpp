#pragma once

// Dense matrices over a Tower. Matrices act on column vectors from the left
// and K^n is a right K-vector space, so M (X l) = (M X) l. Every routine here
// stays on the correct side of that convention: elimination uses left row
// operations only, and right scalars multiply columns.

#include <cstddef>
#include <span>
#include <vector>

#include "nilspace/tower.hpp"

namespace nilspace {

class Matrix {
 public:
  /// Zero matrix.
  Matrix(Tower tower, std::size_t rows, std::size_t cols);
  /// Row-major entries; all must belong to `tower`.
  Matrix(Tower tower, std::size_t rows, std::size_t cols, std::vector<Scalar> entries);

  static Matrix identity(const Tower& tower, std::size_t n);
  /// a E_{i,j} in Mat_n (0-based indices).
  static Matrix unit(const Tower& tower, std::size_t n, std::size_t i, std::size_t j, const Scalar& a);
  static Matrix unit(const Tower& tower, std::size_t n, std::size_t i, std::size_t j);
  static Matrix from_rows(const Tower& tower, const std::vector<std::vector<Scalar>>& rows);
  /// Column vector from entries.
  static Matrix column(const Tower& tower, std::vector<Scalar> entries);
  /// P with P e_j = e_{perm[j]}.
  static Matrix permutation(const Tower& tower, std::span<const std::size_t> perm);

  const Tower& tower() const { return tower_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  const Scalar& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
  void set(std::size_t i, std::size_t j, Scalar value);
  const std::vector<Scalar>& entries() const { return entries_; }

  bool is_zero() const;

  Matrix block(std::size_t row0, std::size_t col0, std::size_t nrows, std::size_t ncols) const;
  Matrix column_at(std::size_t j) const { return block(0, j, rows_, 1); }
  /// Copies `b` into this matrix with its top-left corner at (row0, col0).
  void set_block(std::size_t row0, std::size_t col0, const Matrix& b);

  Matrix operator-() const;
  Matrix& operator+=(const Matrix& b);
  Matrix& operator-=(const Matrix& b);
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(const Matrix& a, const Matrix& b);
  /// Left and right scalar multiplication (distinct in the skew case).
  friend Matrix operator*(const Scalar& s, const Matrix& a);
  friend Matrix operator*(const Matrix& a, const Scalar& s);

  bool operator==(const Matrix& b) const;

 private:
  void check_compatible(const Matrix& b) const;

  Tower tower_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Scalar> entries_;
};

/// A (+) B block diagonal.
Matrix direct_sum(const Matrix& a, const Matrix& b);

/// Flattened K0-coordinates: row-major over entries, then coordinate index.
/// Length q * rows * cols; entries live in tower().base().
std::vector<Scalar> flatten_coords(const Matrix& m);
Matrix unflatten_coords(const Tower& tower, std::size_t rows, std::size_t cols, std::span<const Scalar> coords);

struct RowReduction {
  Matrix reduced;                   ///< reduced row echelon form R
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;  ///< pivot column of each non-zero row of R
  Matrix transform;                 ///< invertible T with T * M = R
};

/// Gauss-Jordan elimination by left row operations. Pivot: the first column
/// with a non-zero entry at or below the current row, topmost such row.
/// Without `with_transform` the transform is left as an empty matrix.
RowReduction row_reduce(const Matrix& m, bool with_transform = true);

/// Basis of {X : M X = 0} as column vectors, one per free column.
std::vector<Matrix> kernel(const Matrix& m);
/// Basis of the right column space M K^n: the pivot columns of M.
std::vector<Matrix> image_basis(const Matrix& m);
std::size_t rank(const Matrix& m);

/// Throws Error(NotSquare) or Error(Singular).
Matrix inverse(const Matrix& p);
bool is_invertible(const Matrix& p);

/// M^n == 0, by repeated squaring.
bool is_nilpotent(const Matrix& m);

Scalar trace(const Matrix& m);
/// Sum of the principal 2x2 minors; commutative towers only.
Scalar c2(const Matrix& m);

/// M != 0 and every column of M lies in X K. X must be a non-zero column.
bool column_space_is_line(const Matrix& m, const Matrix& x);

}  // namespace nilspace
