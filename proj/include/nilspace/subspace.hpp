#pragma once

// K0-linear subspaces of rows x cols matrices over a Tower.
//
// A subspace is stored by the reduced row echelon form of the flattened
// K0-coordinate vectors of a spanning set (see flatten_coords: row-major over
// entries, then coordinate). The echelon basis is unique, so two subspaces are
// equal exactly when their basis lists are equal.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "nilspace/matrix.hpp"

namespace nilspace {

class MatrixSubspace {
 public:
  static MatrixSubspace span(const Tower& tower, std::size_t rows, std::size_t cols, std::span<const Matrix> mats);
  /// Square case; `mats` may be empty.
  static MatrixSubspace span(const Tower& tower, std::size_t n, std::span<const Matrix> mats);
  static MatrixSubspace zero(const Tower& tower, std::size_t rows, std::size_t cols);
  static MatrixSubspace full(const Tower& tower, std::size_t rows, std::size_t cols);
  /// NT_n(K), K0-dimension q n (n - 1) / 2.
  static MatrixSubspace strictly_upper(const Tower& tower, std::size_t n);
  static MatrixSubspace strictly_lower(const Tower& tower, std::size_t n);

  const Tower& tower() const { return tower_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  /// Side length; throws Error(NotSquare) for rectangular subspaces.
  std::size_t n() const;
  std::size_t dim() const { return basis_.size(); }
  const std::vector<Matrix>& basis() const { return basis_; }

  bool contains(const Matrix& m) const;
  /// K0-coefficients of m on basis(), or nullopt when m is not in the space.
  std::optional<std::vector<Scalar>> coordinates(const Matrix& m) const;
  /// sum_i coeffs[i] basis()[i], coefficients in tower().base().
  Matrix combination(std::span<const Scalar> coeffs) const;

  bool operator==(const MatrixSubspace& other) const;

 private:
  MatrixSubspace(Tower tower, std::size_t rows, std::size_t cols);
  void check_shape(const Matrix& m) const;
  std::vector<Scalar> reduce(std::vector<Scalar> flat) const;

  Tower tower_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Matrix> basis_;
  std::vector<std::vector<Scalar>> echelon_;  // flattened basis rows
  std::vector<std::size_t> pivots_;
};

MatrixSubspace sum(const MatrixSubspace& v, const MatrixSubspace& w);

/// P V P^{-1}. Throws Error(Singular) when P is not invertible.
MatrixSubspace conjugate(const MatrixSubspace& v, const Matrix& p);
MatrixSubspace conjugate(const MatrixSubspace& v, const Matrix& p, const Matrix& p_inverse);

/// Image of V under M -> M[row0 .. row0+nrows, col0 .. col0+ncols].
MatrixSubspace project_block(const MatrixSubspace& v, std::size_t row0, std::size_t col0, std::size_t nrows,
                             std::size_t ncols);

/// Per-entry constraints: Free, Zero, or Fixed(value).
class BlockPattern {
 public:
  enum class Kind { Free, Zero, Fixed };

  /// All entries Free.
  BlockPattern(std::size_t rows, std::size_t cols);
  static BlockPattern all_zero(std::size_t rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  BlockPattern& set_free(std::size_t i, std::size_t j);
  BlockPattern& set_zero(std::size_t i, std::size_t j);
  BlockPattern& set_fixed(std::size_t i, std::size_t j, Scalar value);
  BlockPattern& free_block(std::size_t row0, std::size_t col0, std::size_t nrows, std::size_t ncols);
  BlockPattern& zero_block(std::size_t row0, std::size_t col0, std::size_t nrows, std::size_t ncols);
  BlockPattern& fixed_block(std::size_t row0, std::size_t col0, const Matrix& values);

  Kind kind(std::size_t i, std::size_t j) const { return cells_[i * cols_ + j].kind; }
  const std::optional<Scalar>& value(std::size_t i, std::size_t j) const { return cells_[i * cols_ + j].value; }

  bool matches(const Matrix& m) const;

 private:
  struct Cell {
    Kind kind = Kind::Free;
    std::optional<Scalar> value;
  };
  Cell& cell(std::size_t i, std::size_t j);

  std::size_t rows_;
  std::size_t cols_;
  std::vector<Cell> cells_;
};

/// {M in V : M matches the pattern} = particular + homogeneous when feasible.
struct PatternSolution {
  bool feasible = false;
  std::optional<Matrix> particular;  ///< free coefficients set to zero
  MatrixSubspace homogeneous;        ///< solutions of the homogeneous system

  bool unique() const { return feasible && homogeneous.dim() == 0; }
};

PatternSolution solve_pattern(const MatrixSubspace& v, const BlockPattern& pattern);

struct NilpotencyMode {
  enum class Kind { Exhaustive, Sampled };
  Kind kind = Kind::Exhaustive;
  std::uint64_t cap = std::uint64_t{1} << 20;
  std::size_t samples = 1000;
  std::uint64_t seed = 42;

  static NilpotencyMode exhaustive(std::uint64_t cap = std::uint64_t{1} << 20) {
    return {Kind::Exhaustive, cap, 0, 0};
  }
  static NilpotencyMode sampled(std::size_t count, std::uint64_t seed = 42) {
    return {Kind::Sampled, 0, count, seed};
  }
};

enum class NilpotencyStatus { Proven, Refuted, Heuristic };

struct NilpotencyVerdict {
  NilpotencyStatus status = NilpotencyStatus::Heuristic;
  std::optional<Matrix> witness;  ///< non-nilpotent element when Refuted
  std::uint64_t checked = 0;      ///< elements examined
};

/// Number of elements |K0|^dim, or nullopt if K0 is infinite or it overflows.
std::optional<std::uint64_t> element_count(const MatrixSubspace& v);

/// Exhaustive: every K0-combination, lexicographic with the first coefficient
/// most significant, so a witness is the lexicographically smallest one.
/// Throws Error(CapExceeded) when K0 is infinite or |V| > cap.
/// Sampled: uniform coefficients over finite K0, integers in [-3, 3] over Q.
NilpotencyVerdict is_nilpotent_space(const MatrixSubspace& v, const NilpotencyMode& mode);

}  // namespace nilspace
