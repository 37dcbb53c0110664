#include "nilspace/matrix.hpp"

#include <algorithm>
#include <utility>

#include "nilspace/error.hpp"

namespace nilspace {

namespace {

[[noreturn]] void shape_error(const std::string& what) { throw Error(ErrorKind::ShapeMismatch, what); }

}  // namespace

Matrix::Matrix(Tower tower, std::size_t rows, std::size_t cols)
    : tower_(std::move(tower)), rows_(rows), cols_(cols), entries_(rows * cols, tower_.zero()) {}

Matrix::Matrix(Tower tower, std::size_t rows, std::size_t cols, std::vector<Scalar> entries)
    : tower_(std::move(tower)), rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows_ * cols_) shape_error("entry count does not match shape");
  for (const auto& e : entries_) {
    if (!(e.tower() == tower_)) throw Error(ErrorKind::TowerMismatch, "matrix entry from another tower");
  }
}

Matrix Matrix::identity(const Tower& tower, std::size_t n) {
  Matrix out(tower, n, n);
  for (std::size_t i = 0; i < n; ++i) out.entries_[i * n + i] = tower.one();
  return out;
}

Matrix Matrix::unit(const Tower& tower, std::size_t n, std::size_t i, std::size_t j, const Scalar& a) {
  if (i >= n || j >= n) throw Error(ErrorKind::IndexOutOfRange, "unit matrix index out of range");
  Matrix out(tower, n, n);
  out.set(i, j, a);
  return out;
}

Matrix Matrix::unit(const Tower& tower, std::size_t n, std::size_t i, std::size_t j) {
  return unit(tower, n, i, j, tower.one());
}

Matrix Matrix::from_rows(const Tower& tower, const std::vector<std::vector<Scalar>>& rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.front().size();
  std::vector<Scalar> entries;
  entries.reserve(r * c);
  for (const auto& row : rows) {
    if (row.size() != c) shape_error("ragged rows");
    entries.insert(entries.end(), row.begin(), row.end());
  }
  return Matrix(tower, r, c, std::move(entries));
}

Matrix Matrix::column(const Tower& tower, std::vector<Scalar> entries) {
  const std::size_t n = entries.size();
  return Matrix(tower, n, 1, std::move(entries));
}

Matrix Matrix::permutation(const Tower& tower, std::span<const std::size_t> perm) {
  const std::size_t n = perm.size();
  std::vector<bool> seen(n, false);
  Matrix out(tower, n, n);
  for (std::size_t j = 0; j < n; ++j) {
    if (perm[j] >= n || seen[perm[j]]) throw Error(ErrorKind::IndexOutOfRange, "not a permutation");
    seen[perm[j]] = true;
    out.entries_[perm[j] * n + j] = tower.one();
  }
  return out;
}

void Matrix::set(std::size_t i, std::size_t j, Scalar value) {
  if (i >= rows_ || j >= cols_) throw Error(ErrorKind::IndexOutOfRange, "matrix index out of range");
  if (!(value.tower() == tower_)) throw Error(ErrorKind::TowerMismatch, "entry from another tower");
  entries_[i * cols_ + j] = std::move(value);
}

bool Matrix::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const Scalar& s) { return s.is_zero(); });
}

Matrix Matrix::block(std::size_t row0, std::size_t col0, std::size_t nrows, std::size_t ncols) const {
  if (row0 + nrows > rows_ || col0 + ncols > cols_) throw Error(ErrorKind::IndexOutOfRange, "block out of range");
  Matrix out(tower_, nrows, ncols);
  for (std::size_t i = 0; i < nrows; ++i) {
    for (std::size_t j = 0; j < ncols; ++j) out.entries_[i * ncols + j] = (*this)(row0 + i, col0 + j);
  }
  return out;
}

void Matrix::set_block(std::size_t row0, std::size_t col0, const Matrix& b) {
  if (!(b.tower_ == tower_)) throw Error(ErrorKind::TowerMismatch, "block from another tower");
  if (row0 + b.rows_ > rows_ || col0 + b.cols_ > cols_) throw Error(ErrorKind::IndexOutOfRange, "block out of range");
  for (std::size_t i = 0; i < b.rows_; ++i) {
    for (std::size_t j = 0; j < b.cols_; ++j) entries_[(row0 + i) * cols_ + col0 + j] = b(i, j);
  }
}

void Matrix::check_compatible(const Matrix& b) const {
  if (!(tower_ == b.tower_)) throw Error(ErrorKind::TowerMismatch, "matrices over different towers");
}

Matrix Matrix::operator-() const {
  Matrix out = *this;
  for (auto& e : out.entries_) e = -e;
  return out;
}

Matrix& Matrix::operator+=(const Matrix& b) {
  check_compatible(b);
  if (rows_ != b.rows_ || cols_ != b.cols_) shape_error("sum of differently shaped matrices");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += b.entries_[i];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& b) {
  check_compatible(b);
  if (rows_ != b.rows_ || cols_ != b.cols_) shape_error("difference of differently shaped matrices");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= b.entries_[i];
  return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  a.check_compatible(b);
  if (a.cols_ != b.rows_) shape_error("product of incompatible shapes");
  Matrix out(a.tower_, a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Scalar& x = a(i, k);
      if (x.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        const Scalar& y = b(k, j);
        if (y.is_zero()) continue;
        out.entries_[i * b.cols_ + j] += x * y;
      }
    }
  }
  return out;
}

Matrix operator*(const Scalar& s, const Matrix& a) {
  Matrix out = a;
  for (auto& e : out.entries_) e = s * e;
  return out;
}

Matrix operator*(const Matrix& a, const Scalar& s) {
  Matrix out = a;
  for (auto& e : out.entries_) e = e * s;
  return out;
}

bool Matrix::operator==(const Matrix& b) const {
  return tower_ == b.tower_ && rows_ == b.rows_ && cols_ == b.cols_ && entries_ == b.entries_;
}

Matrix direct_sum(const Matrix& a, const Matrix& b) {
  if (!(a.tower() == b.tower())) throw Error(ErrorKind::TowerMismatch, "direct sum over different towers");
  Matrix out(a.tower(), a.rows() + b.rows(), a.cols() + b.cols());
  out.set_block(0, 0, a);
  out.set_block(a.rows(), a.cols(), b);
  return out;
}

std::vector<Scalar> flatten_coords(const Matrix& m) {
  std::vector<Scalar> out;
  out.reserve(m.rows() * m.cols() * m.tower().dimension());
  for (const auto& e : m.entries()) {
    auto c = e.coords();
    std::move(c.begin(), c.end(), std::back_inserter(out));
  }
  return out;
}

Matrix unflatten_coords(const Tower& tower, std::size_t rows, std::size_t cols, std::span<const Scalar> coords) {
  const std::size_t q = tower.dimension();
  if (coords.size() != rows * cols * q) throw Error(ErrorKind::WrongLength, "flattened length mismatch");
  std::vector<Scalar> entries;
  entries.reserve(rows * cols);
  for (std::size_t e = 0; e < rows * cols; ++e) entries.push_back(tower.from_coords(coords.subspan(e * q, q)));
  return Matrix(tower, rows, cols, std::move(entries));
}

RowReduction row_reduce(const Matrix& m, bool with_transform) {
  const Tower& tower = m.tower();
  const std::size_t nr = m.rows();
  const std::size_t nc = m.cols();
  // Row-major working copies; rows are swapped as whole vectors.
  std::vector<std::vector<Scalar>> rows(nr);
  for (std::size_t i = 0; i < nr; ++i) {
    rows[i].assign(m.entries().begin() + static_cast<std::ptrdiff_t>(i * nc),
                   m.entries().begin() + static_cast<std::ptrdiff_t>((i + 1) * nc));
  }
  std::vector<std::vector<Scalar>> trans;
  if (with_transform) {
    trans.assign(nr, std::vector<Scalar>(nr, tower.zero()));
    for (std::size_t i = 0; i < nr; ++i) trans[i][i] = tower.one();
  }

  // row_i <- s * row_i and row_i <- row_i - s * row_r, always on the left.
  const auto scale_left = [](std::vector<Scalar>& row, const Scalar& s) {
    for (auto& e : row) {
      if (!e.is_zero()) e = s * e;
    }
  };
  const auto subtract_left = [](std::vector<Scalar>& row, const Scalar& s, const std::vector<Scalar>& src) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (!src[j].is_zero()) row[j] -= s * src[j];
    }
  };

  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < nc && r < nr; ++c) {
    std::size_t p = r;
    while (p < nr && rows[p][c].is_zero()) ++p;
    if (p == nr) continue;
    if (p != r) {
      std::swap(rows[p], rows[r]);
      if (with_transform) std::swap(trans[p], trans[r]);
    }
    const Scalar inv = rows[r][c].inverse();
    scale_left(rows[r], inv);
    if (with_transform) scale_left(trans[r], inv);
    for (std::size_t i = 0; i < nr; ++i) {
      if (i == r || rows[i][c].is_zero()) continue;
      const Scalar factor = rows[i][c];
      subtract_left(rows[i], factor, rows[r]);
      if (with_transform) subtract_left(trans[i], factor, trans[r]);
    }
    pivots.push_back(c);
    ++r;
  }

  std::vector<Scalar> flat;
  flat.reserve(nr * nc);
  for (auto& row : rows) std::move(row.begin(), row.end(), std::back_inserter(flat));
  Matrix transform(tower, 0, 0);
  if (with_transform) {
    std::vector<Scalar> tflat;
    tflat.reserve(nr * nr);
    for (auto& row : trans) std::move(row.begin(), row.end(), std::back_inserter(tflat));
    transform = Matrix(tower, nr, nr, std::move(tflat));
  }
  return RowReduction{Matrix(tower, nr, nc, std::move(flat)), r, std::move(pivots), std::move(transform)};
}

std::vector<Matrix> kernel(const Matrix& m) {
  const auto red = row_reduce(m, false);
  const Tower& tower = m.tower();
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : red.pivots) is_pivot[c] = true;
  std::vector<Matrix> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    Matrix x(tower, m.cols(), 1);
    x.set(f, 0, tower.one());
    for (std::size_t r = 0; r < red.rank; ++r) x.set(red.pivots[r], 0, -red.reduced(r, f));
    basis.push_back(std::move(x));
  }
  return basis;
}

std::vector<Matrix> image_basis(const Matrix& m) {
  const auto red = row_reduce(m, false);
  std::vector<Matrix> basis;
  basis.reserve(red.rank);
  for (auto c : red.pivots) basis.push_back(m.column_at(c));
  return basis;
}

std::size_t rank(const Matrix& m) { return row_reduce(m, false).rank; }

Matrix inverse(const Matrix& p) {
  if (!p.is_square()) throw Error(ErrorKind::NotSquare, "inverse of a non-square matrix");
  auto red = row_reduce(p, true);
  if (red.rank != p.rows()) throw Error(ErrorKind::Singular, "matrix is singular");
  return std::move(red.transform);
}

bool is_invertible(const Matrix& p) { return p.is_square() && rank(p) == p.rows(); }

bool is_nilpotent(const Matrix& m) {
  if (!m.is_square()) throw Error(ErrorKind::NotSquare, "nilpotency of a non-square matrix");
  Matrix power = m;
  std::size_t exponent = 1;
  while (exponent < m.rows()) {
    if (power.is_zero()) return true;
    power = power * power;
    exponent *= 2;
  }
  return power.is_zero();
}

Scalar trace(const Matrix& m) {
  if (!m.is_square()) throw Error(ErrorKind::NotSquare, "trace of a non-square matrix");
  Scalar t = m.tower().zero();
  for (std::size_t i = 0; i < m.rows(); ++i) t += m(i, i);
  return t;
}

Scalar c2(const Matrix& m) {
  if (!m.is_square()) throw Error(ErrorKind::NotSquare, "c2 of a non-square matrix");
  if (!m.tower().is_commutative()) {
    throw Error(ErrorKind::NonCommutativeTower, "c2 needs a commutative tower");
  }
  Scalar s = m.tower().zero();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = i + 1; j < m.rows(); ++j) s += m(i, i) * m(j, j) - m(i, j) * m(j, i);
  }
  return s;
}

bool column_space_is_line(const Matrix& m, const Matrix& x) {
  if (x.cols() != 1 || x.rows() != m.rows()) shape_error("X must be a column with as many rows as M");
  if (x.is_zero()) throw Error(ErrorKind::ZeroVector, "X must be non-zero");
  if (m.is_zero()) return false;
  Matrix joined(m.tower(), m.rows(), m.cols() + 1);
  joined.set_block(0, 0, x);
  joined.set_block(0, 1, m);
  return rank(joined) == 1;
}

}  // namespace nilspace
