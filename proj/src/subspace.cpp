#include "nilspace/subspace.hpp"

#include <algorithm>

#include "nilspace/error.hpp"
#include "nilspace/random.hpp"

namespace nilspace {

MatrixSubspace::MatrixSubspace(Tower tower, std::size_t rows, std::size_t cols)
    : tower_(std::move(tower)), rows_(rows), cols_(cols) {}

MatrixSubspace MatrixSubspace::span(const Tower& tower, std::size_t rows, std::size_t cols,
                                    std::span<const Matrix> mats) {
  MatrixSubspace out(tower, rows, cols);
  if (mats.empty()) return out;
  const Tower base = tower.base();
  const std::size_t width = rows * cols * tower.dimension();
  std::vector<Scalar> flat;
  flat.reserve(mats.size() * width);
  for (const auto& m : mats) {
    out.check_shape(m);
    auto f = flatten_coords(m);
    std::move(f.begin(), f.end(), std::back_inserter(flat));
  }
  const auto red = row_reduce(Matrix(base, mats.size(), width, std::move(flat)), false);
  for (std::size_t r = 0; r < red.rank; ++r) {
    std::vector<Scalar> row(red.reduced.entries().begin() + static_cast<std::ptrdiff_t>(r * width),
                            red.reduced.entries().begin() + static_cast<std::ptrdiff_t>((r + 1) * width));
    out.basis_.push_back(unflatten_coords(tower, rows, cols, row));
    out.echelon_.push_back(std::move(row));
  }
  out.pivots_ = red.pivots;
  return out;
}

MatrixSubspace MatrixSubspace::span(const Tower& tower, std::size_t n, std::span<const Matrix> mats) {
  return span(tower, n, n, mats);
}

MatrixSubspace MatrixSubspace::zero(const Tower& tower, std::size_t rows, std::size_t cols) {
  return MatrixSubspace(tower, rows, cols);
}

namespace {

MatrixSubspace span_of_entries(const Tower& tower, std::size_t rows, std::size_t cols, auto&& keep) {
  std::vector<Matrix> gens;
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      if (!keep(i, j)) continue;
      for (std::size_t c = 0; c < tower.dimension(); ++c) {
        Matrix m(tower, rows, cols);
        m.set(i, j, tower.basis_element(c));
        gens.push_back(std::move(m));
      }
    }
  }
  return MatrixSubspace::span(tower, rows, cols, gens);
}

}  // namespace

MatrixSubspace MatrixSubspace::full(const Tower& tower, std::size_t rows, std::size_t cols) {
  return span_of_entries(tower, rows, cols, [](std::size_t, std::size_t) { return true; });
}

MatrixSubspace MatrixSubspace::strictly_upper(const Tower& tower, std::size_t n) {
  return span_of_entries(tower, n, n, [](std::size_t i, std::size_t j) { return j > i; });
}

MatrixSubspace MatrixSubspace::strictly_lower(const Tower& tower, std::size_t n) {
  return span_of_entries(tower, n, n, [](std::size_t i, std::size_t j) { return j < i; });
}

std::size_t MatrixSubspace::n() const {
  if (rows_ != cols_) throw Error(ErrorKind::NotSquare, "subspace of rectangular matrices");
  return rows_;
}

void MatrixSubspace::check_shape(const Matrix& m) const {
  if (!(m.tower() == tower_)) throw Error(ErrorKind::TowerMismatch, "matrix from another tower");
  if (m.rows() != rows_ || m.cols() != cols_) throw Error(ErrorKind::ShapeMismatch, "matrix shape differs from subspace");
}

std::vector<Scalar> MatrixSubspace::reduce(std::vector<Scalar> flat) const {
  for (std::size_t r = 0; r < echelon_.size(); ++r) {
    const Scalar c = flat[pivots_[r]];
    if (c.is_zero()) continue;
    const auto& row = echelon_[r];
    for (std::size_t j = pivots_[r]; j < flat.size(); ++j) {
      if (!row[j].is_zero()) flat[j] -= c * row[j];
    }
  }
  return flat;
}

bool MatrixSubspace::contains(const Matrix& m) const {
  check_shape(m);
  const auto rest = reduce(flatten_coords(m));
  return std::all_of(rest.begin(), rest.end(), [](const Scalar& s) { return s.is_zero(); });
}

std::optional<std::vector<Scalar>> MatrixSubspace::coordinates(const Matrix& m) const {
  check_shape(m);
  const auto flat = flatten_coords(m);
  const auto rest = reduce(flat);
  if (!std::all_of(rest.begin(), rest.end(), [](const Scalar& s) { return s.is_zero(); })) return std::nullopt;
  std::vector<Scalar> coeffs;
  coeffs.reserve(pivots_.size());
  for (auto p : pivots_) coeffs.push_back(flat[p]);
  return coeffs;
}

Matrix MatrixSubspace::combination(std::span<const Scalar> coeffs) const {
  if (coeffs.size() != basis_.size()) throw Error(ErrorKind::WrongLength, "coefficient count differs from dimension");
  Matrix out(tower_, rows_, cols_);
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i].is_zero()) continue;
    out += tower_.embed(coeffs[i]) * basis_[i];
  }
  return out;
}

bool MatrixSubspace::operator==(const MatrixSubspace& other) const {
  return tower_ == other.tower_ && rows_ == other.rows_ && cols_ == other.cols_ && basis_ == other.basis_;
}

MatrixSubspace sum(const MatrixSubspace& v, const MatrixSubspace& w) {
  if (!(v.tower() == w.tower())) throw Error(ErrorKind::TowerMismatch, "subspaces over different towers");
  if (v.rows() != w.rows() || v.cols() != w.cols()) throw Error(ErrorKind::ShapeMismatch, "subspace shapes differ");
  std::vector<Matrix> gens = v.basis();
  gens.insert(gens.end(), w.basis().begin(), w.basis().end());
  return MatrixSubspace::span(v.tower(), v.rows(), v.cols(), gens);
}

MatrixSubspace conjugate(const MatrixSubspace& v, const Matrix& p) { return conjugate(v, p, inverse(p)); }

MatrixSubspace conjugate(const MatrixSubspace& v, const Matrix& p, const Matrix& p_inverse) {
  const std::size_t n = v.n();
  if (p.rows() != n || !p.is_square()) throw Error(ErrorKind::ShapeMismatch, "conjugating matrix has the wrong size");
  std::vector<Matrix> gens;
  gens.reserve(v.dim());
  for (const auto& b : v.basis()) gens.push_back(p * b * p_inverse);
  return MatrixSubspace::span(v.tower(), n, gens);
}

MatrixSubspace project_block(const MatrixSubspace& v, std::size_t row0, std::size_t col0, std::size_t nrows,
                             std::size_t ncols) {
  std::vector<Matrix> gens;
  gens.reserve(v.dim());
  for (const auto& b : v.basis()) gens.push_back(b.block(row0, col0, nrows, ncols));
  return MatrixSubspace::span(v.tower(), nrows, ncols, gens);
}

// --- patterns --------------------------------------------------------------

BlockPattern::BlockPattern(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), cells_(rows * cols) {}

BlockPattern BlockPattern::all_zero(std::size_t rows, std::size_t cols) {
  BlockPattern p(rows, cols);
  p.zero_block(0, 0, rows, cols);
  return p;
}

BlockPattern::Cell& BlockPattern::cell(std::size_t i, std::size_t j) {
  if (i >= rows_ || j >= cols_) throw Error(ErrorKind::IndexOutOfRange, "pattern index out of range");
  return cells_[i * cols_ + j];
}

BlockPattern& BlockPattern::set_free(std::size_t i, std::size_t j) {
  cell(i, j) = Cell{Kind::Free, std::nullopt};
  return *this;
}

BlockPattern& BlockPattern::set_zero(std::size_t i, std::size_t j) {
  cell(i, j) = Cell{Kind::Zero, std::nullopt};
  return *this;
}

BlockPattern& BlockPattern::set_fixed(std::size_t i, std::size_t j, Scalar value) {
  cell(i, j) = Cell{Kind::Fixed, std::move(value)};
  return *this;
}

BlockPattern& BlockPattern::free_block(std::size_t row0, std::size_t col0, std::size_t nrows, std::size_t ncols) {
  for (std::size_t i = 0; i < nrows; ++i) {
    for (std::size_t j = 0; j < ncols; ++j) set_free(row0 + i, col0 + j);
  }
  return *this;
}

BlockPattern& BlockPattern::zero_block(std::size_t row0, std::size_t col0, std::size_t nrows, std::size_t ncols) {
  for (std::size_t i = 0; i < nrows; ++i) {
    for (std::size_t j = 0; j < ncols; ++j) set_zero(row0 + i, col0 + j);
  }
  return *this;
}

BlockPattern& BlockPattern::fixed_block(std::size_t row0, std::size_t col0, const Matrix& values) {
  for (std::size_t i = 0; i < values.rows(); ++i) {
    for (std::size_t j = 0; j < values.cols(); ++j) set_fixed(row0 + i, col0 + j, values(i, j));
  }
  return *this;
}

bool BlockPattern::matches(const Matrix& m) const {
  if (m.rows() != rows_ || m.cols() != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      const auto& c = cells_[i * cols_ + j];
      if (c.kind == Kind::Zero && !m(i, j).is_zero()) return false;
      if (c.kind == Kind::Fixed && !(m(i, j) == *c.value)) return false;
    }
  }
  return true;
}

PatternSolution solve_pattern(const MatrixSubspace& v, const BlockPattern& pattern) {
  if (pattern.rows() != v.rows() || pattern.cols() != v.cols()) {
    throw Error(ErrorKind::ShapeMismatch, "pattern shape differs from subspace");
  }
  const Tower& tower = v.tower();
  const Tower base = tower.base();
  const std::size_t q = tower.dimension();
  const std::size_t dim = v.dim();

  // One equation per constrained (entry, coordinate): sum_b t_b coord(B_b) = rhs.
  std::vector<std::vector<Scalar>> basis_coords;
  basis_coords.reserve(dim);
  for (const auto& b : v.basis()) basis_coords.push_back(flatten_coords(b));

  std::vector<Scalar> system;
  std::size_t equations = 0;
  for (std::size_t i = 0; i < v.rows(); ++i) {
    for (std::size_t j = 0; j < v.cols(); ++j) {
      const auto kind = pattern.kind(i, j);
      if (kind == BlockPattern::Kind::Free) continue;
      std::vector<Scalar> rhs(q, base.zero());
      if (kind == BlockPattern::Kind::Fixed) {
        const Scalar& value = *pattern.value(i, j);
        if (!(value.tower() == tower)) throw Error(ErrorKind::TowerMismatch, "pattern value from another tower");
        rhs = value.coords();
      }
      const std::size_t offset = (i * v.cols() + j) * q;
      for (std::size_t c = 0; c < q; ++c) {
        for (std::size_t b = 0; b < dim; ++b) system.push_back(basis_coords[b][offset + c]);
        system.push_back(rhs[c]);
        ++equations;
      }
    }
  }

  if (equations == 0) return PatternSolution{true, Matrix(tower, v.rows(), v.cols()), v};

  const Matrix augmented(base, equations, dim + 1, std::move(system));
  const auto red = row_reduce(augmented, false);
  const bool feasible = red.rank == 0 || red.pivots.back() != dim;

  // Homogeneous part: kernel of the coefficient block.
  const std::size_t homogeneous_rank = feasible ? red.rank : red.rank - 1;
  std::vector<bool> is_pivot(dim, false);
  for (std::size_t r = 0; r < homogeneous_rank; ++r) is_pivot[red.pivots[r]] = true;
  std::vector<Matrix> homogeneous;
  for (std::size_t f = 0; f < dim; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Scalar> t(dim, base.zero());
    t[f] = base.one();
    for (std::size_t r = 0; r < homogeneous_rank; ++r) t[red.pivots[r]] = -red.reduced(r, f);
    homogeneous.push_back(v.combination(t));
  }
  PatternSolution out{feasible, std::nullopt,
                      MatrixSubspace::span(tower, v.rows(), v.cols(), homogeneous)};
  if (feasible) {
    std::vector<Scalar> t(dim, base.zero());
    for (std::size_t r = 0; r < red.rank; ++r) t[red.pivots[r]] = red.reduced(r, dim);
    out.particular = v.combination(t);
  }
  return out;
}

// --- nilpotency --------------------------------------------------------------

std::optional<std::uint64_t> element_count(const MatrixSubspace& v) {
  const auto order = v.tower().base_order();
  if (!order) return std::nullopt;
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < v.dim(); ++i) {
    if (count > (std::uint64_t{1} << 62) / *order) return std::nullopt;
    count *= *order;
  }
  return count;
}

NilpotencyVerdict is_nilpotent_space(const MatrixSubspace& v, const NilpotencyMode& mode) {
  const std::size_t n = v.n();
  const Tower base = v.tower().base();
  const std::size_t dim = v.dim();
  NilpotencyVerdict verdict;

  if (mode.kind == NilpotencyMode::Kind::Exhaustive) {
    const auto count = element_count(v);
    if (!count) throw Error(ErrorKind::CapExceeded, "exhaustive scan needs a finite base subfield");
    if (*count > mode.cap) {
      throw Error(ErrorKind::CapExceeded,
                  std::to_string(*count) + " elements exceed the cap of " + std::to_string(mode.cap));
    }
    const std::uint64_t Q = *base.order();
    // Odometer over coefficient indices, last coefficient fastest; the running
    // combination is updated by the change in each rolled digit.
    std::vector<std::uint64_t> digits(dim, 0);
    Matrix current(v.tower(), n, n);
    for (;;) {
      ++verdict.checked;
      if (!is_nilpotent(current)) {
        verdict.status = NilpotencyStatus::Refuted;
        verdict.witness = current;
        return verdict;
      }
      bool advanced = false;
      for (std::size_t pos = dim; pos-- > 0;) {
        const Scalar before = base.element(digits[pos]);
        digits[pos] = (digits[pos] + 1) % Q;
        current += v.tower().embed(base.element(digits[pos]) - before) * v.basis()[pos];
        if (digits[pos] != 0) {
          advanced = true;
          break;
        }
      }
      if (!advanced) break;
    }
    verdict.status = NilpotencyStatus::Proven;
    return verdict;
  }

  Rng rng(mode.seed);
  for (std::size_t s = 0; s < mode.samples; ++s) {
    std::vector<Scalar> coeffs;
    coeffs.reserve(dim);
    for (std::size_t i = 0; i < dim; ++i) coeffs.push_back(random_scalar(base, rng, 3));
    const Matrix m = v.combination(coeffs);
    ++verdict.checked;
    if (!is_nilpotent(m)) {
      verdict.status = NilpotencyStatus::Refuted;
      verdict.witness = m;
      return verdict;
    }
  }
  verdict.status = NilpotencyStatus::Heuristic;
  return verdict;
}

}  // namespace nilspace
