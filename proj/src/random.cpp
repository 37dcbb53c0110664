#include "nilspace/random.hpp"

namespace nilspace {

std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  if (bound <= 1) return 0;
  const std::uint64_t limit = Rng::max() - Rng::max() % bound;
  std::uint64_t draw = rng();
  while (draw >= limit) draw = rng();
  return draw % bound;
}

Scalar random_scalar(const Tower& tower, Rng& rng, int bound) {
  if (tower.is_finite()) return tower.element(uniform_below(rng, *tower.order()));
  const std::uint64_t width = 2 * static_cast<std::uint64_t>(bound) + 1;
  Scalar::RationalCoords coords;
  coords.reserve(tower.dimension());
  for (std::size_t c = 0; c < tower.dimension(); ++c) {
    coords.emplace_back(static_cast<long>(uniform_below(rng, width)) - bound);
  }
  return Scalar(tower, std::move(coords));
}

Matrix random_matrix(const Tower& tower, std::size_t rows, std::size_t cols, Rng& rng, int bound) {
  std::vector<Scalar> entries;
  entries.reserve(rows * cols);
  for (std::size_t i = 0; i < rows * cols; ++i) entries.push_back(random_scalar(tower, rng, bound));
  return Matrix(tower, rows, cols, std::move(entries));
}

Matrix random_invertible(const Tower& tower, std::size_t n, Rng& rng, int bound) {
  for (;;) {
    Matrix p = random_matrix(tower, n, n, rng, bound);
    if (is_invertible(p)) return p;
  }
}

Matrix random_strictly_upper(const Tower& tower, std::size_t n, Rng& rng, int bound) {
  Matrix m(tower, n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) m.set(i, j, random_scalar(tower, rng, bound));
  }
  return m;
}

}  // namespace nilspace
