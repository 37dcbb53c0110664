#include <doctest.h>

#include <set>

#include "helpers.hpp"
#include "nilspace/error.hpp"
#include "nilspace/random.hpp"

using namespace nilspace;
using namespace nilspace::testing;

namespace {

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::ParseError;
}

// All column vectors over a finite tower.
std::vector<Matrix> all_vectors(const Tower& t, std::size_t n) {
  const std::uint64_t order = *t.order();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= order;
  std::vector<Matrix> out;
  for (std::uint64_t code = 0; code < total; ++code) {
    std::vector<Scalar> e;
    std::uint64_t c = code;
    for (std::size_t i = 0; i < n; ++i) {
      e.push_back(t.element(c % order));
      c /= order;
    }
    out.push_back(Matrix::column(t, e));
  }
  return out;
}

std::string key(const Matrix& m) { return to_json(m).dump(); }

std::vector<Tower> towers() {
  return {Tower::prime_field(2), Tower::prime_field(3), Tower::galois(2, 1, 2), Tower::galois(2, 2, 4),
          Tower::hamilton(), Tower::rational()};
}

}  // namespace

TEST_CASE("unit matrix products") {
  const Tower f2 = Tower::prime_field(2);
  CHECK(unit(f2, 3, 0, 1) * unit(f2, 3, 1, 2) == unit(f2, 3, 0, 2));
  CHECK((unit(f2, 3, 0, 1) * unit(f2, 3, 0, 1)).is_zero());
  const Tower h = Tower::hamilton();
  CHECK(Matrix::unit(h, 2, 0, 1, quat("i")) * Matrix::unit(h, 2, 1, 0, quat("j")) == Matrix::unit(h, 2, 0, 0, quat("k")));
  CHECK(kind_of([&] { (void)(Matrix(f2, 2, 3) * Matrix(f2, 2, 3)); }) == ErrorKind::ShapeMismatch);
  CHECK(kind_of([&] { (void)(Matrix(f2, 2, 2) + Matrix(f2, 2, 3)); }) == ErrorKind::ShapeMismatch);
  CHECK(kind_of([&] { (void)(Matrix(f2, 2, 2) + Matrix(Tower::prime_field(3), 2, 2)); }) == ErrorKind::TowerMismatch);
}

TEST_CASE("right scalar action commutes with matrices") {
  const Tower h = Tower::hamilton();
  Rng rng(3);
  for (int s = 0; s < 50; ++s) {
    const Matrix m = random_matrix(h, 3, 3, rng);
    const Matrix x = random_matrix(h, 3, 1, rng);
    const Scalar lambda = random_scalar(h, rng);
    CHECK(m * (x * lambda) == (m * x) * lambda);
  }
}

TEST_CASE("permutation and direct sum") {
  const Tower f3 = Tower::prime_field(3);
  const std::vector<std::size_t> perm{2, 0, 1};
  const Matrix p = Matrix::permutation(f3, perm);
  for (std::size_t j = 0; j < 3; ++j) CHECK(p * Matrix::unit(f3, 3, j, 0) == Matrix::unit(f3, 3, perm[j], 0));
  const Matrix d = direct_sum(mat(f3, "[[1,2],[0,1]]"), mat(f3, "[[2]]"));
  CHECK(d == mat(f3, "[[1,2,0],[0,1,0],[0,0,2]]"));
}

TEST_CASE("row reduction examples") {
  const Tower h = Tower::hamilton();
  for (std::size_t n : {1, 3}) {
    const auto rr = row_reduce(Matrix::identity(h, n));
    CHECK(rr.reduced == Matrix::identity(h, n));
    CHECK(rr.rank == n);
  }
  const Matrix m = mat(h, R"([["i","j"]])");
  const auto rr = row_reduce(m);
  CHECK(rr.rank == 1);
  CHECK(rr.reduced == mat(h, R"([["1","-k"]])"));
  CHECK(rr.transform * m == rr.reduced);
  CHECK(Matrix(h, 1, 1, {quat("i")}) * rr.reduced == m);
  const auto z = row_reduce(Matrix(h, 2, 3));
  CHECK(z.rank == 0);
  CHECK(z.reduced.is_zero());
}

TEST_CASE("row reduction transform and pivots") {
  for (const Tower& t : towers()) {
    CAPTURE(t.describe());
    Rng rng(5);
    for (int s = 0; s < 50; ++s) {
      const Matrix m = random_matrix(t, 1 + uniform_below(rng, 4), 1 + uniform_below(rng, 4), rng);
      const auto rr = row_reduce(m);
      CHECK(rr.transform * m == rr.reduced);
      CHECK(is_invertible(rr.transform));
      for (std::size_t r = 0; r < rr.rank; ++r) {
        CHECK(rr.reduced(r, rr.pivots[r]).is_one());
        for (std::size_t i = 0; i < m.rows(); ++i) {
          if (i != r) CHECK(rr.reduced(i, rr.pivots[r]).is_zero());
        }
      }
    }
  }
}

TEST_CASE("kernel and image examples") {
  const Tower f2 = Tower::prime_field(2);
  const Matrix e12 = unit(f2, 2, 0, 1);
  const auto k = kernel(e12);
  REQUIRE(k.size() == 1);
  CHECK(k[0] == mat(f2, "[[1],[0]]"));
  const auto im = image_basis(e12);
  REQUIRE(im.size() == 1);
  CHECK(im[0] == mat(f2, "[[1],[0]]"));
  CHECK(kernel(Matrix::identity(f2, 3)).empty());
  const auto k2 = kernel(mat(f2, "[[1,1],[1,1]]"));
  REQUIRE(k2.size() == 1);
  CHECK(k2[0] == mat(f2, "[[1],[1]]"));
}

TEST_CASE("kernel and image against brute force over F2 and F4") {
  for (const Tower& t : {Tower::prime_field(2), Tower::galois(2, 1, 2)}) {
    Rng rng(17);
    const std::uint64_t order = *t.order();
    for (int s = 0; s < 60; ++s) {
      const std::size_t rows = 1 + uniform_below(rng, 3), cols = 1 + uniform_below(rng, 3);
      const Matrix m = random_matrix(t, rows, cols, rng);
      const auto vectors = all_vectors(t, cols);
      std::size_t null_count = 0;
      std::set<std::string> image;
      for (const auto& x : vectors) {
        if ((m * x).is_zero()) ++null_count;
        image.insert(key(m * x));
      }
      const auto k = kernel(m);
      const auto im = image_basis(m);
      std::uint64_t expected_null = 1, expected_image = 1;
      for (std::size_t i = 0; i < k.size(); ++i) expected_null *= order;
      for (std::size_t i = 0; i < im.size(); ++i) expected_image *= order;
      CHECK(null_count == expected_null);
      CHECK(image.size() == expected_image);
      for (const auto& x : k) CHECK((m * x).is_zero());
      for (const auto& y : im) CHECK(image.count(key(y)) == 1);
      CHECK(k.size() + rank(m) == cols);
      CHECK(im.size() == rank(m));
    }
  }
}

TEST_CASE("rank-nullity and right-linear kernels") {
  for (const Tower& t : towers()) {
    CAPTURE(t.describe());
    Rng rng(23);
    for (int s = 0; s < 500; ++s) {
      const std::size_t rows = 1 + uniform_below(rng, 4), cols = 1 + uniform_below(rng, 4);
      Matrix m = random_matrix(t, rows, cols, rng);
      if (rows > 1 && uniform_below(rng, 2) == 1) m.set_block(rows - 1, 0, m.block(0, 0, 1, cols));
      const auto k = kernel(m);
      REQUIRE(k.size() + rank(m) == cols);
      if (!k.empty()) {
        const Scalar lambda = random_scalar(t, rng);
        REQUIRE((m * (k[0] * lambda)).is_zero());
      }
    }
  }
}

TEST_CASE("inverse") {
  const Tower h = Tower::hamilton();
  CHECK(inverse(Matrix::identity(h, 3)) == Matrix::identity(h, 3));
  CHECK(inverse(mat(h, R"([["1","i"],["0","1"]])")) == mat(h, R"([["1","-i"],["0","1"]])"));
  const Tower f2 = Tower::prime_field(2);
  CHECK(inverse(mat(f2, "[[0,1],[1,0]]")) == mat(f2, "[[0,1],[1,0]]"));
  CHECK(kind_of([&] { inverse(mat(f2, "[[1,1],[1,1]]")); }) == ErrorKind::Singular);
  CHECK(kind_of([&] { inverse(Matrix(f2, 2, 3)); }) == ErrorKind::NotSquare);
  CHECK_FALSE(is_invertible(mat(h, R"([["1","i"],["-i","1"]])")));
  for (const Tower& t : towers()) {
    Rng rng(29);
    for (int s = 0; s < 30; ++s) {
      const Matrix p = random_invertible(t, 1 + uniform_below(rng, 4), rng);
      const Matrix q = inverse(p);
      CHECK(p * q == Matrix::identity(t, p.rows()));
      CHECK(q * p == Matrix::identity(t, p.rows()));
    }
  }
}

TEST_CASE("nilpotency") {
  const Tower f2 = Tower::prime_field(2);
  CHECK(is_nilpotent(unit(f2, 2, 0, 1)));
  CHECK_FALSE(is_nilpotent(Matrix::identity(f2, 2)));
  CHECK(is_nilpotent(mat(f2, "[[1,1],[1,1]]")));
  CHECK(kind_of([&] { is_nilpotent(Matrix(f2, 2, 3)); }) == ErrorKind::NotSquare);
  const Matrix shift = mat(f2, "[[0,1,0,0,0],[0,0,1,0,0],[0,0,0,1,0],[0,0,0,0,1],[0,0,0,0,0]]");
  CHECK(is_nilpotent(shift));
  CHECK_FALSE(is_nilpotent(shift + unit(f2, 5, 4, 0)));
  for (const Tower& t : towers()) {
    Rng rng(31);
    for (int s = 0; s < 40; ++s) {
      const std::size_t n = 2 + uniform_below(rng, 3);
      const Matrix p = random_invertible(t, n, rng);
      const Matrix u = random_strictly_upper(t, n, rng);
      const Matrix m = random_matrix(t, n, n, rng);
      CHECK(is_nilpotent(p * u * inverse(p)));
      CHECK(is_nilpotent(p * m * inverse(p)) == is_nilpotent(m));
    }
  }
}

TEST_CASE("nilpotent counts match q^(n^2 - n)") {
  // Over F_q there are exactly q^(n^2 - n) nilpotent n x n matrices.
  for (const Tower& t : {Tower::prime_field(2), Tower::prime_field(3), Tower::galois(2, 1, 2)}) {
    const std::uint64_t order = *t.order();
    for (std::size_t n : {2, 3}) {
      if (order > 2 && n == 3) continue;
      std::uint64_t total = 1, expected = 1;
      for (std::size_t i = 0; i < n * n; ++i) total *= order;
      for (std::size_t i = 0; i < n * n - n; ++i) expected *= order;
      std::uint64_t count = 0;
      for (std::uint64_t code = 0; code < total; ++code) {
        std::vector<Scalar> e;
        std::uint64_t c = code;
        for (std::size_t i = 0; i < n * n; ++i) {
          e.push_back(t.element(c % order));
          c /= order;
        }
        if (is_nilpotent(Matrix(t, n, n, e))) ++count;
      }
      CAPTURE(t.describe());
      CAPTURE(n);
      CHECK(count == expected);
    }
  }
}

TEST_CASE("trace and c2") {
  const Tower f5 = Tower::prime_field(5);
  CHECK(c2(mat(f5, "[[0,1],[1,0]]")) == f5.from_integer(4));
  CHECK(c2(Matrix(f5, 3, 3)).is_zero());
  CHECK(trace(mat(f5, "[[2,0],[0,4]]")) == f5.from_integer(1));
  const Tower q = Tower::rational();
  const Matrix m = mat(q, R"([["1","2","3"],["4","5","6"],["7","8","10"]])");
  // (5 - 8) + (10 - 21) + (50 - 48)
  CHECK(c2(m) == q.from_integer(-12));
  CHECK(kind_of([] { c2(Matrix::identity(Tower::hamilton(), 2)); }) == ErrorKind::NonCommutativeTower);
  CHECK(kind_of([&] { trace(Matrix(f5, 2, 3)); }) == ErrorKind::NotSquare);
}

TEST_CASE("c2 agrees with principal minors and the polarization identity") {
  for (const Tower& t : {Tower::prime_field(5), Tower::galois(3, 1, 2), Tower::galois(2, 2, 4), Tower::rational()}) {
    Rng rng(37);
    for (int s = 0; s < 250; ++s) {
      const std::size_t n = 2 + uniform_below(rng, 4);
      const Matrix m = random_matrix(t, n, n, rng), nn = random_matrix(t, n, n, rng);
      Scalar minors = t.zero();
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) minors += m(i, i) * m(j, j) - m(i, j) * m(j, i);
      }
      REQUIRE(c2(m) == minors);
      REQUIRE(c2(m + nn) - c2(m) - c2(nn) == trace(m) * trace(nn) - trace(m * nn));
    }
  }
}

TEST_CASE("column space is a line") {
  const Tower f2 = Tower::prime_field(2);
  CHECK(column_space_is_line(unit(f2, 2, 0, 1), mat(f2, "[[1],[0]]")));
  CHECK_FALSE(column_space_is_line(Matrix(f2, 2, 2), mat(f2, "[[1],[0]]")));
  CHECK(column_space_is_line(unit(f2, 2, 0, 1) + unit(f2, 2, 1, 1), mat(f2, "[[1],[1]]")));
  CHECK_FALSE(column_space_is_line(Matrix::identity(f2, 2), mat(f2, "[[1],[0]]")));
  CHECK(kind_of([&] { column_space_is_line(unit(f2, 2, 0, 1), Matrix(f2, 2, 1)); }) == ErrorKind::ZeroVector);
  const Tower h = Tower::hamilton();
  CHECK(column_space_is_line(mat(h, R"([["i","j"],["k","1"]])"), mat(h, R"([["1"],["-j"]])")));
}
