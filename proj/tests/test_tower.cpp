#include <doctest.h>

#include <set>

#include "helpers.hpp"
#include "nilspace/error.hpp"
#include "nilspace/random.hpp"

using namespace nilspace;
using namespace nilspace::testing;

namespace {

std::vector<Scalar> all_elements(const Tower& t) {
  std::vector<Scalar> out;
  for (std::uint64_t i = 0; i < *t.order(); ++i) out.push_back(t.element(i));
  return out;
}

Scalar power(Scalar x, std::uint64_t e) {
  Scalar r = x.tower().one();
  for (std::uint64_t i = 0; i < e; ++i) r *= x;
  return r;
}

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::ParseError;
}

}  // namespace

TEST_CASE("tower dimensions") {
  CHECK(Tower::prime_field(2).dimension() == 1);
  CHECK(Tower::hamilton().dimension() == 4);
  CHECK(Tower::galois(2, 1, 2).dimension() == 2);
  CHECK(Tower::galois(2, 2, 4).dimension() == 2);
  CHECK(Tower::galois(3, 1, 3).dimension() == 3);
  CHECK(Tower::rational().dimension() == 1);
  CHECK(Tower::galois(2, 2, 4).base_order() == 4);
  CHECK(Tower::galois(2, 2, 4).order() == 16);
  CHECK_FALSE(Tower::hamilton().is_commutative());
  CHECK_FALSE(Tower::hamilton().is_finite());
  CHECK(Tower::galois(2, 1, 2).is_commutative());
}

TEST_CASE("default modulus is the first monic irreducible") {
  const Tower f4 = Tower::galois(2, 1, 2);
  const auto& spec = std::get<GaloisSpec>(f4.spec());
  CHECK(spec.modulus == std::vector<std::uint32_t>{1, 1, 1});
  CHECK(Tower::galois(2, 1, 2, {1, 1, 1}) == Tower::galois(2, 1, 2));
  // x^3 + x + 1 is the smallest irreducible cubic over F2.
  CHECK(std::get<GaloisSpec>(Tower::galois(2, 1, 3).spec()).modulus == std::vector<std::uint32_t>{1, 1, 0, 1});
}

TEST_CASE("invalid tower specs") {
  CHECK(kind_of([] { Tower::prime_field(4); }) == ErrorKind::InvalidSpec);
  CHECK(kind_of([] { Tower::prime_field(1); }) == ErrorKind::InvalidSpec);
  CHECK(kind_of([] { Tower::galois(2, 1, 2, {1, 0, 1}); }) == ErrorKind::InvalidSpec);
  CHECK(kind_of([] { Tower::galois(2, 2, 3); }) == ErrorKind::InvalidSpec);
  CHECK(kind_of([] { Tower::galois(2, 1, 2, {1, 1, 0}); }) == ErrorKind::InvalidSpec);
  CHECK(kind_of([] { Tower::quaternion(1, -1); }) == ErrorKind::InvalidSpec);
  CHECK(kind_of([] { Tower::quaternion(-1, 0); }) == ErrorKind::InvalidSpec);
}

TEST_CASE("quaternion relations") {
  const Tower h = Tower::hamilton();
  const Scalar i = h.basis_element(1), j = h.basis_element(2), k = h.basis_element(3);
  CHECK(i * j == k);
  CHECK(j * i == -k);
  CHECK(i * i == -h.one());
  CHECK(k * k == -h.one());
  CHECK(h.one() * j == j);

  const Tower g = Tower::quaternion(-2, -3);
  const Scalar gi = g.basis_element(1), gj = g.basis_element(2), gk = g.basis_element(3);
  CHECK(gi * gi == g.from_integer(-2));
  CHECK(gj * gj == g.from_integer(-3));
  CHECK(gi * gj == gk);
  CHECK(gj * gi == -gk);
  CHECK(gk * gk == g.from_integer(-6));
}

TEST_CASE("F4 multiplication by modulus reduction") {
  const Tower f4 = Tower::galois(2, 1, 2, {1, 1, 1});
  const Scalar x = f4.basis_element(1);
  CHECK(x * x == x + f4.one());
  CHECK(x.coords().size() == 2);
  const Scalar x1 = x + f4.one();
  CHECK(x1.galois_coords() == Scalar::GaloisCoords{1, 1});
}

TEST_CASE("finite field axioms exhaustively") {
  for (const Tower& t : {Tower::galois(2, 1, 2), Tower::galois(3, 1, 2), Tower::galois(2, 2, 4), Tower::prime_field(5)}) {
    CAPTURE(t.describe());
    const auto elems = all_elements(t);
    const std::uint64_t order = *t.order();
    std::set<std::uint64_t> indices;
    for (const auto& x : elems) indices.insert(t.index_of(x));
    CHECK(indices.size() == order);
    bool has_generator = false;
    for (const auto& x : elems) {
      if (x.is_zero()) continue;
      CHECK(x * x.inverse() == t.one());
      CHECK(x.inverse() * x == t.one());
      CHECK(power(x, order) == x);
      bool generator = true;
      for (std::uint64_t d = 1; d < order - 1; ++d) {
        if ((order - 1) % d == 0 && power(x, d) == t.one()) generator = false;
      }
      has_generator = has_generator || generator;
    }
    CHECK(has_generator);
    for (const auto& x : elems) {
      for (const auto& y : elems) {
        REQUIRE(x * y == y * x);
        for (const auto& z : elems) {
          REQUIRE((x * y) * z == x * (y * z));
          REQUIRE(x * (y + z) == x * y + x * z);
        }
      }
    }
  }
}

TEST_CASE("base field is central") {
  const Tower t = Tower::galois(2, 2, 4);
  const Tower base = t.base();
  for (std::uint64_t c = 0; c < *base.order(); ++c) {
    const Scalar ce = t.embed(base.element(c));
    for (const auto& x : all_elements(t)) CHECK(ce * x == x * ce);
  }
  const Tower h = Tower::hamilton();
  Rng rng(7);
  for (int s = 0; s < 200; ++s) {
    const Scalar c = h.embed(Scalar(h.base(), Scalar::RationalCoords{Rational(static_cast<long>(uniform_below(rng, 9)) - 4, 3)}));
    const Scalar x = random_scalar(h, rng, 5);
    CHECK(c * x == x * c);
  }
}

TEST_CASE("quaternion ring axioms and norm sampled") {
  for (const Tower& t : {Tower::hamilton(), Tower::quaternion(-2, Rational(-1, 3))}) {
    Rng rng(11);
    for (int s = 0; s < 1000; ++s) {
      const Scalar x = random_scalar(t, rng, 4), y = random_scalar(t, rng, 4), z = random_scalar(t, rng, 4);
      REQUIRE((x * y) * z == x * (y * z));
      REQUIRE(x * (y + z) == x * y + x * z);
      REQUIRE((x + y) * z == x * z + y * z);
      REQUIRE(quaternion_norm(x * y) == quaternion_norm(x) * quaternion_norm(y));
      REQUIRE(t.from_coords(x.coords()) == x);
      if (!x.is_zero()) {
        REQUIRE(x * x.inverse() == t.one());
        REQUIRE(x.inverse() * x == t.one());
        REQUIRE(quaternion_norm(x) > 0);
      }
    }
  }
}

TEST_CASE("inverse examples") {
  CHECK(quat("i").inverse() == quat("-i"));
  CHECK(quat("1+i").inverse() == quat("1/2-1/2i"));
  const Tower f3 = Tower::prime_field(3);
  CHECK(f3.from_integer(2).inverse() == f3.from_integer(2));
  CHECK(kind_of([&] { f3.zero().inverse(); }) == ErrorKind::DivisionByZero);
  CHECK(kind_of([] { Tower::hamilton().zero().inverse(); }) == ErrorKind::DivisionByZero);
}

TEST_CASE("coordinates") {
  const Scalar x = quat("1+2i-3j+k");
  const auto c = x.coords();
  REQUIRE(c.size() == 4);
  CHECK(c[0].rational_coords()[0] == 1);
  CHECK(c[1].rational_coords()[0] == 2);
  CHECK(c[2].rational_coords()[0] == -3);
  CHECK(c[3].rational_coords()[0] == 1);
  CHECK(Tower::hamilton().from_coords(c) == x);

  const Tower f5 = Tower::prime_field(5);
  CHECK(f5.from_integer(3).galois_coords() == Scalar::GaloisCoords{3});
  CHECK(f5.from_integer(-2) == f5.from_integer(3));

  const Tower f4 = Tower::galois(2, 1, 2);
  const std::vector<Scalar> two{f4.base().one()};
  CHECK(kind_of([&] { f4.from_coords(two); }) == ErrorKind::WrongLength);
}

TEST_CASE("mixing towers is rejected") {
  const Tower f2 = Tower::prime_field(2), f3 = Tower::prime_field(3);
  CHECK(kind_of([&] { (void)(f2.one() + f3.one()); }) == ErrorKind::TowerMismatch);
  CHECK(kind_of([&] { (void)(f2.one() * f3.one()); }) == ErrorKind::TowerMismatch);
  CHECK_FALSE(f2.one() == f3.one());
}

TEST_CASE("rational literals") {
  CHECK(parse_rational("3/6") == Rational(1, 2));
  CHECK(parse_rational("-4") == -4);
  CHECK(parse_rational("+7/2") == Rational(7, 2));
  CHECK(format_rational(Rational(-6, 4)) == "-3/2");
  for (const char* bad : {"1.5", "1/0", "", "a", "1/", "/2", "1e3"}) {
    CAPTURE(bad);
    CHECK(kind_of([&] { parse_rational(bad); }) == ErrorKind::ParseError);
  }
}
