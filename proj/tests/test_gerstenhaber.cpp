#include <doctest.h>

#include "helpers.hpp"
#include "nilspace/error.hpp"
#include "nilspace/random.hpp"
#include "nilspace/selftest.hpp"

using namespace nilspace;
using namespace nilspace::testing;

namespace {

Error error_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e;
  }
  FAIL("no error thrown");
  return Error(ErrorKind::ParseError, "");
}

MatrixSubspace span_of(const Tower& t, std::size_t n, std::vector<Matrix> mats) { return MatrixSubspace::span(t, n, mats); }

bool has_claim(const TriangularizationTrace& trace, const std::string& claim) {
  for (const auto& o : trace.observations) {
    if (o.claim == claim) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("adapted vectors") {
  const Tower f2 = Tower::prime_field(2);
  const auto nt2 = MatrixSubspace::strictly_upper(f2, 2);
  CHECK_FALSE(is_adapted(nt2, 0));
  CHECK(is_adapted(nt2, 1));
  for (std::size_t i = 0; i < 3; ++i) CHECK(is_adapted(MatrixSubspace::zero(f2, 3, 3), i));
  CHECK(find_adapted(MatrixSubspace::strictly_upper(f2, 3)) == 2);
  CHECK(find_adapted(MatrixSubspace::strictly_lower(f2, 3)) == 0);
  CHECK(error_of([&] { is_adapted(nt2, 2); }).kind() == ErrorKind::IndexOutOfRange);
  const auto swap = span_of(f2, 2, {unit(f2, 2, 0, 1) + unit(f2, 2, 1, 0)});
  // The swap matrix is not supported on a single row, so span{swap} still
  // has adapted vectors.
  CHECK(find_adapted(swap) == 0);
  const auto both = span_of(f2, 2, {unit(f2, 2, 0, 1), unit(f2, 2, 1, 0)});
  CHECK(error_of([&] { find_adapted(both); }).kind() == ErrorKind::NoAdaptedVector);
}

TEST_CASE("adaptedness is permutation invariant") {
  Rng rng(61);
  for (const Tower& t : {Tower::prime_field(3), Tower::hamilton()}) {
    for (int s = 0; s < 30; ++s) {
      const std::size_t n = 3;
      std::vector<Matrix> mats;
      for (std::size_t i = 0; i < 1 + uniform_below(rng, 3); ++i) {
        Matrix m(t, n, n);
        const std::size_t row = uniform_below(rng, n);
        for (std::size_t j = 0; j < n; ++j) m.set(row, j, random_scalar(t, rng));
        mats.push_back(m);
      }
      const auto v = MatrixSubspace::span(t, n, mats);
      std::vector<std::size_t> perm{0, 1, 2};
      std::shuffle(perm.begin(), perm.end(), rng);
      const auto w = conjugate(v, Matrix::permutation(t, perm));
      for (std::size_t i = 0; i < n; ++i) CHECK(is_adapted(w, perm[i]) == is_adapted(v, i));
    }
  }
}

TEST_CASE("bound certificates") {
  const Tower f2 = Tower::prime_field(2);
  const auto cert = bound_certificate(MatrixSubspace::strictly_upper(f2, 3));
  CHECK(cert.holds);
  CHECK(cert.equality);
  CHECK(cert.dim == 3);
  CHECK(cert.bound == 3);
  CHECK(cert.nilpotency == PreconditionStatus::Proven);
  REQUIRE(cert.levels.size() == 3);
  CHECK(cert.levels[0].adapted_index == 2);
  CHECK(cert.levels[0].dim_upper_left == 1);
  CHECK(cert.levels[0].dim_column_image == 2);
  for (const auto& l : cert.levels) CHECK(l.consistent(1));

  const auto hc = bound_certificate(MatrixSubspace::strictly_upper(Tower::hamilton(), 3));
  CHECK(hc.q == 4);
  CHECK(hc.dim == 12);
  CHECK(hc.equality);
  CHECK(hc.nilpotency == PreconditionStatus::Assumed);
  for (const auto& l : hc.levels) CHECK(l.consistent(4));

  const auto zc = bound_certificate(MatrixSubspace::zero(Tower::hamilton(), 2, 2));
  CHECK(zc.holds);
  CHECK_FALSE(zc.equality);
  CHECK(zc.bound == 4);

  const auto e = error_of([&] { bound_certificate(span_of(f2, 2, {unit(f2, 2, 0, 0)})); });
  CHECK(e.kind() == ErrorKind::NotNilpotent);
  CHECK(e.step() == "precondition");
  const auto e2 = error_of([&] { bound_certificate(span_of(f2, 2, {unit(f2, 2, 0, 1), unit(f2, 2, 1, 0)}), {false}); });
  CHECK(e2.kind() == ErrorKind::NoAdaptedVector);
  CHECK(e2.step() == "n=2/find_adapted");
}

TEST_CASE("bound certificate on random conjugates") {
  Rng rng(67);
  for (const Tower& t : {Tower::prime_field(3), Tower::galois(2, 1, 2), Tower::hamilton()}) {
    for (int s = 0; s < 10; ++s) {
      const std::size_t n = 2 + uniform_below(rng, 2);
      const auto v = random_conjugate_of_strictly_upper(t, n, rng);
      const auto cert = bound_certificate(v);
      CHECK(cert.equality);
      for (const auto& l : cert.levels) CHECK(l.consistent(t.dimension()));
    }
  }
}

TEST_CASE("triangularize examples") {
  const Tower f2 = Tower::prime_field(2);
  const auto nt3 = MatrixSubspace::strictly_upper(f2, 3);
  const auto t3 = triangularize(nt3);
  CHECK(conjugate(nt3, t3.p) == nt3);
  CHECK(t3.nilpotency == PreconditionStatus::Proven);

  const Tower h = Tower::hamilton();
  const auto v = conjugate(MatrixSubspace::strictly_upper(h, 2), mat(h, R"([["1","i"],["0","1"]])"));
  const auto th = triangularize(v);
  CHECK(v.dim() == 4);
  CHECK(conjugate(v, th.p) == MatrixSubspace::strictly_upper(h, 2));
  CHECK(th.nilpotency == PreconditionStatus::Assumed);

  const auto e12 = span_of(f2, 2, {unit(f2, 2, 0, 1)});
  CHECK(triangularize(e12).p == Matrix::identity(f2, 2));

  const auto small = error_of([&] { triangularize(span_of(f2, 3, {unit(f2, 3, 0, 1) + unit(f2, 3, 1, 2)})); });
  CHECK(small.kind() == ErrorKind::NotMaximalDimension);
  CHECK(small.is_precondition_failure());

  const auto one = triangularize(MatrixSubspace::zero(f2, 1, 1));
  CHECK(one.p == Matrix::identity(f2, 1));
  CHECK(one.steps.empty());
}

TEST_CASE("triangularize_n2") {
  const Tower h = Tower::hamilton();
  std::vector<Matrix> lower;
  for (const char* s : {"1", "i", "j", "k"}) lower.push_back(Matrix::unit(h, 2, 1, 0, quat(s)));
  const auto v = MatrixSubspace::span(h, 2, lower);
  const auto t = triangularize_n2(v);
  CHECK(conjugate(v, t.p) == MatrixSubspace::strictly_upper(h, 2));
  REQUIRE(t.steps.size() == 1);
  CHECK(step_name(t.steps[0]) == "kernel_basis");

  const Tower f3 = Tower::prime_field(3);
  const auto nt2 = MatrixSubspace::strictly_upper(f3, 2);
  CHECK(conjugate(nt2, triangularize_n2(nt2).p) == nt2);

  const Tower f2 = Tower::prime_field(2);
  const auto e = error_of([&] { triangularize_n2(span_of(f2, 2, {unit(f2, 2, 0, 0)})); });
  CHECK(e.kind() == ErrorKind::FinalCheckFailed);
}

TEST_CASE("trace structure") {
  const Tower f4 = Tower::galois(2, 1, 2);
  Rng rng(71);
  const auto v = random_conjugate_of_strictly_upper(f4, 4, rng);
  const auto t = triangularize(v);
  CHECK(accumulated_product(t) == t.p);
  std::vector<std::string> names;
  for (const auto& s : t.steps) names.push_back(step_name(s));
  CHECK(names.back() == "lambda_shear");
  CHECK(std::find(names.begin(), names.end(), "recursive_upper_left") != names.end());
  CHECK(std::find(names.begin(), names.end(), "corner_shear") != names.end());
  for (const char* claim : {"phi_proportional", "psi_proportional", "f_vanishes", "g_vanishes", "h_vanishes", "J_a_vanishes"}) {
    CAPTURE(claim);
    CHECK(has_claim(t, claim));
  }
  CHECK(t.all_observations_hold());
  for (const auto& o : t.observations) {
    if (o.value && o.claim.find("vanishes") != std::string::npos) CHECK(o.value->is_zero());
  }
  for (const auto& s : t.steps) {
    if (const auto* r = std::get_if<RecursiveUpperLeft>(&s)) {
      CHECK(r->subtrace->n == 3);
      CHECK(accumulated_product(*r->subtrace) == r->q);
    }
  }
}

TEST_CASE("triangularize completeness on random conjugates") {
  for (const Tower& t : {Tower::prime_field(2), Tower::prime_field(3), Tower::galois(2, 1, 2)}) {
    Rng rng(73);
    for (std::size_t n : {2, 3, 4}) {
      const auto target = MatrixSubspace::strictly_upper(t, n);
      for (int s = 0; s < 100; ++s) {
        const auto v = random_conjugate_of_strictly_upper(t, n, rng);
        const auto tr = triangularize(v);
        REQUIRE(conjugate(v, tr.p) == target);
        REQUIRE(tr.all_observations_hold());
      }
    }
  }
}

TEST_CASE("quaternion conjugates with a non-Hamilton algebra") {
  const Tower t = Tower::quaternion(-2, -5);
  Rng rng(79);
  for (int s = 0; s < 10; ++s) {
    const auto v = random_conjugate_of_strictly_upper(t, 3, rng);
    const auto tr = triangularize(v);
    CHECK(conjugate(v, tr.p) == MatrixSubspace::strictly_upper(t, 3));
    CHECK(tr.all_observations_hold());
  }
}

TEST_CASE("non-nilpotent maximal-dimension inputs fail with a step") {
  const Tower f2 = Tower::prime_field(2);
  const auto diag = span_of(f2, 2, {unit(f2, 2, 0, 0)});
  const auto pre = error_of([&] { triangularize(diag); });
  CHECK(pre.kind() == ErrorKind::NotNilpotent);
  CHECK(pre.step() == "precondition");

  // Unverified inputs that are not nilpotent still never yield a trace.
  Rng rng(83);
  for (const Tower& t : {Tower::prime_field(2), Tower::prime_field(3), Tower::hamilton()}) {
    for (int s = 0; s < 40; ++s) {
      const std::size_t n = 2 + uniform_below(rng, 2);
      const std::size_t target = t.dimension() * n * (n - 1) / 2;
      std::vector<Matrix> mats;
      MatrixSubspace v = MatrixSubspace::zero(t, n, n);
      while (v.dim() < target) {
        mats.push_back(random_matrix(t, n, n, rng));
        v = MatrixSubspace::span(t, n, mats);
        if (v.dim() > target) {
          mats.pop_back();
          v = MatrixSubspace::span(t, n, mats);
        }
      }
      const bool nilpotent = t.is_finite() && is_nilpotent_space(v, NilpotencyMode::exhaustive()).status == NilpotencyStatus::Proven;
      if (nilpotent) continue;
      try {
        const auto tr = triangularize(v, {false});
        CHECK(conjugate(v, tr.p) == MatrixSubspace::strictly_upper(t, n));
        FAIL("non-nilpotent space triangularized");
      } catch (const Error& e) {
        CHECK(e.is_precondition_failure());
        CHECK_FALSE(e.step().empty());
      }
    }
  }
}

TEST_CASE("triangularize is deterministic") {
  Rng a(89), b(89);
  const Tower h = Tower::hamilton();
  for (int s = 0; s < 5; ++s) {
    const auto ta = triangularize(random_conjugate_of_strictly_upper(h, 3, a));
    const auto tb = triangularize(random_conjugate_of_strictly_upper(h, 3, b));
    CHECK(ta == tb);
  }
}
