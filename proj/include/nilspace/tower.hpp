#pragma once

// Division rings K presented over a central subfield K0 with a fixed K0-basis.
//
// Three families are supported:
//   * the rationals (K = K0 = Q, q = 1);
//   * finite fields K = F_{p^k} over K0 = F_{p^d} with d | k, built as
//     F_{p^d}[x] / (modulus), so q = k / d and the K0-basis is 1, x, ..., x^{q-1};
//   * quaternion algebras (a, b)_Q with a, b < 0, basis 1, i, j, k with
//     i^2 = a, j^2 = b, ij = -ji = k, q = 4.
//
// Elements of F_{p^d} are packed as integers sum_i c_i p^i with c_i in [0, p),
// using the polynomial basis modulo `base_modulus`.

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <gmpxx.h>

namespace nilspace {

using Rational = mpq_class;

struct RationalSpec {
  bool operator==(const RationalSpec&) const = default;
};

struct GaloisSpec {
  std::uint32_t p = 2;
  std::uint32_t d = 1;
  std::uint32_t k = 1;
  // Monic, low-to-high over F_p, degree d. Empty: first irreducible (d > 1).
  std::vector<std::uint32_t> base_modulus;
  // Monic, low-to-high over F_{p^d} (packed), degree k / d. Empty: first
  // irreducible (k / d > 1). Non-monic input is normalized.
  std::vector<std::uint32_t> modulus;

  bool operator==(const GaloisSpec&) const = default;
};

struct QuaternionSpec {
  Rational a{-1};
  Rational b{-1};

  bool operator==(const QuaternionSpec& o) const { return a == o.a && b == o.b; }
};

using TowerSpec = std::variant<RationalSpec, GaloisSpec, QuaternionSpec>;

class Scalar;

namespace detail {
struct TowerData;
}

/// Immutable handle to a validated tower. Copies share state.
class Tower {
 public:
  enum class Kind { Rational, Galois, Quaternion };

  /// Validates `spec`; throws Error(InvalidSpec) on a bad prime, a reducible
  /// modulus, d not dividing k, or non-negative quaternion parameters.
  explicit Tower(const TowerSpec& spec);

  static Tower rational();
  static Tower prime_field(std::uint32_t p);
  static Tower galois(std::uint32_t p, std::uint32_t d, std::uint32_t k,
                      std::vector<std::uint32_t> modulus = {},
                      std::vector<std::uint32_t> base_modulus = {});
  static Tower quaternion(const Rational& a, const Rational& b);
  static Tower hamilton() { return quaternion(-1, -1); }

  Kind kind() const;
  /// Canonical spec: moduli filled in and monic.
  const TowerSpec& spec() const;

  /// q = dim_{K0} K.
  std::size_t dimension() const;
  bool is_commutative() const;
  bool is_finite() const;
  /// Zero for the rational-based towers.
  std::uint32_t characteristic() const;
  /// |K0|, when finite.
  std::optional<std::uint64_t> base_order() const;
  /// |K|, when finite.
  std::optional<std::uint64_t> order() const;

  /// The tower K0 over itself (q = 1).
  Tower base() const;

  Scalar zero() const;
  Scalar one() const;
  Scalar from_integer(long long value) const;
  /// Inverse of Scalar::coords: `coords` are elements of base().
  Scalar from_coords(std::span<const Scalar> coords) const;
  /// Central embedding of K0 through the first basis coordinate.
  Scalar embed(const Scalar& base_scalar) const;
  /// The c-th K0-basis element (1, x, x^2, ... or 1, i, j, k).
  Scalar basis_element(std::size_t c) const;

  /// Finite towers: elements in lexicographic coordinate order, coordinate 0
  /// most significant and base elements ordered by packed value.
  Scalar element(std::uint64_t index) const;
  std::uint64_t index_of(const Scalar& x) const;

  std::string describe() const;

  bool operator==(const Tower& other) const;

 private:
  explicit Tower(std::shared_ptr<const detail::TowerData> data);

  std::shared_ptr<const detail::TowerData> data_;

  friend class Scalar;
};

/// Element of K stored as its K0-coordinate vector in canonical form.
class Scalar {
 public:
  using GaloisCoords = std::vector<std::uint32_t>;
  using RationalCoords = std::vector<Rational>;

  Scalar(Tower tower, GaloisCoords coords);
  Scalar(Tower tower, RationalCoords coords);

  const Tower& tower() const { return tower_; }

  bool is_zero() const;
  bool is_one() const;

  /// Coordinates as elements of tower().base().
  std::vector<Scalar> coords() const;
  const GaloisCoords& galois_coords() const;
  const RationalCoords& rational_coords() const;

  /// Two-sided inverse; throws Error(DivisionByZero) on zero.
  Scalar inverse() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& y);
  Scalar& operator-=(const Scalar& y);
  Scalar& operator*=(const Scalar& y);

  friend Scalar operator+(Scalar x, const Scalar& y) { return x += y; }
  friend Scalar operator-(Scalar x, const Scalar& y) { return x -= y; }
  friend Scalar operator*(const Scalar& x, const Scalar& y) { return x.times(y); }

  /// Scalars from different towers compare unequal.
  bool operator==(const Scalar& y) const;

  /// Literal form, see io.hpp.
  std::string to_string() const;

 private:
  void check_same_tower(const Scalar& y) const;
  Scalar times(const Scalar& y) const;

  Tower tower_;
  std::variant<GaloisCoords, RationalCoords> value_;
};

Scalar quaternion_conjugate(const Scalar& x);
/// N(x) = x * conj(x), a positive rational for x != 0.
Rational quaternion_norm(const Scalar& x);

/// Parses a canonical rational "p/q", "-3", "+2"; rejects decimals and zero
/// denominators with Error(ParseError).
Rational parse_rational(const std::string& text);
std::string format_rational(const Rational& r);

}  // namespace nilspace
