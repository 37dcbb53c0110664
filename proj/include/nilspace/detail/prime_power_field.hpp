#pragma once

#include <cstdint>
#include <vector>

namespace nilspace::detail {

/// F_{p^d} with elements packed as sum_i c_i p^i, arithmetic modulo a monic
/// degree-d polynomial over F_p. d = 1 is the prime field.
class PrimePowerField {
 public:
  using Elem = std::uint32_t;

  PrimePowerField(std::uint32_t p, std::uint32_t d, std::vector<std::uint32_t> modulus);

  std::uint32_t p() const { return p_; }
  std::uint32_t d() const { return d_; }
  std::uint64_t order() const { return order_; }

  Elem add(Elem a, Elem b) const;
  Elem sub(Elem a, Elem b) const;
  Elem neg(Elem a) const;
  Elem mul(Elem a, Elem b) const;
  Elem inv(Elem a) const;
  Elem pow(Elem a, std::uint64_t e) const;

  std::vector<std::uint32_t> digits(Elem a) const;
  Elem pack(const std::vector<std::uint32_t>& digits) const;

 private:
  std::uint32_t p_;
  std::uint32_t d_;
  std::uint64_t order_;
  std::vector<std::uint32_t> modulus_;
};

// Dense polynomials over a PrimePowerField, low-to-high, no trailing zeros
// (the zero polynomial is empty).
using Poly = std::vector<std::uint32_t>;

void poly_trim(Poly& f);
Poly poly_mul(const PrimePowerField& F, const Poly& a, const Poly& b);
/// Remainder of a modulo a non-zero b.
Poly poly_mod(const PrimePowerField& F, Poly a, const Poly& b);
Poly poly_sub(const PrimePowerField& F, const Poly& a, const Poly& b);
Poly poly_gcd(const PrimePowerField& F, Poly a, Poly b);
/// f irreducible over F (deg f >= 1), by checking gcd(x^{|F|^i} - x, f) = 1
/// for i <= deg f / 2.
bool poly_is_irreducible(const PrimePowerField& F, const Poly& f);
/// Smallest monic irreducible of degree `degree`, ordering by the coefficient
/// vector read as a base-|F| integer with the constant term least significant.
Poly first_monic_irreducible(const PrimePowerField& F, std::uint32_t degree);

bool is_prime(std::uint64_t n);

}  // namespace nilspace::detail
