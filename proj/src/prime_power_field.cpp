#include "nilspace/detail/prime_power_field.hpp"

#include <cassert>

namespace nilspace::detail {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t f = 2; f * f <= n; ++f) {
    if (n % f == 0) return false;
  }
  return true;
}

PrimePowerField::PrimePowerField(std::uint32_t p, std::uint32_t d, std::vector<std::uint32_t> modulus)
    : p_(p), d_(d), order_(1), modulus_(std::move(modulus)) {
  for (std::uint32_t i = 0; i < d_; ++i) order_ *= p_;
  assert(d_ == 1 || modulus_.size() == d_ + 1);
}

std::vector<std::uint32_t> PrimePowerField::digits(Elem a) const {
  std::vector<std::uint32_t> out(d_);
  for (std::uint32_t i = 0; i < d_; ++i) {
    out[i] = a % p_;
    a /= p_;
  }
  return out;
}

PrimePowerField::Elem PrimePowerField::pack(const std::vector<std::uint32_t>& digits) const {
  std::uint64_t value = 0;
  for (std::size_t i = digits.size(); i-- > 0;) value = value * p_ + digits[i];
  return static_cast<Elem>(value);
}

PrimePowerField::Elem PrimePowerField::add(Elem a, Elem b) const {
  if (d_ == 1) return static_cast<Elem>((std::uint64_t{a} + b) % p_);
  std::uint64_t out = 0;
  std::uint64_t place = 1;
  for (std::uint32_t i = 0; i < d_; ++i) {
    out += ((a % p_ + b % p_) % p_) * place;
    a /= p_;
    b /= p_;
    place *= p_;
  }
  return static_cast<Elem>(out);
}

PrimePowerField::Elem PrimePowerField::neg(Elem a) const {
  if (d_ == 1) return a == 0 ? 0 : p_ - a;
  std::uint64_t out = 0;
  std::uint64_t place = 1;
  for (std::uint32_t i = 0; i < d_; ++i) {
    const std::uint32_t c = a % p_;
    out += ((p_ - c) % p_) * place;
    a /= p_;
    place *= p_;
  }
  return static_cast<Elem>(out);
}

PrimePowerField::Elem PrimePowerField::sub(Elem a, Elem b) const { return add(a, neg(b)); }

PrimePowerField::Elem PrimePowerField::mul(Elem a, Elem b) const {
  if (d_ == 1) return static_cast<Elem>(std::uint64_t{a} * b % p_);
  const auto x = digits(a);
  const auto y = digits(b);
  std::vector<std::uint64_t> prod(2 * d_ - 1, 0);
  for (std::uint32_t i = 0; i < d_; ++i) {
    if (x[i] == 0) continue;
    for (std::uint32_t j = 0; j < d_; ++j) {
      prod[i + j] = (prod[i + j] + std::uint64_t{x[i]} * y[j]) % p_;
    }
  }
  // modulus_ is monic of degree d_: x^d = -sum_{i<d} m_i x^i.
  for (std::size_t top = prod.size(); top-- > d_;) {
    const std::uint64_t c = prod[top];
    if (c == 0) continue;
    prod[top] = 0;
    for (std::uint32_t i = 0; i < d_; ++i) {
      const std::uint64_t m = modulus_[i];
      prod[top - d_ + i] = (prod[top - d_ + i] + (p_ - m) % p_ * c) % p_;
    }
  }
  std::vector<std::uint32_t> low(d_);
  for (std::uint32_t i = 0; i < d_; ++i) low[i] = static_cast<std::uint32_t>(prod[i]);
  return pack(low);
}

PrimePowerField::Elem PrimePowerField::pow(Elem a, std::uint64_t e) const {
  Elem result = 1;
  while (e > 0) {
    if (e & 1) result = mul(result, a);
    a = mul(a, a);
    e >>= 1;
  }
  return result;
}

PrimePowerField::Elem PrimePowerField::inv(Elem a) const {
  assert(a != 0);
  return pow(a, order_ - 2);
}

void poly_trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

Poly poly_mul(const PrimePowerField& F, const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      out[i + j] = F.add(out[i + j], F.mul(a[i], b[j]));
    }
  }
  poly_trim(out);
  return out;
}

Poly poly_sub(const PrimePowerField& F, const Poly& a, const Poly& b) {
  Poly out(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const auto x = i < a.size() ? a[i] : 0u;
    const auto y = i < b.size() ? b[i] : 0u;
    out[i] = F.sub(x, y);
  }
  poly_trim(out);
  return out;
}

Poly poly_mod(const PrimePowerField& F, Poly a, const Poly& b) {
  assert(!b.empty());
  poly_trim(a);
  const auto lead_inv = F.inv(b.back());
  while (a.size() >= b.size()) {
    const auto factor = F.mul(a.back(), lead_inv);
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) {
      a[shift + i] = F.sub(a[shift + i], F.mul(factor, b[i]));
    }
    poly_trim(a);
  }
  return a;
}

Poly poly_gcd(const PrimePowerField& F, Poly a, Poly b) {
  poly_trim(a);
  poly_trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(F, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    const auto lead_inv = F.inv(a.back());
    for (auto& c : a) c = F.mul(c, lead_inv);
  }
  return a;
}

namespace {

Poly poly_powmod(const PrimePowerField& F, Poly base, std::uint64_t e, const Poly& f) {
  Poly result{1};
  base = poly_mod(F, std::move(base), f);
  while (e > 0) {
    if (e & 1) result = poly_mod(F, poly_mul(F, result, base), f);
    base = poly_mod(F, poly_mul(F, base, base), f);
    e >>= 1;
  }
  return result;
}

}  // namespace

bool poly_is_irreducible(const PrimePowerField& F, const Poly& f_in) {
  Poly f = f_in;
  poly_trim(f);
  if (f.size() < 2) return false;
  const std::size_t degree = f.size() - 1;
  if (degree == 1) return true;
  const Poly x{0, 1};
  Poly h = poly_mod(F, x, f);
  for (std::size_t i = 1; i <= degree / 2; ++i) {
    h = poly_powmod(F, h, F.order(), f);
    const Poly g = poly_gcd(F, poly_sub(F, h, x), f);
    if (g.size() > 1) return false;
  }
  return true;
}

Poly first_monic_irreducible(const PrimePowerField& F, std::uint32_t degree) {
  const std::uint64_t q = F.order();
  std::uint64_t total = 1;
  for (std::uint32_t i = 0; i < degree; ++i) total *= q;
  for (std::uint64_t code = 0; code < total; ++code) {
    Poly f(degree + 1, 0);
    std::uint64_t rest = code;
    for (std::uint32_t i = 0; i < degree; ++i) {
      f[i] = static_cast<std::uint32_t>(rest % q);
      rest /= q;
    }
    f[degree] = 1;
    if (poly_is_irreducible(F, f)) return f;
  }
  return {};
}

}  // namespace nilspace::detail
