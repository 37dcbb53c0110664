#include "nilspace/tower.hpp"

#include <algorithm>
#include <cctype>
#include <limits>

#include "nilspace/detail/prime_power_field.hpp"
#include "nilspace/error.hpp"

namespace nilspace {

namespace detail {

struct GaloisData {
  PrimePowerField base;
  Poly modulus;  // monic, degree m over `base`
  std::uint32_t m;

  std::vector<std::uint32_t> mul(const std::vector<std::uint32_t>& x,
                                 const std::vector<std::uint32_t>& y) const {
    if (m == 1) return {base.mul(x[0], y[0])};
    std::vector<std::uint32_t> prod(2 * m - 1, 0);
    for (std::uint32_t i = 0; i < m; ++i) {
      if (x[i] == 0) continue;
      for (std::uint32_t j = 0; j < m; ++j) {
        prod[i + j] = base.add(prod[i + j], base.mul(x[i], y[j]));
      }
    }
    for (std::size_t top = prod.size(); top-- > m;) {
      const auto c = prod[top];
      if (c == 0) continue;
      prod[top] = 0;
      for (std::uint32_t i = 0; i < m; ++i) {
        prod[top - m + i] = base.sub(prod[top - m + i], base.mul(c, modulus[i]));
      }
    }
    prod.resize(m);
    return prod;
  }
};

struct TowerData {
  Tower::Kind kind = Tower::Kind::Rational;
  TowerSpec spec;
  std::size_t q = 1;
  std::optional<GaloisData> galois;
  Rational a;
  Rational b;
  // Null when the tower is its own base (q = 1).
  std::shared_ptr<const TowerData> base;
};

}  // namespace detail

namespace {

using detail::GaloisData;
using detail::PrimePowerField;
using detail::TowerData;

constexpr std::uint64_t kMaxGaloisOrder = std::uint64_t{1} << 31;

[[noreturn]] void invalid(const std::string& msg) { throw Error(ErrorKind::InvalidSpec, msg); }

std::shared_ptr<const TowerData> make_rational_data() {
  auto data = std::make_shared<TowerData>();
  data->kind = Tower::Kind::Rational;
  data->spec = RationalSpec{};
  data->q = 1;
  return data;
}

const std::shared_ptr<const TowerData>& rational_data() {
  static const std::shared_ptr<const TowerData> data = make_rational_data();
  return data;
}

std::vector<std::uint32_t> normalize_monic(const PrimePowerField& F, std::vector<std::uint32_t> f,
                                           const char* what) {
  for (auto c : f) {
    if (c >= F.order()) invalid(std::string(what) + " coefficient out of range");
  }
  detail::poly_trim(f);
  if (f.empty()) invalid(std::string(what) + " is zero");
  const auto lead_inv = F.inv(f.back());
  for (auto& c : f) c = F.mul(c, lead_inv);
  return f;
}

std::shared_ptr<const TowerData> make_galois_data(GaloisSpec spec, bool build_base) {
  if (!detail::is_prime(spec.p)) invalid("p = " + std::to_string(spec.p) + " is not prime");
  if (spec.d == 0 || spec.k == 0) invalid("d and k must be positive");
  if (spec.k % spec.d != 0) invalid("d must divide k");
  std::uint64_t order = 1;
  for (std::uint32_t i = 0; i < spec.k; ++i) {
    order *= spec.p;
    if (order > kMaxGaloisOrder) invalid("p^k exceeds 2^31");
  }

  std::vector<std::uint32_t> base_modulus;
  if (spec.d == 1) {
    if (!spec.base_modulus.empty() && spec.base_modulus.size() != 2) {
      invalid("base_modulus must have degree d = 1");
    }
    spec.base_modulus.clear();
  } else {
    const PrimePowerField Fp(spec.p, 1, {});
    if (spec.base_modulus.empty()) {
      base_modulus = detail::first_monic_irreducible(Fp, spec.d);
    } else {
      base_modulus = normalize_monic(Fp, spec.base_modulus, "base_modulus");
      if (base_modulus.size() != spec.d + 1) invalid("base_modulus must have degree d");
      if (!detail::poly_is_irreducible(Fp, base_modulus)) invalid("base_modulus is reducible over F_p");
    }
    spec.base_modulus = base_modulus;
  }
  PrimePowerField base_field(spec.p, spec.d, base_modulus);

  const std::uint32_t m = spec.k / spec.d;
  detail::Poly modulus;
  if (m == 1) {
    if (!spec.modulus.empty()) {
      auto f = normalize_monic(base_field, spec.modulus, "modulus");
      if (f.size() != 2) invalid("modulus must have degree k/d = 1");
    }
    spec.modulus.clear();
    modulus = {0, 1};
  } else {
    if (spec.modulus.empty()) {
      modulus = detail::first_monic_irreducible(base_field, m);
    } else {
      modulus = normalize_monic(base_field, spec.modulus, "modulus");
      if (modulus.size() != m + 1) invalid("modulus must have degree k/d");
      if (!detail::poly_is_irreducible(base_field, modulus)) {
        invalid("modulus is reducible over F_{p^d}");
      }
    }
    spec.modulus = modulus;
  }

  auto data = std::make_shared<TowerData>();
  data->kind = Tower::Kind::Galois;
  data->q = m;
  data->galois = GaloisData{base_field, modulus, m};
  if (m > 1 && build_base) {
    GaloisSpec base_spec;
    base_spec.p = spec.p;
    base_spec.d = spec.d;
    base_spec.k = spec.d;
    base_spec.base_modulus = spec.base_modulus;
    data->base = make_galois_data(base_spec, false);
  }
  data->spec = std::move(spec);
  return data;
}

std::shared_ptr<const TowerData> make_quaternion_data(const QuaternionSpec& spec) {
  if (sgn(spec.a) >= 0 || sgn(spec.b) >= 0) invalid("quaternion parameters must satisfy a < 0 and b < 0");
  auto data = std::make_shared<TowerData>();
  data->kind = Tower::Kind::Quaternion;
  data->spec = spec;
  data->q = 4;
  data->a = spec.a;
  data->b = spec.b;
  data->base = rational_data();
  return data;
}

std::shared_ptr<const TowerData> make_data(const TowerSpec& spec) {
  return std::visit(
      [](const auto& s) -> std::shared_ptr<const TowerData> {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, RationalSpec>) {
          return rational_data();
        } else if constexpr (std::is_same_v<T, GaloisSpec>) {
          return make_galois_data(s, true);
        } else {
          return make_quaternion_data(s);
        }
      },
      spec);
}

}  // namespace

// --- Tower -----------------------------------------------------------------

Tower::Tower(const TowerSpec& spec) : data_(make_data(spec)) {}

Tower::Tower(std::shared_ptr<const detail::TowerData> data) : data_(std::move(data)) {}

Tower Tower::rational() { return Tower(rational_data()); }

Tower Tower::prime_field(std::uint32_t p) { return galois(p, 1, 1); }

Tower Tower::galois(std::uint32_t p, std::uint32_t d, std::uint32_t k, std::vector<std::uint32_t> modulus,
                    std::vector<std::uint32_t> base_modulus) {
  GaloisSpec spec;
  spec.p = p;
  spec.d = d;
  spec.k = k;
  spec.modulus = std::move(modulus);
  spec.base_modulus = std::move(base_modulus);
  return Tower(TowerSpec{std::move(spec)});
}

Tower Tower::quaternion(const Rational& a, const Rational& b) { return Tower(TowerSpec{QuaternionSpec{a, b}}); }

Tower::Kind Tower::kind() const { return data_->kind; }
const TowerSpec& Tower::spec() const { return data_->spec; }
std::size_t Tower::dimension() const { return data_->q; }
bool Tower::is_commutative() const { return data_->kind != Kind::Quaternion; }
bool Tower::is_finite() const { return data_->kind == Kind::Galois; }

std::uint32_t Tower::characteristic() const {
  return data_->kind == Kind::Galois ? data_->galois->base.p() : 0;
}

std::optional<std::uint64_t> Tower::base_order() const {
  if (!is_finite()) return std::nullopt;
  return data_->galois->base.order();
}

std::optional<std::uint64_t> Tower::order() const {
  if (!is_finite()) return std::nullopt;
  std::uint64_t out = 1;
  for (std::size_t i = 0; i < data_->q; ++i) out *= data_->galois->base.order();
  return out;
}

Tower Tower::base() const { return data_->base ? Tower(data_->base) : *this; }

Scalar Tower::zero() const {
  if (is_finite()) return Scalar(*this, Scalar::GaloisCoords(data_->q, 0));
  return Scalar(*this, Scalar::RationalCoords(data_->q, Rational(0)));
}

Scalar Tower::one() const { return from_integer(1); }

Scalar Tower::from_integer(long long value) const {
  if (is_finite()) {
    const std::int64_t p = data_->galois->base.p();
    Scalar::GaloisCoords c(data_->q, 0);
    c[0] = static_cast<std::uint32_t>(((value % p) + p) % p);
    return Scalar(*this, std::move(c));
  }
  Scalar::RationalCoords c(data_->q, Rational(0));
  c[0] = Rational(mpz_class(std::to_string(value)));
  return Scalar(*this, std::move(c));
}

Scalar Tower::from_coords(std::span<const Scalar> coords) const {
  if (coords.size() != data_->q) {
    throw Error(ErrorKind::WrongLength, "expected " + std::to_string(data_->q) + " coordinates, got " +
                                            std::to_string(coords.size()));
  }
  const Tower b = base();
  for (const auto& c : coords) {
    if (!(c.tower() == b)) throw Error(ErrorKind::TowerMismatch, "coordinate is not in the base subfield");
  }
  if (is_finite()) {
    Scalar::GaloisCoords out;
    out.reserve(coords.size());
    for (const auto& c : coords) out.push_back(c.galois_coords()[0]);
    return Scalar(*this, std::move(out));
  }
  Scalar::RationalCoords out;
  out.reserve(coords.size());
  for (const auto& c : coords) out.push_back(c.rational_coords()[0]);
  return Scalar(*this, std::move(out));
}

Scalar Tower::embed(const Scalar& base_scalar) const {
  std::vector<Scalar> coords(data_->q, base().zero());
  coords[0] = base_scalar;
  return from_coords(coords);
}

Scalar Tower::basis_element(std::size_t c) const {
  if (c >= data_->q) throw Error(ErrorKind::IndexOutOfRange, "basis index out of range");
  if (is_finite()) {
    Scalar::GaloisCoords out(data_->q, 0);
    out[c] = 1;
    return Scalar(*this, std::move(out));
  }
  Scalar::RationalCoords out(data_->q, Rational(0));
  out[c] = 1;
  return Scalar(*this, std::move(out));
}

Scalar Tower::element(std::uint64_t index) const {
  if (!is_finite()) throw Error(ErrorKind::InvalidSpec, "element enumeration needs a finite tower");
  if (index >= *order()) throw Error(ErrorKind::IndexOutOfRange, "element index out of range");
  const std::uint64_t Q = data_->galois->base.order();
  Scalar::GaloisCoords out(data_->q, 0);
  for (std::size_t c = data_->q; c-- > 0;) {
    out[c] = static_cast<std::uint32_t>(index % Q);
    index /= Q;
  }
  return Scalar(*this, std::move(out));
}

std::uint64_t Tower::index_of(const Scalar& x) const {
  if (!is_finite()) throw Error(ErrorKind::InvalidSpec, "element indexing needs a finite tower");
  if (!(x.tower() == *this)) throw Error(ErrorKind::TowerMismatch, "scalar from another tower");
  const std::uint64_t Q = data_->galois->base.order();
  std::uint64_t index = 0;
  for (auto c : x.galois_coords()) index = index * Q + c;
  return index;
}

std::string Tower::describe() const {
  switch (data_->kind) {
    case Kind::Rational:
      return "Q";
    case Kind::Quaternion:
      return "(" + format_rational(data_->a) + ", " + format_rational(data_->b) + ")_Q";
    case Kind::Galois: {
      const auto& g = std::get<GaloisSpec>(data_->spec);
      const auto p = std::to_string(g.p);
      const auto field = [&](std::uint32_t e) { return e == 1 ? "F_" + p : "F_" + p + "^" + std::to_string(e); };
      if (g.d == g.k) return field(g.k);
      return field(g.k) + " over " + field(g.d);
    }
  }
  return {};
}

bool Tower::operator==(const Tower& other) const {
  return data_ == other.data_ || (data_->kind == other.data_->kind && data_->spec == other.data_->spec);
}

// --- Scalar ----------------------------------------------------------------

Scalar::Scalar(Tower tower, GaloisCoords coords) : tower_(std::move(tower)) {
  const auto& data = *tower_.data_;
  if (!data.galois) throw Error(ErrorKind::TowerMismatch, "finite-field coordinates for a rational tower");
  if (coords.size() != data.q) throw Error(ErrorKind::WrongLength, "wrong number of coordinates");
  for (auto c : coords) {
    if (c >= data.galois->base.order()) throw Error(ErrorKind::InvalidSpec, "coordinate out of range");
  }
  value_ = std::move(coords);
}

Scalar::Scalar(Tower tower, RationalCoords coords) : tower_(std::move(tower)) {
  const auto& data = *tower_.data_;
  if (data.galois) throw Error(ErrorKind::TowerMismatch, "rational coordinates for a finite tower");
  if (coords.size() != data.q) throw Error(ErrorKind::WrongLength, "wrong number of coordinates");
  for (auto& c : coords) c.canonicalize();
  value_ = std::move(coords);
}

const Scalar::GaloisCoords& Scalar::galois_coords() const { return std::get<GaloisCoords>(value_); }
const Scalar::RationalCoords& Scalar::rational_coords() const { return std::get<RationalCoords>(value_); }

bool Scalar::is_zero() const {
  return std::visit(
      [](const auto& v) {
        return std::all_of(v.begin(), v.end(), [](const auto& c) { return c == 0; });
      },
      value_);
}

bool Scalar::is_one() const { return *this == tower_.one(); }

std::vector<Scalar> Scalar::coords() const {
  const Tower b = tower_.base();
  std::vector<Scalar> out;
  out.reserve(tower_.dimension());
  if (const auto* g = std::get_if<GaloisCoords>(&value_)) {
    for (auto c : *g) out.emplace_back(b, GaloisCoords{c});
  } else {
    for (const auto& c : std::get<RationalCoords>(value_)) out.emplace_back(b, RationalCoords{c});
  }
  return out;
}

void Scalar::check_same_tower(const Scalar& y) const {
  if (!(tower_ == y.tower_)) {
    throw Error(ErrorKind::TowerMismatch, "operands from " + tower_.describe() + " and " + y.tower_.describe());
  }
}

Scalar Scalar::operator-() const {
  Scalar out = *this;
  if (auto* g = std::get_if<GaloisCoords>(&out.value_)) {
    const auto& F = tower_.data_->galois->base;
    for (auto& c : *g) c = F.neg(c);
  } else {
    for (auto& c : std::get<RationalCoords>(out.value_)) c = -c;
  }
  return out;
}

Scalar& Scalar::operator+=(const Scalar& y) {
  check_same_tower(y);
  if (auto* g = std::get_if<GaloisCoords>(&value_)) {
    const auto& F = tower_.data_->galois->base;
    const auto& h = y.galois_coords();
    for (std::size_t i = 0; i < g->size(); ++i) (*g)[i] = F.add((*g)[i], h[i]);
  } else {
    auto& r = std::get<RationalCoords>(value_);
    const auto& s = y.rational_coords();
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += s[i];
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& y) { return *this += -y; }

Scalar& Scalar::operator*=(const Scalar& y) {
  *this = *this * y;
  return *this;
}

Scalar Scalar::times(const Scalar& y) const {
  const Scalar& x = *this;
  x.check_same_tower(y);
  const auto& data = *x.tower_.data_;
  switch (data.kind) {
    case Tower::Kind::Galois:
      return Scalar(x.tower_, data.galois->mul(x.galois_coords(), y.galois_coords()));
    case Tower::Kind::Rational:
      return Scalar(x.tower_, Scalar::RationalCoords{x.rational_coords()[0] * y.rational_coords()[0]});
    case Tower::Kind::Quaternion: {
      const auto& u = x.rational_coords();
      const auto& v = y.rational_coords();
      const Rational& a = data.a;
      const Rational& b = data.b;
      Scalar::RationalCoords w(4);
      w[0] = u[0] * v[0] + a * u[1] * v[1] + b * u[2] * v[2] - a * b * u[3] * v[3];
      w[1] = u[0] * v[1] + u[1] * v[0] - b * u[2] * v[3] + b * u[3] * v[2];
      w[2] = u[0] * v[2] + u[2] * v[0] + a * u[1] * v[3] - a * u[3] * v[1];
      w[3] = u[0] * v[3] + u[3] * v[0] + u[1] * v[2] - u[2] * v[1];
      return Scalar(x.tower_, std::move(w));
    }
  }
  return x;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw Error(ErrorKind::DivisionByZero, "inverse of zero");
  const auto& data = *tower_.data_;
  switch (data.kind) {
    case Tower::Kind::Galois: {
      if (data.q == 1) return Scalar(tower_, GaloisCoords{data.galois->base.inv(galois_coords()[0])});
      // x^{|K|-2}
      std::uint64_t e = *tower_.order() - 2;
      Scalar result = tower_.one();
      Scalar base = *this;
      while (e > 0) {
        if (e & 1) result = result * base;
        base = base * base;
        e >>= 1;
      }
      return result;
    }
    case Tower::Kind::Rational:
      return Scalar(tower_, RationalCoords{1 / rational_coords()[0]});
    case Tower::Kind::Quaternion: {
      const Rational n = quaternion_norm(*this);
      RationalCoords c = quaternion_conjugate(*this).rational_coords();
      for (auto& v : c) v /= n;
      return Scalar(tower_, std::move(c));
    }
  }
  return *this;
}

bool Scalar::operator==(const Scalar& y) const { return tower_ == y.tower_ && value_ == y.value_; }

Scalar quaternion_conjugate(const Scalar& x) {
  if (x.tower().kind() != Tower::Kind::Quaternion) {
    throw Error(ErrorKind::TowerMismatch, "conjugation is only defined for quaternions");
  }
  auto c = x.rational_coords();
  for (std::size_t i = 1; i < 4; ++i) c[i] = -c[i];
  return Scalar(x.tower(), std::move(c));
}

Rational quaternion_norm(const Scalar& x) {
  if (x.tower().kind() != Tower::Kind::Quaternion) {
    throw Error(ErrorKind::TowerMismatch, "norm is only defined for quaternions");
  }
  const auto& spec = std::get<QuaternionSpec>(x.tower().spec());
  const auto& u = x.rational_coords();
  Rational n = u[0] * u[0] - spec.a * u[1] * u[1] - spec.b * u[2] * u[2] + spec.a * spec.b * u[3] * u[3];
  return n;
}

// --- rationals -------------------------------------------------------------

Rational parse_rational(const std::string& text) {
  std::size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    negative = text[pos] == '-';
    ++pos;
  }
  const auto read_digits = [&](std::string& out) {
    const std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    out = text.substr(start, pos - start);
    return !out.empty();
  };
  std::string num;
  std::string den = "1";
  if (!read_digits(num)) throw Error(ErrorKind::ParseError, "malformed rational '" + text + "'");
  if (pos < text.size() && text[pos] == '/') {
    ++pos;
    if (!read_digits(den)) throw Error(ErrorKind::ParseError, "malformed rational '" + text + "'");
  }
  if (pos != text.size()) throw Error(ErrorKind::ParseError, "malformed rational '" + text + "'");
  mpz_class d(den);
  if (d == 0) throw Error(ErrorKind::ParseError, "zero denominator in '" + text + "'");
  Rational r(mpz_class(num), d);
  r.canonicalize();
  return negative ? Rational(-r) : r;
}

std::string format_rational(const Rational& r) {
  Rational c = r;
  c.canonicalize();
  return c.get_str();
}

}  // namespace nilspace
