#include "nilspace/io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "nilspace/error.hpp"

namespace nilspace {

namespace {

[[noreturn]] void parse_error(const std::string& msg) { throw Error(ErrorKind::ParseError, msg); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) parse_error(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::uint64_t read_uint(const Json& j, const char* what) {
  if (j.is_number_float()) parse_error(std::string(what) + ": floating-point literals are not accepted");
  if (j.is_number_unsigned()) return j.get<std::uint64_t>();
  if (j.is_number_integer()) {
    const auto v = j.get<std::int64_t>();
    if (v < 0) parse_error(std::string(what) + " must be non-negative");
    return static_cast<std::uint64_t>(v);
  }
  parse_error(std::string(what) + " must be an integer");
}

std::int64_t read_int(const Json& j, const char* what) {
  if (j.is_number_float()) parse_error(std::string(what) + ": floating-point literals are not accepted");
  if (!j.is_number_integer()) parse_error(std::string(what) + " must be an integer");
  return j.get<std::int64_t>();
}

Rational read_rational(const Json& j, const char* what) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  return Rational(mpz_class(std::to_string(read_int(j, what))));
}

std::uint32_t pack_digits(std::uint32_t p, const std::vector<std::uint64_t>& digits) {
  std::uint64_t value = 0;
  for (std::size_t i = digits.size(); i-- > 0;) {
    if (digits[i] >= p) parse_error("digit out of range");
    value = value * p + digits[i];
  }
  return static_cast<std::uint32_t>(value);
}

// A base-field literal: an integer for prime fields, d digits otherwise
// (a packed integer is also accepted).
std::uint32_t read_base_element(const Json& j, std::uint32_t p, std::uint32_t d) {
  if (j.is_array()) {
    if (j.size() != d) parse_error("base-field literal must have d = " + std::to_string(d) + " digits");
    std::vector<std::uint64_t> digits;
    for (const auto& e : j) digits.push_back(read_uint(e, "digit"));
    return pack_digits(p, digits);
  }
  const auto v = read_uint(j, "base-field element");
  if (v > 0xffffffffu) parse_error("base-field element out of range");
  return static_cast<std::uint32_t>(v);
}

Json base_element_json(std::uint32_t value, std::uint32_t p, std::uint32_t d) {
  if (d == 1) return value;
  Json digits = Json::array();
  for (std::uint32_t i = 0; i < d; ++i) {
    digits.push_back(value % p);
    value /= p;
  }
  return digits;
}

}  // namespace

// --- towers ------------------------------------------------------------------

Json to_json(const TowerSpec& spec) {
  return std::visit(
      [](const auto& s) -> Json {
        using T = std::decay_t<decltype(s)>;
        Json j = Json::object();
        if constexpr (std::is_same_v<T, RationalSpec>) {
          j["kind"] = "rational";
        } else if constexpr (std::is_same_v<T, GaloisSpec>) {
          j["kind"] = "gf";
          j["p"] = s.p;
          j["d"] = s.d;
          j["k"] = s.k;
          if (!s.modulus.empty()) {
            Json m = Json::array();
            for (auto c : s.modulus) m.push_back(base_element_json(c, s.p, s.d));
            j["modulus"] = std::move(m);
          }
          if (!s.base_modulus.empty()) j["base_modulus"] = s.base_modulus;
        } else {
          j["kind"] = "quaternion";
          j["a"] = format_rational(s.a);
          j["b"] = format_rational(s.b);
        }
        return j;
      },
      spec);
}

Json to_json(const Tower& tower) { return to_json(tower.spec()); }

Tower tower_from_json(const Json& j) {
  const auto& kind_json = field(j, "kind");
  if (!kind_json.is_string()) parse_error("tower kind must be a string");
  const auto kind = kind_json.get<std::string>();
  if (kind == "rational") return Tower::rational();
  if (kind == "quaternion") {
    return Tower::quaternion(read_rational(field(j, "a"), "a"), read_rational(field(j, "b"), "b"));
  }
  if (kind == "gf") {
    GaloisSpec spec;
    const auto p = read_uint(field(j, "p"), "p");
    const auto d = j.contains("d") ? read_uint(j.at("d"), "d") : 1;
    const auto k = j.contains("k") ? read_uint(j.at("k"), "k") : d;
    if (p > 0xffffffffu || d > 64 || k > 64) throw Error(ErrorKind::InvalidSpec, "tower parameters out of range");
    spec.p = static_cast<std::uint32_t>(p);
    spec.d = static_cast<std::uint32_t>(d);
    spec.k = static_cast<std::uint32_t>(k);
    if (j.contains("base_modulus")) {
      const auto& bm = j.at("base_modulus");
      if (!bm.is_array()) parse_error("base_modulus must be an array");
      for (const auto& c : bm) spec.base_modulus.push_back(static_cast<std::uint32_t>(read_uint(c, "coefficient")));
    }
    if (j.contains("modulus")) {
      const auto& m = j.at("modulus");
      if (!m.is_array()) parse_error("modulus must be an array");
      for (const auto& c : m) spec.modulus.push_back(read_base_element(c, spec.p, spec.d));
    }
    return Tower(TowerSpec{std::move(spec)});
  }
  parse_error("unknown tower kind '" + kind + "'");
}

// --- scalars -----------------------------------------------------------------

std::string format_quaternion(const Scalar& x) {
  static const char* const units[] = {"", "i", "j", "k"};
  const auto& c = x.rational_coords();
  std::string out;
  for (std::size_t u = 0; u < 4; ++u) {
    if (c[u] == 0) continue;
    std::string coeff = format_rational(c[u]);
    if (u > 0 && (coeff == "1" || coeff == "-1")) coeff.pop_back();
    if (!out.empty() && (coeff.empty() || coeff.front() != '-')) out += '+';
    out += coeff + units[u];
  }
  return out.empty() ? "0" : out;
}

Scalar parse_quaternion(const Tower& tower, const std::string& raw) {
  std::string text;
  for (char ch : raw) {
    if (!std::isspace(static_cast<unsigned char>(ch))) text += ch;
  }
  if (text.empty()) parse_error("empty quaternion literal");
  Scalar::RationalCoords coords(4, Rational(0));
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t start = pos;
    if (pos > 0 && text[pos] != '+' && text[pos] != '-') {
      parse_error("expected a sign before '" + text.substr(pos) + "' in quaternion literal '" + raw + "'");
    }
    if (text[pos] == '+' || text[pos] == '-') ++pos;
    while (pos < text.size() && (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '/')) ++pos;
    std::string coeff = text.substr(start, pos - start);
    std::size_t unit = 0;
    if (pos < text.size() && (text[pos] == 'i' || text[pos] == 'j' || text[pos] == 'k')) {
      unit = static_cast<std::size_t>(text[pos] - 'i') + 1;
      ++pos;
    } else if (pos < text.size() && text[pos] != '+' && text[pos] != '-') {
      parse_error("unexpected '" + std::string(1, text[pos]) + "' in quaternion literal '" + raw + "'");
    }
    if (coeff.empty() || coeff == "+" || coeff == "-") {
      if (unit == 0) parse_error("malformed quaternion literal '" + raw + "'");
      coeff += "1";
    }
    coords[unit] += parse_rational(coeff);
  }
  return Scalar(tower, std::move(coords));
}

Json to_json(const Scalar& x) {
  const Tower& t = x.tower();
  switch (t.kind()) {
    case Tower::Kind::Rational:
      return format_rational(x.rational_coords()[0]);
    case Tower::Kind::Quaternion:
      return format_quaternion(x);
    case Tower::Kind::Galois: {
      const auto& spec = std::get<GaloisSpec>(t.spec());
      const auto& c = x.galois_coords();
      if (t.dimension() == 1 && spec.d == 1) return c[0];
      Json arr = Json::array();
      for (auto v : c) arr.push_back(base_element_json(v, spec.p, spec.d));
      return arr;
    }
  }
  return nullptr;
}

Scalar scalar_from_json(const Tower& tower, const Json& j) {
  if (j.is_number_float()) parse_error("floating-point literals are not accepted");
  switch (tower.kind()) {
    case Tower::Kind::Rational:
      return Scalar(tower, Scalar::RationalCoords{read_rational(j, "scalar")});
    case Tower::Kind::Quaternion:
      if (j.is_string()) return parse_quaternion(tower, j.get<std::string>());
      return tower.embed(Scalar(tower.base(), Scalar::RationalCoords{read_rational(j, "scalar")}));
    case Tower::Kind::Galois: {
      const auto& spec = std::get<GaloisSpec>(tower.spec());
      const std::uint64_t Q = *tower.base_order();
      if (tower.dimension() == 1 && spec.d == 1 && !j.is_array()) {
        const auto v = read_int(j, "scalar");
        const auto p = static_cast<std::int64_t>(spec.p);
        return Scalar(tower, Scalar::GaloisCoords{static_cast<std::uint32_t>(((v % p) + p) % p)});
      }
      if (!j.is_array() || j.size() != tower.dimension()) {
        parse_error("finite-field literal must be an array of " + std::to_string(tower.dimension()) + " coordinates");
      }
      Scalar::GaloisCoords coords;
      for (const auto& e : j) {
        const auto v = read_base_element(e, spec.p, spec.d);
        if (v >= Q) parse_error("coordinate out of range");
        coords.push_back(v);
      }
      return Scalar(tower, std::move(coords));
    }
  }
  parse_error("unsupported tower");
}

// --- matrices and subspaces -------------------------------------------------

Json to_json(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const Tower& tower, const Json& j, std::size_t cols_hint) {
  if (!j.is_array()) parse_error("matrix literal must be an array of rows");
  if (j.empty()) return Matrix(tower, 0, cols_hint);
  std::vector<std::vector<Scalar>> rows;
  for (const auto& row : j) {
    if (!row.is_array()) parse_error("matrix row must be an array");
    std::vector<Scalar> r;
    for (const auto& e : row) r.push_back(scalar_from_json(tower, e));
    rows.push_back(std::move(r));
  }
  try {
    return Matrix::from_rows(tower, rows);
  } catch (const Error& e) {
    parse_error(e.message());
  }
}

Json to_json(const MatrixSubspace& v) {
  Json j = Json::object();
  j["tower"] = to_json(v.tower());
  if (v.rows() == v.cols()) {
    j["n"] = v.rows();
  } else {
    j["rows"] = v.rows();
    j["cols"] = v.cols();
  }
  Json basis = Json::array();
  for (const auto& b : v.basis()) basis.push_back(to_json(b));
  j["basis"] = std::move(basis);
  return j;
}

namespace {

MatrixSubspace subspace_from_json_with(const Tower& tower, const Json& j) {
  std::size_t rows = 0;
  std::size_t cols = 0;
  if (j.contains("n")) {
    rows = cols = read_uint(j.at("n"), "n");
  } else {
    rows = read_uint(field(j, "rows"), "rows");
    cols = read_uint(field(j, "cols"), "cols");
  }
  const auto& basis_json = field(j, "basis");
  if (!basis_json.is_array()) parse_error("basis must be an array");
  std::vector<Matrix> mats;
  for (const auto& m : basis_json) {
    auto mat = matrix_from_json(tower, m, cols);
    if (mat.rows() != rows || mat.cols() != cols) parse_error("basis matrix has the wrong shape");
    mats.push_back(std::move(mat));
  }
  return MatrixSubspace::span(tower, rows, cols, mats);
}

}  // namespace

MatrixSubspace subspace_from_json(const Json& j) {
  return subspace_from_json_with(tower_from_json(field(j, "tower")), j);
}

// --- certificates and traces ------------------------------------------------

namespace {

const char* status_name(PreconditionStatus s) { return s == PreconditionStatus::Proven ? "proven" : "assumed"; }

PreconditionStatus status_from(const Json& j) {
  const auto s = j.get<std::string>();
  if (s == "proven") return PreconditionStatus::Proven;
  if (s == "assumed") return PreconditionStatus::Assumed;
  parse_error("unknown nilpotency status '" + s + "'");
}

void write_trace_body(Json& j, const TriangularizationTrace& t) {
  j["n"] = t.n;
  Json basis = Json::array();
  for (const auto& b : t.input.basis()) basis.push_back(to_json(b));
  j["basis"] = std::move(basis);
  j["nilpotency"] = status_name(t.nilpotency);
  j["P"] = to_json(t.p);
  Json steps = Json::array();
  for (const auto& step : t.steps) {
    Json s = Json::object();
    s["kind"] = step_name(step);
    std::visit(
        [&](const auto& st) {
          using T = std::decay_t<decltype(st)>;
          if constexpr (std::is_same_v<T, AdaptedPermutation>) {
            s["index"] = st.index;
          } else if constexpr (std::is_same_v<T, RecursiveUpperLeft>) {
            s["Q"] = to_json(st.q);
          } else if constexpr (std::is_same_v<T, CornerShear>) {
            s["L"] = to_json(st.row);
            s["Q1"] = to_json(st.q1);
          } else if constexpr (std::is_same_v<T, LambdaShear>) {
            s["lambda"] = to_json(st.lambda);
            s["phi_L0"] = to_json(st.phi_of_first_row);
          } else {
            s["g1"] = to_json(st.kernel_vector);
            s["g2"] = to_json(st.complement);
          }
          s["matrix"] = to_json(st.matrix);
          if constexpr (std::is_same_v<T, RecursiveUpperLeft>) {
            Json sub = Json::object();
            write_trace_body(sub, *st.subtrace);
            s["trace"] = std::move(sub);
          }
        },
        step);
    steps.push_back(std::move(s));
  }
  j["steps"] = std::move(steps);
  Json obs = Json::array();
  for (const auto& o : t.observations) {
    Json e = Json::object();
    e["claim"] = o.claim;
    e["probe"] = o.probe;
    e["holds"] = o.holds;
    e["value"] = o.value ? to_json(*o.value) : Json(nullptr);
    obs.push_back(std::move(e));
  }
  j["observations"] = std::move(obs);
}

TriangularizationTrace trace_from_body(const Tower& tower, const Json& j) {
  const std::size_t n = read_uint(field(j, "n"), "n");
  Json sub = Json::object();
  sub["n"] = n;
  sub["basis"] = field(j, "basis");
  MatrixSubspace input = subspace_from_json_with(tower, sub);

  std::vector<TraceStep> steps;
  for (const auto& s : field(j, "steps")) {
    const auto kind = field(s, "kind").get<std::string>();
    Matrix matrix = matrix_from_json(tower, field(s, "matrix"));
    if (kind == "adapted_permutation") {
      steps.emplace_back(AdaptedPermutation{read_uint(field(s, "index"), "index"), std::move(matrix)});
    } else if (kind == "recursive_upper_left") {
      auto subtrace = std::make_shared<const TriangularizationTrace>(trace_from_body(tower, field(s, "trace")));
      steps.emplace_back(RecursiveUpperLeft{matrix_from_json(tower, field(s, "Q")), std::move(matrix), subtrace});
    } else if (kind == "corner_shear") {
      steps.emplace_back(CornerShear{matrix_from_json(tower, field(s, "L")), matrix_from_json(tower, field(s, "Q1")),
                                     std::move(matrix)});
    } else if (kind == "lambda_shear") {
      steps.emplace_back(LambdaShear{scalar_from_json(tower, field(s, "lambda")),
                                     matrix_from_json(tower, field(s, "phi_L0")), std::move(matrix)});
    } else if (kind == "kernel_basis") {
      steps.emplace_back(KernelBasis{matrix_from_json(tower, field(s, "g1")), matrix_from_json(tower, field(s, "g2")),
                                     std::move(matrix)});
    } else {
      parse_error("unknown step kind '" + kind + "'");
    }
  }
  std::vector<Observation> observations;
  for (const auto& o : field(j, "observations")) {
    Observation obs{field(o, "claim").get<std::string>(), field(o, "probe").get<std::string>(),
                    field(o, "holds").get<bool>(), std::nullopt};
    const auto& value = field(o, "value");
    if (!value.is_null()) obs.value = matrix_from_json(tower, value);
    observations.push_back(std::move(obs));
  }
  return TriangularizationTrace{tower,
                                n,
                                std::move(input),
                                std::move(steps),
                                matrix_from_json(tower, field(j, "P")),
                                std::move(observations),
                                status_from(field(j, "nilpotency"))};
}

}  // namespace

Json to_json(const BoundCertificate& cert) {
  Json j = Json::object();
  j["tower"] = to_json(cert.tower);
  j["n"] = cert.n;
  j["q"] = cert.q;
  j["dim"] = cert.dim;
  j["bound"] = cert.bound;
  j["holds"] = cert.holds;
  j["equality"] = cert.equality;
  j["nilpotency"] = status_name(cert.nilpotency);
  j["statement"] = std::to_string(cert.dim) + (cert.holds ? " <= " : " > ") + "q*C(n,2) = " +
                   std::to_string(cert.q) + "*" + std::to_string(binomial2(cert.n)) + " = " +
                   std::to_string(cert.bound);
  Json levels = Json::array();
  for (const auto& l : cert.levels) {
    Json e = Json::object();
    e["n"] = l.n;
    e["dim"] = l.dim_space;
    e["adapted_index"] = l.adapted_index;
    e["dim_W1"] = l.dim_zero_column;
    e["dim_K_W1"] = l.dim_upper_left;
    e["dim_C_V"] = l.dim_column_image;
    e["consistent"] = l.consistent(cert.q);
    levels.push_back(std::move(e));
  }
  j["levels"] = std::move(levels);
  return j;
}

Json to_json(const TriangularizationTrace& trace) {
  Json j = Json::object();
  j["tower"] = to_json(trace.tower);
  write_trace_body(j, trace);
  return j;
}

TriangularizationTrace trace_from_json(const Json& j) { return trace_from_body(tower_from_json(field(j, "tower")), j); }

Json to_json(const EnumerationReport& report) {
  Json j = Json::object();
  j["tower"] = to_json(report.tower);
  j["n"] = report.n;
  j["nilpotent_matrices"] = report.nilpotent_matrices;
  j["subspaces_per_dimension"] = report.subspaces_per_dimension;
  j["max_dimension"] = report.max_dimension;
  j["bound"] = report.bound;
  j["bound_holds"] = report.bound_holds();
  j["all_similar"] = report.all_similar();
  const std::string n = std::to_string(report.n);
  j["summary"] = std::to_string(report.maximal.size()) + " maximal subspaces, " +
                 (report.all_similar() ? "all similar to NT_" + n : "not all similar to NT_" + n);
  Json maximal = Json::array();
  for (const auto& m : report.maximal) {
    Json e = Json::object();
    Json basis = Json::array();
    for (const auto& b : m.subspace.basis()) basis.push_back(to_json(b));
    e["basis"] = std::move(basis);
    e["similarity"] = m.similarity ? to_json(*m.similarity) : Json(nullptr);
    e["triangularizer"] = m.triangularizer ? to_json(*m.triangularizer) : Json(nullptr);
    if (!m.triangularize_error.empty()) e["triangularize_error"] = m.triangularize_error;
    e["agree"] = m.agree();
    maximal.push_back(std::move(e));
  }
  j["maximal"] = std::move(maximal);
  if (report.wall_seconds) j["wall_seconds"] = *report.wall_seconds;
  return j;
}

Json to_json(const IdentityReport& report) {
  Json j = Json::object();
  j["tower"] = to_json(report.tower);
  j["n"] = report.n;
  if (report.mode.kind == CheckMode::Kind::Exhaustive) {
    j["mode"] = "exhaustive";
  } else {
    j["mode"] = "sampled";
    j["samples"] = report.mode.samples;
    j["seed"] = report.mode.seed;
  }
  j["pairs_examined"] = report.pairs_examined;
  j["pairs_checked"] = report.pairs_checked;
  j["violations"] = report.violations;
  j["holds"] = report.holds();
  if (report.first_violation) {
    j["first_violation"] = Json::array({to_json(report.first_violation->first), to_json(report.first_violation->second)});
  }
  return j;
}

Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    parse_error(std::string("invalid JSON: ") + e.what());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) parse_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_json_text(ss.str());
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string Scalar::to_string() const { return to_json(*this).dump(); }

}  // namespace nilspace
