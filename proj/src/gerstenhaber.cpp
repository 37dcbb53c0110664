#include "nilspace/gerstenhaber.hpp"

#include <numeric>

#include "nilspace/error.hpp"
#include "nilspace/io.hpp"

namespace nilspace {

std::size_t binomial2(std::size_t n) { return n < 2 ? 0 : n * (n - 1) / 2; }

bool is_adapted(const MatrixSubspace& v, std::size_t i) {
  const std::size_t n = v.n();
  if (i >= n) throw Error(ErrorKind::IndexOutOfRange, "index " + std::to_string(i) + " out of range");
  BlockPattern pattern = BlockPattern::all_zero(n, n);
  pattern.free_block(i, 0, 1, n);
  return solve_pattern(v, pattern).homogeneous.dim() == 0;
}

std::size_t find_adapted(const MatrixSubspace& v) {
  const std::size_t n = v.n();
  for (std::size_t i = 0; i < n; ++i) {
    if (is_adapted(v, i)) return i;
  }
  throw Error(ErrorKind::NoAdaptedVector,
              "every row supports a non-zero matrix of the space, so it contains a non-nilpotent matrix");
}

namespace {

Matrix transposition(const Tower& tower, std::size_t n, std::size_t i, std::size_t j) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::swap(perm[i], perm[j]);
  return Matrix::permutation(tower, perm);
}

std::string level_name(std::size_t n) { return "n=" + std::to_string(n); }

// Exhaustive nilpotency check when affordable; throws NotNilpotent on a witness.
PreconditionStatus check_precondition(const MatrixSubspace& v, const PreconditionOptions& options) {
  if (!options.verify_nilpotent) return PreconditionStatus::Assumed;
  const auto count = element_count(v);
  if (!count || *count > options.cap) return PreconditionStatus::Assumed;
  const auto verdict = is_nilpotent_space(v, NilpotencyMode::exhaustive(options.cap));
  if (verdict.status == NilpotencyStatus::Refuted) {
    throw Error(ErrorKind::NotNilpotent, "contains the non-nilpotent matrix " + to_json(*verdict.witness).dump(),
                "precondition");
  }
  return PreconditionStatus::Proven;
}

}  // namespace

bool BoundLevel::consistent(std::size_t q) const {
  if (n <= 1) return true;
  return dim_space == dim_upper_left + dim_column_image && dim_zero_column == dim_upper_left &&
         dim_column_image <= q * (n - 1);
}

BoundCertificate bound_certificate(const MatrixSubspace& v, const PreconditionOptions& options) {
  const std::size_t n = v.n();
  const std::size_t q = v.tower().dimension();
  BoundCertificate cert{v.tower(), n, q, v.dim(), q * binomial2(n), {}, false, false, PreconditionStatus::Assumed};
  cert.nilpotency = check_precondition(v, options);

  MatrixSubspace current = v;
  for (std::size_t m = n; m >= 1; --m) {
    BoundLevel level;
    level.n = m;
    level.dim_space = current.dim();
    if (m == 1) {
      cert.levels.push_back(level);
      break;
    }
    try {
      level.adapted_index = find_adapted(current);
    } catch (const Error& e) {
      throw e.with_step_prefix(level_name(m) + "/find_adapted");
    }
    if (level.adapted_index != m - 1) {
      current = conjugate(current, transposition(current.tower(), m, level.adapted_index, m - 1));
    }
    BlockPattern zero_column(m, m);
    zero_column.zero_block(0, m - 1, m - 1, 1);
    const MatrixSubspace w1 = solve_pattern(current, zero_column).homogeneous;
    MatrixSubspace upper_left = project_block(w1, 0, 0, m - 1, m - 1);
    level.dim_zero_column = w1.dim();
    level.dim_upper_left = upper_left.dim();
    level.dim_column_image = project_block(current, 0, m - 1, m - 1, 1).dim();
    cert.levels.push_back(level);
    current = std::move(upper_left);
  }
  cert.holds = cert.dim <= cert.bound;
  cert.equality = cert.dim == cert.bound;
  return cert;
}

bool RecursiveUpperLeft::operator==(const RecursiveUpperLeft& o) const {
  if (!(q == o.q) || !(matrix == o.matrix)) return false;
  if (!subtrace || !o.subtrace) return subtrace == o.subtrace;
  return *subtrace == *o.subtrace;
}

const Matrix& step_matrix(const TraceStep& step) {
  return std::visit([](const auto& s) -> const Matrix& { return s.matrix; }, step);
}

std::string step_name(const TraceStep& step) {
  struct Namer {
    std::string operator()(const AdaptedPermutation&) const { return "adapted_permutation"; }
    std::string operator()(const RecursiveUpperLeft&) const { return "recursive_upper_left"; }
    std::string operator()(const CornerShear&) const { return "corner_shear"; }
    std::string operator()(const LambdaShear&) const { return "lambda_shear"; }
    std::string operator()(const KernelBasis&) const { return "kernel_basis"; }
  };
  return std::visit(Namer{}, step);
}

bool TriangularizationTrace::all_observations_hold() const {
  for (const auto& o : observations) {
    if (!o.holds) return false;
  }
  for (const auto& step : steps) {
    if (const auto* rec = std::get_if<RecursiveUpperLeft>(&step)) {
      if (rec->subtrace && !rec->subtrace->all_observations_hold()) return false;
    }
  }
  return true;
}

Matrix accumulated_product(const TriangularizationTrace& trace) {
  Matrix p = Matrix::identity(trace.tower, trace.n);
  for (const auto& step : trace.steps) p = step_matrix(step) * p;
  return p;
}

namespace {

// The running space together with the accumulated change of basis.
class Pipeline {
 public:
  Pipeline(const MatrixSubspace& v, std::size_t n)
      : tower_(v.tower()), n_(n), current_(v), p_(Matrix::identity(v.tower(), n)) {}

  void apply(TraceStep step) {
    const Matrix& s = step_matrix(step);
    current_ = conjugate(current_, s);
    p_ = s * p_;
    steps_.push_back(std::move(step));
  }

  const Tower& tower() const { return tower_; }
  std::size_t n() const { return n_; }
  const MatrixSubspace& current() const { return current_; }
  const Matrix& p() const { return p_; }
  std::vector<TraceStep>& steps() { return steps_; }

 private:
  Tower tower_;
  std::size_t n_;
  MatrixSubspace current_;
  Matrix p_;
  std::vector<TraceStep> steps_;
};

std::string probe_label(const char* name, std::size_t index, std::size_t coord) {
  return name + std::string("=e") + std::to_string(index) + "*b" + std::to_string(coord);
}

// Pattern-solves for the unique element described by `pattern`, then checks
// that the block selected by (row0, col0, nrows, ncols) vanishes.
Observation observe_block_vanishes(const MatrixSubspace& v, const BlockPattern& pattern, std::string claim,
                                   std::string probe, std::size_t row0, std::size_t col0, std::size_t nrows,
                                   std::size_t ncols) {
  const auto sol = solve_pattern(v, pattern);
  Observation obs{std::move(claim), std::move(probe), false, std::nullopt};
  if (!sol.unique()) return obs;
  obs.value = sol.particular->block(row0, col0, nrows, ncols);
  obs.holds = obs.value->is_zero();
  return obs;
}

TriangularizationTrace n2_impl(const MatrixSubspace& v, PreconditionStatus status) {
  const Tower& tower = v.tower();
  const std::size_t q = tower.dimension();
  if (v.n() != 2) throw Error(ErrorKind::ShapeMismatch, "expected 2 x 2 matrices");
  if (v.dim() != q) {
    throw Error(ErrorKind::NotMaximalDimension,
                "dimension " + std::to_string(v.dim()) + " differs from q = " + std::to_string(q), "n=2");
  }
  const Matrix& a = v.basis().front();
  const auto ker = kernel(a);
  if (ker.size() != 1) {
    throw Error(ErrorKind::FinalCheckFailed,
                "the first basis matrix has a kernel of K-dimension " + std::to_string(ker.size()) + ", expected 1",
                "n=2/kernel_basis");
  }
  const Matrix& g1 = ker.front();
  std::optional<Matrix> g2;
  for (std::size_t j = 0; j < 2 && !g2; ++j) {
    Matrix e(tower, 2, 1);
    e.set(j, 0, tower.one());
    Matrix pair(tower, 2, 2);
    pair.set_block(0, 0, g1);
    pair.set_block(0, 1, e);
    if (rank(pair) == 2) g2 = e;
  }
  Matrix g(tower, 2, 2);
  g.set_block(0, 0, g1);
  g.set_block(0, 1, *g2);

  Pipeline pipe(v, 2);
  pipe.apply(KernelBasis{g1, *g2, inverse(g)});

  std::vector<Observation> observations;
  for (std::size_t b = 0; b < v.dim(); ++b) {
    const Matrix image = v.basis()[b] * g1;
    observations.push_back({"common_kernel", "basis" + std::to_string(b), image.is_zero(), image});
  }
  if (!(pipe.current() == MatrixSubspace::strictly_upper(tower, 2))) {
    throw Error(ErrorKind::FinalCheckFailed, "conjugated space is not NT_2; the input is not nilpotent",
                "n=2/final_check");
  }
  return TriangularizationTrace{tower, 2, v, std::move(pipe.steps()), pipe.p(), std::move(observations), status};
}

TriangularizationTrace triangularize_impl(const MatrixSubspace& v, PreconditionStatus status) {
  const Tower& tower = v.tower();
  const std::size_t n = v.n();
  const std::size_t q = tower.dimension();
  const std::string level = level_name(n);
  if (n == 0) throw Error(ErrorKind::ShapeMismatch, "empty matrices");
  if (v.dim() != q * binomial2(n)) {
    throw Error(ErrorKind::NotMaximalDimension,
                "dimension " + std::to_string(v.dim()) + " differs from q*C(n,2) = " + std::to_string(q * binomial2(n)),
                level);
  }
  if (n == 1) return TriangularizationTrace{tower, 1, v, {}, Matrix::identity(tower, 1), {}, status};
  if (n == 2) return n2_impl(v, status);

  Pipeline pipe(v, n);
  std::vector<Observation> observations;
  const std::size_t mid = n - 2;  // size of the middle block

  // 1. Move an adapted vector to e_{n-1}.
  std::size_t adapted = 0;
  try {
    adapted = find_adapted(v);
  } catch (const Error& e) {
    throw e.with_step_prefix(level + "/adapted_permutation");
  }
  if (adapted != n - 1) pipe.apply(AdaptedPermutation{adapted, transposition(tower, n, adapted, n - 1)});

  // 2. Upper-left space V_ul = K(W1), triangularized recursively.
  {
    BlockPattern zero_column(n, n);
    zero_column.zero_block(0, n - 1, n - 1, 1);
    const auto w1 = solve_pattern(pipe.current(), zero_column).homogeneous;
    const auto upper_left = project_block(w1, 0, 0, n - 1, n - 1);
    std::shared_ptr<const TriangularizationTrace> sub;
    try {
      sub = std::make_shared<const TriangularizationTrace>(triangularize_impl(upper_left, status));
    } catch (const Error& e) {
      throw e.with_step_prefix(level + "/recursive_upper_left");
    }
    pipe.apply(RecursiveUpperLeft{sub->p, direct_sum(sub->p, Matrix::identity(tower, 1)), sub});
  }

  // 3. Corner compatibility: S = V_lr e_{n-1} must be a graph {(y, u(y))}.
  {
    const std::string step = level + "/corner_shear";
    BlockPattern zero_row(n, n);
    zero_row.zero_block(0, 1, 1, n - 1);
    const auto w2 = solve_pattern(pipe.current(), zero_row).homogeneous;
    const auto lower_right = project_block(w2, 1, 1, n - 1, n - 1);
    if (lower_right.dim() != q * binomial2(n - 1)) {
      throw Error(ErrorKind::CornerStructureViolation,
                  "lower-right space has dimension " + std::to_string(lower_right.dim()), step);
    }
    const auto s = project_block(lower_right, 0, n - 2, n - 1, 1);
    if (s.dim() != q * mid) {
      throw Error(ErrorKind::CornerStructureViolation,
                  "V_lr e_{n-1} has K0-dimension " + std::to_string(s.dim()) + ", expected " + std::to_string(q * mid),
                  step);
    }
    for (const auto& vec : s.basis()) {
      for (std::size_t c = 0; c < q; ++c) {
        if (!s.contains(vec * tower.basis_element(c))) {
          throw Error(ErrorKind::CornerStructureViolation, "V_lr e_{n-1} is not a right K-subspace", step);
        }
      }
    }
    BlockPattern last_only = BlockPattern::all_zero(n - 1, 1);
    last_only.set_free(n - 2, 0);
    if (solve_pattern(s, last_only).homogeneous.dim() != 0) {
      throw Error(ErrorKind::CornerStructureViolation, "V_lr e_{n-1} meets e_{n-1} K", step);
    }
    Matrix row(tower, 1, mid);
    for (std::size_t r = 0; r < mid; ++r) {
      BlockPattern unit_head = BlockPattern::all_zero(n - 1, 1);
      unit_head.set_fixed(r, 0, tower.one());
      unit_head.set_free(n - 2, 0);
      const auto sol = solve_pattern(s, unit_head);
      if (!sol.unique()) {
        throw Error(ErrorKind::CornerStructureViolation, "no unique element of V_lr e_{n-1} over e" + std::to_string(r),
                    step);
      }
      row.set(0, r, -(*sol.particular)(n - 2, 0));
    }
    Matrix q1 = Matrix::identity(tower, n - 1);
    q1.set_block(n - 2, 0, row);
    pipe.apply(CornerShear{row, q1, direct_sum(Matrix::identity(tower, 1), q1)});

    const auto aligned = project_block(solve_pattern(pipe.current(), zero_row).homogeneous, 1, 1, n - 1, n - 1);
    observations.push_back({"corner_compatible", "V_lr", aligned == MatrixSubspace::strictly_upper(tower, n - 1),
                            std::nullopt});
  }

  // Patterns for the special matrices A_L, B_C, E_U and J_a.
  const auto pattern_a = [&](const Matrix& l) {
    BlockPattern p = BlockPattern::all_zero(n, n);
    p.fixed_block(0, 1, l);
    p.free_block(n - 1, 0, 1, n - 1);
    return p;
  };
  const auto pattern_b = [&](const Matrix& c) {
    BlockPattern p = BlockPattern::all_zero(n, n);
    p.fixed_block(1, n - 1, c);
    p.free_block(1, 0, n - 1, 1);
    return p;
  };
  const auto unit_row = [&](std::size_t r, std::size_t c) {
    Matrix l(tower, 1, mid);
    l.set(0, r, tower.basis_element(c));
    return l;
  };
  const auto unit_col = [&](std::size_t r, std::size_t c) {
    Matrix col(tower, mid, 1);
    col.set(r, 0, tower.basis_element(c));
    return col;
  };

  // 4. lambda from phi(L0), L0 = [1 0 ... 0].
  {
    const std::string step = level + "/lambda_shear";
    Matrix l0(tower, 1, mid);
    l0.set(0, 0, tower.one());
    const auto sol = solve_pattern(pipe.current(), pattern_a(l0));
    if (!sol.unique()) {
      throw Error(ErrorKind::FinalCheckFailed, "no unique matrix of type A_L for L = [1 0 ... 0]", step);
    }
    const Matrix phi = sol.particular->block(n - 1, 1, 1, mid);
    const Scalar lambda = phi(0, 0);

    for (std::size_t r = 0; r < mid; ++r) {
      for (std::size_t c = 0; c < q; ++c) {
        const Matrix l = unit_row(r, c);
        const auto sa = solve_pattern(pipe.current(), pattern_a(l));
        Observation phi_obs{"phi_proportional", probe_label("L", r, c), false, std::nullopt};
        if (sa.unique()) {
          phi_obs.value = sa.particular->block(n - 1, 1, 1, mid) - lambda * l;
          phi_obs.holds = phi_obs.value->is_zero();
        }
        observations.push_back(std::move(phi_obs));

        const Matrix col = unit_col(r, c);
        const auto sb = solve_pattern(pipe.current(), pattern_b(col));
        Observation psi_obs{"psi_proportional", probe_label("C", r, c), false, std::nullopt};
        if (sb.unique()) {
          psi_obs.value = sb.particular->block(1, 0, mid, 1) + col * lambda;
          psi_obs.holds = psi_obs.value->is_zero();
        }
        observations.push_back(std::move(psi_obs));
      }
    }

    Matrix shear = Matrix::identity(tower, n);
    shear.set(n - 1, 0, -lambda);
    pipe.apply(LambdaShear{lambda, phi, shear});
  }

  // 5. After the shear, f, g, h and the J_a residuals all vanish.
  const MatrixSubspace& cur = pipe.current();
  for (std::size_t r = 0; r < mid; ++r) {
    for (std::size_t c = 0; c < q; ++c) {
      observations.push_back(observe_block_vanishes(cur, pattern_a(unit_row(r, c)), "f_vanishes",
                                                    probe_label("L", r, c), n - 1, 0, 1, n - 1));
      observations.push_back(observe_block_vanishes(cur, pattern_b(unit_col(r, c)), "g_vanishes",
                                                    probe_label("C", r, c), 1, 0, n - 1, 1));
    }
  }
  for (std::size_t r = 0; r < mid; ++r) {
    for (std::size_t s = r + 1; s < mid; ++s) {
      for (std::size_t c = 0; c < q; ++c) {
        Matrix u(tower, mid, mid);
        u.set(r, s, tower.basis_element(c));
        BlockPattern p = BlockPattern::all_zero(n, n);
        p.fixed_block(1, 1, u);
        p.free_block(1, 0, n - 1, 1);
        observations.push_back(observe_block_vanishes(
            cur, p, "h_vanishes",
            "U=E" + std::to_string(r) + std::to_string(s) + "*b" + std::to_string(c), 1, 0, n - 1, 1));
      }
    }
  }
  for (std::size_t c = 0; c < q; ++c) {
    const Scalar a = tower.basis_element(c);
    BlockPattern p(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) p.set_zero(i, j);
    }
    p.set_fixed(0, n - 1, a);
    const auto sol = solve_pattern(cur, p);
    Observation obs{"J_a_vanishes", "a=b" + std::to_string(c), false, std::nullopt};
    if (sol.unique()) {
      obs.value = *sol.particular - Matrix::unit(tower, n, 0, n - 1, a);
      obs.holds = obs.value->is_zero();
    }
    observations.push_back(std::move(obs));
  }

  if (!(cur == MatrixSubspace::strictly_upper(tower, n))) {
    std::string failed;
    for (const auto& o : observations) {
      if (!o.holds) failed += (failed.empty() ? "" : ", ") + o.claim + "(" + o.probe + ")";
    }
    throw Error(ErrorKind::FinalCheckFailed,
                "conjugated space is not NT_n" + (failed.empty() ? std::string() : "; failed: " + failed),
                level + "/final_check");
  }
  return TriangularizationTrace{tower, n, v, std::move(pipe.steps()), pipe.p(), std::move(observations), status};
}

}  // namespace

TriangularizationTrace triangularize(const MatrixSubspace& v, const PreconditionOptions& options) {
  const std::size_t n = v.n();
  const std::size_t q = v.tower().dimension();
  if (v.dim() != q * binomial2(n)) {
    throw Error(ErrorKind::NotMaximalDimension,
                "dimension " + std::to_string(v.dim()) + " differs from q*C(n,2) = " + std::to_string(q * binomial2(n)),
                level_name(n));
  }
  const auto status = check_precondition(v, options);
  return triangularize_impl(v, status);
}

TriangularizationTrace triangularize_n2(const MatrixSubspace& v) { return n2_impl(v, PreconditionStatus::Assumed); }

}  // namespace nilspace
