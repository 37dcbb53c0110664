#include "nilspace/oracle.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <map>
#include <set>
#include <unordered_set>

#include "nilspace/detail/prime_power_field.hpp"
#include "nilspace/error.hpp"
#include "nilspace/random.hpp"

namespace nilspace {

namespace {

std::uint64_t checked_power(std::uint64_t base, std::size_t exp, std::uint64_t cap, const char* what) {
  std::uint64_t result = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (result > cap / base) {
      throw Error(ErrorKind::CapExceeded, std::string(what) + " exceeds the cap of " + std::to_string(cap));
    }
    result *= base;
  }
  if (result > cap) throw Error(ErrorKind::CapExceeded, std::string(what) + " exceeds the cap of " + std::to_string(cap));
  return result;
}

std::uint64_t finite_order(const Tower& tower) {
  const auto order = tower.order();
  if (!order) throw Error(ErrorKind::CapExceeded, "exhaustive scan needs a finite field, got " + tower.describe());
  return *order;
}

// Matrix with entries tower.element(digit), digits row-major from `code`,
// most significant first.
Matrix matrix_from_code(const Tower& tower, std::size_t n, std::uint64_t code, std::uint64_t order) {
  std::vector<Scalar> entries(n * n, tower.zero());
  for (std::size_t i = n * n; i-- > 0;) {
    entries[i] = tower.element(code % order);
    code /= order;
  }
  return Matrix(tower, n, n, std::move(entries));
}

// --- compact F_p matrices -----------------------------------------------------

using Digits = std::vector<std::uint8_t>;

class CompactField {
 public:
  CompactField(std::uint32_t p, std::size_t n) : p_(p), n_(n), size_(n * n) {
    for (std::uint32_t a = 1; a < p; ++a) {
      for (std::uint32_t b = 1; b < p; ++b) {
        if (a * b % p == 1) inverse_[a] = static_cast<std::uint8_t>(b);
      }
    }
  }

  std::size_t size() const { return size_; }
  std::uint32_t p() const { return p_; }

  std::uint32_t encode(const Digits& d) const {
    std::uint32_t code = 0;
    for (auto x : d) code = code * p_ + x;
    return code;
  }

  Digits decode(std::uint32_t code) const {
    Digits d(size_);
    for (std::size_t i = size_; i-- > 0;) {
      d[i] = static_cast<std::uint8_t>(code % p_);
      code /= p_;
    }
    return d;
  }

  // a + t b
  Digits axpy(const Digits& a, std::uint32_t t, const Digits& b) const {
    Digits r(size_);
    for (std::size_t i = 0; i < size_; ++i) r[i] = static_cast<std::uint8_t>((a[i] + t * b[i]) % p_);
    return r;
  }

  bool nilpotent(const Digits& m) const {
    Digits power = m;
    for (std::size_t step = 1; step < n_; ++step) {
      Digits next(size_, 0);
      for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t j = 0; j < n_; ++j) {
          std::uint32_t s = 0;
          for (std::size_t k = 0; k < n_; ++k) s += power[i * n_ + k] * m[k * n_ + j];
          next[i * n_ + j] = static_cast<std::uint8_t>(s % p_);
        }
      }
      power = std::move(next);
    }
    return std::all_of(power.begin(), power.end(), [](auto x) { return x == 0; });
  }

  // Reduced row echelon form, zero rows dropped.
  std::vector<Digits> rref(std::vector<Digits> rows) const {
    std::size_t r = 0;
    for (std::size_t c = 0; c < size_ && r < rows.size(); ++c) {
      std::size_t piv = r;
      while (piv < rows.size() && rows[piv][c] == 0) ++piv;
      if (piv == rows.size()) continue;
      std::swap(rows[r], rows[piv]);
      const std::uint32_t inv = inverse_.at(rows[r][c]);
      for (auto& x : rows[r]) x = static_cast<std::uint8_t>(x * inv % p_);
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i != r && rows[i][c] != 0) rows[i] = axpy(rows[i], p_ - rows[i][c], rows[r]);
      }
      ++r;
    }
    rows.resize(r);
    return rows;
  }

  std::vector<std::uint32_t> elements(const std::vector<Digits>& basis) const {
    std::vector<Digits> all{Digits(size_, 0)};
    for (const auto& b : basis) {
      const std::size_t count = all.size();
      for (std::uint32_t t = 1; t < p_; ++t) {
        for (std::size_t i = 0; i < count; ++i) all.push_back(axpy(all[i], t, b));
      }
    }
    std::vector<std::uint32_t> codes;
    for (const auto& d : all) codes.push_back(encode(d));
    std::sort(codes.begin(), codes.end());
    return codes;
  }

 private:
  std::uint32_t p_;
  std::size_t n_;
  std::size_t size_;
  std::map<std::uint32_t, std::uint8_t> inverse_;
};

struct CompactSubspace {
  std::vector<Digits> basis;  // reduced row echelon form
  std::vector<std::uint32_t> elements;
};

MatrixSubspace to_subspace(const Tower& tower, std::size_t n, const std::vector<Digits>& basis) {
  std::vector<Matrix> mats;
  for (const auto& b : basis) {
    std::vector<Scalar> entries;
    for (auto x : b) entries.push_back(tower.from_integer(x));
    mats.emplace_back(tower, n, n, std::move(entries));
  }
  return MatrixSubspace::span(tower, n, mats);
}

// Levels of compact nilpotent subspaces; level d holds dimension d.
std::vector<std::vector<CompactSubspace>> compact_levels(const CompactField& f, std::uint64_t* nilpotent_count = nullptr) {
  std::vector<Digits> nilpotents;
  std::unordered_set<std::uint32_t> nilpotent_codes;
  const std::uint32_t total = [&] {
    std::uint32_t t = 1;
    for (std::size_t i = 0; i < f.size(); ++i) t *= f.p();
    return t;
  }();
  for (std::uint32_t code = 1; code < total; ++code) {
    Digits d = f.decode(code);
    if (f.nilpotent(d)) {
      nilpotents.push_back(std::move(d));
      nilpotent_codes.insert(code);
    }
  }

  if (nilpotent_count) *nilpotent_count = nilpotents.size() + 1;

  std::vector<std::vector<CompactSubspace>> levels{{CompactSubspace{{}, {0}}}};
  while (true) {
    std::map<std::vector<Digits>, CompactSubspace> next;
    for (const auto& s : levels.back()) {
      std::vector<Digits> members;
      for (auto code : s.elements) members.push_back(f.decode(code));
      for (const auto& candidate : nilpotents) {
        if (std::binary_search(s.elements.begin(), s.elements.end(), f.encode(candidate))) continue;
        bool ok = true;
        for (std::uint32_t t = 1; t < f.p() && ok; ++t) {
          for (const auto& m : members) {
            if (!nilpotent_codes.count(f.encode(f.axpy(m, t, candidate)))) {
              ok = false;
              break;
            }
          }
        }
        if (!ok) continue;
        auto rows = s.basis;
        rows.push_back(candidate);
        rows = f.rref(std::move(rows));
        if (next.count(rows)) continue;
        auto elements = f.elements(rows);
        next.emplace(rows, CompactSubspace{rows, std::move(elements)});
      }
    }
    if (next.empty()) break;
    std::vector<CompactSubspace> level;
    for (auto& [key, value] : next) level.push_back(std::move(value));
    levels.push_back(std::move(level));
  }
  return levels;
}

void check_enumeration_args(std::uint32_t p, std::size_t n, std::uint64_t cap) {
  if (!detail::is_prime(p)) throw Error(ErrorKind::InvalidSpec, "p = " + std::to_string(p) + " is not prime");
  if (n < 1) throw Error(ErrorKind::InvalidSpec, "n must be positive");
  checked_power(p, n * n, std::min<std::uint64_t>(cap, std::uint64_t{1} << 31), "p^(n^2)");
}

bool is_commutative_or_throw(const Tower& tower) {
  if (!tower.is_commutative()) {
    throw Error(ErrorKind::NonCommutativeTower, "identity check needs a commutative tower, got " + tower.describe());
  }
  return true;
}

}  // namespace

std::vector<Matrix> enumerate_nilpotent_matrices(const Tower& tower, std::size_t n, std::uint64_t cap) {
  const std::uint64_t order = finite_order(tower);
  const std::uint64_t total = checked_power(order, n * n, cap, "|K|^(n^2)");
  std::vector<Matrix> result;
  for (std::uint64_t code = 0; code < total; ++code) {
    Matrix m = matrix_from_code(tower, n, code, order);
    if (is_nilpotent(m)) result.push_back(std::move(m));
  }
  return result;
}

std::vector<std::vector<MatrixSubspace>> enumerate_nilpotent_subspaces(std::uint32_t p, std::size_t n,
                                                                       std::uint64_t cap) {
  check_enumeration_args(p, n, cap);
  const CompactField field(p, n);
  const Tower tower = Tower::prime_field(p);
  std::vector<std::vector<MatrixSubspace>> result;
  for (const auto& level : compact_levels(field)) {
    std::vector<MatrixSubspace> out;
    for (const auto& s : level) out.push_back(to_subspace(tower, n, s.basis));
    result.push_back(std::move(out));
  }
  return result;
}

bool EnumerationReport::all_similar() const {
  return std::all_of(maximal.begin(), maximal.end(), [](const auto& m) { return m.agree(); });
}

EnumerationReport enumerate_maximal_nilpotent_subspaces(std::uint32_t p, std::size_t n,
                                                        const EnumerationOptions& options) {
  if ((p != 2 && p != 3) || (n != 2 && n != 3)) {
    throw Error(ErrorKind::InvalidSpec, "enumeration supports p in {2, 3} and n in {2, 3}");
  }
  const auto start = std::chrono::steady_clock::now();
  check_enumeration_args(p, n, options.cap);
  const CompactField field(p, n);
  const Tower tower = Tower::prime_field(p);
  std::uint64_t nilpotent_count = 0;
  const auto levels = compact_levels(field, &nilpotent_count);

  EnumerationReport report{tower, n, 0, {}, levels.size() - 1, binomial2(n), {}, std::nullopt};
  report.nilpotent_matrices = nilpotent_count;
  for (const auto& level : levels) report.subspaces_per_dimension.push_back(level.size());

  const MatrixSubspace target = MatrixSubspace::strictly_upper(tower, n);
  if (report.bound < levels.size()) {
    for (const auto& s : levels[report.bound]) {
      MaximalSubspaceVerdict verdict{to_subspace(tower, n, s.basis), std::nullopt, std::nullopt, {}};
      verdict.similarity = find_similarity(verdict.subspace, target, options.cap);
      try {
        auto trace = triangularize(verdict.subspace);
        if (conjugate(verdict.subspace, trace.p) == target) verdict.triangularizer = trace.p;
      } catch (const Error& e) {
        verdict.triangularize_error = std::string(to_string(e.kind())) + " at " + e.step() + ": " + e.message();
      }
      report.maximal.push_back(std::move(verdict));
    }
  }
  if (options.timing) {
    report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  return report;
}

std::optional<Matrix> find_similarity(const MatrixSubspace& v, const MatrixSubspace& w, std::uint64_t cap) {
  if (!(v.tower() == w.tower())) throw Error(ErrorKind::TowerMismatch, "subspaces live over different towers");
  const std::size_t n = v.n();
  if (w.n() != n) throw Error(ErrorKind::ShapeMismatch, "subspaces have different matrix sizes");
  const Tower& tower = v.tower();
  const std::uint64_t order = finite_order(tower);
  const std::uint64_t total = checked_power(order, n * n, cap, "|K|^(n^2)");
  if (v.dim() != w.dim()) return std::nullopt;
  for (std::uint64_t code = 0; code < total; ++code) {
    Matrix p = matrix_from_code(tower, n, code, order);
    if (!is_invertible(p)) continue;
    const Matrix pinv = inverse(p);
    bool ok = true;
    for (const auto& b : v.basis()) {
      if (!w.contains(p * b * pinv)) {
        ok = false;
        break;
      }
    }
    if (ok) return p;
  }
  return std::nullopt;
}

IdentityReport check_trace_orthogonality(const Tower& tower, std::size_t n, const CheckMode& mode) {
  is_commutative_or_throw(tower);
  IdentityReport report{tower, n, mode, 0, 0, 0, std::nullopt};
  auto check = [&](const Matrix& a, const Matrix& b) {
    ++report.pairs_checked;
    if (!trace(a * b).is_zero()) {
      if (!report.first_violation) report.first_violation.emplace(a, b);
      ++report.violations;
    }
  };
  if (mode.kind == CheckMode::Kind::Exhaustive) {
    const auto nilpotents = enumerate_nilpotent_matrices(tower, n, mode.cap);
    for (const auto& a : nilpotents) {
      for (const auto& b : nilpotents) {
        ++report.pairs_examined;
        if (is_nilpotent(a + b)) check(a, b);
      }
    }
    return report;
  }
  Rng rng(mode.seed);
  for (std::size_t s = 0; s < mode.samples; ++s) {
    const Matrix p = random_invertible(tower, n, rng);
    const Matrix pinv = inverse(p);
    const Matrix a = p * random_strictly_upper(tower, n, rng) * pinv;
    const Matrix b = p * random_strictly_upper(tower, n, rng) * pinv;
    ++report.pairs_examined;
    if (is_nilpotent(a) && is_nilpotent(b) && is_nilpotent(a + b)) check(a, b);
  }
  return report;
}

IdentityReport check_c2_identity(const Tower& tower, std::size_t n, std::size_t samples, std::uint64_t seed) {
  is_commutative_or_throw(tower);
  IdentityReport report{tower, n, CheckMode::sampled(samples, seed), 0, 0, 0, std::nullopt};
  Rng rng(seed);
  for (std::size_t s = 0; s < samples; ++s) {
    const Matrix m = random_matrix(tower, n, n, rng);
    const Matrix nn = random_matrix(tower, n, n, rng);
    ++report.pairs_examined;
    ++report.pairs_checked;
    const Scalar lhs = c2(m + nn) - c2(m) - c2(nn);
    const Scalar rhs = trace(m) * trace(nn) - trace(m * nn);
    if (!(lhs == rhs)) {
      if (!report.first_violation) report.first_violation.emplace(m, nn);
      ++report.violations;
    }
  }
  return report;
}

}  // namespace nilspace
