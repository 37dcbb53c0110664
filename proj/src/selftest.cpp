#include "nilspace/selftest.hpp"

#include <sstream>

#include "nilspace/error.hpp"
#include "nilspace/io.hpp"

namespace nilspace {

namespace {

std::uint64_t power(std::uint64_t base, std::size_t exp) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) r *= base;
  return r;
}

std::string error_text(const Error& e) {
  std::string s(to_string(e.kind()));
  if (!e.step().empty()) s += " at " + e.step();
  return s + ": " + e.message();
}

class Failures {
 public:
  void add(const std::string& what) {
    if (count_++ < 3) {
      if (!text_.empty()) text_ += "; ";
      text_ += what;
    }
  }
  bool empty() const { return count_ == 0; }
  std::string summary(const std::string& ok) const {
    if (count_ == 0) return ok;
    return std::to_string(count_) + " failures: " + text_;
  }

 private:
  std::size_t count_ = 0;
  std::string text_;
};

}  // namespace

MatrixSubspace random_conjugate_of_strictly_upper(const Tower& tower, std::size_t n, Rng& rng) {
  const Matrix p = random_invertible(tower, n, rng);
  return conjugate(MatrixSubspace::strictly_upper(tower, n), p);
}

SuiteResult suite_bound_exhaustive(std::uint32_t p, const std::vector<std::size_t>& sizes) {
  SuiteResult result{"bound_exhaustive", false, 0, {}};
  Failures failures;
  std::ostringstream counts;
  for (std::size_t n : sizes) {
    const auto levels = enumerate_nilpotent_subspaces(p, n);
    const std::size_t bound = binomial2(n);
    counts << " n=" << n << ":";
    for (std::size_t d = 0; d < levels.size(); ++d) {
      counts << (d ? "," : "") << levels[d].size();
      for (const auto& v : levels[d]) {
        ++result.checked;
        if (d > bound || power(p, d) > power(p, bound)) failures.add("dimension " + std::to_string(d));
        try {
          const auto cert = bound_certificate(v);
          bool consistent = cert.nilpotency == PreconditionStatus::Proven;
          for (const auto& level : cert.levels) consistent = consistent && level.consistent(cert.q);
          if (!cert.holds || cert.dim != d || !consistent) failures.add("certificate at n=" + std::to_string(n));
        } catch (const Error& e) {
          failures.add(error_text(e));
        }
      }
    }
  }
  result.passed = failures.empty();
  result.detail = failures.summary("subspaces per dimension" + counts.str());
  return result;
}

SuiteResult suite_equality_classification(std::uint32_t p, const std::vector<std::size_t>& sizes) {
  SuiteResult result{"equality_classification", false, 0, {}};
  Failures failures;
  std::ostringstream counts;
  for (std::size_t n : sizes) {
    const auto report = enumerate_maximal_nilpotent_subspaces(p, n);
    counts << " n=" << n << ": " << report.maximal.size();
    for (const auto& m : report.maximal) {
      ++result.checked;
      if (!m.similarity) failures.add("no similarity witness at n=" + std::to_string(n));
      if (!m.triangularizer) failures.add("triangularize failed at n=" + std::to_string(n) + ": " + m.triangularize_error);
    }
    if (!report.bound_holds()) failures.add("dimension above the bound at n=" + std::to_string(n));
  }
  result.passed = failures.empty();
  result.detail = failures.summary("maximal subspaces" + counts.str());
  return result;
}

SuiteResult suite_round_trip(const Tower& tower, const std::vector<std::size_t>& sizes, std::size_t samples,
                             std::uint64_t seed) {
  SuiteResult result{"round_trip " + tower.describe(), false, 0, {}};
  Failures failures;
  for (std::size_t n : sizes) {
    Rng rng(seed);
    const MatrixSubspace target = MatrixSubspace::strictly_upper(tower, n);
    for (std::size_t s = 0; s < samples; ++s) {
      const MatrixSubspace v = random_conjugate_of_strictly_upper(tower, n, rng);
      ++result.checked;
      const std::string where = "n=" + std::to_string(n) + " sample " + std::to_string(s);
      try {
        const auto trace = triangularize(v);
        if (!(conjugate(v, trace.p) == target)) failures.add(where + ": final equality");
        if (!trace.all_observations_hold()) failures.add(where + ": observation");
        if (!(accumulated_product(trace) == trace.p)) failures.add(where + ": step product");
        if (!(trace_from_json(parse_json_text(dump(to_json(trace)))) == trace)) failures.add(where + ": text round trip");
      } catch (const Error& e) {
        failures.add(where + ": " + error_text(e));
      }
    }
  }
  result.passed = failures.empty();
  result.detail = failures.summary("all exact");
  return result;
}

std::string round_trip_traces(const Tower& tower, std::size_t n, std::size_t samples, std::uint64_t seed) {
  Rng rng(seed);
  std::string out;
  for (std::size_t s = 0; s < samples; ++s) {
    out += dump(to_json(triangularize(random_conjugate_of_strictly_upper(tower, n, rng))));
  }
  return out;
}

SuiteResult suite_trace_orthogonality(std::size_t samples, std::uint64_t seed) {
  SuiteResult result{"trace_orthogonality", false, 0, {}};
  std::vector<IdentityReport> reports;
  for (std::size_t n : {2, 3}) reports.push_back(check_trace_orthogonality(Tower::prime_field(2), n, CheckMode::exhaustive()));
  reports.push_back(check_trace_orthogonality(Tower::prime_field(5), 4, CheckMode::sampled(samples, seed)));
  std::uint64_t violations = 0;
  std::ostringstream detail;
  for (const auto& r : reports) {
    result.checked += r.pairs_checked;
    violations += r.violations;
    detail << (detail.tellp() > 0 ? ", " : "") << r.tower.describe() << " n=" << r.n << ": " << r.pairs_checked << " pairs";
  }
  result.passed = violations == 0;
  result.detail = std::to_string(violations) + " violations; " + detail.str();
  return result;
}

SuiteResult suite_c2_identity(const std::vector<Tower>& towers, const std::vector<std::size_t>& sizes,
                              std::size_t samples, std::uint64_t seed) {
  SuiteResult result{"c2_identity", false, 0, {}};
  std::uint64_t violations = 0;
  for (const auto& tower : towers) {
    for (std::size_t n : sizes) {
      const auto r = check_c2_identity(tower, n, samples, seed);
      result.checked += r.pairs_checked;
      violations += r.violations;
    }
  }
  result.passed = violations == 0;
  result.detail = std::to_string(violations) + " violations over " + std::to_string(towers.size()) + " towers";
  return result;
}

SuiteResult suite_adapted_diagnostics(std::size_t count, std::uint64_t seed) {
  SuiteResult result{"adapted_diagnostics", false, 0, {}};
  Failures failures;
  Rng rng(seed);
  std::size_t refuted = 0;
  for (std::size_t s = 0; s < count; ++s) {
    const Tower tower = Tower::prime_field(s % 2 == 0 ? 2 : 3);
    const std::size_t n = 2 + uniform_below(rng, 2);
    std::vector<Matrix> mats;
    for (std::size_t i = 0; i < n; ++i) {
      Matrix row_only(tower, n, n);
      while (row_only.is_zero()) {
        for (std::size_t j = 0; j < n; ++j) row_only.set(i, j, random_scalar(tower, rng));
      }
      mats.push_back(std::move(row_only));
    }
    if (uniform_below(rng, 2) == 1) mats.push_back(random_matrix(tower, n, n, rng));
    const MatrixSubspace v = MatrixSubspace::span(tower, n, mats);
    ++result.checked;
    const std::string where = "span " + std::to_string(s);
    try {
      find_adapted(v);
      failures.add(where + ": adapted index found");
      continue;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NoAdaptedVector) failures.add(where + ": " + error_text(e));
    }
    const auto verdict = is_nilpotent_space(v, NilpotencyMode::exhaustive());
    if (verdict.status != NilpotencyStatus::Refuted || !verdict.witness || is_nilpotent(*verdict.witness)) {
      failures.add(where + ": no non-nilpotent witness");
    } else {
      ++refuted;
    }
  }
  std::size_t nilpotent_spaces = 0;
  for (std::size_t n : {2, 3}) {
    for (const auto& level : enumerate_nilpotent_subspaces(2, n)) {
      for (const auto& v : level) {
        ++result.checked;
        ++nilpotent_spaces;
        if (is_nilpotent_space(v, NilpotencyMode::exhaustive()).status != NilpotencyStatus::Proven) {
          failures.add("enumerated space not nilpotent");
        }
        try {
          find_adapted(v);
        } catch (const Error& e) {
          failures.add("nilpotent space: " + error_text(e));
        }
      }
    }
  }
  result.passed = failures.empty();
  result.detail = failures.summary(std::to_string(refuted) + " spans refuted, " + std::to_string(nilpotent_spaces) +
                                   " nilpotent spaces adapted");
  return result;
}

SuiteResult suite_determinism(const std::vector<std::pair<Tower, std::vector<std::size_t>>>& cases,
                              std::size_t samples, std::uint64_t seed) {
  SuiteResult result{"determinism", false, 0, {}};
  Failures failures;
  for (const auto& [tower, sizes] : cases) {
    for (std::size_t n : sizes) {
      ++result.checked;
      try {
        if (round_trip_traces(tower, n, samples, seed) != round_trip_traces(tower, n, samples, seed)) {
          failures.add(tower.describe() + " n=" + std::to_string(n));
        }
      } catch (const Error& e) {
        failures.add(error_text(e));
      }
    }
  }
  result.passed = failures.empty();
  result.detail = failures.summary("byte-identical traces");
  return result;
}

std::vector<Tower> commutative_sample_towers() {
  return {Tower::prime_field(2), Tower::prime_field(3), Tower::prime_field(5), Tower::galois(2, 1, 2),
          Tower::galois(3, 1, 2), Tower::galois(2, 2, 4), Tower::rational()};
}

std::vector<SuiteResult> run_selftest(const SelftestOptions& options) {
  const std::size_t samples = options.samples;
  const std::uint64_t seed = options.seed;
  std::vector<SuiteResult> results;
  results.push_back(suite_bound_exhaustive(2, {2, 3}));
  results.push_back(suite_equality_classification(2, {2, 3}));
  results.push_back(suite_round_trip(Tower::hamilton(), {2, 3}, samples, seed));
  results.push_back(suite_round_trip(Tower::galois(2, 1, 2), {2, 3, 4}, samples, seed));
  results.push_back(suite_trace_orthogonality(samples * 10, seed));
  results.push_back(suite_c2_identity(commutative_sample_towers(), {2, 3, 4, 5}, samples, seed));
  results.push_back(suite_adapted_diagnostics(samples, seed));
  results.push_back(suite_determinism({{Tower::hamilton(), {2, 3}}, {Tower::galois(2, 1, 2), {2, 3, 4}}},
                                      std::max<std::size_t>(1, samples / 10), seed));
  return results;
}

}  // namespace nilspace
