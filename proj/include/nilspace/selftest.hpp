#pragma once
// Invariant suites shared by the `selftest` subcommand and the acceptance
// binary. Each suite is deterministic for a given seed.

#include <cstdint>
#include <string>
#include <vector>

#include "nilspace/oracle.hpp"
#include "nilspace/random.hpp"

namespace nilspace {

struct SuiteResult {
  std::string name;
  bool passed = false;
  std::uint64_t checked = 0;
  std::string detail;
};

/// P NT_n P^{-1} for a random invertible P.
MatrixSubspace random_conjugate_of_strictly_upper(const Tower& tower, std::size_t n, Rng& rng);

/// Every nilpotent subspace over F_p, n in `sizes`: the certificate holds,
/// dim <= C(n, 2) and |V| <= p^{C(n, 2)}.
SuiteResult suite_bound_exhaustive(std::uint32_t p, const std::vector<std::size_t>& sizes);

/// Every subspace of dimension C(n, 2) is conjugated onto NT_n by both
/// find_similarity and triangularize. Detail lists the counts per n.
SuiteResult suite_equality_classification(std::uint32_t p, const std::vector<std::size_t>& sizes);

/// `samples` conjugates of NT_n per n: exact final equality, every
/// observation holds, P equals the step product, and the trace survives a
/// text round trip.
SuiteResult suite_round_trip(const Tower& tower, const std::vector<std::size_t>& sizes, std::size_t samples,
                             std::uint64_t seed);

/// Concatenated trace text for the conjugates drawn by suite_round_trip.
std::string round_trip_traces(const Tower& tower, std::size_t n, std::size_t samples, std::uint64_t seed);

/// Exhaustive over F_2 for n in {2, 3}, then `samples` pairs over F_5, n = 4.
SuiteResult suite_trace_orthogonality(std::size_t samples, std::uint64_t seed);

/// `samples` pairs for every tower and every n in `sizes`.
SuiteResult suite_c2_identity(const std::vector<Tower>& towers, const std::vector<std::size_t>& sizes,
                              std::size_t samples, std::uint64_t seed);

/// Spans holding a non-zero matrix supported on each single row, over F_2 and
/// F_3: find_adapted fails and the exhaustive scan finds a non-nilpotent
/// element. Then find_adapted succeeds on every enumerated nilpotent subspace
/// over F_2, n <= 3.
SuiteResult suite_adapted_diagnostics(std::size_t count, std::uint64_t seed);

/// Two runs of round_trip_traces per tower and n produce identical text.
SuiteResult suite_determinism(const std::vector<std::pair<Tower, std::vector<std::size_t>>>& cases,
                              std::size_t samples, std::uint64_t seed);

/// Commutative towers used by the c2 checks: F_2, F_3, F_5, F_4, F_9, F_16
/// over F_4 and Q.
std::vector<Tower> commutative_sample_towers();

struct SelftestOptions {
  std::size_t samples = 20;
  std::uint64_t seed = 42;
};

std::vector<SuiteResult> run_selftest(const SelftestOptions& options);

}  // namespace nilspace
