#pragma once
// Brute-force ground truth over small finite fields: exhaustive enumeration
// of nilpotent matrices and nilpotent subspaces, similarity search over
// GL_n, and direct checks of the trace and c2 identities.
//
// Subspace enumeration works on its own compact F_p representation and does
// not use the echelon machinery of MatrixSubspace, so it can serve as an
// independent check of the library.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nilspace/gerstenhaber.hpp"

namespace nilspace {

/// All n x n matrices M with M^n = 0, in lexicographic order of the flattened
/// entries (entry (0,0) most significant, field elements ordered by
/// Tower::element). Error(CapExceeded) unless |K|^{n^2} <= cap.
std::vector<Matrix> enumerate_nilpotent_matrices(const Tower& tower, std::size_t n,
                                                 std::uint64_t cap = std::uint64_t{1} << 24);

/// Every nilpotent F_p-subspace of Mat_n(F_p), grouped by dimension:
/// result[d] lists the subspaces of dimension d in canonical order. The last
/// group is the highest dimension reached; the search stops at the first
/// empty level. Error(CapExceeded) unless p^{n^2} <= cap.
std::vector<std::vector<MatrixSubspace>> enumerate_nilpotent_subspaces(std::uint32_t p, std::size_t n,
                                                                       std::uint64_t cap = std::uint64_t{1} << 24);

struct MaximalSubspaceVerdict {
  MatrixSubspace subspace;
  std::optional<Matrix> similarity;  ///< first P in GL_n order with P V P^{-1} = NT_n
  std::optional<Matrix> triangularizer;
  std::string triangularize_error;  ///< empty when triangularize succeeded
  /// Both P conjugate V onto NT_n.
  bool agree() const { return similarity.has_value() && triangularizer.has_value(); }
};

struct EnumerationReport {
  Tower tower;
  std::size_t n = 0;
  std::uint64_t nilpotent_matrices = 0;
  std::vector<std::uint64_t> subspaces_per_dimension;  ///< index = dimension
  std::size_t max_dimension = 0;
  std::size_t bound = 0;  ///< C(n, 2)
  std::vector<MaximalSubspaceVerdict> maximal;  ///< subspaces of dimension C(n, 2)
  std::optional<double> wall_seconds;

  bool bound_holds() const { return max_dimension <= bound; }
  bool all_similar() const;
};

struct EnumerationOptions {
  std::uint64_t cap = std::uint64_t{1} << 24;
  bool timing = false;
};

/// p in {2, 3}, n in {2, 3}: subspace counts, and each maximal subspace
/// checked by find_similarity and triangularize.
EnumerationReport enumerate_maximal_nilpotent_subspaces(std::uint32_t p, std::size_t n,
                                                        const EnumerationOptions& options = {});

/// First P in lexicographic order of the flattened entries with P V P^{-1} = W,
/// or nullopt. Error(CapExceeded) unless |K|^{n^2} <= cap.
std::optional<Matrix> find_similarity(const MatrixSubspace& v, const MatrixSubspace& w,
                                      std::uint64_t cap = std::uint64_t{1} << 24);

struct CheckMode {
  enum class Kind { Exhaustive, Sampled };
  Kind kind = Kind::Exhaustive;
  std::size_t samples = 1000;
  std::uint64_t seed = 42;
  std::uint64_t cap = std::uint64_t{1} << 24;

  static CheckMode exhaustive(std::uint64_t cap = std::uint64_t{1} << 24) { return {Kind::Exhaustive, 0, 0, cap}; }
  static CheckMode sampled(std::size_t samples, std::uint64_t seed = 42) { return {Kind::Sampled, samples, seed, 0}; }
};

struct IdentityReport {
  Tower tower;
  std::size_t n = 0;
  CheckMode mode;
  std::uint64_t pairs_examined = 0;
  std::uint64_t pairs_checked = 0;  ///< pairs meeting the hypothesis
  std::uint64_t violations = 0;
  std::optional<std::pair<Matrix, Matrix>> first_violation;

  bool holds() const { return violations == 0; }
};

/// trace(A B) = 0 for nilpotent A, B with A + B nilpotent. Exhaustive mode
/// scans all ordered pairs of nilpotent matrices; sampled mode draws
/// A = P U1 P^{-1}, B = P U2 P^{-1} with U1, U2 strictly upper triangular.
/// Error(NonCommutativeTower) for quaternion towers.
IdentityReport check_trace_orthogonality(const Tower& tower, std::size_t n, const CheckMode& mode);

/// c2(M + N) - c2(M) - c2(N) = tr(M) tr(N) - tr(M N) on random pairs.
IdentityReport check_c2_identity(const Tower& tower, std::size_t n, std::size_t samples, std::uint64_t seed = 42);

}  // namespace nilspace
