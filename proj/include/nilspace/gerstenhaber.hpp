#pragma once

// Nilpotent K0-linear subspaces V of Mat_n(K): the dimension bound
// dim_{K0} V <= q n (n - 1) / 2 and, at equality, an explicit P with
// P V P^{-1} = NT_n(K).
//
// Indices are 0-based throughout: "e_{n-1}" is the last standard vector.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "nilspace/subspace.hpp"

namespace nilspace {

/// e_i is V-adapted: no non-zero matrix of V is supported on row i alone,
/// i.e. none has e_i K as its column space.
bool is_adapted(const MatrixSubspace& v, std::size_t i);

/// Smallest adapted index. A nilpotent V always has one; Error(NoAdaptedVector)
/// therefore certifies that V contains a non-nilpotent matrix.
std::size_t find_adapted(const MatrixSubspace& v);

std::size_t binomial2(std::size_t n);

struct PreconditionOptions {
  /// Exhaustively check nilpotency when K0 is finite and |V| <= cap.
  bool verify_nilpotent = true;
  std::uint64_t cap = std::uint64_t{1} << 20;
};

enum class PreconditionStatus { Proven, Assumed };

struct BoundLevel {
  std::size_t n = 0;
  std::size_t dim_space = 0;         ///< dim V at this level
  std::size_t adapted_index = 0;     ///< index moved to the last position
  std::size_t dim_zero_column = 0;   ///< dim W1, W1 = {M in V : C(M) = 0}
  std::size_t dim_upper_left = 0;    ///< dim K(W1)
  std::size_t dim_column_image = 0;  ///< dim C(V)

  /// dim V = dim K(W1) + dim C(V), K(.) injective on W1, dim C(V) <= q (n - 1).
  bool consistent(std::size_t q) const;
  bool operator==(const BoundLevel&) const = default;
};

struct BoundCertificate {
  Tower tower;
  std::size_t n = 0;
  std::size_t q = 0;
  std::size_t dim = 0;
  std::size_t bound = 0;  ///< q n (n - 1) / 2
  std::vector<BoundLevel> levels;
  bool holds = false;     ///< dim <= bound
  bool equality = false;  ///< dim == bound
  PreconditionStatus nilpotency = PreconditionStatus::Assumed;

  bool operator==(const BoundCertificate&) const = default;
};

/// Runs the inductive argument: adapted vector to the last position, split off
/// W1 and C(V), recurse on K(W1). Errors: NoAdaptedVector (located by step),
/// NotNilpotent when the optional exhaustive check finds a witness.
BoundCertificate bound_certificate(const MatrixSubspace& v, const PreconditionOptions& options = {});

struct TriangularizationTrace;

/// Conjugation by a permutation sending e_index to e_{n-1}.
struct AdaptedPermutation {
  std::size_t index = 0;
  Matrix matrix;
  bool operator==(const AdaptedPermutation&) const = default;
};

/// Q (+) 1 where Q triangularizes the upper-left space V_ul = K(W1).
struct RecursiveUpperLeft {
  Matrix q;
  Matrix matrix;
  std::shared_ptr<const TriangularizationTrace> subtrace;
  bool operator==(const RecursiveUpperLeft& o) const;
};

/// 1 (+) Q1 with Q1 = [[I, 0], [L, 1]] aligning the lower-right space.
struct CornerShear {
  Matrix row;  ///< L, 1 x (n - 2)
  Matrix q1;
  Matrix matrix;
  bool operator==(const CornerShear&) const = default;
};

/// I - lambda E_{n-1,0}, where phi(L) = lambda L.
struct LambdaShear {
  Scalar lambda;
  Matrix phi_of_first_row;  ///< phi(L0) for L0 = [1 0 ... 0]
  Matrix matrix;
  bool operator==(const LambdaShear&) const = default;
};

/// n = 2: P = [g1 g2]^{-1} with g1 spanning the common kernel.
struct KernelBasis {
  Matrix kernel_vector;
  Matrix complement;
  Matrix matrix;
  bool operator==(const KernelBasis&) const = default;
};

using TraceStep = std::variant<AdaptedPermutation, RecursiveUpperLeft, CornerShear, LambdaShear, KernelBasis>;

const Matrix& step_matrix(const TraceStep& step);
std::string step_name(const TraceStep& step);

/// A structural fact the proof guarantees, checked on the running space.
struct Observation {
  std::string claim;
  std::string probe;
  bool holds = false;
  std::optional<Matrix> value;  ///< observed block, zero when the claim holds
  bool operator==(const Observation&) const = default;
};

struct TriangularizationTrace {
  Tower tower;
  std::size_t n = 0;
  MatrixSubspace input;
  std::vector<TraceStep> steps;
  Matrix p;  ///< product of the step matrices, last step leftmost
  std::vector<Observation> observations;
  PreconditionStatus nilpotency = PreconditionStatus::Assumed;

  /// Observations of this level and of all nested levels.
  bool all_observations_hold() const;
  bool operator==(const TriangularizationTrace&) const = default;
};

/// Product of the step matrices, recomputed from the steps.
Matrix accumulated_product(const TriangularizationTrace& trace);

/// Requires dim V = q n (n - 1) / 2 (Error(NotMaximalDimension) otherwise).
/// The returned P always satisfies conjugate(V, P) == NT_n exactly; if the
/// construction cannot reach NT_n the input was not nilpotent, reported as
/// NoAdaptedVector, CornerStructureViolation, FinalCheckFailed or
/// NotNilpotent with the failing step in Error::step().
TriangularizationTrace triangularize(const MatrixSubspace& v, const PreconditionOptions& options = {});

/// The n = 2 construction on its own (no nilpotency pre-check).
TriangularizationTrace triangularize_n2(const MatrixSubspace& v);

}  // namespace nilspace
