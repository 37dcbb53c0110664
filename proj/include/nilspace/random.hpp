#pragma once

#include <cstdint>
#include <random>

#include "nilspace/matrix.hpp"

namespace nilspace {

using Rng = std::mt19937_64;

/// Uniform in [0, bound) by rejection, independent of the standard library's
/// distribution implementations so seeded runs match across toolchains.
std::uint64_t uniform_below(Rng& rng, std::uint64_t bound);

/// Uniform over finite towers; integer coordinates in [-bound, bound] otherwise.
Scalar random_scalar(const Tower& tower, Rng& rng, int bound = 2);
Matrix random_matrix(const Tower& tower, std::size_t rows, std::size_t cols, Rng& rng, int bound = 2);
/// Rejection-samples random_matrix until it is invertible.
Matrix random_invertible(const Tower& tower, std::size_t n, Rng& rng, int bound = 2);
Matrix random_strictly_upper(const Tower& tower, std::size_t n, Rng& rng, int bound = 2);

}  // namespace nilspace
