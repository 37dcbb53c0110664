#pragma once

#include <string>

#include "nilspace/io.hpp"

namespace nilspace::testing {

inline Matrix mat(const Tower& t, const std::string& literal) { return matrix_from_json(t, parse_json_text(literal)); }

inline Scalar num(const Tower& t, const std::string& literal) { return scalar_from_json(t, parse_json_text(literal)); }

inline Scalar quat(const std::string& text) { return parse_quaternion(Tower::hamilton(), text); }

inline Matrix unit(const Tower& t, std::size_t n, std::size_t i, std::size_t j) { return Matrix::unit(t, n, i, j); }

}  // namespace nilspace::testing
