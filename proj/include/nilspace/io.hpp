#pragma once

// Text formats.
//
// Tower spec:   {"kind":"quaternion","a":"-1","b":"-1"}
//               {"kind":"gf","p":2,"d":1,"k":2,"modulus":[1,1,1]}
//               {"kind":"rational"}
// Scalar:       prime fields an integer; other finite towers an array of q
//               base literals (an integer for d = 1, else d digits low to
//               high); rationals and quaternions a string such as "-1/2" or
//               "1+2i-3j+k" (integers accepted on input).
// Matrix:       array of rows of scalar literals.
// Subspace:     {"tower":<spec>,"n":<int>,"basis":[<matrix>, ...]},
//               canonicalized on load.
//
// Floating-point JSON numbers are rejected everywhere. Output is canonical:
// parsing and re-printing any emitted document reproduces it byte for byte.

#include <string>

#include <json.hpp>

#include "nilspace/gerstenhaber.hpp"
#include "nilspace/oracle.hpp"
#include "nilspace/subspace.hpp"
#include "nilspace/tower.hpp"

namespace nilspace {

using Json = nlohmann::ordered_json;

Json to_json(const TowerSpec& spec);
Json to_json(const Tower& tower);
Tower tower_from_json(const Json& j);

Json to_json(const Scalar& x);
Scalar scalar_from_json(const Tower& tower, const Json& j);
std::string format_quaternion(const Scalar& x);
Scalar parse_quaternion(const Tower& tower, const std::string& text);

Json to_json(const Matrix& m);
/// `cols_hint` gives the width of a matrix with no rows.
Matrix matrix_from_json(const Tower& tower, const Json& j, std::size_t cols_hint = 0);

Json to_json(const MatrixSubspace& v);
MatrixSubspace subspace_from_json(const Json& j);

Json to_json(const BoundCertificate& cert);

Json to_json(const TriangularizationTrace& trace);
TriangularizationTrace trace_from_json(const Json& j);

Json to_json(const EnumerationReport& report);
Json to_json(const IdentityReport& report);

/// Parses JSON text, rejecting malformed documents with Error(ParseError).
Json parse_json_text(const std::string& text);
Json read_json_file(const std::string& path);
/// Two-space indented dump with a trailing newline.
std::string dump(const Json& j);

}  // namespace nilspace
