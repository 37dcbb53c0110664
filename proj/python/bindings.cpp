#include <sstream>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "nilspace/cli.hpp"
#include "nilspace/error.hpp"
#include "nilspace/io.hpp"
#include "nilspace/selftest.hpp"

namespace py = pybind11;
using namespace nilspace;

namespace {

std::string text(const Json& j) { return j.dump(); }

PreconditionOptions precondition(bool verify, std::uint64_t cap) { return {verify, cap}; }

}  // namespace

PYBIND11_MODULE(_nilspace, m) {
  m.doc() = "Nilpotent matrix subspaces over division rings; JSON text in, JSON text out.";

  static py::exception<Error> error_type(m, "NilspaceError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::tuple args = py::make_tuple(std::string(to_string(e.kind())), e.step(), e.message());
      PyErr_SetObject(error_type.ptr(), args.ptr());
    }
  });

  m.def("canonicalize", [](const std::string& subspace) { return text(to_json(subspace_from_json(parse_json_text(subspace)))); },
        py::arg("subspace"));

  m.def(
      "conjugate",
      [](const std::string& subspace, const std::string& p) {
        const auto v = subspace_from_json(parse_json_text(subspace));
        return text(to_json(conjugate(v, matrix_from_json(v.tower(), parse_json_text(p)))));
      },
      py::arg("subspace"), py::arg("p"));

  m.def(
      "strictly_upper",
      [](const std::string& tower, std::size_t n) {
        return text(to_json(MatrixSubspace::strictly_upper(tower_from_json(parse_json_text(tower)), n)));
      },
      py::arg("tower"), py::arg("n"));

  m.def(
      "is_nilpotent_space",
      [](const std::string& subspace, std::size_t samples, std::uint64_t seed, std::uint64_t cap) {
        const auto v = subspace_from_json(parse_json_text(subspace));
        const auto mode = samples == 0 ? NilpotencyMode::exhaustive(cap) : NilpotencyMode::sampled(samples, seed);
        const auto verdict = is_nilpotent_space(v, mode);
        Json j = Json::object();
        j["status"] = verdict.status == NilpotencyStatus::Proven    ? "proven"
                      : verdict.status == NilpotencyStatus::Refuted ? "refuted"
                                                                    : "heuristic";
        j["witness"] = verdict.witness ? to_json(*verdict.witness) : Json(nullptr);
        j["checked"] = verdict.checked;
        return text(j);
      },
      py::arg("subspace"), py::arg("samples") = 0, py::arg("seed") = 42, py::arg("cap") = std::uint64_t{1} << 20);

  m.def(
      "find_adapted",
      [](const std::string& subspace) { return find_adapted(subspace_from_json(parse_json_text(subspace))); },
      py::arg("subspace"));

  m.def(
      "bound_certificate",
      [](const std::string& subspace, bool verify, std::uint64_t cap) {
        return text(to_json(bound_certificate(subspace_from_json(parse_json_text(subspace)), precondition(verify, cap))));
      },
      py::arg("subspace"), py::arg("verify") = true, py::arg("cap") = std::uint64_t{1} << 20);

  m.def(
      "triangularize",
      [](const std::string& subspace, bool verify, std::uint64_t cap) {
        return text(to_json(triangularize(subspace_from_json(parse_json_text(subspace)), precondition(verify, cap))));
      },
      py::arg("subspace"), py::arg("verify") = true, py::arg("cap") = std::uint64_t{1} << 20);

  m.def(
      "enumerate_maximal",
      [](std::uint32_t p, std::size_t n, std::uint64_t cap, bool timing) {
        return text(to_json(enumerate_maximal_nilpotent_subspaces(p, n, {cap, timing})));
      },
      py::arg("p"), py::arg("n"), py::arg("cap") = std::uint64_t{1} << 24, py::arg("timing") = false);

  m.def(
      "find_similarity",
      [](const std::string& v, const std::string& w, std::uint64_t cap) -> std::optional<std::string> {
        const auto result = find_similarity(subspace_from_json(parse_json_text(v)), subspace_from_json(parse_json_text(w)), cap);
        if (!result) return std::nullopt;
        return text(to_json(*result));
      },
      py::arg("v"), py::arg("w"), py::arg("cap") = std::uint64_t{1} << 24);

  m.def(
      "check_trace_orthogonality",
      [](const std::string& tower, std::size_t n, std::size_t samples, std::uint64_t seed) {
        const auto mode = samples == 0 ? CheckMode::exhaustive() : CheckMode::sampled(samples, seed);
        return text(to_json(check_trace_orthogonality(tower_from_json(parse_json_text(tower)), n, mode)));
      },
      py::arg("tower"), py::arg("n"), py::arg("samples") = 0, py::arg("seed") = 42);

  m.def(
      "check_c2_identity",
      [](const std::string& tower, std::size_t n, std::size_t samples, std::uint64_t seed) {
        return text(to_json(check_c2_identity(tower_from_json(parse_json_text(tower)), n, samples, seed)));
      },
      py::arg("tower"), py::arg("n"), py::arg("samples") = 1000, py::arg("seed") = 42);

  m.def(
      "selftest",
      [](std::size_t samples, std::uint64_t seed) {
        py::list out;
        for (const auto& r : run_selftest({samples, seed})) {
          py::dict d;
          d["suite"] = r.name;
          d["passed"] = r.passed;
          d["checked"] = r.checked;
          d["detail"] = r.detail;
          out.append(d);
        }
        return out;
      },
      py::arg("samples") = 5, py::arg("seed") = 42);

  m.def(
      "run_cli",
      [](std::vector<std::string> args) {
        args.insert(args.begin(), "nilspace");
        std::vector<const char*> argv;
        for (const auto& a : args) argv.push_back(a.c_str());
        std::ostringstream out, err;
        const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"));
}
