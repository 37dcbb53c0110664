#include "nilspace/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "nilspace/error.hpp"
#include "nilspace/io.hpp"
#include "nilspace/selftest.hpp"

namespace nilspace {

namespace {

struct Source {
  std::string input;
  std::string literal;
};

void add_source(CLI::App& cmd, Source& source, const std::string& what) {
  auto* in = cmd.add_option("--input,-i", source.input, what + " file");
  auto* lit = cmd.add_option("--literal,-l", source.literal, what + " as inline JSON");
  in->excludes(lit);
}

Json load(const Source& source) {
  if (!source.literal.empty()) return parse_json_text(source.literal);
  if (source.input.empty()) throw Error(ErrorKind::ParseError, "one of --input or --literal is required");
  return read_json_file(source.input);
}

void emit(const Json& j, const std::string& path, std::ostream& out) {
  const std::string text = dump(j);
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error(ErrorKind::ParseError, "cannot write '" + path + "'");
  file << text;
}

Json error_json(const Error& e) {
  Json j = Json::object();
  j["error"] = std::string(to_string(e.kind()));
  j["step"] = e.step();
  j["message"] = e.message();
  return j;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Nilpotent matrix subspaces over division rings", "nilspace"};
  app.require_subcommand(1);

  std::string output;
  std::uint64_t cap = std::uint64_t{1} << 20;
  bool no_verify = false;
  std::uint64_t seed = 42;
  std::size_t samples = 20;
  bool timing = false;
  std::uint32_t p = 2;
  std::size_t n = 2;
  Source source;
  Source target;

  auto* bound = app.add_subcommand("bound", "Certify dim V <= q C(n,2) for a nilpotent subspace");
  auto* tri = app.add_subcommand("triangularize", "Conjugate a maximal nilpotent subspace onto NT_n");
  auto* enumerate = app.add_subcommand("enumerate", "Enumerate maximal nilpotent subspaces over F_p");
  auto* selftest = app.add_subcommand("selftest", "Run the invariant suites");
  auto* similarity = app.add_subcommand("similarity", "Search GL_n for P with P V P^-1 = W");

  for (auto* cmd : {bound, tri, enumerate, selftest, similarity}) {
    cmd->add_option("--output,-o", output, "Write the result to this file");
  }
  for (auto* cmd : {bound, tri}) {
    add_source(*cmd, source, "Subspace");
    cmd->add_option("--cap", cap, "Largest |V| checked exhaustively for nilpotency");
    cmd->add_flag("--no-verify", no_verify, "Skip the exhaustive nilpotency check");
  }
  enumerate->add_option("--p", p, "Prime, 2 or 3")->required();
  enumerate->add_option("--n", n, "Matrix size, 2 or 3")->required();
  enumerate->add_option("--cap", cap, "Largest p^(n^2) and |GL_n| scan")->default_val(std::uint64_t{1} << 24);
  enumerate->add_flag("--timing", timing, "Include wall time in the report");
  selftest->add_option("--seed", seed, "PRNG seed");
  selftest->add_option("--samples", samples, "Samples per randomized suite");
  add_source(*similarity, source, "Subspace V");
  similarity->add_option("--target,-t", target.input, "Subspace W file (default NT_n)");
  similarity->add_option("--cap", cap, "Largest |K|^(n^2) scanned")->default_val(std::uint64_t{1} << 24);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    const PreconditionOptions options{!no_verify, cap};
    if (bound->parsed()) {
      emit(to_json(bound_certificate(subspace_from_json(load(source)), options)), output, out);
    } else if (tri->parsed()) {
      emit(to_json(triangularize(subspace_from_json(load(source)), options)), output, out);
    } else if (enumerate->parsed()) {
      emit(to_json(enumerate_maximal_nilpotent_subspaces(p, n, {cap, timing})), output, out);
    } else if (similarity->parsed()) {
      const MatrixSubspace v = subspace_from_json(load(source));
      const MatrixSubspace w = target.input.empty() ? MatrixSubspace::strictly_upper(v.tower(), v.n())
                                                    : subspace_from_json(read_json_file(target.input));
      const auto witness = find_similarity(v, w, cap);
      Json j = Json::object();
      j["tower"] = to_json(v.tower());
      j["n"] = v.n();
      j["similar"] = witness.has_value();
      j["P"] = witness ? to_json(*witness) : Json(nullptr);
      emit(j, output, out);
    } else {
      const auto results = run_selftest({samples, seed});
      Json suites = Json::array();
      bool passed = true;
      for (const auto& r : results) {
        Json s = Json::object();
        s["suite"] = r.name;
        s["passed"] = r.passed;
        s["checked"] = r.checked;
        s["detail"] = r.detail;
        suites.push_back(std::move(s));
        passed = passed && r.passed;
      }
      Json j = Json::object();
      j["seed"] = seed;
      j["samples"] = samples;
      j["passed"] = passed;
      j["suites"] = std::move(suites);
      emit(j, output, out);
      return passed ? 0 : 2;
    }
    return 0;
  } catch (const Error& e) {
    try {
      emit(error_json(e), output, out);
    } catch (const Error&) {
      out << dump(error_json(e));
    }
    err << "nilspace: " << to_string(e.kind());
    if (!e.step().empty()) err << " at " << e.step();
    err << ": " << e.message() << "\n";
    return e.is_precondition_failure() ? 2 : 1;
  }
}

}  // namespace nilspace
