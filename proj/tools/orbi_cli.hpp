#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "orbi/catalog/catalog.hpp"
#include "orbi/error.hpp"

namespace orbi::cli {

using json = nlohmann::json;

/// Generator file schema:
///   {"dimension": n, "field": "qsqrt5"|"rational"|"float64",
///    "generators": [[[entry, ...], ...], ...]}
/// entry := integer | "p/q" | {"a": "p/q", "b": "r/s"} (a + b sqrt5).
/// Float64 files may use any JSON number.
catalog::GeneratorSet parse_input(const json& doc);
catalog::GeneratorSet load_input(const std::string& path);
json emit_input(const catalog::GeneratorSet& set);

struct Options {
  std::uint64_t cap = 1'000'000;
  double eps = 1e-8;
};

json analyze(const catalog::GeneratorSet& set, const Options& opt);
json lift(const catalog::GeneratorSet& set, const Options& opt);
json spectrum(const catalog::GeneratorSet& set, const Options& opt);
json invariants(const catalog::GeneratorSet& set, const Options& opt);
json invariants_abstract(const group::FiniteGroup& g);
json catalog_list();

std::string render_analysis(const json& report);
std::string render_lift(const json& report);
std::string render_spectrum(const json& report);
std::string render_invariants(const json& report);
std::string render_catalog_list(const json& list);

/// 0 for verdicts, 1 invalid input, 2 cap exceeded, 3 ambiguous rank, 4 internal.
int exit_code(ErrorCode code) noexcept;

/// The whole command line; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace orbi::cli
