#include "orbi_cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <unordered_map>

#include "orbi/quaternion/quaternion.hpp"
#include "orbi/recognize/recognize.hpp"

namespace orbi::cli {

namespace {

using group::MatrixGroup;
using numeric::Field;
using numeric::Index;
using numeric::Matrix;
using numeric::QSqrt5;
using numeric::Rational;
using numeric::Subspace;

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorCode::InvalidInput, what); }

// ---------------------------------------------------------------------------
// Scalars

json scalar_json(const Rational& r) { return r.str(); }
json scalar_json(const QSqrt5& x) {
  if (x.is_rational()) return x.a().str();
  return json{{"a", x.a().str()}, {"b", x.b().str()}};
}
json scalar_json(double x) { return x == 0.0 ? 0.0 : x; }

Rational parse_rational(const json& e, const std::string& where) {
  if (e.is_number_integer()) {
    if (e.is_number_unsigned() && e.get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX))
      invalid(where + ": integer out of range");
    return Rational(e.get<long>());
  }
  if (e.is_number_float()) {
    const double d = e.get<double>();
    if (std::isfinite(d) && d == std::trunc(d) && std::abs(d) < 9e15) return Rational(static_cast<long>(d));
    invalid(where + ": non-integer number in an exact field; write it as a \"p/q\" string");
  }
  if (e.is_string()) {
    try {
      return Rational::parse(e.get<std::string>());
    } catch (const Error&) {
      invalid(where + ": cannot parse '" + e.get<std::string>() + "' as p/q");
    }
  }
  invalid(where + ": expected a number, \"p/q\" or {\"a\",\"b\"}");
}

QSqrt5 parse_entry(const json& e, const std::string& where) {
  if (!e.is_object()) return QSqrt5(parse_rational(e, where));
  Rational a, b;
  for (const auto& [key, value] : e.items()) {
    if (key == "a") {
      a = parse_rational(value, where + ".a");
    } else if (key == "b") {
      b = parse_rational(value, where + ".b");
    } else {
      invalid(where + ": unknown key '" + key + "'");
    }
  }
  return QSqrt5(a, b);
}

template <numeric::Scalar S>
std::string scalar_text(const S& x) {
  if constexpr (std::is_same_v<S, double>) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", x == 0.0 ? 0.0 : x);
    return buf;
  } else {
    return x.str();
  }
}

std::string fixed3(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", x);
  return buf;
}

template <numeric::Scalar S>
json basis_json(const Subspace<S>& s) {
  json rows = json::array();
  for (Index i = 0; i < s.dim(); ++i) {
    json row = json::array();
    for (Index j = 0; j < s.ambient(); ++j) row.push_back(scalar_json(s.basis()(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string json_scalar_text(const json& x) {
  if (x.is_string()) return x.get<std::string>();
  if (x.is_object()) {
    const std::string a = x["a"].get<std::string>(), b = x["b"].get<std::string>();
    std::string out = a == "0" ? "" : a;
    if (!out.empty()) out += b.front() == '-' ? " - " : " + ";
    out += (out.empty() ? b : (b.front() == '-' ? b.substr(1) : b)) + "*sqrt5";
    return out;
  }
  return scalar_text(x.get<double>());
}

std::string basis_text(const json& rows) {
  if (rows.empty()) return "{0}";
  std::string out = "span(";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i > 0) out += ", ";
    out += "(";
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      if (j > 0) out += ", ";
      out += json_scalar_text(rows[i][j]);
    }
    out += ")";
  }
  return out + ")";
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

// ---------------------------------------------------------------------------
// Backend dispatch

template <class F>
json dispatch(const catalog::GeneratorSet& set, const Options& opt, F&& f) {
  numeric::ScopedTolerance tol(opt.eps);
  const auto cap = static_cast<std::size_t>(opt.cap);
  switch (set.field) {
    case Field::Rational:
      return f(MatrixGroup<Rational>::generate(catalog::generators_as<Rational>(set), set.dimension, cap));
    case Field::QSqrt5:
      return f(MatrixGroup<QSqrt5>::generate(catalog::generators_as<QSqrt5>(set), set.dimension, cap));
    case Field::Float64:
      return f(MatrixGroup<double>::generate(catalog::generators_as<double>(set), set.dimension, cap));
  }
  invalid("unknown field");
}

json header(const catalog::GeneratorSet& set) {
  return json{{"dimension", set.dimension}, {"field", std::string(numeric::to_string(set.field))}};
}

template <numeric::Scalar S>
json analyze_group(const MatrixGroup<S>& g, json report) {
  const auto v = recognize::decide(g);
  report["group_order"] = g.order();
  report["det_positive"] = v.det_positive;
  report["pseudoreflection_count"] = recognize::count_pseudoreflections(g);
  json minimal = json::array();
  for (const auto& rec : v.minimal) {
    json m{{"codim", rec.entry.codim},
           {"kind", std::string(recognize::to_string(rec.kind.tag))},
           {"order", rec.kind.order},
           {"fixed_space_basis", basis_json(rec.entry.subspace)}};
    if (!rec.kind.reason.empty()) m["reason"] = rec.kind.reason;
    if (!rec.kind.orientation.empty()) m["orientation"] = rec.kind.orientation;
    if (!rec.kind.note.empty()) m["note"] = rec.kind.note;
    minimal.push_back(std::move(m));
  }
  report["minimal_subgroups"] = std::move(minimal);
  report["gamma_min_is_whole"] = v.gamma_min_is_whole ? json(*v.gamma_min_is_whole) : json(nullptr);
  if (v.decomposition) {
    const auto& d = *v.decomposition;
    json blocks = json::array();
    for (const auto& b : d.poincare_blocks)
      blocks.push_back(json{{"order", b.group.order()}, {"support_basis", basis_json(b.support)}});
    report["decomposition"] = json{{"ps_order", d.ps_subgroup.order()},
                                   {"k", d.poincare_blocks.size()},
                                   {"blocks", std::move(blocks)},
                                   {"v_ps_basis", basis_json(d.v_ps)},
                                   {"v0_basis", basis_json(d.v0)}};
  } else {
    report["decomposition"] = nullptr;
  }
  json reasons = json::array();
  for (auto r : v.reasons) reasons.push_back(std::string(recognize::to_string(r)));
  report["verdict"] = json{{"euclidean", v.euclidean}, {"sphere", v.sphere}, {"reasons", std::move(reasons)}};
  return report;
}

std::string binary_name(const quaternion::BinaryClass& c) { return c.str(); }

template <numeric::Scalar S>
json lift_group(const MatrixGroup<S>& g, json report) {
  const auto d = quaternion::lift_group(g);
  const auto part = [](const quaternion::QuaternionSet<S>& set, const quaternion::BinaryClass& c) {
    return json{{"order", set.size()}, {"class", binary_name(c)}};
  };
  report["backend"] = std::string(numeric::to_string(numeric::FieldTraits<S>::field));
  report["group_order"] = g.order();
  report["left"] = part(d.left, d.left_class);
  report["right"] = part(d.right, d.right_class);
  report["left_kernel"] = part(d.left_kernel, d.left_kernel_class);
  report["right_kernel"] = part(d.right_kernel, d.right_kernel_class);
  const auto [lr, rl] = d.order_formula();
  report["order_formula"] = json{{"left_times_right_kernel", lr}, {"right_times_left_kernel", rl}};
  return report;
}

template <numeric::Scalar S>
json spectrum_group(const MatrixGroup<S>& g, json report) {
  if (g.dimension() != 4) invalid("spectrum needs a group acting on R^4 = H");
  // Orbit of the unit quaternion 1 = e_1, one entry per distinct point.
  quaternion::QuaternionSet<S> orbit;
  std::unordered_multimap<std::size_t, std::size_t> seen;
  for (const auto& m : g.elements()) {
    const auto q = quaternion::Quaternion<S>::from_vector(numeric::Vector<S>(m.col(0)));
    const std::size_t h = q.hash();
    bool dup = false;
    auto [lo, hi] = seen.equal_range(h);
    for (auto it = lo; it != hi && !dup; ++it) dup = orbit[it->second] == q;
    if (dup) continue;
    seen.emplace(h, orbit.size());
    orbit.push_back(q);
  }
  json rows = json::array();
  for (const auto& [c, n] : quaternion::orbit_angle_spectrum(orbit)) {
    const double cd = numeric::FieldTraits<S>::to_double(c);
    const double deg = std::acos(std::clamp(cd, -1.0, 1.0)) * 180.0 / std::numbers::pi;
    rows.push_back(json{{"degrees", fixed3(deg)}, {"cosine", scalar_json(c)}, {"count", n}});
  }
  report["group_order"] = g.order();
  report["orbit_size"] = orbit.size();
  report["classes"] = std::move(rows);
  return report;
}

json abstract_invariants(const group::FiniteGroup& g) {
  const auto classes = group::conjugacy_classes(g);
  std::uint32_t class_count = 0;
  for (auto c : classes) class_count = std::max(class_count, c + 1);
  json sylow = json::array();
  for (auto p : group::prime_factors(g.order())) {
    const auto s = group::sylow(g, p);
    json entry{{"p", p}, {"order", s.order()}, {"cyclic", group::is_cyclic(g, s)}};
    if (p == 2) entry["shape"] = std::string(group::to_string(group::classify_2group(g, s)));
    sylow.push_back(std::move(entry));
  }
  return json{{"group_order", g.order()},
              {"abelian", group::is_abelian(g)},
              {"cyclic", group::is_cyclic(g, group::Subgroup::whole(g))},
              {"perfect", group::is_perfect(g)},
              {"derived_order", group::derived_subgroup(g).order()},
              {"conjugacy_classes", class_count},
              {"periodic", group::has_periodic_cohomology(g)},
              {"sylow", std::move(sylow)}};
}

}  // namespace

// ---------------------------------------------------------------------------
// Input files

catalog::GeneratorSet parse_input(const json& doc) {
  if (!doc.is_object()) invalid("input must be a JSON object");
  for (const char* key : {"dimension", "field", "generators"})
    if (!doc.contains(key)) invalid(std::string("missing key '") + key + "'");
  if (!doc["dimension"].is_number_integer() || doc["dimension"].get<long>() < 1)
    invalid("dimension must be a positive integer");
  if (!doc["field"].is_string()) invalid("field must be a string");
  catalog::GeneratorSet set;
  set.dimension = doc["dimension"].get<Index>();
  try {
    set.field = numeric::parse_field(doc["field"].get<std::string>());
  } catch (const Error&) {
    invalid("unknown field '" + doc["field"].get<std::string>() + "'");
  }
  const auto& gens = doc["generators"];
  if (!gens.is_array()) invalid("generators must be an array");
  const Index n = set.dimension;
  for (std::size_t k = 0; k < gens.size(); ++k) {
    const std::string at = "generators[" + std::to_string(k) + "]";
    const auto& rows = gens[k];
    if (!rows.is_array() || static_cast<Index>(rows.size()) != n) invalid(at + ": expected " + std::to_string(n) + " rows");
    Matrix<QSqrt5> exact(n, n);
    Matrix<double> approx(n, n);
    for (Index i = 0; i < n; ++i) {
      const auto& row = rows[static_cast<std::size_t>(i)];
      const std::string ai = at + "[" + std::to_string(i) + "]";
      if (!row.is_array() || static_cast<Index>(row.size()) != n) invalid(ai + ": expected " + std::to_string(n) + " entries");
      for (Index j = 0; j < n; ++j) {
        const auto& e = row[static_cast<std::size_t>(j)];
        const std::string where = ai + "[" + std::to_string(j) + "]";
        if (set.field == Field::Float64) {
          approx(i, j) = e.is_number() ? e.get<double>() : parse_entry(e, where).to_double();
          continue;
        }
        exact(i, j) = parse_entry(e, where);
        if (set.field == Field::Rational && !exact(i, j).is_rational())
          invalid(where + ": irrational entry in a rational file");
        approx(i, j) = exact(i, j).to_double();
      }
    }
    if (set.field != Field::Float64) set.exact.push_back(std::move(exact));
    set.approx.push_back(std::move(approx));
  }
  return set;
}

catalog::GeneratorSet load_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) invalid("cannot open '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    invalid("'" + path + "' is not valid JSON: " + e.what());
  }
  return parse_input(doc);
}

json emit_input(const catalog::GeneratorSet& set) {
  json gens = json::array();
  for (std::size_t k = 0; k < set.approx.size(); ++k) {
    json rows = json::array();
    for (Index i = 0; i < set.dimension; ++i) {
      json row = json::array();
      for (Index j = 0; j < set.dimension; ++j) {
        if (set.field == Field::Float64) {
          row.push_back(scalar_json(set.approx[k](i, j)));
        } else {
          row.push_back(scalar_json(set.exact[k](i, j)));
        }
      }
      rows.push_back(std::move(row));
    }
    gens.push_back(std::move(rows));
  }
  json doc = header(set);
  doc["generators"] = std::move(gens);
  return doc;
}

// ---------------------------------------------------------------------------
// Analyses

json analyze(const catalog::GeneratorSet& set, const Options& opt) {
  return dispatch(set, opt, [&](const auto& g) { return analyze_group(g, header(set)); });
}

json lift(const catalog::GeneratorSet& set, const Options& opt) {
  if (set.dimension != 4) invalid("lift needs a subgroup of SO(4)");
  try {
    return dispatch(set, opt, [&](const auto& g) { return lift_group(g, header(set)); });
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NoFieldSqrt) throw;
  }
  // The exact field lacks a square root some factor needs; lift in float64.
  catalog::GeneratorSet approx = set;
  approx.field = Field::Float64;
  approx.exact.clear();
  json out = dispatch(approx, opt, [&](const auto& g) { return lift_group(g, header(set)); });
  out["note"] = "exact lift needs a square root outside the field; lifted in float64";
  return out;
}

json spectrum(const catalog::GeneratorSet& set, const Options& opt) {
  return dispatch(set, opt, [&](const auto& g) { return spectrum_group(g, header(set)); });
}

json invariants(const catalog::GeneratorSet& set, const Options& opt) {
  return dispatch(set, opt, [&](const auto& g) {
    json out = header(set);
    out.update(abstract_invariants(g.abstract()));
    out["det_positive"] = g.generators_special();
    out["pseudoreflection_count"] = recognize::count_pseudoreflections(g);
    return out;
  });
}

json invariants_abstract(const group::FiniteGroup& g) { return abstract_invariants(g); }

json catalog_list() {
  json out = json::array();
  for (const auto& f : catalog::list()) {
    json verdicts = json::array();
    for (const auto& v : f.verdicts)
      verdicts.push_back(json{{"dimension", v.dimension}, {"euclidean", v.euclidean}, {"sphere", v.sphere}});
    out.push_back(json{{"id", f.id},
                       {"order", f.order},
                       {"perfect", f.perfect},
                       {"periodic", f.periodic},
                       {"verdicts", std::move(verdicts)}});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Text

std::string render_analysis(const json& r) {
  std::ostringstream os;
  const auto n = r["dimension"].get<Index>();
  os << "field: " << r["field"].get<std::string>() << ", dimension " << n << "\n";
  os << "group order: " << r["group_order"].get<std::uint64_t>() << "\n";
  os << "orientation preserving: " << yes_no(r["det_positive"].get<bool>()) << "\n";
  os << "pseudoreflections: " << r["pseudoreflection_count"].get<std::uint64_t>() << "\n";
  const auto& minimal = r["minimal_subgroups"];
  os << "minimal subgroups: " << minimal.size() << "\n";
  constexpr std::size_t kShown = 20;
  for (std::size_t i = 0; i < minimal.size() && i < kShown; ++i) {
    const auto& m = minimal[i];
    os << "  codim " << m["codim"].get<Index>() << "  " << m["kind"].get<std::string>() << "  order "
       << m["order"].get<std::uint64_t>();
    if (m.contains("orientation")) os << " (" << m["orientation"].get<std::string>() << ")";
    os << "  L = " << basis_text(m["fixed_space_basis"]) << "\n";
    if (m.contains("reason")) os << "    " << m["reason"].get<std::string>() << "\n";
    if (m.contains("note")) os << "    note: " << m["note"].get<std::string>() << "\n";
  }
  if (minimal.size() > kShown) os << "  ... " << minimal.size() - kShown << " more in the JSON report\n";
  if (!r["gamma_min_is_whole"].is_null())
    os << "gamma_min is the whole group: " << yes_no(r["gamma_min_is_whole"].get<bool>()) << "\n";
  if (!r["decomposition"].is_null()) {
    const auto& d = r["decomposition"];
    os << "decomposition: |ps| = " << d["ps_order"].get<std::uint64_t>() << ", k = " << d["k"].get<std::size_t>()
       << "\n";
    os << "  V_ps = " << basis_text(d["v_ps_basis"]) << "\n";
    for (const auto& b : d["blocks"]) os << "  P (order " << b["order"].get<std::uint64_t>() << ") on " << basis_text(b["support_basis"]) << "\n";
    os << "  V_0 = " << basis_text(d["v0_basis"]) << "\n";
  }
  const auto& v = r["verdict"];
  os << "R^" << n << "/G homeomorphic to R^" << n << ": " << yes_no(v["euclidean"].get<bool>()) << "\n";
  os << "S^" << n - 1 << "/G homeomorphic to S^" << n - 1 << ": " << yes_no(v["sphere"].get<bool>()) << "\n";
  os << "reasons:";
  for (const auto& c : v["reasons"]) os << " " << c.get<std::string>();
  os << "\n";
  return os.str();
}

std::string render_lift(const json& r) {
  std::ostringstream os;
  os << "group order: " << r["group_order"].get<std::uint64_t>() << " (lifted in " << r["backend"].get<std::string>()
     << ")\n";
  for (const char* part : {"left", "right", "left_kernel", "right_kernel"}) {
    os << part << ": " << r[part]["class"].get<std::string>() << ", order " << r[part]["order"].get<std::uint64_t>()
       << "\n";
  }
  const auto f = r["order_formula"];
  os << "order formula: " << f["left_times_right_kernel"].get<std::uint64_t>() << " = 1/2 * "
     << r["left"]["order"].get<std::uint64_t>() << " * " << r["right_kernel"]["order"].get<std::uint64_t>() << "\n";
  os << "               " << f["right_times_left_kernel"].get<std::uint64_t>() << " = 1/2 * "
     << r["right"]["order"].get<std::uint64_t>() << " * " << r["left_kernel"]["order"].get<std::uint64_t>() << "\n";
  if (r.contains("note")) os << "note: " << r["note"].get<std::string>() << "\n";
  return os.str();
}

std::string render_spectrum(const json& r) {
  std::ostringstream os;
  os << "orbit of 1: " << r["orbit_size"].get<std::size_t>() << " points\n";
  os << "degrees   cosine  count\n";
  for (const auto& c : r["classes"]) {
    os << c["degrees"].get<std::string>() << "  " << json_scalar_text(c["cosine"]) << "  "
       << c["count"].get<std::size_t>() << "\n";
  }
  return os.str();
}

std::string render_invariants(const json& r) {
  std::ostringstream os;
  os << "order: " << r["group_order"].get<std::uint64_t>() << "\n";
  for (const char* key : {"abelian", "cyclic", "perfect", "periodic"})
    os << key << ": " << (r[key].get<bool>() ? "true" : "false") << "\n";
  os << "derived subgroup order: " << r["derived_order"].get<std::uint64_t>() << "\n";
  os << "conjugacy classes: " << r["conjugacy_classes"].get<std::uint32_t>() << "\n";
  for (const auto& s : r["sylow"]) {
    os << "sylow " << s["p"].get<std::uint64_t>() << ": order " << s["order"].get<std::uint64_t>();
    if (s.contains("shape")) os << ", " << s["shape"].get<std::string>();
    else if (s["cyclic"].get<bool>()) os << ", cyclic";
    os << "\n";
  }
  if (r.contains("pseudoreflection_count"))
    os << "pseudoreflections: " << r["pseudoreflection_count"].get<std::uint64_t>() << "\n";
  return os.str();
}

std::string render_catalog_list(const json& list) {
  std::ostringstream os;
  for (const auto& f : list) {
    os << f["id"].get<std::string>() << "  order " << f["order"].get<std::uint64_t>()
       << (f["perfect"].get<bool>() ? "  perfect" : "") << (f["periodic"].get<bool>() ? "  periodic" : "");
    for (const auto& v : f["verdicts"]) {
      os << "  R^" << v["dimension"].get<Index>() << ":" << (v["euclidean"].get<bool>() ? "A" : "-")
         << (v["sphere"].get<bool>() ? "B" : "-");
    }
    os << "\n";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Command line

int exit_code(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::CapExceeded: return 2;
    case ErrorCode::AmbiguousRank: return 3;
    case ErrorCode::InternalError: return 4;
    default: return 1;
  }
}

namespace {

struct Source {
  std::string input, id;
  int dim = 0;

  void attach(CLI::App* cmd) {
    auto* in = cmd->add_option("--input,-i", input, "generator file (JSON)");
    auto* cat = cmd->add_option("--catalog,-c", id, "catalog id");
    in->excludes(cat);
    cmd->add_option("--dim", dim, "pad a catalog group with trivial dimensions up to N")->needs(cat);
  }
  bool empty() const { return input.empty() && id.empty(); }
  catalog::GeneratorSet load() const {
    if (!input.empty()) return load_input(input);
    if (id.empty()) invalid("give --input FILE or --catalog ID");
    if (catalog::build_abstract(id)) invalid("'" + id + "' is an abstract group without a matrix action");
    return dim > 0 ? catalog::build_in_dimension(id, dim) : catalog::build(id);
  }
};

struct Output {
  std::string format = "text";
  std::string report;

  void attach(CLI::App* cmd) {
    cmd->add_option("--format", format, "stdout format")->check(CLI::IsMember({"text", "json"}));
    cmd->add_option("--report", report, "write the JSON report to this file");
  }
  void emit(const json& doc, const std::string& text, std::ostream& out) const {
    if (!report.empty()) {
      std::ofstream f(report);
      if (!f) invalid("cannot write '" + report + "'");
      f << doc.dump(2) << "\n";
    }
    if (format == "json") {
      out << doc.dump(2) << "\n";
    } else {
      out << text;
    }
  }
};

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"orbi: Euclidean and spherical quotients of finite orthogonal groups"};
  app.require_subcommand(1);
  Options opt;
  std::uint64_t cap = opt.cap;
  double eps = opt.eps;
  const auto common = [&](CLI::App* cmd) {
    cmd->add_option("--cap", cap, "maximum group order")->check(CLI::PositiveNumber);
    cmd->add_option("--eps", eps, "float64 tolerance")->check(CLI::PositiveNumber);
  };

  Source src_analyze, src_lift, src_spectrum, src_invariants;
  Output out_analyze, out_lift, out_spectrum, out_invariants, out_list;
  auto* analyze_cmd = app.add_subcommand("analyze", "decide both quotient questions and print the certificate");
  src_analyze.attach(analyze_cmd);
  out_analyze.attach(analyze_cmd);
  common(analyze_cmd);
  auto* lift_cmd = app.add_subcommand("lift", "lift a subgroup of SO(4) to S^3 x S^3");
  src_lift.attach(lift_cmd);
  out_lift.attach(lift_cmd);
  common(lift_cmd);
  auto* spectrum_cmd = app.add_subcommand("spectrum", "angle classes of the orbit of 1 in S^3");
  src_spectrum.attach(spectrum_cmd);
  out_spectrum.attach(spectrum_cmd);
  common(spectrum_cmd);
  auto* invariants_cmd = app.add_subcommand("invariants", "abstract invariants of the group");
  src_invariants.attach(invariants_cmd);
  out_invariants.attach(invariants_cmd);
  common(invariants_cmd);

  auto* catalog_cmd = app.add_subcommand("catalog", "reference groups");
  catalog_cmd->require_subcommand(1);
  auto* list_cmd = catalog_cmd->add_subcommand("list", "ids with expected fingerprints");
  out_list.attach(list_cmd);
  auto* emit_cmd = catalog_cmd->add_subcommand("emit", "write a catalog group as a generator file");
  std::string emit_id, emit_path;
  int emit_dim = 0;
  emit_cmd->add_option("id", emit_id, "catalog id")->required();
  emit_cmd->add_option("--dim", emit_dim, "pad with trivial dimensions up to N");
  emit_cmd->add_option("--output,-o", emit_path, "file to write instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, er;
    const int code = app.exit(e, o, er);
    out << o.str();
    err << er.str();
    return code == 0 ? 0 : 1;
  }
  opt.cap = cap;
  opt.eps = eps;

  try {
    if (analyze_cmd->parsed()) {
      const auto r = analyze(src_analyze.load(), opt);
      out_analyze.emit(r, render_analysis(r), out);
    } else if (lift_cmd->parsed()) {
      const auto r = lift(src_lift.load(), opt);
      out_lift.emit(r, render_lift(r), out);
    } else if (spectrum_cmd->parsed()) {
      const auto r = spectrum(src_spectrum.load(), opt);
      out_spectrum.emit(r, render_spectrum(r), out);
    } else if (invariants_cmd->parsed()) {
      json r;
      if (auto abs = src_invariants.input.empty() ? catalog::build_abstract(src_invariants.id) : std::nullopt) {
        r = invariants_abstract(*abs);
      } else {
        r = invariants(src_invariants.load(), opt);
      }
      out_invariants.emit(r, render_invariants(r), out);
    } else if (list_cmd->parsed()) {
      const auto r = catalog_list();
      out_list.emit(r, render_catalog_list(r), out);
    } else if (emit_cmd->parsed()) {
      const auto set = emit_dim > 0 ? catalog::build_in_dimension(emit_id, emit_dim) : catalog::build(emit_id);
      const std::string text = emit_input(set).dump(2) + "\n";
      if (emit_path.empty()) {
        out << text;
      } else {
        std::ofstream f(emit_path);
        if (!f) invalid("cannot write '" + emit_path + "'");
        f << text;
      }
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_code(ErrorCode::InternalError);
  }
  return 0;
}

}  // namespace orbi::cli
