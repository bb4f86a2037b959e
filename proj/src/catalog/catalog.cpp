#include "orbi/catalog/catalog.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <numbers>
#include <random>

namespace orbi::catalog {

namespace {

constexpr Index kMaxDimension = 12;

[[noreturn]] void bad(std::string_view id, std::string_view why) {
  throw Error(ErrorCode::BadParameter, "catalog id '" + std::string(id) + "': " + std::string(why));
}

QSqrt5 half() { return QSqrt5(Rational(1, 2)); }
QSqrt5 tau() { return QSqrt5::golden(); }
QSqrt5 tau_inv() { return QSqrt5::golden() - QSqrt5(1); }

Field narrowest(const std::vector<Matrix<QSqrt5>>& ms) {
  for (const auto& m : ms)
    for (Index i = 0; i < m.rows(); ++i)
      for (Index j = 0; j < m.cols(); ++j)
        if (!m(i, j).is_rational()) return Field::QSqrt5;
  return Field::Rational;
}

GeneratorSet exact_set(Index n, std::vector<Matrix<QSqrt5>> gens) {
  GeneratorSet out;
  out.dimension = n;
  out.field = narrowest(gens);
  for (const auto& g : gens) out.approx.push_back(numeric::to_double<QSqrt5>(g));
  out.exact = std::move(gens);
  return out;
}

GeneratorSet float_set(Index n, std::vector<Matrix<double>> gens) {
  GeneratorSet out;
  out.dimension = n;
  out.field = Field::Float64;
  out.approx = std::move(gens);
  return out;
}

std::vector<Matrix<QSqrt5>> left_matrices(const std::vector<Quat>& qs) {
  std::vector<Matrix<QSqrt5>> out;
  for (const auto& q : qs) out.push_back(quaternion::left_matrix(q));
  return out;
}

std::uint64_t parse_uint(std::string_view id, std::string_view text) {
  std::uint64_t v = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || text.empty()) bad(id, "expected a non-negative integer, got '" + std::string(text) + "'");
  return v;
}

/// Splits at top-level commas.
std::vector<std::string_view> split_args(std::string_view id, std::string_view s) {
  std::vector<std::string_view> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    if (s[i] == ')' && --depth < 0) bad(id, "unbalanced parentheses");
    if (s[i] == ',' && depth == 0) {
      out.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  if (depth != 0) bad(id, "unbalanced parentheses");
  out.push_back(s.substr(start));
  return out;
}

/// Re-attaches bare numbers to the argument before them, so list parameters
/// such as ps_product:3,5 survive inside sum(...) and conj(...).
std::vector<std::string_view> regroup(std::string_view s, const std::vector<std::string_view>& pieces) {
  std::vector<std::string_view> out;
  for (auto p : pieces) {
    const bool number = !p.empty() && std::all_of(p.begin(), p.end(), [](char c) { return c >= '0' && c <= '9'; });
    if (number && !out.empty()) {
      const auto begin = static_cast<std::size_t>(out.back().data() - s.data());
      out.back() = s.substr(begin, static_cast<std::size_t>(p.data() - out.back().data()) + p.size());
    } else {
      out.push_back(p);
    }
  }
  return out;
}

std::vector<std::string_view> split_colon(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == ':') {
      out.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

Matrix<double> rotation_float(double theta) {
  Matrix<double> r(2, 2);
  r << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
  return r;
}

/// Rotation by 360/k degrees in the (a, b) coordinate plane of R^n.
GeneratorSet cyclic(std::string_view id, std::uint64_t k, Index n, Index a, Index b) {
  if (k < 2) bad(id, "rotation order must be at least 2");
  if (n < 2 || a < 0 || b < 0 || a >= n || b >= n || a == b) bad(id, "bad rotation plane");
  const auto place = [&](auto block, auto eye) {
    auto m = eye;
    m(a, a) = block(0, 0);
    m(a, b) = block(0, 1);
    m(b, a) = block(1, 0);
    m(b, b) = block(1, 1);
    return m;
  };
  if (k == 2 || k == 4) {
    Matrix<QSqrt5> block(2, 2);
    if (k == 2) {
      block << -1, 0, 0, -1;
    } else {
      block << 0, -1, 1, 0;
    }
    return exact_set(n, {place(block, numeric::identity<QSqrt5>(n))});
  }
  const double theta = 2.0 * std::numbers::pi / static_cast<double>(k);
  return float_set(n, {place(rotation_float(theta), numeric::identity<double>(n))});
}

GeneratorSet axis_rotation(std::string_view id, std::uint64_t k) {
  Matrix<QSqrt5> m(3, 3);
  switch (k) {
    case 2: m << -1, 0, 0, 0, -1, 0, 0, 0, 1; break;
    case 3: m << 0, 0, 1, 1, 0, 0, 0, 1, 0; break;
    case 4: m << 0, -1, 0, 1, 0, 0, 0, 0, 1; break;
    case 5: {
      // q -> x q x^-1 on the imaginary quaternions, x = (tau + i/tau + j)/2 of order 10.
      const Quat x{tau() * half(), tau_inv() * half(), half(), QSqrt5(0)};
      m = quaternion::phi(x, x).block(1, 1, 3, 3);
      break;
    }
    default: bad(id, "exact axis rotations exist for orders 2, 3, 4, 5");
  }
  return exact_set(3, {m});
}

GeneratorSet direct_sum(const std::vector<GeneratorSet>& parts) {
  Index n = 0;
  bool any_float = false;
  Field widest = Field::Rational;
  for (const auto& p : parts) {
    n += p.dimension;
    any_float = any_float || p.field == Field::Float64;
    if (p.field == Field::QSqrt5) widest = Field::QSqrt5;
  }
  GeneratorSet out;
  out.dimension = n;
  out.field = any_float ? Field::Float64 : widest;
  Index at = 0;
  for (const auto& p : parts) {
    for (const auto& g : p.approx) out.approx.push_back(numeric::embed<double>(g, n, at));
    if (!any_float)
      for (const auto& g : p.exact) out.exact.push_back(numeric::embed<QSqrt5>(g, n, at));
    at += p.dimension;
  }
  return out;
}

/// Signed permutation on exact backends, Haar-like random orthogonal on float64.
GeneratorSet conjugate(const GeneratorSet& base, std::uint64_t seed) {
  const Index n = base.dimension;
  std::mt19937_64 rng(seed);
  GeneratorSet out = base;
  out.approx.clear();
  out.exact.clear();
  if (base.field != Field::Float64) {
    std::vector<Index> perm(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
    for (Index i = n - 1; i > 0; --i) {
      const Index j = static_cast<Index>(rng() % static_cast<std::uint64_t>(i + 1));
      std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
    }
    Matrix<QSqrt5> h = numeric::zeros<QSqrt5>(n, n);
    for (Index i = 0; i < n; ++i) h(i, perm[static_cast<std::size_t>(i)]) = (rng() & 1U) ? QSqrt5(-1) : QSqrt5(1);
    const Matrix<QSqrt5> ht = h.transpose();
    for (const auto& g : base.exact) out.exact.push_back(numeric::mul<QSqrt5>(numeric::mul<QSqrt5>(h, g), ht));
    for (const auto& g : out.exact) out.approx.push_back(numeric::to_double<QSqrt5>(g));
    return out;
  }
  std::normal_distribution<double> gauss;
  Eigen::MatrixXd a(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) a(i, j) = gauss(rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index j = 0; j < n; ++j)
    if (r(j, j) < 0) q.col(j) = -q.col(j);
  for (const auto& g : base.approx) out.approx.push_back(Matrix<double>(q * g * q.transpose()));
  return out;
}

std::vector<Quat> icosian_generators_impl() {
  return {Quat{QSqrt5(0), QSqrt5(1), QSqrt5(0), QSqrt5(0)}, Quat{half(), half(), half(), half()},
          Quat{tau() * half(), tau_inv() * half(), half(), QSqrt5(0)}};
}

GeneratorSet build_impl(std::string_view id) {
  if (id == "poincare") return exact_set(4, left_matrices(icosian_generators_impl()));
  if (id == "binary_I") {
    std::vector<Matrix<QSqrt5>> gens;
    for (const auto& q : icosian_generators_impl()) gens.push_back(quaternion::right_matrix(q));
    return exact_set(4, std::move(gens));
  }
  if (id == "binary_T") {
    auto g = icosian_generators_impl();
    g.pop_back();
    return exact_set(4, left_matrices(g));
  }
  if (id == "binary_O") {
    const double s = std::sqrt(0.5);
    std::vector<Matrix<double>> gens;
    gens.push_back(numeric::to_double<QSqrt5>(quaternion::left_matrix(Quat{half(), half(), half(), half()})));
    gens.push_back(quaternion::left_matrix(quaternion::Quaternion<double>{s, s, 0.0, 0.0}));
    return float_set(4, std::move(gens));
  }
  if (id == "icosian_product") {
    std::vector<Matrix<QSqrt5>> gens;
    for (const auto& q : icosian_generators_impl()) gens.push_back(quaternion::phi(q, Quat::one()));
    for (const auto& q : icosian_generators_impl()) gens.push_back(quaternion::phi(Quat::one(), q));
    return exact_set(4, std::move(gens));
  }
  if (id == "klein_four") {
    Matrix<QSqrt5> a = numeric::identity<QSqrt5>(4), b = numeric::identity<QSqrt5>(4);
    a(0, 0) = a(1, 1) = QSqrt5(-1);
    b(2, 2) = b(3, 3) = QSqrt5(-1);
    return exact_set(4, {a, b});
  }

  if (id.ends_with(")")) {
    const auto open = id.find('(');
    if (open == std::string_view::npos) bad(id, "unbalanced parentheses");
    const auto head = id.substr(0, open);
    const auto inner = id.substr(open + 1, id.size() - open - 2);
    auto args = split_args(id, inner);
    if (head == "sum") {
      args = regroup(inner, args);
      std::vector<GeneratorSet> parts;
      for (auto a : args) parts.push_back(build_impl(a));
      return direct_sum(parts);
    }
    if (head == "conj") {
      if (args.size() < 2) bad(id, "conj takes an id and a seed");
      const auto cut = inner.size() - args.back().size() - 1;
      return conjugate(build_impl(inner.substr(0, cut)), parse_uint(id, args.back()));
    }
    bad(id, "unknown combinator");
  }

  const auto parts = split_colon(id);
  const auto head = parts[0];
  if (head == "cyclic") {
    if (parts.size() < 2 || parts.size() > 4) bad(id, "expected cyclic:K[:N[:A,B]]");
    const auto k = parse_uint(id, parts[1]);
    const Index n = parts.size() >= 3 ? static_cast<Index>(parse_uint(id, parts[2])) : 2;
    Index a = 0, b = 1;
    if (parts.size() == 4) {
      const auto ab = split_args(id, parts[3]);
      if (ab.size() != 2) bad(id, "plane is given as A,B");
      a = static_cast<Index>(parse_uint(id, ab[0])) - 1;
      b = static_cast<Index>(parse_uint(id, ab[1])) - 1;
    }
    return cyclic(id, k, n, a, b);
  }
  if (head == "axis_rotation" && parts.size() == 2) return axis_rotation(id, parse_uint(id, parts[1]));
  if (head == "ps_product" && parts.size() == 2) {
    std::vector<GeneratorSet> blocks;
    for (auto k : split_args(id, parts[1])) blocks.push_back(cyclic(id, parse_uint(id, k), 2, 0, 1));
    return direct_sum(blocks);
  }
  if ((head == "trivial" || head == "reflection") && parts.size() <= 2) {
    const Index n = parts.size() == 2 ? static_cast<Index>(parse_uint(id, parts[1])) : (head == "trivial" ? 1 : 2);
    if (n < 1) bad(id, "dimension must be at least 1");
    if (head == "trivial") return exact_set(n, {});
    Matrix<QSqrt5> m = numeric::identity<QSqrt5>(n);
    m(0, 0) = QSqrt5(-1);
    return exact_set(n, {m});
  }
  if (head.starts_with("sl2")) bad(id, "sl2 groups are abstract; use build_abstract");
  bad(id, "unknown id");
}

bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

}  // namespace

std::vector<Quat> hurwitz_units() {
  std::vector<Quat> out;
  for (int k = 0; k < 4; ++k) {
    for (int s : {1, -1}) {
      Quat q;
      quaternion::detail::component(q, k) = QSqrt5(s);
      out.push_back(q);
    }
  }
  for (int mask = 0; mask < 16; ++mask) {
    Quat q;
    for (int k = 0; k < 4; ++k) quaternion::detail::component(q, k) = (mask >> k & 1) ? -half() : half();
    out.push_back(q);
  }
  return out;
}

std::vector<Quat> icosians() {
  std::vector<Quat> out = hurwitz_units();
  const std::array<QSqrt5, 4> base{QSqrt5(0), half(), tau_inv() * half(), tau() * half()};
  std::array<int, 4> perm{0, 1, 2, 3};
  do {
    int inversions = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) inversions += perm[i] > perm[j];
    if (inversions % 2 != 0) continue;
    for (int mask = 0; mask < 8; ++mask) {
      Quat q;
      for (int k = 0; k < 4; ++k) {
        QSqrt5 c = base[static_cast<std::size_t>(k)];
        if (k > 0 && (mask >> (k - 1) & 1)) c = -c;
        quaternion::detail::component(q, perm[static_cast<std::size_t>(k)]) = c;
      }
      out.push_back(q);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

std::vector<Quat> icosian_generators() { return icosian_generators_impl(); }

GeneratorSet build(std::string_view id) {
  GeneratorSet out = build_impl(id);
  if (out.dimension > kMaxDimension) bad(id, "total dimension exceeds 12");
  return out;
}

GeneratorSet build_in_dimension(std::string_view id, Index n) {
  GeneratorSet base = build(id);
  if (n == base.dimension) return base;
  if (n < base.dimension) bad(id, "requested dimension is below the natural dimension");
  const Index pad = n - base.dimension;
  if (n > kMaxDimension) bad(id, "total dimension exceeds 12");
  return direct_sum({base, exact_set(pad, {})});
}

group::FiniteGroup sl2(std::uint64_t p) {
  if (!is_prime(p) || p > 13) {
    throw Error(ErrorCode::BadParameter, "sl2 needs a prime p <= 13, got " + std::to_string(p));
  }
  using M = std::array<std::uint32_t, 4>;  // (a b; c d)
  const auto q = static_cast<std::uint32_t>(p);
  const auto mul = [q](const M& x, const M& y) {
    return M{(x[0] * y[0] + x[1] * y[2]) % q, (x[0] * y[1] + x[1] * y[3]) % q, (x[2] * y[0] + x[3] * y[2]) % q,
             (x[2] * y[1] + x[3] * y[3]) % q};
  };
  const auto inv = [q](const M& x) { return M{x[3], (q - x[1]) % q, (q - x[2]) % q, x[0]}; };
  const auto hash = [q](const M& x) { return static_cast<std::size_t>(((x[0] * q + x[1]) * q + x[2]) * q + x[3]); };
  // The transvection (1 1; 0 1) and (0 -1; 1 0) generate SL2(p).
  const std::vector<M> gens{M{1, 1, 0, 1}, M{0, q - 1, 1, 0}};
  return group::close(M{1, 0, 0, 1}, gens, mul, inv, hash, std::equal_to<M>{}, group::kDefaultCap).group;
}

std::optional<group::FiniteGroup> build_abstract(std::string_view id) {
  std::string_view rest;
  if (id.starts_with("sl2:") || id.starts_with("sl2_")) {
    rest = id.substr(4);
  } else {
    return std::nullopt;
  }
  return sl2(parse_uint(id, rest));
}

const std::vector<Fingerprint>& list() {
  static const std::vector<Fingerprint> table{
      {"poincare", 120, true, true, {{4, false, false}, {5, true, false}, {6, true, true}}},
      {"binary_I", 120, true, true, {{4, false, false}, {5, true, false}, {6, true, true}}},
      {"binary_T", 24, false, true, {{4, false, false}, {5, false, false}}},
      {"binary_O", 48, false, true, {{4, false, false}}},
      {"icosian_product", 7200, true, false, {{4, true, true}}},
      {"klein_four", 4, false, false, {{4, true, true}}},
      {"cyclic:2", 2, false, true, {{2, true, true}, {3, true, true}}},
      {"cyclic:3", 3, false, true, {{2, true, true}}},
      {"cyclic:4", 4, false, true, {{2, true, true}}},
      {"cyclic:5", 5, false, true, {{2, true, true}}},
      {"axis_rotation:3", 3, false, true, {{3, true, true}}},
      {"axis_rotation:5", 5, false, true, {{3, true, true}}},
      {"ps_product:2,4", 8, false, false, {{4, true, true}}},
      {"ps_product:4,4", 16, false, false, {{4, true, true}}},
      {"ps_product:3,5", 15, false, true, {{4, true, true}}},
      {"trivial:3", 1, true, true, {{3, true, true}}},
      {"reflection:2", 2, false, true, {{2, false, false}}},
      {"sum(poincare,cyclic:3)", 360, false, false, {{6, true, true}}},
      {"sum(poincare,axis_rotation:3)", 360, false, false, {{7, true, true}}},
      {"sum(poincare,poincare)", 14400, true, false, {{8, true, true}}},
      {"sl2:3", 24, false, true, {}},
      {"sl2:5", 120, true, true, {}},
      {"sl2:7", 336, true, true, {}},
      {"sl2:11", 1320, true, true, {}},
      {"sl2:13", 2184, true, true, {}},
  };
  return table;
}

const Fingerprint* find_fingerprint(std::string_view id) {
  for (const auto& f : list())
    if (f.id == id) return &f;
  return nullptr;
}

}  // namespace orbi::catalog
