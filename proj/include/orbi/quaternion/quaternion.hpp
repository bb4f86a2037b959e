#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "orbi/group/matrix_group.hpp"

namespace orbi::quaternion {

using numeric::FieldTraits;
using numeric::Index;
using numeric::Matrix;
using numeric::Scalar;
using numeric::Vector;

/// w + x i + y j + z k, identified with (w, x, y, z) in R^4.
template <Scalar S>
struct Quaternion {
  S w{0}, x{0}, y{0}, z{0};

  static Quaternion one() { return {S(1), S(0), S(0), S(0)}; }
  static Quaternion from_vector(const Vector<S>& v) { return {v(0), v(1), v(2), v(3)}; }

  const S& real() const noexcept { return w; }
  S norm2() const { return w * w + x * x + y * y + z * z; }
  Quaternion conj() const { return {w, -x, -y, -z}; }
  Quaternion operator-() const { return {-w, -x, -y, -z}; }

  Vector<S> to_vector() const {
    Vector<S> v(4);
    v << w, x, y, z;
    return v;
  }

  friend Quaternion operator*(const Quaternion& a, const Quaternion& b) {
    return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z, a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
            a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x, a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
  }
  friend bool operator==(const Quaternion& a, const Quaternion& b) {
    using T = FieldTraits<S>;
    return T::equal(a.w, b.w) && T::equal(a.x, b.x) && T::equal(a.y, b.y) && T::equal(a.z, b.z);
  }
  friend bool operator!=(const Quaternion& a, const Quaternion& b) { return !(a == b); }

  std::size_t hash() const {
    using T = FieldTraits<S>;
    std::size_t h = T::hash(w);
    for (const S* c : {&x, &y, &z}) h ^= T::hash(*c) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }

  std::string str() const {
    using T = FieldTraits<S>;
    return "(" + T::str(w) + ", " + T::str(x) + ", " + T::str(y) + ", " + T::str(z) + ")";
  }
};

/// Matrix of q -> a q.
template <Scalar S>
Matrix<S> left_matrix(const Quaternion<S>& a) {
  Matrix<S> m(4, 4);
  m << a.w, -a.x, -a.y, -a.z,  //
      a.x, a.w, -a.z, a.y,     //
      a.y, a.z, a.w, -a.x,     //
      a.z, -a.y, a.x, a.w;
  return m;
}

/// Matrix of q -> q a.
template <Scalar S>
Matrix<S> right_matrix(const Quaternion<S>& a) {
  Matrix<S> m(4, 4);
  m << a.w, -a.x, -a.y, -a.z,  //
      a.x, a.w, a.z, -a.y,     //
      a.y, -a.z, a.w, a.x,     //
      a.z, a.y, -a.x, a.w;
  return m;
}

/// phi(l, r): q -> l q r^-1 for unit l, r.
template <Scalar S>
Matrix<S> phi(const Quaternion<S>& l, const Quaternion<S>& r) {
  return numeric::mul<S>(left_matrix(l), right_matrix(r.conj()));
}

namespace detail {

template <Scalar S>
Quaternion<S> basis_unit(int k) {
  Quaternion<S> q;
  (k == 0 ? q.w : k == 1 ? q.x : k == 2 ? q.y : q.z) = S(1);
  return q;
}

template <Scalar S>
const S& component(const Quaternion<S>& q, int k) {
  return k == 0 ? q.w : k == 1 ? q.x : k == 2 ? q.y : q.z;
}

template <Scalar S>
S& component(Quaternion<S>& q, int k) {
  return k == 0 ? q.w : k == 1 ? q.x : k == 2 ? q.y : q.z;
}

template <Scalar S>
void require_special_orthogonal(const Matrix<S>& g) {
  if (g.rows() != 4 || g.cols() != 4 || !numeric::is_orthogonal<S>(g) ||
      FieldTraits<S>::sign(numeric::determinant<S>(g)) <= 0) {
    throw Error(ErrorCode::NotSpecialOrthogonal, "lift needs an element of SO(4)");
  }
}

}  // namespace detail

/// One preimage (l, r) of g under phi; the other is (-l, -r). The coefficient
/// matrix A_ij = l_i r_j is read off as <E_ij, g> / 4, where E_ij is the
/// matrix of q -> e_i q conj(e_j); these sixteen matrices are orthogonal with
/// squared norm 4 in the trace inner product.
template <Scalar S>
std::pair<Quaternion<S>, Quaternion<S>> lift_so4(const Matrix<S>& g) {
  using T = FieldTraits<S>;
  detail::require_special_orthogonal(g);
  S a[4][4];
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      const Matrix<S> e = phi(detail::basis_unit<S>(i), detail::basis_unit<S>(j));
      S acc(0);
      for (Index p = 0; p < 4; ++p)
        for (Index q = 0; q < 4; ++q)
          if (!T::is_zero(e(p, q))) acc += e(p, q) * g(p, q);
      a[i][j] = acc / S(4);
    }
  }
  // Pivot on the row of largest squared norm; any nonzero row works exactly,
  // the largest keeps the float path well conditioned.
  int row = 0;
  S best(0);
  for (int i = 0; i < 4; ++i) {
    S n2(0);
    for (int j = 0; j < 4; ++j) n2 += a[i][j] * a[i][j];
    if (T::to_double(n2) > T::to_double(best)) {
      best = n2;
      row = i;
    }
  }
  const auto li = T::sqrt(best);
  if (!li) throw Error(ErrorCode::NoFieldSqrt, "normalizing square root leaves the field");
  Quaternion<S> r;
  for (int j = 0; j < 4; ++j) detail::component(r, j) = a[row][j] / *li;
  Quaternion<S> l;
  for (int i = 0; i < 4; ++i) {
    S acc(0);
    for (int j = 0; j < 4; ++j) acc += a[i][j] * detail::component(r, j);
    detail::component(l, i) = acc;
  }
  if (!numeric::equal<S>(phi(l, r), g)) throw Error(ErrorCode::InternalError, "lift does not reproduce the matrix");
  return {l, r};
}

// ---------------------------------------------------------------------------
// Finite subgroups of S^3

enum class BinaryKind { Cyclic, Dicyclic, Tetrahedral, Octahedral, Icosahedral };

/// Cn(n), Dn(n) (order 4n), T, O, I.
struct BinaryClass {
  BinaryKind kind = BinaryKind::Cyclic;
  std::uint64_t n = 1;

  std::uint64_t order() const {
    switch (kind) {
      case BinaryKind::Cyclic: return n;
      case BinaryKind::Dicyclic: return 4 * n;
      case BinaryKind::Tetrahedral: return 24;
      case BinaryKind::Octahedral: return 48;
      case BinaryKind::Icosahedral: return 120;
    }
    return 0;
  }
  std::string str() const {
    switch (kind) {
      case BinaryKind::Cyclic: return "C" + std::to_string(n);
      case BinaryKind::Dicyclic: return "D" + std::to_string(n);
      case BinaryKind::Tetrahedral: return "T";
      case BinaryKind::Octahedral: return "O";
      case BinaryKind::Icosahedral: return "I";
    }
    return "?";
  }
  friend bool operator==(const BinaryClass&, const BinaryClass&) = default;
};

template <Scalar S>
using QuaternionSet = std::vector<Quaternion<S>>;

template <Scalar S>
group::Closure<Quaternion<S>> close_quaternions(const QuaternionSet<S>& generators, std::size_t cap = group::kDefaultCap) {
  return group::close(
      Quaternion<S>::one(), generators, [](const Quaternion<S>& a, const Quaternion<S>& b) { return a * b; },
      [](const Quaternion<S>& a) { return a.conj(); }, [](const Quaternion<S>& a) { return a.hash(); },
      [](const Quaternion<S>& a, const Quaternion<S>& b) { return a == b; }, cap);
}

/// Classification of a finite subgroup of S^3 given as an element set.
template <Scalar S>
BinaryClass classify_binary(const QuaternionSet<S>& h) {
  group::Closure<Quaternion<S>> closure;
  try {
    closure = close_quaternions(h, h.size() + 1);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::CapExceeded) throw;
    throw Error(ErrorCode::Unclassifiable, "element set is not closed under products");
  }
  const auto& g = closure.group;
  const std::uint64_t n = g.order();
  if (n != h.size()) throw Error(ErrorCode::Unclassifiable, "element set is not closed under products");
  std::uint64_t max_order = 1;
  for (group::Element a = 0; a < n; ++a) max_order = std::max(max_order, group::element_order(g, a));
  if (max_order == n) return {BinaryKind::Cyclic, n};
  if (n % 4 == 0 && max_order == n / 2) {
    // A noncyclic subgroup of S^3 with a cyclic subgroup of index 2.
    return {BinaryKind::Dicyclic, n / 4};
  }
  const std::uint64_t derived = group::derived_subgroup(g).order();
  if (n == 24 && derived == 8 && max_order == 6) return {BinaryKind::Tetrahedral, 0};
  if (n == 48 && derived == 24 && max_order == 8) return {BinaryKind::Octahedral, 0};
  if (n == 120 && derived == 120) return {BinaryKind::Icosahedral, 0};
  throw Error(ErrorCode::Unclassifiable, "order " + std::to_string(n) + " fits no finite subgroup of S^3");
}

/// phi(l, r) is a rotation in a single plane iff Re(l) = Re(r) is not +-1.
template <Scalar S>
bool is_pseudoreflection_pair(const Quaternion<S>& l, const Quaternion<S>& r) {
  using T = FieldTraits<S>;
  if (!T::equal(l.w, r.w)) return false;
  return !T::equal(l.w, S(1)) && !T::equal(l.w, S(-1));
}

/// (cosine, count) pairs, cosines distinct and decreasing.
template <Scalar S>
std::vector<std::pair<S, std::size_t>> orbit_angle_spectrum(const QuaternionSet<S>& h) {
  using T = FieldTraits<S>;
  std::vector<S> re;
  re.reserve(h.size());
  for (const auto& q : h) re.push_back(q.w);
  std::sort(re.begin(), re.end(), [](const S& a, const S& b) { return T::sign(S(a - b)) > 0; });
  std::vector<std::pair<S, std::size_t>> out;
  for (const auto& c : re) {
    if (!out.empty() && T::equal(out.back().first, c)) {
      ++out.back().second;
    } else {
      out.emplace_back(c, 1);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Lifting subgroups of SO(4)

template <Scalar S>
struct SO4LiftData {
  QuaternionSet<S> left, right;                ///< L, R as element sets
  QuaternionSet<S> left_kernel, right_kernel;  ///< L_K, R_K
  std::vector<std::pair<Quaternion<S>, Quaternion<S>>> pairing;  ///< full preimage of the group
  BinaryClass left_class, right_class, left_kernel_class, right_kernel_class;

  /// |L| |R_K| / 2 and |R| |L_K| / 2.
  std::pair<std::uint64_t, std::uint64_t> order_formula() const {
    return {left.size() * right_kernel.size() / 2, right.size() * left_kernel.size() / 2};
  }
};

namespace detail {

template <Scalar S>
void insert_unique(QuaternionSet<S>& set, std::unordered_multimap<std::size_t, std::size_t>& index,
                   const Quaternion<S>& q) {
  const std::size_t h = q.hash();
  auto [lo, hi] = index.equal_range(h);
  for (auto it = lo; it != hi; ++it)
    if (set[it->second] == q) return;
  index.emplace(h, set.size());
  set.push_back(q);
}

}  // namespace detail

template <Scalar S>
SO4LiftData<S> lift_group(const group::MatrixGroup<S>& g) {
  using T = FieldTraits<S>;
  if (g.dimension() != 4) throw Error(ErrorCode::NotSpecialOrthogonal, "lift needs a subgroup of SO(4)");
  SO4LiftData<S> out;
  std::unordered_multimap<std::size_t, std::size_t> li, ri, lki, rki;
  for (const auto& m : g.elements()) {
    const auto [l, r] = lift_so4<S>(m);
    out.pairing.emplace_back(l, r);
    out.pairing.emplace_back(-l, -r);
    for (const auto& q : {l, -l}) detail::insert_unique(out.left, li, q);
    for (const auto& q : {r, -r}) detail::insert_unique(out.right, ri, q);
    // phi(l, 1) in the group means (l, 1) or (-l, -1) is a preimage.
    if (T::equal(r.w, S(1))) detail::insert_unique(out.left_kernel, lki, l);
    if (T::equal(r.w, S(-1))) detail::insert_unique(out.left_kernel, lki, -l);
    if (T::equal(l.w, S(1))) detail::insert_unique(out.right_kernel, rki, r);
    if (T::equal(l.w, S(-1))) detail::insert_unique(out.right_kernel, rki, -r);
  }
  out.left_class = classify_binary(out.left);
  out.right_class = classify_binary(out.right);
  out.left_kernel_class = classify_binary(out.left_kernel);
  out.right_kernel_class = classify_binary(out.right_kernel);
  return out;
}

}  // namespace orbi::quaternion
