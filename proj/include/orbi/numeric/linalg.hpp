#pragma once

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

#include "orbi/error.hpp"
#include "orbi/numeric/scalar.hpp"

namespace orbi::numeric {

using Index = Eigen::Index;

template <Scalar S>
using Matrix = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
template <Scalar S>
using Vector = Eigen::Matrix<S, Eigen::Dynamic, 1>;

template <Scalar S>
Matrix<S> identity(Index n) {
  Matrix<S> m(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) m(i, j) = S(i == j ? 1 : 0);
  return m;
}

template <Scalar S>
Matrix<S> zeros(Index rows, Index cols) {
  Matrix<S> m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = S(0);
  return m;
}

template <Scalar S>
Vector<S> unit_vector(Index n, Index k) {
  Vector<S> v(n);
  for (Index i = 0; i < n; ++i) v(i) = S(i == k ? 1 : 0);
  return v;
}

/// Coefficient-wise product evaluated without Eigen's blocked kernels; exact
/// scalars are heap objects and the matrices here are at most 12x12.
template <Scalar S, class A, class B>
Matrix<S> mul(const A& a, const B& b) {
  Matrix<S> out(a.rows(), b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < b.cols(); ++j) {
      S acc(0);
      for (Index k = 0; k < a.cols(); ++k) {
        if (FieldTraits<S>::is_zero(a(i, k)) || FieldTraits<S>::is_zero(b(k, j))) continue;
        acc += a(i, k) * b(k, j);
      }
      out(i, j) = std::move(acc);
    }
  }
  return out;
}

template <Scalar S>
Vector<S> apply(const Matrix<S>& m, const Vector<S>& v) {
  Vector<S> out(m.rows());
  for (Index i = 0; i < m.rows(); ++i) {
    S acc(0);
    for (Index k = 0; k < m.cols(); ++k) {
      if (FieldTraits<S>::is_zero(v(k))) continue;
      acc += m(i, k) * v(k);
    }
    out(i) = std::move(acc);
  }
  return out;
}

template <Scalar S, class A, class B>
S dot(const A& a, const B& b) {
  S acc(0);
  for (Index i = 0; i < a.size(); ++i) acc += a(i) * b(i);
  return acc;
}

template <Scalar S, class A, class B>
bool equal(const A& a, const B& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      if (!FieldTraits<S>::equal(a(i, j), b(i, j))) return false;
  return true;
}

template <Scalar S, class A>
bool is_zero(const A& a) {
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      if (!FieldTraits<S>::is_zero(a(i, j))) return false;
  return true;
}

template <Scalar S>
std::size_t hash_matrix(const Matrix<S>& m) {
  std::size_t h = static_cast<std::size_t>(m.rows() * 131 + m.cols());
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j)
      h ^= FieldTraits<S>::hash(m(i, j)) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

template <Scalar S>
bool is_orthogonal(const Matrix<S>& m) {
  if (m.rows() != m.cols()) return false;
  return equal<S>(mul<S>(m.transpose(), m), identity<S>(m.rows()));
}

template <Scalar S, class A>
Eigen::MatrixXd to_double(const A& a) {
  Eigen::MatrixXd out(a.rows(), a.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j) out(i, j) = FieldTraits<S>::to_double(a(i, j));
  return out;
}

template <Scalar To, Scalar From>
Matrix<To> convert_matrix(const Matrix<From>& m) {
  Matrix<To> out(m.rows(), m.cols());
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) out(i, j) = convert<To>(m(i, j));
  return out;
}

/// Block-diagonal embedding of `block` at coordinate offset `at` in R^n.
template <Scalar S>
Matrix<S> embed(const Matrix<S>& block, Index n, Index at) {
  Matrix<S> m = identity<S>(n);
  m.block(at, at, block.rows(), block.cols()) = block;
  return m;
}

// ---------------------------------------------------------------------------
// Row reduction.

template <Scalar S>
struct RowEchelon {
  Matrix<S> rows;              ///< nonzero rows only, reduced
  std::vector<Index> pivots;   ///< pivot column of each row
};

/// Reduced row echelon form. Exact backends pivot on the first nonzero entry.
/// float64 uses partial pivoting; a pivot below eps/10 (relative to the
/// matrix max-norm, floored at 1) counts as zero, and one in [eps/10, 10 eps]
/// raises AmbiguousRank.
template <Scalar S>
RowEchelon<S> rref(Matrix<S> m) {
  using T = FieldTraits<S>;
  const Index rows = m.rows();
  const Index cols = m.cols();
  double zero_below = 0.0;
  double sure_above = 0.0;
  if constexpr (!T::exact) {
    double scale = 1.0;
    for (Index i = 0; i < rows; ++i)
      for (Index j = 0; j < cols; ++j) scale = std::max(scale, std::abs(m(i, j)));
    zero_below = scale * tolerance() / 10.0;
    sure_above = scale * tolerance() * 10.0;
  }
  std::vector<Index> pivots;
  Index r = 0;
  for (Index c = 0; c < cols && r < rows; ++c) {
    Index best = -1;
    if constexpr (T::exact) {
      for (Index i = r; i < rows; ++i) {
        if (!m(i, c).is_zero()) {
          best = i;
          break;
        }
      }
    } else {
      double mag = 0.0;
      for (Index i = r; i < rows; ++i) {
        if (std::abs(m(i, c)) > mag) {
          mag = std::abs(m(i, c));
          best = i;
        }
      }
      if (mag < zero_below) {
        for (Index i = r; i < rows; ++i) m(i, c) = 0.0;
        best = -1;
      } else if (mag <= sure_above) {
        throw Error(ErrorCode::AmbiguousRank,
                    "pivot magnitude " + T::str(mag) + " is within a decade of the tolerance");
      }
    }
    if (best < 0) continue;
    if (best != r) m.row(best).swap(m.row(r));
    const S inv = S(1) / m(r, c);
    for (Index j = c; j < cols; ++j) m(r, j) = m(r, j) * inv;
    m(r, c) = S(1);
    for (Index i = 0; i < rows; ++i) {
      if (i == r || T::is_zero(m(i, c))) {
        if constexpr (!T::exact) {
          if (i != r) m(i, c) = 0.0;
        }
        continue;
      }
      const S factor = m(i, c);
      for (Index j = c; j < cols; ++j) {
        if (!T::is_zero(m(r, j))) m(i, j) -= factor * m(r, j);
      }
      m(i, c) = S(0);
    }
    pivots.push_back(c);
    ++r;
  }
  if constexpr (!T::exact) {
    for (Index i = 0; i < r; ++i)
      for (Index j = 0; j < cols; ++j)
        if (std::abs(m(i, j)) < zero_below) m(i, j) = 0.0;
  }
  RowEchelon<S> out;
  out.rows = m.topRows(r);
  out.pivots = std::move(pivots);
  return out;
}

template <Scalar S>
Index rank(const Matrix<S>& m) {
  return static_cast<Index>(rref<S>(m).pivots.size());
}

/// Determinant by Gaussian elimination.
template <Scalar S>
S determinant(Matrix<S> m) {
  using T = FieldTraits<S>;
  if (m.rows() != m.cols()) throw Error(ErrorCode::InvalidInput, "determinant of non-square matrix");
  const Index n = m.rows();
  S det(1);
  for (Index c = 0; c < n; ++c) {
    Index best = -1;
    if constexpr (T::exact) {
      for (Index i = c; i < n; ++i)
        if (!m(i, c).is_zero()) { best = i; break; }
    } else {
      double mag = 0.0;
      for (Index i = c; i < n; ++i)
        if (std::abs(m(i, c)) > mag) { mag = std::abs(m(i, c)); best = i; }
      if (mag == 0.0) best = -1;
    }
    if (best < 0) return S(0);
    if (best != c) {
      m.row(best).swap(m.row(c));
      det = -det;
    }
    det *= m(c, c);
    const S inv = S(1) / m(c, c);
    for (Index i = c + 1; i < n; ++i) {
      if (T::is_zero(m(i, c))) continue;
      const S factor = m(i, c) * inv;
      for (Index j = c; j < n; ++j) m(i, j) -= factor * m(c, j);
    }
  }
  return det;
}

// ---------------------------------------------------------------------------
// Subspace

/// A linear subspace of R^n held as the unique reduced row echelon basis.
template <Scalar S>
class Subspace {
 public:
  Subspace() = default;

  static Subspace zero(Index n) { return Subspace(n, Matrix<S>(0, n), {}); }
  static Subspace whole(Index n) { return span(identity<S>(n)); }

  /// Span of the rows of `vectors`.
  static Subspace span(const Matrix<S>& vectors) {
    auto ech = rref<S>(vectors);
    return Subspace(vectors.cols(), std::move(ech.rows), std::move(ech.pivots));
  }
  static Subspace span(const std::vector<Vector<S>>& vectors, Index n) {
    Matrix<S> m(static_cast<Index>(vectors.size()), n);
    for (std::size_t i = 0; i < vectors.size(); ++i) m.row(static_cast<Index>(i)) = vectors[i].transpose();
    return span(m);
  }

  Index ambient() const noexcept { return ambient_; }
  Index dim() const noexcept { return basis_.rows(); }
  Index codim() const noexcept { return ambient_ - dim(); }
  const Matrix<S>& basis() const noexcept { return basis_; }
  const std::vector<Index>& pivots() const noexcept { return pivots_; }
  Vector<S> basis_vector(Index i) const { return basis_.row(i).transpose(); }

  /// Residual of v after elimination against the echelon basis.
  Vector<S> reduce(Vector<S> v) const {
    for (Index i = 0; i < dim(); ++i) {
      const S c = v(pivots_[static_cast<std::size_t>(i)]);
      if (FieldTraits<S>::is_zero(c)) continue;
      for (Index j = 0; j < ambient_; ++j) {
        if (!FieldTraits<S>::is_zero(basis_(i, j))) v(j) -= c * basis_(i, j);
      }
    }
    return v;
  }

  bool contains(const Vector<S>& v) const { return is_zero<S>(reduce(v)); }

  bool contains(const Subspace& other) const {
    if (other.dim() > dim()) return false;
    for (Index i = 0; i < other.dim(); ++i)
      if (!contains(other.basis_vector(i))) return false;
    return true;
  }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.pivots_ == b.pivots_ && equal<S>(a.basis_, b.basis_);
  }
  friend bool operator!=(const Subspace& a, const Subspace& b) { return !(a == b); }

  std::size_t hash() const { return hash_matrix<S>(basis_) ^ (static_cast<std::size_t>(ambient_) << 48); }

  struct Hash {
    std::size_t operator()(const Subspace& s) const { return s.hash(); }
  };

 private:
  Subspace(Index n, Matrix<S> basis, std::vector<Index> pivots)
      : ambient_(n), basis_(std::move(basis)), pivots_(std::move(pivots)) {}

  Index ambient_ = 0;
  Matrix<S> basis_;
  std::vector<Index> pivots_;
};

/// Null space of a (possibly rectangular) matrix: {x : M x = 0}.
template <Scalar S>
Subspace<S> null_space(const Matrix<S>& m) {
  const Index n = m.cols();
  const auto ech = rref<S>(m);
  std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
  for (Index p : ech.pivots) is_pivot[static_cast<std::size_t>(p)] = true;
  std::vector<Vector<S>> vectors;
  for (Index f = 0; f < n; ++f) {
    if (is_pivot[static_cast<std::size_t>(f)]) continue;
    Vector<S> x = Vector<S>::Constant(n, S(0));
    x(f) = S(1);
    for (std::size_t i = 0; i < ech.pivots.size(); ++i) {
      x(ech.pivots[i]) = -ech.rows(static_cast<Index>(i), f);
    }
    vectors.push_back(std::move(x));
  }
  return Subspace<S>::span(vectors, n);
}

/// {x : M x = 0} for a square matrix M.
template <Scalar S>
Subspace<S> kernel(const Matrix<S>& m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::InvalidInput, "kernel of non-square matrix");
  return null_space<S>(m);
}

template <Scalar S>
Subspace<S> orthogonal_complement(const Subspace<S>& s) {
  if (s.dim() == 0) return Subspace<S>::whole(s.ambient());
  return null_space<S>(s.basis());
}

template <Scalar S>
Matrix<S> stack(const Matrix<S>& a, const Matrix<S>& b) {
  Matrix<S> m(a.rows() + b.rows(), a.cols());
  if (a.rows() > 0) m.topRows(a.rows()) = a;
  if (b.rows() > 0) m.bottomRows(b.rows()) = b;
  return m;
}

template <Scalar S>
Subspace<S> sum(const Subspace<S>& a, const Subspace<S>& b) {
  if (a.ambient() != b.ambient()) throw Error(ErrorCode::InvalidInput, "ambient dimensions differ");
  return Subspace<S>::span(stack<S>(a.basis(), b.basis()));
}

template <Scalar S>
Subspace<S> intersect(const Subspace<S>& a, const Subspace<S>& b) {
  if (a.ambient() != b.ambient()) throw Error(ErrorCode::InvalidInput, "ambient dimensions differ");
  const Subspace<S> ca = orthogonal_complement(a);
  const Subspace<S> cb = orthogonal_complement(b);
  const Matrix<S> normals = stack<S>(ca.basis(), cb.basis());
  if (normals.rows() == 0) return Subspace<S>::whole(a.ambient());
  return null_space<S>(normals);
}

/// Every basis vector of `a` is orthogonal to every basis vector of `b`.
template <Scalar S>
bool orthogonal(const Subspace<S>& a, const Subspace<S>& b) {
  if (a.dim() == 0 || b.dim() == 0) return true;
  return is_zero<S>(mul<S>(a.basis(), b.basis().transpose()));
}

/// Image of a subspace under a linear map.
template <Scalar S>
Subspace<S> image(const Matrix<S>& g, const Subspace<S>& s) {
  if (s.dim() == 0) return s;
  return Subspace<S>::span(Matrix<S>(mul<S>(s.basis(), g.transpose())));
}

/// Orthonormal basis rows, computed in float64.
template <Scalar S>
Eigen::MatrixXd orthonormal_basis_float(const Subspace<S>& s);

/// Smallest angle between nonzero vectors of the two subspaces (the first
/// principal angle), in radians. Always computed in float64.
template <Scalar S>
double principal_angle(const Subspace<S>& a, const Subspace<S>& b);

/// Gram-Schmidt with field square roots. nullopt when a norm has no root in
/// the field.
template <Scalar S>
std::optional<Matrix<S>> orthonormal_basis_exact(const Subspace<S>& s) {
  std::vector<Vector<S>> done;
  for (Index i = 0; i < s.dim(); ++i) {
    Vector<S> v = s.basis_vector(i);
    for (const auto& q : done) {
      const S c = dot<S>(q, v);
      if (!FieldTraits<S>::is_zero(c)) v -= q * c;
    }
    const auto norm = FieldTraits<S>::sqrt(dot<S>(v, v));
    if (!norm) return std::nullopt;
    const S inv = S(1) / *norm;
    done.push_back(v * inv);
  }
  Matrix<S> out(s.dim(), s.ambient());
  for (std::size_t i = 0; i < done.size(); ++i) out.row(static_cast<Index>(i)) = done[i].transpose();
  return out;
}

/// Dimension of the smallest affine subspace containing all points.
template <Scalar S>
Index affine_span_dim(const std::vector<Vector<S>>& points) {
  if (points.empty()) throw Error(ErrorCode::InvalidInput, "affine span of no points");
  const Index n = points.front().size();
  Matrix<S> diffs(static_cast<Index>(points.size()) - 1, n);
  for (std::size_t i = 1; i < points.size(); ++i) {
    diffs.row(static_cast<Index>(i) - 1) = (points[i] - points.front()).transpose();
  }
  if (diffs.rows() == 0) return 0;
  return rank<S>(diffs);
}

extern template double principal_angle<Rational>(const Subspace<Rational>&, const Subspace<Rational>&);
extern template double principal_angle<QSqrt5>(const Subspace<QSqrt5>&, const Subspace<QSqrt5>&);
extern template double principal_angle<double>(const Subspace<double>&, const Subspace<double>&);
extern template Eigen::MatrixXd orthonormal_basis_float<Rational>(const Subspace<Rational>&);
extern template Eigen::MatrixXd orthonormal_basis_float<QSqrt5>(const Subspace<QSqrt5>&);
extern template Eigen::MatrixXd orthonormal_basis_float<double>(const Subspace<double>&);

}  // namespace orbi::numeric
