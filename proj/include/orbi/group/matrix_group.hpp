#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "orbi/group/finite_group.hpp"
#include "orbi/numeric/linalg.hpp"

namespace orbi::group {

using numeric::Index;
using numeric::Matrix;
using numeric::Subspace;
using numeric::Vector;

/// A fully enumerated group of orthogonal n x n matrices. Element 0 is the
/// identity; indices follow BFS over the generators.
template <numeric::Scalar S>
class MatrixGroup {
 public:
  using Traits = numeric::FieldTraits<S>;

  static MatrixGroup generate(const std::vector<Matrix<S>>& generators, Index n, std::size_t cap = kDefaultCap) {
    for (const auto& g : generators) {
      if (g.rows() != n || g.cols() != n) throw Error(ErrorCode::InvalidInput, "generator has the wrong shape");
      if (!numeric::is_orthogonal<S>(g)) throw Error(ErrorCode::NotOrthogonal, "generator is not orthogonal");
    }
    if (cap < 1) throw Error(ErrorCode::InvalidInput, "cap must be at least 1");
    auto closure = close(
        numeric::identity<S>(n), generators, [](const Matrix<S>& a, const Matrix<S>& b) { return numeric::mul<S>(a, b); },
        [](const Matrix<S>& a) { return Matrix<S>(a.transpose()); },
        [](const Matrix<S>& a) { return numeric::hash_matrix<S>(a); },
        [](const Matrix<S>& a, const Matrix<S>& b) { return numeric::equal<S>(a, b); }, cap);
    MatrixGroup out;
    out.n_ = n;
    out.generators_ = generators;
    out.elements_ = std::move(closure.elements);
    out.index_ = std::move(closure.index);
    out.group_ = std::move(closure.group);
    out.cache_ = std::make_shared<Cache>();
    return out;
  }

  Index dimension() const noexcept { return n_; }
  std::size_t order() const noexcept { return elements_.size(); }
  const FiniteGroup& abstract() const noexcept { return group_; }
  const Matrix<S>& element(Element a) const { return elements_[a]; }
  const std::vector<Matrix<S>>& elements() const noexcept { return elements_; }
  const std::vector<Matrix<S>>& generator_matrices() const noexcept { return generators_; }

  std::optional<Element> find(const Matrix<S>& m) const {
    auto [lo, hi] = index_.equal_range(numeric::hash_matrix<S>(m));
    for (auto it = lo; it != hi; ++it)
      if (numeric::equal<S>(elements_[it->second], m)) return it->second;
    return std::nullopt;
  }

  /// Fix(g) = ker(g - I); all fixed spaces are computed on first use.
  const Subspace<S>& fixed_space(Element a) const { return fixed_spaces()[a]; }

  const std::vector<Subspace<S>>& fixed_spaces() const {
    std::call_once(cache_->once, [this] {
      cache_->fix.reserve(elements_.size());
      const Matrix<S> id = numeric::identity<S>(n_);
      for (const auto& g : elements_) cache_->fix.push_back(numeric::kernel<S>(Matrix<S>(g - id)));
    });
    return cache_->fix;
  }

  /// Elements g with g x = x.
  Subgroup isotropy(const Vector<S>& x) const {
    std::vector<Element> out;
    for (Element a = 0; a < order(); ++a)
      if (numeric::equal<S>(numeric::apply<S>(elements_[a], x), x)) out.push_back(a);
    return Subgroup(std::move(out));
  }

  /// Sign of det for each generator; products of det +1 matrices stay in SO(n).
  bool generators_special() const {
    for (const auto& g : generators_)
      if (Traits::sign(numeric::determinant<S>(g)) < 0) return false;
    return true;
  }

 private:
  struct Cache {
    std::once_flag once;
    std::vector<Subspace<S>> fix;
  };

  Index n_ = 0;
  std::vector<Matrix<S>> generators_;
  std::vector<Matrix<S>> elements_;
  std::unordered_multimap<std::size_t, Element> index_;
  FiniteGroup group_;
  std::shared_ptr<Cache> cache_;
};

}  // namespace orbi::group
