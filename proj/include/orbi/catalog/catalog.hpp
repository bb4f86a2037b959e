#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "orbi/group/finite_group.hpp"
#include "orbi/numeric/linalg.hpp"
#include "orbi/quaternion/quaternion.hpp"

namespace orbi::catalog {

using numeric::Field;
using numeric::Index;
using numeric::Matrix;
using numeric::QSqrt5;
using numeric::Rational;
using Quat = quaternion::Quaternion<QSqrt5>;

/// Generators of a catalog group. `field` is the narrowest backend holding
/// every entry; `exact` is filled unless that backend is float64.
struct GeneratorSet {
  Field field = Field::Rational;
  Index dimension = 0;
  std::vector<Matrix<QSqrt5>> exact;
  std::vector<Matrix<double>> approx;
};

/// Generators in backend S. Throws BackendMismatch if the entries do not fit.
template <numeric::Scalar S>
std::vector<Matrix<S>> generators_as(const GeneratorSet& set) {
  std::vector<Matrix<S>> out;
  if constexpr (std::is_same_v<S, double>) {
    out = set.approx;
  } else {
    if (set.field == Field::Float64) throw Error(ErrorCode::BackendMismatch, "catalog group has float64 entries");
    for (const auto& m : set.exact) out.push_back(numeric::convert_matrix<S, QSqrt5>(m));
  }
  return out;
}

/// The 24 Hurwitz units: +-1, +-i, +-j, +-k and (+-1 +-i +-j +-k)/2.
std::vector<Quat> hurwitz_units();
/// The 120 icosians: the Hurwitz units together with the even coordinate
/// permutations of (0, +-1, +-1/tau, +-tau)/2.
std::vector<Quat> icosians();
/// A small generating set of the icosians: i, (1+i+j+k)/2, (tau + i/tau + j)/2.
std::vector<Quat> icosian_generators();

/// Builds a matrix-group id. Grammar:
///   poincare | binary_T | binary_O | binary_I | icosian_product | klein_four
///   cyclic:K[:N[:A,B]]   rotation by 360/K degrees in coordinate plane (A,B) of R^N
///   axis_rotation:K      order-K rotation of R^3 with exact entries, K in {2,3,4,5}
///   ps_product:K1,K2,..  direct sum of planar rotations
///   trivial:N | reflection:N
///   sum(ID,ID,...)       block direct sum
///   conj(ID,SEED)        seeded orthogonal conjugate
/// Throws BadParameter for unknown ids, out-of-range parameters and sl2:P.
GeneratorSet build(std::string_view id);

/// sl2:P / sl2_P as an abstract group on all 2x2 determinant-1 matrices over
/// F_p. nullopt if the id is not of that form.
std::optional<group::FiniteGroup> build_abstract(std::string_view id);
group::FiniteGroup sl2(std::uint64_t p);

/// `id` in R^n: pads with a trivial summand when n exceeds the natural
/// dimension.
GeneratorSet build_in_dimension(std::string_view id, Index n);

struct ExpectedVerdict {
  Index dimension;
  bool euclidean;
  bool sphere;
};

struct Fingerprint {
  std::string id;
  std::uint64_t order;
  bool perfect;
  bool periodic;
  std::vector<ExpectedVerdict> verdicts;  ///< empty for abstract groups
};

const std::vector<Fingerprint>& list();
const Fingerprint* find_fingerprint(std::string_view id);

}  // namespace orbi::catalog
