#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "orbi/catalog/catalog.hpp"
#include "orbi/quaternion/quaternion.hpp"
#include "orbi/strata/strata.hpp"

namespace orbi::recognize {

using group::Element;
using group::MatrixGroup;
using group::Subgroup;
using numeric::FieldTraits;
using numeric::Index;
using numeric::Matrix;
using numeric::Scalar;
using numeric::Subspace;
using strata::StratumEntry;

enum class MinimalTag { CyclicCodim2, Poincare, Inadmissible };

inline std::string_view to_string(MinimalTag t) {
  switch (t) {
    case MinimalTag::CyclicCodim2: return "cyclic_codim2";
    case MinimalTag::Poincare: return "poincare";
    case MinimalTag::Inadmissible: return "inadmissible";
  }
  return "?";
}

struct MinimalKind {
  MinimalTag tag = MinimalTag::Inadmissible;
  std::uint64_t order = 0;
  std::string reason;       ///< first failed check, for Inadmissible
  std::string orientation;  ///< "left" or "right" when the lift cross-check ran
  std::string note;         ///< shortcut/search disagreement, lift anomalies
};

enum class Reason {
  OrientationReversing,
  BadMinimalSubgroup,
  NonOrthogonalBlocks,
  GammaMinProper,
  K1DimAtMost4,
  K1DimAtMost5,
  Ok
};

inline std::string_view to_string(Reason r) {
  switch (r) {
    case Reason::OrientationReversing: return "ORIENTATION_REVERSING";
    case Reason::BadMinimalSubgroup: return "BAD_MINIMAL_SUBGROUP";
    case Reason::NonOrthogonalBlocks: return "NON_ORTHOGONAL_BLOCKS";
    case Reason::GammaMinProper: return "GAMMA_MIN_PROPER";
    case Reason::K1DimAtMost4: return "K1_DIM_AT_MOST_4";
    case Reason::K1DimAtMost5: return "K1_DIM_AT_MOST_5";
    case Reason::Ok: return "OK";
  }
  return "?";
}

template <Scalar S>
struct PoincareBlock {
  Subgroup group;
  Subspace<S> support;  ///< L^perp
};

template <Scalar S>
struct Decomposition {
  Subgroup ps_subgroup;
  std::vector<PoincareBlock<S>> poincare_blocks;
  Subspace<S> v_ps;
  Subspace<S> v0;
};

template <Scalar S>
struct MinimalRecord {
  StratumEntry<S> entry;
  MinimalKind kind;
};

template <Scalar S>
struct Verdict {
  bool euclidean = false;
  bool sphere = false;
  std::vector<Reason> reasons;
  std::optional<Decomposition<S>> decomposition;
  std::vector<MinimalRecord<S>> minimal;
  std::size_t pseudoreflection_count = 0;
  bool det_positive = true;
  std::optional<bool> gamma_min_is_whole;
};

/// dim Fix(g) = n - 2.
template <Scalar S>
bool is_pseudoreflection(const MatrixGroup<S>& g, Element a) {
  return g.fixed_space(a).dim() == g.dimension() - 2;
}

template <Scalar S>
std::size_t count_pseudoreflections(const MatrixGroup<S>& g) {
  std::size_t n = 0;
  for (Element a = 0; a < g.order(); ++a) n += is_pseudoreflection(g, a);
  return n;
}

/// The subgroup generated by all pseudoreflections; normal because that set
/// is closed under conjugation.
template <Scalar S>
Subgroup pseudoreflection_subgroup(const MatrixGroup<S>& g) {
  std::vector<Element> gens;
  for (Element a = 0; a < g.order(); ++a)
    if (is_pseudoreflection(g, a)) gens.push_back(a);
  Subgroup out = group::generated(g.abstract(), gens);
  if (!group::is_normal(g.abstract(), out)) throw Error(ErrorCode::InternalError, "pseudoreflection subgroup is not normal");
  return out;
}

namespace detail {

inline const group::FiniteGroup& sl2_5() {
  static const group::FiniteGroup g = catalog::sl2(5);
  return g;
}

/// Restricts F(L) to L^perp in an orthonormal basis, lifts it to S^3 x S^3
/// and reports which factor carries the binary icosahedral group.
template <Scalar S>
void lift_cross_check(const MatrixGroup<S>& g, const StratumEntry<S>& entry, MinimalKind& kind) {
  const auto basis = numeric::orthonormal_basis_exact(numeric::orthogonal_complement(entry.subspace));
  if (!basis) return;
  std::vector<Matrix<S>> restricted;
  for (Element a : group::generating_set(g.abstract(), entry.group)) {
    restricted.push_back(numeric::mul<S>(numeric::mul<S>(*basis, g.element(a)), Matrix<S>(basis->transpose())));
  }
  // Left/right is relative to the Gram-Schmidt basis of the canonical basis
  // of L^perp; for L = 0 in R^4 that is the standard basis.
  try {
    const auto h = MatrixGroup<S>::generate(restricted, 4);
    const auto lift = quaternion::lift_group(h);
    const auto& l = lift.left_class;
    const auto& r = lift.right_class;
    using quaternion::BinaryKind;
    const bool left = l.kind == BinaryKind::Icosahedral && r.kind == BinaryKind::Cyclic && r.n == 2;
    const bool right = r.kind == BinaryKind::Icosahedral && l.kind == BinaryKind::Cyclic && l.n == 2;
    if (left) kind.orientation = "left";
    if (right) kind.orientation = "right";
    if (!left && !right) kind.note = "lift gives (" + l.str() + "; " + r.str() + ")";
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NoFieldSqrt) throw;
  }
}

}  // namespace detail

/// Classifies a minimal subgroup F(L) for a maximal L.
template <Scalar S>
MinimalKind classify_minimal(const MatrixGroup<S>& g, const StratumEntry<S>& entry) {
  MinimalKind kind;
  kind.order = entry.group.order();
  const auto& abs = g.abstract();
  if (entry.codim == 2) {
    if (group::is_cyclic(abs, entry.group)) {
      kind.tag = MinimalTag::CyclicCodim2;
    } else {
      kind.reason = "codim 2 but F(L) is not cyclic";
    }
    return kind;
  }
  if (entry.codim != 4) {
    kind.reason = "codim " + std::to_string(entry.codim) + " is neither 2 nor 4";
    return kind;
  }
  if (kind.order != 120) {
    kind.reason = "codim 4 but |F(L)| = " + std::to_string(kind.order) + " != 120";
    return kind;
  }
  const auto standalone = group::induced(abs, entry.group);
  const bool perfect = group::is_perfect(standalone.group);
  const bool iso = group::isomorphic(standalone.group, detail::sl2_5());
  if (perfect != iso) kind.note = "perfect-120 shortcut and isomorphism search disagree; search used";
  if (!iso) {
    kind.reason = perfect ? "perfect of order 120 but not isomorphic to SL2(5)" : "order 120 but not perfect";
    return kind;
  }
  kind.tag = MinimalTag::Poincare;
  detail::lift_cross_check(g, entry, kind);
  return kind;
}

/// Builds the certificate; nullopt with `failure` set when a structural check
/// fails. Every minimal record must already be admissible.
template <Scalar S>
std::optional<Decomposition<S>> decompose(const MatrixGroup<S>& g, const std::vector<MinimalRecord<S>>& minimal,
                                          Reason& failure, std::optional<bool>* gamma_min_is_whole = nullptr) {
  const auto& abs = g.abstract();
  const Index n = g.dimension();
  Decomposition<S> d;
  d.v_ps = Subspace<S>::zero(n);
  d.v0 = Subspace<S>::whole(n);
  std::vector<Subgroup> cyclic_parts, all_parts;
  for (const auto& rec : minimal) {
    const auto support = numeric::orthogonal_complement(rec.entry.subspace);
    all_parts.push_back(rec.entry.group);
    d.v0 = numeric::intersect(d.v0, rec.entry.subspace);
    if (rec.kind.tag == MinimalTag::CyclicCodim2) {
      cyclic_parts.push_back(rec.entry.group);
      d.v_ps = numeric::sum(d.v_ps, support);
    } else if (rec.kind.tag == MinimalTag::Poincare) {
      d.poincare_blocks.push_back({rec.entry.group, support});
    } else {
      throw Error(ErrorCode::InternalError, "decompose called with an inadmissible minimal subgroup");
    }
  }
  d.ps_subgroup = group::join(abs, cyclic_parts);

  for (std::size_t i = 0; i < d.poincare_blocks.size(); ++i) {
    for (std::size_t j = i + 1; j < d.poincare_blocks.size(); ++j) {
      if (!numeric::orthogonal(d.poincare_blocks[i].support, d.poincare_blocks[j].support)) {
        failure = Reason::NonOrthogonalBlocks;
        return std::nullopt;
      }
    }
    if (!numeric::orthogonal(d.v_ps, d.poincare_blocks[i].support)) {
      failure = Reason::NonOrthogonalBlocks;
      return std::nullopt;
    }
  }

  const Subgroup gmin = group::join(abs, all_parts);
  if (gamma_min_is_whole) *gamma_min_is_whole = gmin.order() == g.order();
  if (gmin.order() != g.order()) {
    failure = Reason::GammaMinProper;
    return std::nullopt;
  }

  // Certificate: the factors intersect trivially and their orders multiply
  // to |G|; the summands fill R^n.
  std::vector<const Subgroup*> factors{&d.ps_subgroup};
  std::uint64_t product = d.ps_subgroup.order();
  for (const auto& b : d.poincare_blocks) {
    factors.push_back(&b.group);
    product *= b.group.order();
  }
  for (std::size_t i = 0; i < factors.size(); ++i)
    for (std::size_t j = i + 1; j < factors.size(); ++j)
      if (!group::intersection(*factors[i], *factors[j]).is_trivial()) {
        throw Error(ErrorCode::InternalError, "ORDER_MISMATCH: factors intersect nontrivially");
      }
  if (product != g.order()) {
    throw Error(ErrorCode::InternalError, "ORDER_MISMATCH: |G| = " + std::to_string(g.order()) + " but factors give " +
                                              std::to_string(product));
  }
  Index dims = d.v0.dim() + d.v_ps.dim();
  for (const auto& b : d.poincare_blocks) dims += b.support.dim();
  if (dims != n || !numeric::orthogonal(d.v0, d.v_ps)) {
    throw Error(ErrorCode::InternalError, "ORDER_MISMATCH: summands do not split R^n");
  }
  return d;
}

/// The decision for the Euclidean (A) and spherical (B) quotients.
template <Scalar S>
Verdict<S> decide(const MatrixGroup<S>& g) {
  Verdict<S> v;
  const Index n = g.dimension();
  v.det_positive = g.generators_special();
  if (!v.det_positive) {
    v.reasons = {Reason::OrientationReversing};
    return v;
  }
  v.pseudoreflection_count = count_pseudoreflections(g);
  for (auto& entry : strata::maximal_subspaces(g)) {
    MinimalKind kind = classify_minimal(g, entry);
    const bool bad = kind.tag == MinimalTag::Inadmissible;
    v.minimal.push_back({std::move(entry), std::move(kind)});
    if (bad) {
      v.reasons = {Reason::BadMinimalSubgroup};
      return v;
    }
  }
  Reason failure = Reason::Ok;
  v.decomposition = decompose(g, v.minimal, failure, &v.gamma_min_is_whole);
  if (!v.decomposition) {
    v.reasons = {failure};
    return v;
  }
  const std::size_t k = v.decomposition->poincare_blocks.size();
  v.euclidean = !(k == 1 && n <= 4);
  v.sphere = !(k == 1 && n <= 5);
  if (!v.euclidean) v.reasons.push_back(Reason::K1DimAtMost4);
  if (!v.sphere) v.reasons.push_back(Reason::K1DimAtMost5);
  if (v.reasons.empty()) v.reasons.push_back(Reason::Ok);
  return v;
}

/// Whether the isotropy group at x is generated by its own pseudoreflections.
template <Scalar S>
bool isotropy_is_pseudoreflection(const MatrixGroup<S>& g, const numeric::Vector<S>& x) {
  if (pseudoreflection_subgroup(g).order() != g.order()) {
    throw Error(ErrorCode::NotPseudoreflectionGroup, "group is not generated by pseudoreflections");
  }
  const Subgroup iso = g.isotropy(x);
  std::vector<Element> gens;
  for (Element a : iso.elements())
    if (is_pseudoreflection(g, a)) gens.push_back(a);
  return group::generated(g.abstract(), gens) == iso;
}

}  // namespace orbi::recognize
