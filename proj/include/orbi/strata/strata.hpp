#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <unordered_map>
#include <vector>

#include "orbi/group/matrix_group.hpp"

namespace orbi::strata {

using group::Element;
using group::MatrixGroup;
using group::Subgroup;
using numeric::Index;
using numeric::Matrix;
using numeric::Scalar;
using numeric::Subspace;
using numeric::Vector;

/// A maximal fixed subspace L with F(L), the elements fixing L pointwise.
template <Scalar S>
struct StratumEntry {
  Subspace<S> subspace;
  Subgroup group;
  Index codim = 0;
  bool maximal = true;
};

namespace detail {

/// Distinct fixed spaces among the elements of H, with the elements having
/// each one. Spaces appear in order of their first element.
template <Scalar S>
struct FixedSpaceIndex {
  std::vector<Subspace<S>> spaces;
  std::vector<std::vector<Element>> members;
};

template <Scalar S>
FixedSpaceIndex<S> index_fixed_spaces(const MatrixGroup<S>& g, const Subgroup& h) {
  FixedSpaceIndex<S> out;
  std::unordered_multimap<std::size_t, std::size_t> seen;
  for (Element a : h.elements()) {
    const auto& fix = g.fixed_space(a);
    const std::size_t key = fix.hash();
    std::size_t id = out.spaces.size();
    auto [lo, hi] = seen.equal_range(key);
    for (auto it = lo; it != hi; ++it) {
      if (out.spaces[it->second] == fix) {
        id = it->second;
        break;
      }
    }
    if (id == out.spaces.size()) {
      seen.emplace(key, id);
      out.spaces.push_back(fix);
      out.members.emplace_back();
    }
    out.members[id].push_back(a);
  }
  return out;
}

}  // namespace detail

/// F(L) inside H: elements of H whose fixed space contains L.
template <Scalar S>
Subgroup fixing_subgroup(const MatrixGroup<S>& g, const Subgroup& h, const Subspace<S>& l) {
  std::vector<Element> out;
  for (Element a : h.elements())
    if (g.fixed_space(a).contains(l)) out.push_back(a);
  return Subgroup(std::move(out));
}

/// Inclusion-maximal spaces among Fix(h), h in H nontrivial, each with F(L).
/// Every proper L in the fixed-point system lies in Fix(h) for some
/// nontrivial h in F(L), so these are the maximal elements of that system.
template <Scalar S>
std::vector<StratumEntry<S>> maximal_subspaces(const MatrixGroup<S>& g, const Subgroup& h) {
  const Index n = g.dimension();
  const auto idx = detail::index_fixed_spaces(g, h);
  std::vector<std::size_t> candidates;
  for (std::size_t i = 0; i < idx.spaces.size(); ++i)
    if (idx.spaces[i].dim() < n) candidates.push_back(i);
  std::stable_sort(candidates.begin(), candidates.end(),
                   [&](std::size_t a, std::size_t b) { return idx.spaces[a].dim() > idx.spaces[b].dim(); });

  std::vector<StratumEntry<S>> out;
  std::vector<std::size_t> kept;
  for (std::size_t c : candidates) {
    const auto& l = idx.spaces[c];
    bool covered = false;
    for (std::size_t k : kept) {
      if (idx.spaces[k].dim() > l.dim() && idx.spaces[k].contains(l)) {
        covered = true;
        break;
      }
    }
    // A strictly larger non-maximal candidate lies in a kept one, so checking
    // the kept list is enough.
    if (covered) continue;
    kept.push_back(c);
    std::vector<Element> members;
    for (std::size_t i = 0; i < idx.spaces.size(); ++i) {
      if (idx.spaces[i].dim() < l.dim()) continue;
      const bool fixes = idx.spaces[i].dim() == l.dim() ? i == c : idx.spaces[i].contains(l);
      if (fixes) members.insert(members.end(), idx.members[i].begin(), idx.members[i].end());
    }
    std::sort(members.begin(), members.end());
    out.push_back({l, Subgroup(std::move(members)), n - l.dim(), true});
  }
  return out;
}

template <Scalar S>
std::vector<StratumEntry<S>> maximal_subspaces(const MatrixGroup<S>& g) {
  return maximal_subspaces(g, Subgroup::whole(g.abstract()));
}

template <Scalar S>
std::vector<Subgroup> minimal_subgroups(const MatrixGroup<S>& g, const Subgroup& h) {
  std::vector<Subgroup> out;
  for (auto& e : maximal_subspaces(g, h)) out.push_back(std::move(e.group));
  return out;
}

template <Scalar S>
std::vector<Subgroup> minimal_subgroups(const MatrixGroup<S>& g) {
  return minimal_subgroups(g, Subgroup::whole(g.abstract()));
}

/// True if conjugating the generators of `n` by those of `h` stays in `n`.
inline bool normal_in(const group::FiniteGroup& g, const Subgroup& n, const Subgroup& h) {
  const auto ng = group::generating_set(g, n);
  for (Element x : group::generating_set(g, h))
    for (Element y : ng)
      if (!n.contains(g.conjugate(x, y))) return false;
  return true;
}

/// Subgroup generated by the minimal subgroups; trivial for the trivial group.
template <Scalar S>
Subgroup gamma_min(const MatrixGroup<S>& g, const Subgroup& h, const std::vector<StratumEntry<S>>& strata) {
  std::vector<Subgroup> parts;
  for (const auto& e : strata) parts.push_back(e.group);
  Subgroup out = group::join(g.abstract(), parts);
  if (!normal_in(g.abstract(), out, h)) throw Error(ErrorCode::InternalError, "generated minimal subgroups are not normal");
  return out;
}

template <Scalar S>
Subgroup gamma_min(const MatrixGroup<S>& g, const Subgroup& h) {
  return gamma_min(g, h, maximal_subspaces(g, h));
}

template <Scalar S>
Subgroup gamma_min(const MatrixGroup<S>& g) {
  return gamma_min(g, Subgroup::whole(g.abstract()));
}

/// Fix(H): the common fixed space of a subgroup.
template <Scalar S>
Subspace<S> common_fixed_space(const MatrixGroup<S>& g, const Subgroup& h) {
  Subspace<S> out = Subspace<S>::whole(g.dimension());
  for (Element a : group::generating_set(g.abstract(), h)) out = numeric::intersect(out, g.fixed_space(a));
  return out;
}

// ---------------------------------------------------------------------------
// Distance between maximal subspaces

template <Scalar S>
struct DistanceD {
  double value = 0.0;
  Index rough = 0;    ///< dim K_i
  double fine = 0.0;  ///< (2/pi) * first principal angle of K_i, K_j
  Subspace<S> k_i, k_j, l_ij;
};

template <Scalar S>
DistanceD<S> distance_D(const Subspace<S>& li, const Subspace<S>& lj) {
  if (li.contains(lj) || lj.contains(li)) throw Error(ErrorCode::ContainedPair, "one subspace contains the other");
  DistanceD<S> d;
  d.l_ij = numeric::intersect(li, lj);
  const auto perp = numeric::orthogonal_complement(d.l_ij);
  d.k_i = numeric::intersect(li, perp);
  d.k_j = numeric::intersect(lj, perp);
  d.rough = d.k_i.dim();
  if (d.k_i.dim() > 0 && d.k_j.dim() > 0) d.fine = 2.0 / std::numbers::pi * numeric::principal_angle(d.k_i, d.k_j);
  d.value = static_cast<double>(d.rough) + d.fine;
  return d;
}

// ---------------------------------------------------------------------------
// Geometric predicates

/// Every nontrivial h in H meets V only in 0. H must map V to itself.
template <Scalar S>
bool is_free_on_sphere(const MatrixGroup<S>& g, const Subgroup& h, const Subspace<S>& v) {
  for (Element a : group::generating_set(g.abstract(), h)) {
    if (numeric::image(g.element(a), v) != v) throw Error(ErrorCode::NotInvariant, "subgroup does not preserve the subspace");
  }
  for (Element a : h.elements()) {
    if (a == 0) continue;
    if (numeric::intersect(g.fixed_space(a), v).dim() > 0) return false;
  }
  return true;
}

/// v = w + u with w in W, u in W^perp, and phi fixing W pointwise.
struct SphericalTriangleConfig {
  Subspace<double> w_space;
  Vector<double> v;
  Matrix<double> phi;
};

struct TriangleAngles {
  double alpha;  ///< angle(u, phi u)
  double beta;   ///< angle(v, W)
  double gamma;  ///< angle(v, phi v)
};

inline TriangleAngles triangle_angles(const SphericalTriangleConfig& cfg) {
  const double eps = numeric::tolerance();
  const Eigen::VectorXd v = cfg.v.normalized();
  const Eigen::MatrixXd phi = cfg.phi;
  const Eigen::MatrixXd q = numeric::orthonormal_basis_float(cfg.w_space);  // rows
  for (Index i = 0; i < q.rows(); ++i) {
    if ((phi * q.row(i).transpose() - q.row(i).transpose()).norm() > eps) {
      throw Error(ErrorCode::DegenerateConfig, "phi does not fix W pointwise");
    }
  }
  const Eigen::VectorXd w = q.rows() > 0 ? Eigen::VectorXd(q.transpose() * (q * v)) : Eigen::VectorXd::Zero(v.size());
  const Eigen::VectorXd u = v - w;
  if (u.norm() <= eps) throw Error(ErrorCode::DegenerateConfig, "v lies in W");
  if (w.norm() <= eps) throw Error(ErrorCode::DegenerateConfig, "v is orthogonal to W");
  const Eigen::VectorXd pu = phi * u;
  if ((pu - u).norm() <= eps) throw Error(ErrorCode::DegenerateConfig, "phi fixes u");
  const auto angle = [](const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    return std::atan2((a - b * (a.dot(b) / b.squaredNorm())).norm() * b.norm(), a.dot(b));
  };
  return {angle(u, pu), std::acos(std::clamp(w.norm(), 0.0, 1.0)), angle(v, phi * v)};
}

/// gamma < beta, which holds whenever alpha <= 60 degrees.
inline bool check_angle_reduction(const SphericalTriangleConfig& cfg) {
  const auto a = triangle_angles(cfg);
  return a.gamma < a.beta;
}

}  // namespace orbi::strata
