#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "orbi/error.hpp"

namespace orbi::group {

using Element = std::uint32_t;

inline constexpr std::size_t kDefaultCap = 1'000'000;
/// Above this order products are resolved through generator words instead of
/// a full Cayley table.
inline constexpr std::size_t kDenseTableLimit = 5'000;
/// Largest order accepted by isomorphic().
inline constexpr std::size_t kIsomorphismLimit = 10'000;

/// Breadth-first data produced by a closure: for each generator k the right
/// multiplication table a -> a * g_k, the BFS tree, and inverses.
struct CayleyData {
  std::vector<std::vector<Element>> right;  ///< right[k][a] = a * g_k
  std::vector<Element> parent;              ///< parent[a] * g_{parent_gen[a]} = a
  std::vector<std::uint32_t> parent_gen;
  std::vector<Element> inverse;
};

/// A finite group on the index set {0, ..., order-1}, identity 0. Element
/// indices follow BFS order over the generators, so they are deterministic.
class FiniteGroup {
 public:
  FiniteGroup() = default;
  explicit FiniteGroup(CayleyData data);

  std::size_t order() const noexcept { return parent_.size(); }
  std::size_t generator_count() const noexcept { return right_.size(); }
  /// Element index of generator k.
  Element generator(std::size_t k) const { return right_[k][0]; }
  std::vector<Element> generators() const;

  Element mul(Element a, Element b) const;
  Element inv(Element a) const { return inverse_[a]; }
  Element right_by_generator(Element a, std::size_t k) const { return right_[k][a]; }
  Element conjugate(Element g, Element h) const { return mul(mul(g, h), inv(g)); }  ///< g h g^-1
  Element commutator(Element a, Element b) const { return mul(mul(inv(a), inv(b)), mul(a, b)); }
  Element power(Element a, std::uint64_t k) const;

  /// Generator indices whose product (left to right) is the element.
  std::vector<std::uint32_t> word(Element a) const;
  Element parent(Element a) const { return parent_[a]; }
  std::uint32_t parent_generator(Element a) const { return parent_gen_[a]; }
  bool dense() const noexcept { return !table_.empty(); }

 private:
  std::vector<std::vector<Element>> right_;
  std::vector<Element> parent_;
  std::vector<std::uint32_t> parent_gen_;
  std::vector<Element> inverse_;
  std::vector<Element> table_;
  std::vector<std::uint32_t> word_offset_;
  std::vector<std::uint32_t> word_data_;
};

/// Breadth-first closure of `generators` under `mul`. `hash`/`eq` identify
/// states (eq may be a tolerance comparison; hash must be compatible with it
/// on the states that occur).
template <class State>
struct Closure {
  std::vector<State> elements;
  FiniteGroup group;
  std::unordered_multimap<std::size_t, Element> index;
};

template <class State, class Mul, class Inv, class Hash, class Eq>
auto close(const State& identity, const std::vector<State>& generators, Mul mul, Inv inv, Hash hash, Eq eq,
           std::size_t cap) {
  Closure<State> out;
  auto& elements = out.elements;
  auto& index = out.index;
  auto lookup = [&](const State& s) -> std::int64_t {
    auto [lo, hi] = index.equal_range(hash(s));
    for (auto it = lo; it != hi; ++it)
      if (eq(elements[it->second], s)) return it->second;
    return -1;
  };
  CayleyData data;
  data.right.assign(generators.size(), {});
  elements.push_back(identity);
  index.emplace(hash(identity), 0);
  data.parent.push_back(0);
  data.parent_gen.push_back(0);
  for (std::size_t head = 0; head < elements.size(); ++head) {
    for (std::size_t k = 0; k < generators.size(); ++k) {
      State next = mul(elements[head], generators[k]);
      std::int64_t found = lookup(next);
      if (found < 0) {
        if (elements.size() >= cap) {
          throw Error(ErrorCode::CapExceeded, "closure exceeds " + std::to_string(cap) + " elements");
        }
        found = static_cast<std::int64_t>(elements.size());
        index.emplace(hash(next), static_cast<Element>(found));
        elements.push_back(std::move(next));
        data.parent.push_back(static_cast<Element>(head));
        data.parent_gen.push_back(static_cast<std::uint32_t>(k));
      }
      data.right[k].push_back(static_cast<Element>(found));
    }
  }
  data.inverse.resize(elements.size());
  for (std::size_t a = 0; a < elements.size(); ++a) {
    const std::int64_t found = lookup(inv(elements[a]));
    if (found < 0) throw Error(ErrorCode::InternalError, "inverse missing from closure");
    data.inverse[a] = static_cast<Element>(found);
  }
  out.group = FiniteGroup(std::move(data));
  return out;
}

// ---------------------------------------------------------------------------
// Subgroups

/// A subgroup of a parent group, as a sorted index set containing 0.
class Subgroup {
 public:
  Subgroup() : elements_{0} {}
  explicit Subgroup(std::vector<Element> sorted_elements) : elements_(std::move(sorted_elements)) {}

  static Subgroup trivial() { return Subgroup(); }
  static Subgroup whole(const FiniteGroup& g);

  std::size_t order() const noexcept { return elements_.size(); }
  const std::vector<Element>& elements() const noexcept { return elements_; }
  bool contains(Element e) const;
  bool contains(const Subgroup& other) const;
  bool is_trivial() const noexcept { return elements_.size() == 1; }

  friend bool operator==(const Subgroup&, const Subgroup&) = default;

 private:
  std::vector<Element> elements_;
};

/// Closure of a set inside G.
Subgroup generated(const FiniteGroup& g, std::span<const Element> generators);

/// A short generating set of H, chosen greedily in index order.
std::vector<Element> generating_set(const FiniteGroup& g, const Subgroup& h);

/// Subgroup generated by the union of the given subgroups.
Subgroup join(const FiniteGroup& g, std::span<const Subgroup> parts);

Subgroup normal_closure(const FiniteGroup& g, std::span<const Element> generators);
bool is_normal(const FiniteGroup& g, const Subgroup& h);
Subgroup intersection(const Subgroup& a, const Subgroup& b);
Subgroup normalizer(const FiniteGroup& g, const Subgroup& h);

/// Subgroup H of G re-indexed as a standalone group; `embedding[i]` is the
/// parent index of the i-th element.
struct Induced {
  FiniteGroup group;
  std::vector<Element> embedding;
};
Induced induced(const FiniteGroup& g, const Subgroup& h);

// ---------------------------------------------------------------------------
// Structure

std::uint64_t element_order(const FiniteGroup& g, Element a);
std::vector<std::uint64_t> element_orders(const FiniteGroup& g);

/// Normal closure of the commutators of generator pairs.
Subgroup derived_subgroup(const FiniteGroup& g);
bool is_perfect(const FiniteGroup& g);
bool is_abelian(const FiniteGroup& g);
bool is_cyclic(const FiniteGroup& g, const Subgroup& h);

/// Conjugacy class id of every element, classes numbered in order of first
/// appearance.
std::vector<std::uint32_t> conjugacy_classes(const FiniteGroup& g);

/// A Sylow p-subgroup, grown inside normalizers from a p-element.
Subgroup sylow(const FiniteGroup& g, std::uint64_t p);

enum class TwoGroupKind { Cyclic, GeneralizedQuaternion, Other };
std::string_view to_string(TwoGroupKind k) noexcept;
TwoGroupKind classify_2group(const FiniteGroup& g, const Subgroup& h);
inline TwoGroupKind classify_2group(const FiniteGroup& g) { return classify_2group(g, Subgroup::whole(g)); }

/// Every odd Sylow subgroup cyclic and the 2-Sylow cyclic or generalized
/// quaternion.
bool has_periodic_cohomology(const FiniteGroup& g);

/// Abstract isomorphism by backtracking over generator images, pruned by
/// (element order, class size) fingerprints. Throws TooLarge above
/// kIsomorphismLimit.
bool isomorphic(const FiniteGroup& g, const FiniteGroup& h);

std::vector<std::uint64_t> prime_factors(std::uint64_t n);

}  // namespace orbi::group
