#include "orbi/group/finite_group.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <numeric>

namespace orbi::group {

FiniteGroup::FiniteGroup(CayleyData data)
    : right_(std::move(data.right)),
      parent_(std::move(data.parent)),
      parent_gen_(std::move(data.parent_gen)),
      inverse_(std::move(data.inverse)) {
  const std::size_t n = order();
  if (n <= kDenseTableLimit) {
    table_.resize(n * n);
    for (std::size_t a = 0; a < n; ++a) {
      Element* row = &table_[a * n];
      row[0] = static_cast<Element>(a);
      // BFS order guarantees parent(b) < b.
      for (std::size_t b = 1; b < n; ++b) row[b] = right_[parent_gen_[b]][row[parent_[b]]];
    }
    return;
  }
  word_offset_.resize(n + 1);
  std::vector<std::uint32_t> depth(n, 0);
  for (std::size_t b = 1; b < n; ++b) depth[b] = depth[parent_[b]] + 1;
  for (std::size_t b = 0; b < n; ++b) word_offset_[b + 1] = word_offset_[b] + depth[b];
  word_data_.resize(word_offset_[n]);
  for (std::size_t b = 1; b < n; ++b) {
    std::uint32_t* w = &word_data_[word_offset_[b]];
    const std::uint32_t* pw = &word_data_[word_offset_[parent_[b]]];
    std::copy(pw, pw + depth[parent_[b]], w);
    w[depth[b] - 1] = parent_gen_[b];
  }
}

std::vector<Element> FiniteGroup::generators() const {
  std::vector<Element> out;
  for (std::size_t k = 0; k < generator_count(); ++k) out.push_back(generator(k));
  return out;
}

Element FiniteGroup::mul(Element a, Element b) const {
  if (!table_.empty()) return table_[static_cast<std::size_t>(a) * order() + b];
  Element x = a;
  for (std::uint32_t i = word_offset_[b]; i < word_offset_[b + 1]; ++i) x = right_[word_data_[i]][x];
  return x;
}

Element FiniteGroup::power(Element a, std::uint64_t k) const {
  Element result = 0;
  Element base = a;
  while (k > 0) {
    if (k & 1U) result = mul(result, base);
    base = mul(base, base);
    k >>= 1U;
  }
  return result;
}

std::vector<std::uint32_t> FiniteGroup::word(Element a) const {
  std::vector<std::uint32_t> w;
  for (Element x = a; x != 0; x = parent_[x]) w.push_back(parent_gen_[x]);
  std::reverse(w.begin(), w.end());
  return w;
}

// --- subgroups --------------------------------------------------------------

Subgroup Subgroup::whole(const FiniteGroup& g) {
  std::vector<Element> all(g.order());
  std::iota(all.begin(), all.end(), Element{0});
  return Subgroup(std::move(all));
}

bool Subgroup::contains(Element e) const { return std::binary_search(elements_.begin(), elements_.end(), e); }

bool Subgroup::contains(const Subgroup& other) const {
  return std::includes(elements_.begin(), elements_.end(), other.elements_.begin(), other.elements_.end());
}

Subgroup generated(const FiniteGroup& g, std::span<const Element> generators) {
  std::vector<char> seen(g.order(), 0);
  std::vector<Element> members{0};
  seen[0] = 1;
  for (std::size_t head = 0; head < members.size(); ++head) {
    for (Element s : generators) {
      const Element next = g.mul(members[head], s);
      if (!seen[next]) {
        seen[next] = 1;
        members.push_back(next);
      }
    }
  }
  std::sort(members.begin(), members.end());
  return Subgroup(std::move(members));
}

namespace {

/// Greedy extension: adds each candidate not yet in the running subgroup.
void extend(const FiniteGroup& g, std::span<const Element> candidates, std::vector<Element>& gens, Subgroup& current) {
  for (Element e : candidates) {
    if (current.contains(e)) continue;
    gens.push_back(e);
    current = generated(g, gens);
  }
}

}  // namespace

std::vector<Element> generating_set(const FiniteGroup& g, const Subgroup& h) {
  std::vector<Element> gens;
  Subgroup current;
  extend(g, h.elements(), gens, current);
  return gens;
}

Subgroup join(const FiniteGroup& g, std::span<const Subgroup> parts) {
  std::vector<Element> gens;
  Subgroup current;
  for (const auto& part : parts) extend(g, part.elements(), gens, current);
  return current;
}

Subgroup normal_closure(const FiniteGroup& g, std::span<const Element> generators) {
  std::vector<Element> gens;
  Subgroup current;
  extend(g, generators, gens, current);
  const std::vector<Element> outer = g.generators();
  bool changed = true;
  while (changed) {
    changed = false;
    for (Element x : outer) {
      for (std::size_t i = 0; i < gens.size(); ++i) {
        const Element c = g.conjugate(x, gens[i]);
        if (current.contains(c)) continue;
        gens.push_back(c);
        current = generated(g, gens);
        changed = true;
      }
    }
  }
  return current;
}

bool is_normal(const FiniteGroup& g, const Subgroup& h) {
  const auto hg = generating_set(g, h);
  for (Element x : g.generators())
    for (Element y : hg)
      if (!h.contains(g.conjugate(x, y))) return false;
  return true;
}

Subgroup intersection(const Subgroup& a, const Subgroup& b) {
  std::vector<Element> out;
  std::set_intersection(a.elements().begin(), a.elements().end(), b.elements().begin(), b.elements().end(),
                        std::back_inserter(out));
  return Subgroup(std::move(out));
}

Subgroup normalizer(const FiniteGroup& g, const Subgroup& h) {
  const auto hg = generating_set(g, h);
  std::vector<Element> out;
  for (Element x = 0; x < g.order(); ++x) {
    bool ok = true;
    for (Element y : hg) {
      if (!h.contains(g.conjugate(x, y))) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(x);
  }
  return Subgroup(std::move(out));
}

Induced induced(const FiniteGroup& g, const Subgroup& h) {
  const auto gens = generating_set(g, h);
  auto closure = close(
      Element{0}, gens, [&](Element a, Element b) { return g.mul(a, b); }, [&](Element a) { return g.inv(a); },
      [](Element a) { return static_cast<std::size_t>(a); }, std::equal_to<Element>{},
      std::numeric_limits<std::size_t>::max());
  return Induced{std::move(closure.group), std::move(closure.elements)};
}

// --- structure --------------------------------------------------------------

std::uint64_t element_order(const FiniteGroup& g, Element a) {
  std::uint64_t k = 1;
  for (Element x = a; x != 0; x = g.mul(x, a)) ++k;
  return k;
}

std::vector<std::uint64_t> element_orders(const FiniteGroup& g) {
  std::vector<std::uint64_t> out(g.order());
  for (Element a = 0; a < g.order(); ++a) out[a] = element_order(g, a);
  return out;
}

Subgroup derived_subgroup(const FiniteGroup& g) {
  const auto gens = g.generators();
  std::vector<Element> comms;
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j) comms.push_back(g.commutator(gens[i], gens[j]));
  return normal_closure(g, comms);
}

bool is_perfect(const FiniteGroup& g) { return derived_subgroup(g).order() == g.order(); }

bool is_abelian(const FiniteGroup& g) {
  const auto gens = g.generators();
  for (Element a : gens)
    for (Element b : gens)
      if (g.mul(a, b) != g.mul(b, a)) return false;
  return true;
}

bool is_cyclic(const FiniteGroup& g, const Subgroup& h) {
  for (Element e : h.elements())
    if (element_order(g, e) == h.order()) return true;
  return false;
}

std::vector<std::uint32_t> conjugacy_classes(const FiniteGroup& g) {
  constexpr std::uint32_t kUnset = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> cls(g.order(), kUnset);
  const auto gens = g.generators();
  std::uint32_t next_id = 0;
  std::vector<Element> queue;
  for (Element x = 0; x < g.order(); ++x) {
    if (cls[x] != kUnset) continue;
    queue.assign(1, x);
    cls[x] = next_id;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      for (Element s : gens) {
        const Element y = g.conjugate(s, queue[head]);
        if (cls[y] == kUnset) {
          cls[y] = next_id;
          queue.push_back(y);
        }
      }
    }
    ++next_id;
  }
  return cls;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    out.push_back(p);
    while (n % p == 0) n /= p;
  }
  if (n > 1) out.push_back(n);
  return out;
}

namespace {

bool is_power_of(std::uint64_t n, std::uint64_t p) {
  if (n == 0) return false;
  while (n % p == 0) n /= p;
  return n == 1;
}

}  // namespace

Subgroup sylow(const FiniteGroup& g, std::uint64_t p) {
  const std::uint64_t n = g.order();
  if (p < 2 || n % p != 0) {
    throw Error(ErrorCode::PNotDividing, std::to_string(p) + " does not divide " + std::to_string(n));
  }
  std::uint64_t target = 1;
  for (std::uint64_t m = n; m % p == 0; m /= p) target *= p;

  Element start = 0;
  std::uint64_t best = 1;
  for (Element a = 1; a < n; ++a) {
    const std::uint64_t o = element_order(g, a);
    if (o > best && is_power_of(o, p)) {
      best = o;
      start = a;
    }
  }
  std::vector<Element> gens{start};
  Subgroup current = generated(g, gens);
  while (current.order() < target) {
    const Subgroup norm = normalizer(g, current);
    bool grown = false;
    for (Element y : norm.elements()) {
      if (current.contains(y)) continue;
      if (!current.contains(g.power(y, p))) continue;
      gens.push_back(y);
      current = generated(g, gens);
      grown = true;
      break;
    }
    if (!grown) throw Error(ErrorCode::InternalError, "non-Sylow p-subgroup with no p-extension in its normalizer");
  }
  return current;
}

std::string_view to_string(TwoGroupKind k) noexcept {
  switch (k) {
    case TwoGroupKind::Cyclic: return "cyclic";
    case TwoGroupKind::GeneralizedQuaternion: return "generalized_quaternion";
    case TwoGroupKind::Other: return "other";
  }
  return "?";
}

TwoGroupKind classify_2group(const FiniteGroup& g, const Subgroup& h) {
  const std::uint64_t n = h.order();
  if (!is_power_of(n, 2)) throw Error(ErrorCode::NotA2Group, "order " + std::to_string(n) + " is not a power of 2");
  std::size_t involutions = 0;
  for (Element e : h.elements()) {
    const std::uint64_t o = element_order(g, e);
    if (o == n) return TwoGroupKind::Cyclic;
    if (o == 2) ++involutions;
  }
  if (n >= 8 && involutions == 1) return TwoGroupKind::GeneralizedQuaternion;
  return TwoGroupKind::Other;
}

bool has_periodic_cohomology(const FiniteGroup& g) {
  for (std::uint64_t p : prime_factors(g.order())) {
    const Subgroup s = sylow(g, p);
    if (p == 2) {
      if (classify_2group(g, s) == TwoGroupKind::Other) return false;
    } else if (!is_cyclic(g, s)) {
      return false;
    }
  }
  return true;
}

// --- isomorphism ------------------------------------------------------------

namespace {

std::vector<std::uint64_t> fingerprints(const FiniteGroup& g) {
  const auto orders = element_orders(g);
  const auto cls = conjugacy_classes(g);
  std::vector<std::uint64_t> size(g.order(), 0);
  for (auto c : cls) ++size[c];
  std::vector<std::uint64_t> out(g.order());
  for (Element a = 0; a < g.order(); ++a) out[a] = (orders[a] << 32U) | size[cls[a]];
  return out;
}

class IsomorphismSearch {
 public:
  IsomorphismSearch(const FiniteGroup& g, const FiniteGroup& h)
      : g_(g), h_(h), fg_(fingerprints(g)), fh_(fingerprints(h)) {}

  bool run() {
    auto sg = fg_;
    auto sh = fh_;
    std::sort(sg.begin(), sg.end());
    std::sort(sh.begin(), sh.end());
    if (sg != sh) return false;
    for (Element b = 0; b < h_.order(); ++b) candidates_[fh_[b]].push_back(b);

    // Generators of G with the rarest fingerprints first.
    std::vector<Element> by_rarity(g_.order());
    std::iota(by_rarity.begin(), by_rarity.end(), Element{0});
    std::stable_sort(by_rarity.begin(), by_rarity.end(), [&](Element x, Element y) {
      return candidates_[fg_[x]].size() < candidates_[fg_[y]].size();
    });
    Subgroup current;
    extend(g_, by_rarity, gens_, current);
    if (gens_.empty()) return true;

    words_ = close(
        Element{0}, gens_, [&](Element a, Element b) { return g_.mul(a, b); }, [&](Element a) { return g_.inv(a); },
        [](Element a) { return static_cast<std::size_t>(a); }, std::equal_to<Element>{},
        std::numeric_limits<std::size_t>::max());
    images_.assign(gens_.size(), 0);
    return assign(0);
  }

 private:
  bool assign(std::size_t j) {
    if (j == gens_.size()) return extends_to_isomorphism();
    for (Element c : candidates_[fg_[gens_[j]]]) {
      bool ok = true;
      for (std::size_t i = 0; i < j && ok; ++i) {
        ok = fh_[h_.mul(images_[i], c)] == fg_[g_.mul(gens_[i], gens_[j])] &&
             fh_[h_.mul(h_.inv(images_[i]), c)] == fg_[g_.mul(g_.inv(gens_[i]), gens_[j])];
      }
      if (!ok) continue;
      images_[j] = c;
      if (assign(j + 1)) return true;
    }
    return false;
  }

  bool extends_to_isomorphism() const {
    const FiniteGroup& w = words_.group;
    const std::size_t n = w.order();
    std::vector<Element> phi(n);
    phi[0] = 0;
    for (Element x = 1; x < n; ++x) phi[x] = h_.mul(phi[w.parent(x)], images_[w.parent_generator(x)]);
    for (Element x = 0; x < n; ++x)
      for (std::size_t k = 0; k < gens_.size(); ++k)
        if (phi[w.right_by_generator(x, k)] != h_.mul(phi[x], images_[k])) return false;
    std::vector<char> hit(n, 0);
    for (Element x = 0; x < n; ++x) {
      if (hit[phi[x]]) return false;
      hit[phi[x]] = 1;
    }
    return true;
  }

  const FiniteGroup& g_;
  const FiniteGroup& h_;
  std::vector<std::uint64_t> fg_;
  std::vector<std::uint64_t> fh_;
  std::map<std::uint64_t, std::vector<Element>> candidates_;
  std::vector<Element> gens_;
  std::vector<Element> images_;
  Closure<Element> words_;
};

}  // namespace

bool isomorphic(const FiniteGroup& g, const FiniteGroup& h) {
  if (g.order() > kIsomorphismLimit || h.order() > kIsomorphismLimit) {
    throw Error(ErrorCode::TooLarge, "isomorphism search is bounded at " + std::to_string(kIsomorphismLimit));
  }
  if (g.order() != h.order()) return false;
  return IsomorphismSearch(g, h).run();
}

}  // namespace orbi::group
