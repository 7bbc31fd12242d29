#pragma once

// Exhaustive searches over small groups: generating sets, homomorphisms by
// generator images, the subgroup lattice, complements and homomorphism
// extension from a subgroup.

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "gnc/group.hpp"

namespace gnc {

/// A generating set chosen greedily: elements of larger order first, ties by
/// index, each added only if it is not yet in the closure of the previous ones.
inline std::vector<Elem> generating_set(const FiniteGroup& g) {
  std::vector<Elem> cand(g.order());
  std::iota(cand.begin(), cand.end(), 0);
  std::vector<std::size_t> ord(g.order());
  for (Elem x = 0; x < g.order(); ++x) ord[x] = g.element_order(x);
  std::stable_sort(cand.begin(), cand.end(), [&](Elem a, Elem b) { return ord[a] > ord[b]; });
  std::vector<Elem> gens;
  auto closure = trivial_subgroup(g);
  for (Elem x : cand) {
    if (closure.size() == g.order()) break;
    if (closure.contains(x)) continue;
    gens.push_back(x);
    closure = subgroup_closure(g, gens);
  }
  return gens;
}

namespace detail {

inline constexpr Elem kUnset = static_cast<Elem>(-1);

struct HomSearch {
  const FiniteGroup& src;
  const FiniteGroup& dst;
  std::vector<Elem> gens;
  std::vector<std::vector<Elem>> candidates;  // per generator
  std::vector<Elem> required;                 // kUnset where unconstrained
  bool injective = false;
  std::function<bool(const std::vector<Elem>&)> visit;  // return false to stop

  std::vector<Elem> images;

  // Rebuilds the map on <gens[0..k)> by walking the Cayley graph; false on
  // any inconsistency, constraint clash or (when requested) collision.
  bool propagate(std::size_t k, std::vector<Elem>& map) const {
    map.assign(src.order(), kUnset);
    std::vector<bool> hit(dst.order(), false);
    std::vector<Elem> queue{src.identity()};
    map[src.identity()] = dst.identity();
    hit[dst.identity()] = true;
    if (!required.empty() && required[src.identity()] != kUnset && required[src.identity()] != dst.identity()) {
      return false;
    }
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      const Elem x = queue[qi];
      for (std::size_t i = 0; i < k; ++i) {
        const Elem y = src.op(x, gens[i]);
        const Elem v = dst.op(map[x], images[i]);
        if (map[y] == kUnset) {
          if (!required.empty() && required[y] != kUnset && required[y] != v) return false;
          if (injective) {
            if (hit[v]) return false;
            hit[v] = true;
          }
          map[y] = v;
          queue.push_back(y);
        } else if (map[y] != v) {
          return false;
        }
      }
    }
    return true;
  }

  bool run(std::size_t level) {
    std::vector<Elem> map;
    if (level == gens.size()) {
      if (!propagate(level, map)) return true;
      return visit(map);
    }
    for (Elem y : candidates[level]) {
      images[level] = y;
      if (!propagate(level + 1, map)) continue;
      if (!run(level + 1)) return false;
    }
    return true;
  }
};

inline std::vector<std::vector<Elem>> image_candidates(const FiniteGroup& src, const FiniteGroup& dst,
                                                       std::span<const Elem> gens, bool exact_order) {
  std::vector<std::size_t> dst_order(dst.order());
  for (Elem y = 0; y < dst.order(); ++y) dst_order[y] = dst.element_order(y);
  std::vector<std::vector<Elem>> out;
  for (Elem g : gens) {
    const std::size_t o = src.element_order(g);
    std::vector<Elem> c;
    for (Elem y = 0; y < dst.order(); ++y) {
      if (exact_order ? dst_order[y] == o : o % dst_order[y] == 0) c.push_back(y);
    }
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace detail

/// Calls `visit` on every homomorphism G -> H (as a per-element map), in the
/// order induced by generator images. `visit` returns false to stop early.
/// `required`, when non-empty, pins map values (kUnset elsewhere).
inline void for_each_homomorphism(const FiniteGroup& g, const FiniteGroup& h,
                                  const std::function<bool(const std::vector<Elem>&)>& visit,
                                  std::vector<Elem> required = {}) {
  detail::HomSearch s{g, h, generating_set(g), {}, std::move(required), false, visit, {}};
  s.candidates = detail::image_candidates(g, h, s.gens, false);
  s.images.assign(s.gens.size(), 0);
  s.run(0);
}

inline std::vector<Homomorphism> enumerate_homomorphisms(const FiniteGroup& g, const FiniteGroup& h) {
  std::vector<Homomorphism> out;
  for_each_homomorphism(g, h, [&](const std::vector<Elem>& m) {
    out.push_back(Homomorphism::trusted(g, h, m));
    return true;
  });
  return out;
}

/// A bijective homomorphism G -> H found by backtracking over generator
/// images of equal element order, or nothing if the groups are not isomorphic.
inline std::optional<Homomorphism> find_isomorphism(const FiniteGroup& g, const FiniteGroup& h) {
  if (g.order() != h.order()) return std::nullopt;
  std::optional<Homomorphism> found;
  detail::HomSearch s{g, h, generating_set(g), {}, {}, true,
                      [&](const std::vector<Elem>& m) {
                        found = Homomorphism::trusted(g, h, m);
                        return false;
                      },
                      {}};
  s.candidates = detail::image_candidates(g, h, s.gens, true);
  s.images.assign(s.gens.size(), 0);
  s.run(0);
  return found;
}

/// Every subgroup of G, sorted lexicographically by element set. Built by
/// adjoining one element at a time to known subgroups, starting from {e};
/// every subgroup arises this way from a generating sequence.
inline std::vector<Subgroup> subgroup_lattice(const FiniteGroup& g) {
  std::map<std::vector<Elem>, std::vector<Elem>> found;  // elements -> generators
  std::vector<std::vector<Elem>> work;
  auto triv = trivial_subgroup(g).elements();
  found.emplace(triv, std::vector<Elem>{});
  work.push_back(triv);
  while (!work.empty()) {
    const auto cur = std::move(work.back());
    work.pop_back();
    const auto gens = found.at(cur);
    const auto in = Subgroup::trusted(cur).mask(g.order());
    for (Elem x = 0; x < g.order(); ++x) {
      if (in[x]) continue;
      auto ext = gens;
      ext.push_back(x);
      auto s = subgroup_closure(g, ext);
      if (found.emplace(s.elements(), ext).second) work.push_back(s.elements());
    }
  }
  std::vector<Subgroup> out;
  out.reserve(found.size());
  for (const auto& [el, gens] : found) out.push_back(Subgroup::trusted(el));
  return out;
}

/// K with K ∩ S = {e} and K·S = G, so every g factors uniquely as g = k·s.
struct ComplementWitness {
  Subgroup subgroup;
  Subgroup complement;
};

inline void require_abelian(const FiniteGroup& g, std::string_view what) {
  if (!g.is_abelian()) throw Error(ErrorKind::NotAbelian, std::string(what) + " requires an Abelian group, got " + g.label());
}

/// First complement of S in lexicographic order of the lattice, or nothing.
inline std::optional<ComplementWitness> find_complement(const FiniteGroup& g, const Subgroup& s,
                                                        const std::vector<Subgroup>& lattice) {
  require_abelian(g, "find_complement");
  const std::size_t want = g.order() / s.size();
  for (const auto& k : lattice) {
    if (k.size() != want) continue;
    std::vector<Elem> meet;
    std::set_intersection(k.elements().begin(), k.elements().end(), s.elements().begin(), s.elements().end(),
                          std::back_inserter(meet));
    if (meet.size() == 1) return ComplementWitness{s, k};
  }
  return std::nullopt;
}

inline std::optional<ComplementWitness> find_complement(const FiniteGroup& g, const Subgroup& s) {
  require_abelian(g, "find_complement");
  return find_complement(g, s, subgroup_lattice(g));
}

enum class ExtensionStrategy { Complement, Search, None };

inline std::string_view to_string(ExtensionStrategy s) {
  switch (s) {
    case ExtensionStrategy::Complement: return "complement";
    case ExtensionStrategy::Search: return "search";
    case ExtensionStrategy::None: return "none";
  }
  return "?";
}

struct Extension {
  std::optional<Homomorphism> map;
  ExtensionStrategy strategy = ExtensionStrategy::None;
  std::optional<Subgroup> complement;
};

/// Extends φ̄: S -> Y to a homomorphism G -> Y. `partial[i]` is the image of
/// the i-th element of S (sorted order). Tries the complement construction
/// φ(k·s) = φ̄(s) first, then an exhaustive search over generator images.
/// `lattice` may be supplied to avoid recomputing the subgroup lattice.
inline Extension extend_homomorphism(const FiniteGroup& g, const Subgroup& s, const FiniteGroup& y,
                                     std::span<const Elem> partial,
                                     const std::vector<Subgroup>* lattice = nullptr) {
  require_abelian(g, "extend_homomorphism");
  if (partial.size() != s.size()) throw Error(ErrorKind::NotAHomomorphism, "partial map does not cover the subgroup");
  {
    auto sub = subgroup_as_group(g, s);
    const auto a = analyze_homomorphism(partial, sub.group, y);
    if (!a.is_hom) throw Error(ErrorKind::NotAHomomorphism, "partial map is not a homomorphism on the subgroup");
  }
  std::vector<Elem> required(g.order(), detail::kUnset);
  for (std::size_t i = 0; i < s.size(); ++i) required[s.elements()[i]] = partial[i];

  Extension out;
  std::optional<ComplementWitness> cw;
  if (lattice) {
    cw = find_complement(g, s, *lattice);
  } else {
    cw = find_complement(g, s);
  }
  if (cw) {
    std::vector<Elem> map(g.order(), detail::kUnset);
    for (Elem k : cw->complement.elements()) {
      for (std::size_t i = 0; i < s.size(); ++i) map[g.op(k, s.elements()[i])] = partial[i];
    }
    if (std::find(map.begin(), map.end(), detail::kUnset) == map.end() && analyze_homomorphism(map, g, y).is_hom) {
      out.map = Homomorphism::trusted(g, y, std::move(map));
      out.strategy = ExtensionStrategy::Complement;
      out.complement = cw->complement;
      return out;
    }
  }
  for_each_homomorphism(
      g, y,
      [&](const std::vector<Elem>& m) {
        out.map = Homomorphism::trusted(g, y, m);
        out.strategy = ExtensionStrategy::Search;
        return false;
      },
      std::move(required));
  return out;
}

}  // namespace gnc
