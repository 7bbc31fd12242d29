#pragma once

// Finite groups as explicit operation tables, together with the basic
// subgroup / coset / quotient / homomorphism machinery built on them.
//
// Elements are 0-based indices. A FiniteGroup is an immutable value with
// shared storage, so copying one is cheap and copies compare equal.

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdlib>
#include <memory>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gnc/error.hpp"

namespace gnc {

using Elem = std::uint32_t;
using OpTable = std::vector<std::vector<Elem>>;

inline constexpr std::size_t kDefaultMaxGroupOrder = 512;

/// Soft cap on group order for exhaustive operations. GNC_MAX_GROUP_ORDER
/// overrides the default of 512.
inline std::size_t max_group_order() {
  if (const char* env = std::getenv("GNC_MAX_GROUP_ORDER")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return kDefaultMaxGroupOrder;
}

inline void check_order_cap(std::size_t order, std::string_view what) {
  if (order > max_group_order()) {
    throw Error(ErrorKind::OrderCapExceeded,
                std::string(what) + " has order " + std::to_string(order) + " > cap " +
                    std::to_string(max_group_order()) + " (set GNC_MAX_GROUP_ORDER to raise it)");
  }
}

/// The first group axiom found violated, with the elements that witness it.
struct AxiomViolation {
  ErrorKind kind;
  std::vector<Elem> witness;

  std::string describe() const {
    std::string s(to_string(kind));
    if (!witness.empty()) {
      s += "(";
      for (std::size_t i = 0; i < witness.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(witness[i]);
      }
      s += ")";
    }
    return s;
  }
};

/// Checks closure, identity, inverses and associativity, in that order.
/// Returns nothing when the table is a group.
inline std::optional<AxiomViolation> check_group_axioms(const OpTable& table) {
  const std::size_t n = table.size();
  if (n == 0) return AxiomViolation{ErrorKind::NotSquare, {}};
  for (const auto& row : table) {
    if (row.size() != n) return AxiomViolation{ErrorKind::NotSquare, {}};
  }
  for (Elem a = 0; a < n; ++a) {
    for (Elem b = 0; b < n; ++b) {
      if (table[a][b] >= n) return AxiomViolation{ErrorKind::NotClosed, {a, b}};
    }
  }
  std::optional<Elem> identity;
  for (Elem e = 0; e < n && !identity; ++e) {
    bool ok = true;
    for (Elem x = 0; x < n && ok; ++x) ok = table[e][x] == x && table[x][e] == x;
    if (ok) identity = e;
  }
  if (!identity) return AxiomViolation{ErrorKind::NoIdentity, {}};
  for (Elem x = 0; x < n; ++x) {
    bool found = false;
    for (Elem y = 0; y < n && !found; ++y) found = table[x][y] == *identity && table[y][x] == *identity;
    if (!found) return AxiomViolation{ErrorKind::NoInverse, {x}};
  }
  for (Elem x = 0; x < n; ++x) {
    for (Elem y = 0; y < n; ++y) {
      const Elem xy = table[x][y];
      for (Elem z = 0; z < n; ++z) {
        if (table[xy][z] != table[x][table[y][z]]) return AxiomViolation{ErrorKind::NotAssociative, {x, y, z}};
      }
    }
  }
  return std::nullopt;
}

class FiniteGroup {
 public:
  /// The trivial group.
  FiniteGroup() : FiniteGroup(std::vector<Elem>{0}, 1, "1") {}

  /// Builds a group from a table already known to satisfy the axioms.
  /// `flat` is row-major, op(a,b) = flat[a*n+b].
  static FiniteGroup from_trusted_table(std::vector<Elem> flat, std::size_t n, std::string label) {
    return FiniteGroup(std::move(flat), n, std::move(label));
  }

  std::size_t order() const noexcept { return data_->order; }
  Elem op(Elem a, Elem b) const noexcept { return data_->table[a * data_->order + b]; }
  Elem identity() const noexcept { return data_->identity; }
  Elem inverse(Elem a) const noexcept { return data_->inverse[a]; }
  bool is_abelian() const noexcept { return data_->abelian; }
  const std::string& label() const noexcept { return data_->label; }
  std::span<const Elem> table() const noexcept { return data_->table; }

  /// Smallest k >= 1 with a^k = identity.
  std::size_t element_order(Elem a) const {
    std::size_t k = 1;
    for (Elem x = a; x != identity(); x = op(x, a)) ++k;
    return k;
  }

  /// a^k for k >= 0.
  Elem power(Elem a, std::size_t k) const {
    Elem r = identity();
    for (std::size_t i = 0; i < k; ++i) r = op(r, a);
    return r;
  }

  FiniteGroup relabeled(std::string label) const {
    return FiniteGroup(data_->table, data_->order, std::move(label));
  }

  /// Structural equality: same order, identity and table. Labels are ignored.
  friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) {
    return a.data_ == b.data_ ||
           (a.order() == b.order() && a.identity() == b.identity() && a.data_->table == b.data_->table);
  }

 private:
  struct Data {
    std::size_t order = 0;
    std::vector<Elem> table;
    Elem identity = 0;
    std::vector<Elem> inverse;
    bool abelian = true;
    std::string label;
  };

  FiniteGroup(std::vector<Elem> flat, std::size_t n, std::string label) {
    auto d = std::make_shared<Data>();
    d->order = n;
    d->table = std::move(flat);
    d->label = std::move(label);
    for (Elem e = 0; e < n; ++e) {
      bool ok = true;
      for (Elem x = 0; x < n && ok; ++x) ok = d->table[e * n + x] == x;
      if (ok) {
        d->identity = e;
        break;
      }
    }
    d->inverse.assign(n, 0);
    for (Elem x = 0; x < n; ++x) {
      for (Elem y = 0; y < n; ++y) {
        if (d->table[x * n + y] == d->identity) {
          d->inverse[x] = y;
          break;
        }
      }
    }
    for (Elem x = 0; x < n && d->abelian; ++x) {
      for (Elem y = x + 1; y < n; ++y) {
        if (d->table[x * n + y] != d->table[y * n + x]) {
          d->abelian = false;
          break;
        }
      }
    }
    data_ = std::move(d);
  }

  std::shared_ptr<const Data> data_;
};

/// Validates a square table and returns the group, or throws the first
/// violated axiom (NotSquare, NotClosed, NoIdentity, NoInverse, NotAssociative).
inline FiniteGroup verify_group_axioms(const OpTable& table, std::string label = "G") {
  check_order_cap(table.size(), "table");
  if (auto v = check_group_axioms(table)) throw Error(v->kind, "group axiom violated: " + v->describe());
  const std::size_t n = table.size();
  std::vector<Elem> flat;
  flat.reserve(n * n);
  for (const auto& row : table) flat.insert(flat.end(), row.begin(), row.end());
  return FiniteGroup::from_trusted_table(std::move(flat), n, std::move(label));
}

inline OpTable to_op_table(const FiniteGroup& g) {
  OpTable t(g.order(), std::vector<Elem>(g.order()));
  for (Elem a = 0; a < g.order(); ++a) {
    for (Elem b = 0; b < g.order(); ++b) t[a][b] = g.op(a, b);
  }
  return t;
}

inline FiniteGroup cyclic_group(std::size_t n) {
  if (n == 0) throw Error(ErrorKind::InvalidInstance, "cyclic group of order 0");
  check_order_cap(n, "Z" + std::to_string(n));
  std::vector<Elem> flat(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) flat[a * n + b] = static_cast<Elem>((a + b) % n);
  }
  return FiniteGroup::from_trusted_table(std::move(flat), n, "Z" + std::to_string(n));
}

/// G x H with (g,h) at index g*|H| + h and componentwise operation.
inline FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h) {
  const std::size_t m = h.order();
  const std::size_t n = g.order() * m;
  check_order_cap(n, g.label() + "x" + h.label());
  std::vector<Elem> flat(n * n);
  for (Elem a = 0; a < n; ++a) {
    for (Elem b = 0; b < n; ++b) {
      flat[a * n + b] = static_cast<Elem>(g.op(a / m, b / m) * m + h.op(a % m, b % m));
    }
  }
  return FiniteGroup::from_trusted_table(std::move(flat), n, g.label() + "x" + h.label());
}

/// Left-nested product of a list; the empty list gives the trivial group.
/// Element indices are mixed radix with the first factor most significant.
inline FiniteGroup direct_product(std::span<const FiniteGroup> factors) {
  if (factors.empty()) return FiniteGroup();
  FiniteGroup acc = factors.front();
  for (std::size_t i = 1; i < factors.size(); ++i) acc = direct_product(acc, factors[i]);
  return acc;
}

/// Z_{n1} x ... x Z_{nk} in mixed-radix order; identity is index 0.
inline FiniteGroup cyclic_product(std::span<const std::size_t> moduli) {
  std::vector<FiniteGroup> fs;
  for (auto m : moduli) fs.push_back(cyclic_group(m));
  return direct_product(fs);
}

inline FiniteGroup cyclic_product(std::initializer_list<std::size_t> moduli) {
  return cyclic_product(std::span<const std::size_t>(moduli.begin(), moduli.size()));
}

/// All permutations of {0..n-1} in lexicographic order of one-line notation.
inline std::vector<std::vector<Elem>> permutations_lex(std::size_t n) {
  std::vector<Elem> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<Elem>> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

/// S_n for n <= 4; op(p,q) = p∘q, i.e. (p∘q)(i) = p(q(i)).
inline FiniteGroup symmetric_group(std::size_t n) {
  if (n == 0 || n > 4) throw Error(ErrorKind::InvalidInstance, "symmetric group S_n supported for 1 <= n <= 4");
  const auto perms = permutations_lex(n);
  const std::size_t m = perms.size();
  std::vector<Elem> flat(m * m);
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      std::vector<Elem> c(n);
      for (std::size_t i = 0; i < n; ++i) c[i] = perms[a][perms[b][i]];
      flat[a * m + b] = static_cast<Elem>(std::lower_bound(perms.begin(), perms.end(), c) - perms.begin());
    }
  }
  return FiniteGroup::from_trusted_table(std::move(flat), m, "S" + std::to_string(n));
}

/// A subgroup, stored as the sorted set of its element indices in the parent.
class Subgroup {
 public:
  Subgroup() = default;

  /// Checks identity, closure and Lagrange; throws NotASubgroup otherwise.
  static Subgroup verified(const FiniteGroup& g, std::vector<Elem> elements) {
    std::sort(elements.begin(), elements.end());
    elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
    for (Elem x : elements) {
      if (x >= g.order()) throw Error(ErrorKind::NotASubgroup, "element " + std::to_string(x) + " out of range");
    }
    Subgroup s(std::move(elements));
    if (!s.contains(g.identity())) throw Error(ErrorKind::NotASubgroup, "missing identity");
    for (Elem a : s.elements_) {
      if (!s.contains(g.inverse(a))) throw Error(ErrorKind::NotASubgroup, "not closed under inverse at " + std::to_string(a));
      for (Elem b : s.elements_) {
        if (!s.contains(g.op(a, b))) {
          throw Error(ErrorKind::NotASubgroup,
                      "not closed: " + std::to_string(a) + "*" + std::to_string(b) + " = " + std::to_string(g.op(a, b)));
        }
      }
    }
    if (g.order() % s.size() != 0) throw Error(ErrorKind::NotASubgroup, "order does not divide group order");
    return s;
  }

  static Subgroup trusted(std::vector<Elem> sorted_elements) { return Subgroup(std::move(sorted_elements)); }

  std::size_t size() const noexcept { return elements_.size(); }
  const std::vector<Elem>& elements() const noexcept { return elements_; }
  bool contains(Elem x) const { return std::binary_search(elements_.begin(), elements_.end(), x); }

  std::vector<bool> mask(std::size_t order) const {
    std::vector<bool> m(order, false);
    for (Elem x : elements_) m[x] = true;
    return m;
  }

  friend bool operator==(const Subgroup&, const Subgroup&) = default;
  friend auto operator<=>(const Subgroup& a, const Subgroup& b) { return a.elements_ <=> b.elements_; }

 private:
  explicit Subgroup(std::vector<Elem> e) : elements_(std::move(e)) {}
  std::vector<Elem> elements_;
};

inline Subgroup whole_group(const FiniteGroup& g) {
  std::vector<Elem> all(g.order());
  std::iota(all.begin(), all.end(), 0);
  return Subgroup::trusted(std::move(all));
}

inline Subgroup trivial_subgroup(const FiniteGroup& g) { return Subgroup::trusted({g.identity()}); }

inline bool is_subset(const Subgroup& a, const Subgroup& b) {
  return std::includes(b.elements().begin(), b.elements().end(), a.elements().begin(), a.elements().end());
}

/// Smallest subgroup containing `gens`. Right-multiplying by the generators
/// from the identity reaches every word, and inverses are positive powers
/// in a finite group.
inline Subgroup subgroup_closure(const FiniteGroup& g, std::span<const Elem> gens) {
  std::vector<bool> seen(g.order(), false);
  std::vector<Elem> out{g.identity()};
  seen[g.identity()] = true;
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (Elem s : gens) {
      const Elem y = g.op(out[i], s);
      if (!seen[y]) {
        seen[y] = true;
        out.push_back(y);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return Subgroup::trusted(std::move(out));
}

inline Subgroup subgroup_closure(const FiniteGroup& g, std::initializer_list<Elem> gens) {
  return subgroup_closure(g, std::span<const Elem>(gens.begin(), gens.size()));
}

struct Coset {
  std::vector<Elem> elements;
  Elem representative = 0;

  friend bool operator==(const Coset&, const Coset&) = default;
};

/// The partition of G into left cosets gS, ordered by representative
/// (the minimum element of each coset).
inline std::vector<Coset> left_cosets(const FiniteGroup& g, const Subgroup& s) {
  std::vector<bool> covered(g.order(), false);
  std::vector<Coset> out;
  out.reserve(g.order() / s.size());
  for (Elem x = 0; x < g.order(); ++x) {
    if (covered[x]) continue;
    Coset c;
    c.representative = x;
    for (Elem h : s.elements()) {
      const Elem y = g.op(x, h);
      covered[y] = true;
      c.elements.push_back(y);
    }
    std::sort(c.elements.begin(), c.elements.end());
    out.push_back(std::move(c));
  }
  return out;
}

/// For each element, the index (in left_cosets order) of the coset containing it.
inline std::vector<std::size_t> coset_labels(const FiniteGroup& g, const Subgroup& s) {
  std::vector<std::size_t> label(g.order(), 0);
  const auto cosets = left_cosets(g, s);
  for (std::size_t i = 0; i < cosets.size(); ++i) {
    for (Elem x : cosets[i].elements) label[x] = i;
  }
  return label;
}

/// Set intersection. The empty list intersects to G.
inline Subgroup intersect_subgroups(const FiniteGroup& g, std::span<const Subgroup> subs) {
  if (subs.empty()) return whole_group(g);
  std::vector<Elem> acc = subs.front().elements();
  for (std::size_t i = 1; i < subs.size(); ++i) {
    std::vector<Elem> next;
    std::set_intersection(acc.begin(), acc.end(), subs[i].elements().begin(), subs[i].elements().end(),
                          std::back_inserter(next));
    acc = std::move(next);
  }
  return Subgroup::trusted(std::move(acc));
}

/// Returns the first g (by index) with gN != Ng, or nothing if N is normal.
inline std::optional<Elem> normality_witness(const FiniteGroup& g, const Subgroup& n) {
  for (Elem x = 0; x < g.order(); ++x) {
    for (Elem h : n.elements()) {
      // gN = Ng  <=>  g h g^-1 in N for all h
      if (!n.contains(g.op(g.op(x, h), g.inverse(x)))) return x;
    }
  }
  return std::nullopt;
}

inline bool is_normal(const FiniteGroup& g, const Subgroup& n) { return !normality_witness(g, n); }

class Homomorphism {
 public:
  /// Throws NotAHomomorphism unless `map` respects the operation exhaustively.
  static Homomorphism verified(FiniteGroup domain, FiniteGroup codomain, std::vector<Elem> map);

  static Homomorphism trusted(FiniteGroup domain, FiniteGroup codomain, std::vector<Elem> map) {
    return Homomorphism(std::move(domain), std::move(codomain), std::move(map));
  }

  const FiniteGroup& domain() const noexcept { return domain_; }
  const FiniteGroup& codomain() const noexcept { return codomain_; }
  const std::vector<Elem>& map() const noexcept { return map_; }
  Elem operator()(Elem x) const { return map_[x]; }

  bool is_injective() const {
    std::vector<bool> hit(codomain_.order(), false);
    for (Elem y : map_) {
      if (hit[y]) return false;
      hit[y] = true;
    }
    return true;
  }
  bool is_bijective() const { return domain_.order() == codomain_.order() && is_injective(); }

 private:
  Homomorphism(FiniteGroup d, FiniteGroup c, std::vector<Elem> m)
      : domain_(std::move(d)), codomain_(std::move(c)), map_(std::move(m)) {}

  FiniteGroup domain_;
  FiniteGroup codomain_;
  std::vector<Elem> map_;
};

struct HomomorphismAnalysis {
  bool is_hom = false;
  /// First pair (x,y) in index order with map(x*y) != map(x)*map(y).
  std::optional<std::pair<Elem, Elem>> violation;
  std::optional<Subgroup> kernel;
  std::optional<Subgroup> image;
};

/// Exhaustive homomorphism check; kernel and image are filled only when it is one.
inline HomomorphismAnalysis analyze_homomorphism(std::span<const Elem> map, const FiniteGroup& g,
                                                 const FiniteGroup& h) {
  HomomorphismAnalysis out;
  if (map.size() != g.order()) throw Error(ErrorKind::NotAHomomorphism, "map is not total on the domain");
  for (Elem y : map) {
    if (y >= h.order()) throw Error(ErrorKind::NotAHomomorphism, "map value outside the codomain");
  }
  for (Elem x = 0; x < g.order(); ++x) {
    for (Elem y = 0; y < g.order(); ++y) {
      if (map[g.op(x, y)] != h.op(map[x], map[y])) {
        out.violation = std::make_pair(x, y);
        return out;
      }
    }
  }
  out.is_hom = true;
  std::vector<Elem> ker;
  std::vector<bool> hit(h.order(), false);
  for (Elem x = 0; x < g.order(); ++x) {
    if (map[x] == h.identity()) ker.push_back(x);
    hit[map[x]] = true;
  }
  std::vector<Elem> img;
  for (Elem y = 0; y < h.order(); ++y) {
    if (hit[y]) img.push_back(y);
  }
  out.kernel = Subgroup::trusted(std::move(ker));
  out.image = Subgroup::trusted(std::move(img));
  return out;
}

inline Homomorphism Homomorphism::verified(FiniteGroup domain, FiniteGroup codomain, std::vector<Elem> map) {
  const auto a = analyze_homomorphism(map, domain, codomain);
  if (!a.is_hom) {
    throw Error(ErrorKind::NotAHomomorphism, "map(" + std::to_string(a.violation->first) + "*" +
                                                 std::to_string(a.violation->second) + ") differs from the product of images");
  }
  return Homomorphism(std::move(domain), std::move(codomain), std::move(map));
}

/// G/N on cosets ordered by representative, with projection g -> gN.
struct QuotientGroup {
  FiniteGroup group;
  Homomorphism projection;
  std::vector<Coset> cosets;
};

inline QuotientGroup quotient_group(const FiniteGroup& g, const Subgroup& n) {
  if (auto w = normality_witness(g, n)) {
    throw Error(ErrorKind::NotNormal, "gN != Ng for g = " + std::to_string(*w));
  }
  auto cosets = left_cosets(g, n);
  const auto label = coset_labels(g, n);
  const std::size_t m = cosets.size();
  std::vector<Elem> flat(m * m);
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      flat[a * m + b] = static_cast<Elem>(label[g.op(cosets[a].representative, cosets[b].representative)]);
    }
  }
  auto q = FiniteGroup::from_trusted_table(std::move(flat), m, g.label() + "/N");
  std::vector<Elem> proj(g.order());
  for (Elem x = 0; x < g.order(); ++x) proj[x] = static_cast<Elem>(label[x]);
  auto p = Homomorphism::trusted(g, q, std::move(proj));
  return QuotientGroup{std::move(q), std::move(p), std::move(cosets)};
}

/// S as a group in its own right, elements relabeled 0..|S|-1 in sorted order.
/// `embedding[i]` is the parent index of element i.
struct SubgroupAsGroup {
  FiniteGroup group;
  std::vector<Elem> embedding;
};

inline SubgroupAsGroup subgroup_as_group(const FiniteGroup& g, const Subgroup& s, std::string label = "S") {
  const auto& el = s.elements();
  const std::size_t m = el.size();
  std::vector<Elem> flat(m * m);
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      const Elem c = g.op(el[a], el[b]);
      flat[a * m + b] = static_cast<Elem>(std::lower_bound(el.begin(), el.end(), c) - el.begin());
    }
  }
  return {FiniteGroup::from_trusted_table(std::move(flat), m, std::move(label)), el};
}

/// Decomposes a mixed-radix index into components (first most significant).
inline std::vector<Elem> unrank(std::size_t index, std::span<const std::size_t> radices) {
  std::vector<Elem> out(radices.size());
  for (std::size_t i = radices.size(); i-- > 0;) {
    out[i] = static_cast<Elem>(index % radices[i]);
    index /= radices[i];
  }
  return out;
}

inline std::size_t rank_tuple(std::span<const Elem> tuple, std::span<const std::size_t> radices) {
  std::size_t idx = 0;
  for (std::size_t i = 0; i < radices.size(); ++i) idx = idx * radices[i] + tuple[i];
  return idx;
}

inline std::size_t product_of(std::span<const std::size_t> radices) {
  std::size_t p = 1;
  for (auto r : radices) p *= r;
  return p;
}

}  // namespace gnc
