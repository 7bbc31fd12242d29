#pragma once

// Coordinate-wise-linear functions: maps from a product of per-coordinate
// groups to an output group that are group homomorphisms. Alphabet symbols
// are group element indices.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gnc/distribution.hpp"
#include "gnc/error.hpp"
#include "gnc/group.hpp"

namespace gnc {

struct CwlFunction {
  std::string name;
  std::vector<std::string> input_vars;
  std::vector<FiniteGroup> input_groups;
  std::string output_var;
  FiniteGroup output_group;
  /// Indexed by the mixed-radix rank of the input tuple (first input most significant).
  std::vector<Elem> map;

  /// Checks table shape and range; does not check the homomorphism property.
  static CwlFunction create(std::string name, std::vector<std::string> input_vars, std::vector<FiniteGroup> input_groups,
                            std::string output_var, FiniteGroup output_group, std::vector<Elem> map) {
    if (input_vars.size() != input_groups.size()) {
      throw Error(ErrorKind::DimensionMismatch, "CWL '" + name + "': input names and groups differ in count");
    }
    CwlFunction f{std::move(name), std::move(input_vars), std::move(input_groups), std::move(output_var),
                  std::move(output_group), std::move(map)};
    if (f.map.size() != f.domain_size()) {
      throw Error(ErrorKind::DimensionMismatch, "CWL '" + f.name + "': map has " + std::to_string(f.map.size()) +
                                                    " entries, domain has " + std::to_string(f.domain_size()));
    }
    for (Elem y : f.map) {
      if (y >= f.output_group.order()) throw Error(ErrorKind::DimensionMismatch, "CWL '" + f.name + "': value outside output group");
    }
    return f;
  }

  std::vector<std::size_t> radices() const {
    std::vector<std::size_t> r;
    for (const auto& g : input_groups) r.push_back(g.order());
    return r;
  }
  std::size_t domain_size() const { return product_of(radices()); }

  Elem operator()(std::span<const Elem> tuple) const { return map[rank_tuple(tuple, radices())]; }

  /// Componentwise product of two input tuples given by rank.
  std::size_t multiply(std::size_t a, std::size_t b) const {
    std::size_t idx = 0;
    std::size_t scale = 1;
    for (std::size_t i = input_groups.size(); i-- > 0;) {
      const std::size_t r = input_groups[i].order();
      const auto x = static_cast<Elem>(a / scale % r);
      const auto y = static_cast<Elem>(b / scale % r);
      idx += input_groups[i].op(x, y) * scale;
      scale *= r;
    }
    return idx;
  }
};

struct CwlCheck {
  bool homomorphism = false;
  bool surjective = false;
  bool abelian = false;
  /// First pair of input tuples (rank order) breaking the homomorphism law.
  std::optional<std::pair<SymbolTuple, SymbolTuple>> witness;

  bool passes() const { return homomorphism && surjective; }
};

/// Exhaustive check of φ(x∘x') = φ(x)∘φ(x') over all pairs of input tuples,
/// plus surjectivity. `abelian` reports whether every group involved is Abelian.
inline CwlCheck verify_cwl(const CwlFunction& f) {
  CwlCheck c;
  const std::size_t n = f.domain_size();
  const auto rad = f.radices();
  c.homomorphism = true;
  for (std::size_t a = 0; a < n && c.homomorphism; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (f.map[f.multiply(a, b)] != f.output_group.op(f.map[a], f.map[b])) {
        c.homomorphism = false;
        c.witness = std::make_pair(unrank(a, rad), unrank(b, rad));
        break;
      }
    }
  }
  std::vector<bool> hit(f.output_group.order(), false);
  for (Elem y : f.map) hit[y] = true;
  c.surjective = std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
  c.abelian = f.output_group.is_abelian() &&
              std::all_of(f.input_groups.begin(), f.input_groups.end(), [](const FiniteGroup& g) { return g.is_abelian(); });
  return c;
}

/// Functions sharing one group per variable.
struct CwlFamily {
  std::map<std::string, FiniteGroup> groups;
  std::vector<CwlFunction> functions;

  /// Shared assignment taken from the first declaration of each variable.
  static CwlFamily from_functions(std::vector<CwlFunction> fns) {
    CwlFamily fam;
    for (const auto& f : fns) {
      for (std::size_t i = 0; i < f.input_vars.size(); ++i) fam.groups.emplace(f.input_vars[i], f.input_groups[i]);
      fam.groups.emplace(f.output_var, f.output_group);
    }
    fam.functions = std::move(fns);
    return fam;
  }

  const CwlFunction* producing(const std::string& var) const {
    for (const auto& f : functions) {
      if (f.output_var == var) return &f;
    }
    return nullptr;
  }
};

/// True iff every member's coordinate groups equal the shared assignment
/// and every member passes verify_cwl.
inline bool check_consistent_cwl_family(const CwlFamily& fam) {
  auto same = [&](const std::string& var, const FiniteGroup& g) {
    auto it = fam.groups.find(var);
    return it != fam.groups.end() && it->second == g;
  };
  for (const auto& f : fam.functions) {
    for (std::size_t i = 0; i < f.input_vars.size(); ++i) {
      if (!same(f.input_vars[i], f.input_groups[i])) return false;
    }
    if (!same(f.output_var, f.output_group)) return false;
    if (!verify_cwl(f).passes()) return false;
  }
  return true;
}

}  // namespace gnc
