#pragma once

// Empirical probe of homomorphism extension from subgroups of finite
// Abelian groups: every (G, S, Y, φ̄) with G a product of cyclic groups.

#include <functional>
#include <string>
#include <vector>

#include "gnc/group.hpp"
#include "gnc/group_search.hpp"

namespace gnc {

inline constexpr std::size_t kSurveyMaxOrder = 64;

struct SurveyCase {
  std::vector<std::size_t> group_factors;  // G = Z_{n1} × ... × Z_{nk}
  Subgroup subgroup;
  std::size_t target = 0;                  // Y = Z_target
  std::vector<Elem> partial;               // φ̄ on subgroup elements (sorted)
  bool complement_found = false;
  ExtensionStrategy strategy = ExtensionStrategy::None;
  bool extended = false;

  std::string group_label() const {
    std::string s;
    for (std::size_t i = 0; i < group_factors.size(); ++i) s += (i ? "xZ" : "Z") + std::to_string(group_factors[i]);
    return s;
  }

  std::string describe() const {
    std::string s = "G=" + group_label() + " S={";
    for (std::size_t i = 0; i < subgroup.size(); ++i) s += (i ? "," : "") + std::to_string(subgroup.elements()[i]);
    s += "} Y=Z" + std::to_string(target) + " phi=[";
    for (std::size_t i = 0; i < partial.size(); ++i) s += (i ? "," : "") + std::to_string(partial[i]);
    return s + "]";
  }
};

struct SurveySummary {
  std::size_t max_order = 0;
  std::vector<std::size_t> targets;
  std::size_t groups = 0;
  std::size_t subgroups = 0;
  std::size_t triples = 0;
  std::size_t successes = 0;
  std::size_t by_complement = 0;
  std::size_t by_search = 0;
  /// Complement existed but the complement construction did not give a homomorphism.
  std::size_t complement_construction_failures = 0;
  std::vector<SurveyCase> failures;
};

/// Nondecreasing factor lists (each ≥ 2) with product ≤ max_order, ordered by
/// group order then lexicographically.
inline std::vector<std::vector<std::size_t>> cyclic_factor_lists(std::size_t max_order) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t min_factor, std::size_t prod) {
    if (!cur.empty()) out.push_back(cur);
    for (std::size_t f = min_factor; prod * f <= max_order; ++f) {
      cur.push_back(f);
      rec(f, prod * f);
      cur.pop_back();
    }
  };
  rec(2, 1);
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    const auto pa = product_of(a), pb = product_of(b);
    return pa != pb ? pa < pb : a < b;
  });
  return out;
}

inline std::vector<std::size_t> default_survey_targets() { return {2, 3, 4, 5, 6, 7, 8}; }

/// Runs extend_homomorphism on every triple. `visit`, when given, sees each
/// case in enumeration order.
inline SurveySummary extension_survey(std::size_t max_order, std::vector<std::size_t> targets = default_survey_targets(),
                                      const std::function<void(const SurveyCase&)>& visit = {}) {
  if (max_order > kSurveyMaxOrder) {
    throw Error(ErrorKind::OrderCapExceeded, "survey max order " + std::to_string(max_order) + " exceeds " +
                                                 std::to_string(kSurveyMaxOrder));
  }
  for (auto t : targets) {
    if (t < 1) throw Error(ErrorKind::Syntax, "survey target orders must be positive");
  }
  SurveySummary sum;
  sum.max_order = max_order;
  sum.targets = targets;
  for (const auto& factors : cyclic_factor_lists(max_order)) {
    const auto g = cyclic_product(factors);
    const auto lattice = subgroup_lattice(g);
    ++sum.groups;
    for (const auto& s : lattice) {
      ++sum.subgroups;
      const auto sub = subgroup_as_group(g, s);
      const bool has_complement = find_complement(g, s, lattice).has_value();
      for (auto t : targets) {
        const auto y = cyclic_group(t);
        for_each_homomorphism(sub.group, y, [&](const std::vector<Elem>& partial) {
          SurveyCase c{factors, s, t, partial, has_complement, ExtensionStrategy::None, false};
          const auto ext = extend_homomorphism(g, s, y, partial, &lattice);
          c.strategy = ext.strategy;
          c.extended = ext.map.has_value();
          ++sum.triples;
          if (c.extended) {
            ++sum.successes;
            (c.strategy == ExtensionStrategy::Complement ? sum.by_complement : sum.by_search) += 1;
          } else {
            sum.failures.push_back(c);
          }
          if (has_complement && c.strategy != ExtensionStrategy::Complement) ++sum.complement_construction_failures;
          if (visit) visit(c);
          return true;
        });
      }
    }
  }
  return sum;
}

}  // namespace gnc
