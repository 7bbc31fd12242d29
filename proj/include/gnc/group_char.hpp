#pragma once

// Group-characterizable random variables: X_a = g G_a for a uniform g in G.
// Coset alphabets are labeled by canonical representatives (minimum element).

#include <bit>
#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gnc/distribution.hpp"
#include "gnc/group.hpp"
#include "gnc/network.hpp"

namespace gnc {

struct GroupCharacterization {
  FiniteGroup group;
  std::map<std::string, Subgroup> assignment;

  /// Verifies every listed element set is a subgroup of `g`.
  static GroupCharacterization create(FiniteGroup g, const std::map<std::string, std::vector<Elem>>& subgroups) {
    GroupCharacterization c{std::move(g), {}};
    for (const auto& [name, el] : subgroups) c.assignment.emplace(name, Subgroup::verified(c.group, el));
    return c;
  }

  bool has(const std::string& var) const { return assignment.count(var) != 0; }

  const Subgroup& at(const std::string& var) const {
    auto it = assignment.find(var);
    if (it == assignment.end()) throw Error(ErrorKind::InvalidInstance, "variable '" + var + "' is not characterized");
    return it->second;
  }

  /// G_α = ∩_{a∈α} G_a (G itself for empty α).
  Subgroup meet(std::span<const std::string> vars) const {
    std::vector<Subgroup> subs;
    for (const auto& v : vars) subs.push_back(at(v));
    return intersect_subgroups(group, subs);
  }

  GroupCharacterization restricted(std::span<const std::string> vars) const {
    GroupCharacterization c{group, {}};
    for (const auto& v : vars) c.assignment.emplace(v, at(v));
    return c;
  }
};

/// Per-element canonical coset representative of gG_a.
inline std::vector<Symbol> coset_representatives(const FiniteGroup& g, const Subgroup& s) {
  std::vector<Symbol> rep(g.order());
  for (const auto& c : left_cosets(g, s)) {
    for (Elem x : c.elements) rep[x] = c.representative;
  }
  return rep;
}

/// Distribution of (gG_a : a∈α) for uniform g; support labeled by coset
/// representatives, denominator |G|.
inline ExactDistribution induced_joint_distribution(const GroupCharacterization& ch, std::span<const std::string> vars) {
  std::vector<std::vector<Symbol>> reps;
  for (const auto& v : vars) reps.push_back(coset_representatives(ch.group, ch.at(v)));
  std::map<SymbolTuple, std::uint64_t> tally;
  for (Elem g = 0; g < ch.group.order(); ++g) {
    SymbolTuple t(vars.size());
    for (std::size_t k = 0; k < vars.size(); ++k) t[k] = reps[k][g];
    ++tally[t];
  }
  return ExactDistribution::from_tally(tally, ch.group.order());
}

/// log2(|G| / |G_α|).
inline double characterization_entropy(const GroupCharacterization& ch, std::span<const std::string> vars) {
  const auto m = ch.meet(vars);
  return std::log2(static_cast<double>(ch.group.order()) / static_cast<double>(m.size()));
}

struct Representability {
  bool representable = false;
  bool subgroup_test = false;     // G_α ⊆ G_b
  bool determinism_test = false;  // X_α determines X_b under the induced distribution
  /// Two elements in the same G_α-coset tuple but different G_b-cosets.
  std::optional<std::pair<Elem, Elem>> witness;
};

inline Representability function_representable(const GroupCharacterization& ch, std::span<const std::string> inputs,
                                               const std::string& output) {
  Representability r;
  r.subgroup_test = is_subset(ch.meet(inputs), ch.at(output));
  std::vector<std::vector<Symbol>> reps;
  for (const auto& v : inputs) reps.push_back(coset_representatives(ch.group, ch.at(v)));
  const auto out_rep = coset_representatives(ch.group, ch.at(output));
  std::map<SymbolTuple, Elem> first;
  r.determinism_test = true;
  for (Elem g = 0; g < ch.group.order() && r.determinism_test; ++g) {
    SymbolTuple t(inputs.size());
    for (std::size_t k = 0; k < inputs.size(); ++k) t[k] = reps[k][g];
    auto [it, fresh] = first.emplace(t, g);
    if (!fresh && out_rep[it->second] != out_rep[g]) {
      r.determinism_test = false;
      r.witness = std::make_pair(it->second, g);
    }
  }
  r.representable = r.subgroup_test && r.determinism_test;
  return r;
}

/// A function X_α -> X_b characterized by a group and subgroups on α ∪ {b}.
struct CharacterizedFunction {
  GroupCharacterization characterization;
  std::vector<std::string> inputs;
  std::string output;

  /// Restricts `ch` to α ∪ {b}; throws NotRepresentable unless G_α ⊆ G_b.
  static CharacterizedFunction create(const GroupCharacterization& ch, std::vector<std::string> inputs,
                                      std::string output) {
    auto vars = inputs;
    vars.push_back(output);
    CharacterizedFunction f{ch.restricted(vars), std::move(inputs), std::move(output)};
    if (!is_subset(f.characterization.meet(f.inputs), f.characterization.at(f.output))) {
      throw Error(ErrorKind::NotRepresentable, "inputs do not determine '" + f.output + "'");
    }
    return f;
  }
};

/// True iff shared variables are assigned identical subgroups. All members
/// must use the same ambient group (DifferentAmbientGroup otherwise).
inline bool check_consistent_family(std::span<const CharacterizedFunction> family) {
  if (family.empty()) return true;
  const auto& g = family.front().characterization.group;
  std::map<std::string, const Subgroup*> seen;
  bool ok = true;
  for (const auto& f : family) {
    if (!(f.characterization.group == g)) throw Error(ErrorKind::DifferentAmbientGroup, "family members use different groups");
    for (const auto& [var, sub] : f.characterization.assignment) {
      auto [it, fresh] = seen.emplace(var, &sub);
      if (!fresh && !(*it->second == sub)) ok = false;
    }
  }
  return ok;
}

enum class FamilyKind { Local, Global };

/// Union of a consistent family covering every edge: per edge e=(u,v), a
/// member with output e and inputs In(u) (locals) or all sources (globals).
inline GroupCharacterization assemble_network_characterization(const NetworkInstance& inst,
                                                               std::span<const CharacterizedFunction> family,
                                                               FamilyKind kind) {
  if (!check_consistent_family(family)) throw Error(ErrorKind::InconsistentFamily, "a variable is assigned two subgroups");
  std::vector<std::string> src_names;
  for (VarIndex s = 0; s < inst.sources().size(); ++s) src_names.push_back(inst.var_name(s));
  for (std::size_t e = 0; e < inst.edges().size(); ++e) {
    std::vector<std::string> want;
    if (kind == FamilyKind::Local) {
      for (auto v : inst.edge_inputs(e)) want.push_back(inst.var_name(v));
    } else {
      want = src_names;
    }
    std::sort(want.begin(), want.end());
    const bool covered = std::any_of(family.begin(), family.end(), [&](const CharacterizedFunction& f) {
      auto in = f.inputs;
      std::sort(in.begin(), in.end());
      return f.output == inst.edges()[e].id && in == want;
    });
    if (!covered) throw Error(ErrorKind::IncompleteCover, "no family member for edge '" + inst.edges()[e].id + "'");
  }
  if (family.empty()) {
    throw Error(ErrorKind::IncompleteCover, "empty family");
  }
  GroupCharacterization out{family.front().characterization.group, {}};
  for (const auto& f : family) {
    for (const auto& [var, sub] : f.characterization.assignment) {
      if (!inst.var_index(var)) throw Error(ErrorKind::InvalidInstance, "family variable '" + var + "' not in the instance");
      out.assignment.emplace(var, sub);
    }
  }
  return out;
}

/// Members of a characterization as a local or global family on `inst`.
inline std::vector<CharacterizedFunction> characterized_family(const NetworkInstance& inst,
                                                               const GroupCharacterization& ch, FamilyKind kind) {
  std::vector<CharacterizedFunction> out;
  std::vector<std::string> src_names;
  for (VarIndex s = 0; s < inst.sources().size(); ++s) src_names.push_back(inst.var_name(s));
  for (std::size_t e = 0; e < inst.edges().size(); ++e) {
    std::vector<std::string> in;
    if (kind == FamilyKind::Local) {
      for (auto v : inst.edge_inputs(e)) in.push_back(inst.var_name(v));
    } else {
      in = src_names;
    }
    out.push_back(CharacterizedFunction::create(ch, std::move(in), inst.edges()[e].id));
  }
  return out;
}

enum class ProbeMode { Default, Powerset };

struct MatchReport {
  bool matches = false;
  /// First probed subset whose distributions differ, if any.
  std::vector<std::string> mismatch;
  std::string reason;
  /// Per variable (instance order): code symbol -> coset representative.
  std::vector<std::map<Symbol, Symbol>> relabeling;
};

namespace detail {

inline std::vector<std::vector<VarIndex>> probe_subsets(std::size_t n, ProbeMode mode) {
  std::vector<std::vector<VarIndex>> out;
  if (mode == ProbeMode::Powerset && n <= 20) {
    for (std::size_t size = 1; size <= n; ++size) {
      for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
        if (static_cast<std::size_t>(std::popcount(mask)) != size) continue;
        std::vector<VarIndex> s;
        for (std::size_t i = 0; i < n; ++i) {
          if (mask >> i & 1) s.push_back(i);
        }
        out.push_back(std::move(s));
      }
    }
    return out;
  }
  for (std::size_t i = 0; i < n; ++i) out.push_back({i});
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) out.push_back({i, j});
  }
  if (n > 2) {
    std::vector<VarIndex> all(n);
    std::iota(all.begin(), all.end(), 0);
    out.push_back(std::move(all));
  }
  return out;
}

// Relabeling-invariant summary: marginal support sizes and sorted
// probabilities (as reduced fractions scaled to a common form).
inline bool same_signature(const ExactDistribution& a, const ExactDistribution& b, std::size_t arity) {
  if (a.support.size() != b.support.size()) return false;
  for (std::size_t k = 0; k < arity; ++k) {
    std::set<Symbol> sa, sb;
    for (const auto& t : a.support) sa.insert(t[k]);
    for (const auto& t : b.support) sb.insert(t[k]);
    if (sa.size() != sb.size()) return false;
  }
  auto ca = a.counts, cb = b.counts;
  std::sort(ca.begin(), ca.end());
  std::sort(cb.begin(), cb.end());
  for (std::size_t i = 0; i < ca.size(); ++i) {
    if (ca[i] * b.denominator != cb[i] * a.denominator) return false;
  }
  return true;
}

}  // namespace detail

/// Decides whether the characterization's induced variables and the code's
/// variables have identical joint distributions up to one bijection per
/// variable. Probed subsets (singletons, pairs, full set by default) are
/// checked for relabeling-invariant agreement first; the bijection is then
/// searched over source relabelings, with edge relabelings forced by the
/// source ones, and verified on the full joint and every probed subset.
inline MatchReport characterization_matches_code(const NetworkInstance& inst, const GroupCharacterization& ch,
                                                 const NetworkCode& code, ProbeMode mode = ProbeMode::Default,
                                                 std::size_t search_budget = 1'000'000) {
  MatchReport rep;
  const std::size_t n = inst.num_vars();
  std::vector<std::string> names;
  for (VarIndex v = 0; v < n; ++v) {
    names.push_back(inst.var_name(v));
    if (!ch.has(names.back())) {
      rep.mismatch = {names.back()};
      rep.reason = "variable not characterized";
      return rep;
    }
  }
  std::vector<VarIndex> all(n);
  std::iota(all.begin(), all.end(), 0);
  const auto code_full = joint_distribution(inst, code, all);
  const auto char_full = induced_joint_distribution(ch, names);

  const auto subsets = detail::probe_subsets(n, mode);
  for (const auto& sub : subsets) {
    std::vector<std::string> sn;
    for (auto v : sub) sn.push_back(names[v]);
    const auto dc = marginal(code_full, sub);
    const auto dg = induced_joint_distribution(ch, sn);
    if (!detail::same_signature(dc, dg, sub.size())) {
      rep.mismatch = sn;
      rep.reason = "joint distributions differ";
      return rep;
    }
  }

  const std::size_t ns = inst.sources().size();
  // Char support grouped by its source part; must be a function of it.
  std::map<SymbolTuple, SymbolTuple> char_by_sources;
  for (const auto& t : char_full.support) {
    SymbolTuple key(t.begin(), t.begin() + ns);
    auto [it, fresh] = char_by_sources.emplace(key, t);
    if (!fresh) {
      rep.mismatch = names;
      rep.reason = "characterized edges are not functions of the sources";
      return rep;
    }
  }
  std::vector<std::vector<Symbol>> code_syms(ns), char_syms(ns);
  for (std::size_t s = 0; s < ns; ++s) {
    std::set<Symbol> a, b;
    for (const auto& t : code_full.support) a.insert(t[s]);
    for (const auto& t : char_full.support) b.insert(t[s]);
    code_syms[s].assign(a.begin(), a.end());
    char_syms[s].assign(b.begin(), b.end());
  }

  std::vector<std::vector<Symbol>> perm = char_syms;  // current image of code_syms[s][i]
  std::size_t tried = 0;
  bool found = false;
  std::function<void(std::size_t)> search = [&](std::size_t s) {
    if (found || tried > search_budget) return;
    if (s == ns) {
      ++tried;
      std::vector<std::map<Symbol, Symbol>> rel(n);
      for (std::size_t k = 0; k < ns; ++k) {
        for (std::size_t i = 0; i < code_syms[k].size(); ++i) rel[k][code_syms[k][i]] = perm[k][i];
      }
      std::vector<std::map<Symbol, Symbol>> inverse(n);
      for (const auto& t : code_full.support) {
        SymbolTuple key(ns);
        for (std::size_t k = 0; k < ns; ++k) key[k] = rel[k][t[k]];
        auto it = char_by_sources.find(key);
        if (it == char_by_sources.end()) return;
        for (std::size_t v = ns; v < n; ++v) {
          auto [a, fa] = rel[v].emplace(t[v], it->second[v]);
          if (a->second != it->second[v]) return;
          auto [b, fb] = inverse[v].emplace(it->second[v], t[v]);
          if (b->second != t[v]) return;
        }
      }
      if (!equal_under_relabeling(code_full, char_full, rel)) return;
      rep.relabeling = std::move(rel);
      found = true;
      return;
    }
    auto& p = perm[s];
    std::sort(p.begin(), p.end());
    do {
      search(s + 1);
      if (found || tried > search_budget) return;
    } while (std::next_permutation(p.begin(), p.end()));
  };
  for (std::size_t s = 0; s < ns; ++s) {
    if (code_syms[s].size() != char_syms[s].size()) {
      rep.mismatch = {names[s]};
      rep.reason = "source alphabet size differs from coset count";
      return rep;
    }
  }
  search(0);
  if (!found) {
    rep.mismatch = names;
    rep.reason = tried > search_budget ? "relabeling search budget exhausted" : "no consistent relabeling";
    return rep;
  }
  for (const auto& sub : subsets) {
    std::vector<std::string> sn;
    std::vector<std::map<Symbol, Symbol>> rel;
    for (auto v : sub) {
      sn.push_back(names[v]);
      rel.push_back(rep.relabeling[v]);
    }
    if (!equal_under_relabeling(marginal(code_full, sub), induced_joint_distribution(ch, sn), rel)) {
      rep.mismatch = sn;
      rep.reason = "joint distributions differ under the relabeling";
      rep.relabeling.clear();
      return rep;
    }
  }
  rep.matches = true;
  return rep;
}

/// The code induced by a characterization covering S ∪ E: alphabets are the
/// coset sets (symbol = coset index in representative order). Requires
/// independent uniform sources (EquationOneViolated otherwise) and X_In(u)
/// determining X_e for every edge (NotRepresentable otherwise). Locals map
/// unobserved input tuples to 0. No decoders are produced.
inline NetworkCode code_from_characterization(const NetworkInstance& inst, const GroupCharacterization& ch) {
  const std::size_t n = inst.num_vars();
  const auto& g = ch.group;
  NetworkCode code = NetworkCode::empty_for(inst);
  std::vector<std::vector<std::size_t>> label(n);
  for (VarIndex v = 0; v < n; ++v) {
    const auto& sub = ch.at(inst.var_name(v));
    label[v] = coset_labels(g, sub);
    code.alphabet[v] = g.order() / sub.size();
  }
  const auto srcs = source_vars(inst);
  std::vector<std::string> src_names;
  for (auto s : srcs) src_names.push_back(inst.var_name(s));
  const std::size_t space = source_space_size(inst, code);
  if (g.order() / ch.meet(src_names).size() != space) {
    throw Error(ErrorKind::EquationOneViolated, "sources are not independent and uniform under the characterization");
  }
  for (std::size_t e = 0; e < inst.edges().size(); ++e) {
    const auto inputs = inst.edge_inputs(e);
    const auto rad = code.radices(inputs);
    std::vector<std::optional<Symbol>> table(product_of(rad));
    const VarIndex ev = inst.edge_var(e);
    for (Elem x = 0; x < g.order(); ++x) {
      std::size_t idx = 0;
      for (auto v : inputs) idx = idx * code.alphabet[v] + label[v][x];
      const auto y = static_cast<Symbol>(label[ev][x]);
      if (table[idx] && *table[idx] != y) {
        throw Error(ErrorKind::NotRepresentable, "inputs of '" + inst.edges()[e].id + "' do not determine it");
      }
      table[idx] = y;
    }
    std::vector<Symbol> t;
    for (auto& y : table) t.push_back(y.value_or(0));
    code.local[e] = std::move(t);
  }
  return derive_globals(inst, code);
}

}  // namespace gnc
