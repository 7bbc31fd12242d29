#pragma once

// Conversions between group characterizations and CWL functions, local and
// global CWL families, and the Abelian round trip through all of them.

#include <future>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gnc/cwl.hpp"
#include "gnc/group.hpp"
#include "gnc/group_char.hpp"
#include "gnc/group_search.hpp"
#include "gnc/network.hpp"

namespace gnc {

// ---------------------------------------------------------------------------
// Abelian characterization of a global function -> CWL function

struct CharToCwl {
  CwlFunction function;
  /// G/G_i per source, element i = i-th coset in representative order.
  std::vector<QuotientGroup> source_quotients;
  QuotientGroup edge_quotient;
  /// Every coset tuple (a_i G_i) meets in exactly one element.
  bool singleton_intersections = false;
};

/// Given G Abelian with subgroups for the sources and one edge, returns the
/// global function as a homomorphism ∏ G/G_i -> G/G_e: a coset tuple maps to
/// aG_e where a is the unique element of ∩ a_iG_i.
///
/// Checks, in order: NotAbelian; EquationOneViolated (|G|/|G_S| differs from
/// ∏|G|/|G_i|, i.e. sources not independent); NontrivialSourceIntersection.
inline CharToCwl abelian_char_to_cwl(const GroupCharacterization& ch, std::span<const std::string> sources,
                                     const std::string& edge) {
  const auto& g = ch.group;
  require_abelian(g, "abelian_char_to_cwl");
  const auto g_s = ch.meet(sources);
  std::size_t product = 1;
  for (const auto& s : sources) product *= g.order() / ch.at(s).size();
  if (g.order() / g_s.size() != product) {
    throw Error(ErrorKind::EquationOneViolated, "|G|/|G_S| = " + std::to_string(g.order() / g_s.size()) +
                                                    " but the product of source coset counts is " + std::to_string(product));
  }
  if (g_s.size() != 1) {
    throw Error(ErrorKind::NontrivialSourceIntersection, "|G_S| = " + std::to_string(g_s.size()));
  }
  std::vector<QuotientGroup> qs;
  std::vector<FiniteGroup> in_groups;
  std::vector<std::size_t> rad;
  for (const auto& s : sources) {
    qs.push_back(quotient_group(g, ch.at(s)));
    qs.back().group = qs.back().group.relabeled(g.label() + "/G_" + s);
    in_groups.push_back(qs.back().group);
    rad.push_back(qs.back().group.order());
  }
  auto qe = quotient_group(g, ch.at(edge));
  qe.group = qe.group.relabeled(g.label() + "/G_" + edge);

  std::vector<Elem> map(product_of(rad), 0);
  std::vector<std::size_t> hits(map.size(), 0);
  for (Elem x = 0; x < g.order(); ++x) {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < sources.size(); ++i) idx = idx * rad[i] + qs[i].projection(x);
    map[idx] = qe.projection(x);
    ++hits[idx];
  }
  CharToCwl out{CwlFunction{}, std::move(qs), std::move(qe), false};
  out.singleton_intersections = std::all_of(hits.begin(), hits.end(), [](std::size_t h) { return h == 1; });
  if (!out.singleton_intersections) {
    throw Error(ErrorKind::EquationOneViolated, "some source coset tuple does not meet in exactly one element");
  }
  out.function = CwlFunction::create("coset:" + edge, std::vector<std::string>(sources.begin(), sources.end()),
                                     std::move(in_groups), edge, out.edge_quotient.group, std::move(map));
  if (!verify_cwl(out.function).passes()) throw Error(ErrorKind::Internal, "constructed map is not CWL");
  return out;
}

// ---------------------------------------------------------------------------
// CWL global function -> group characterization

struct CwlToChar {
  /// Over the function's input variables and its output variable; the group
  /// is ∏ H_i with the same element indexing as the function's domain.
  GroupCharacterization characterization;
  std::vector<QuotientGroup> source_quotients;
  QuotientGroup edge_quotient;
  /// ψ_i: H_i -> G/G_i, h ↦ (i,..,h,..,i)G_i.
  std::vector<Homomorphism> psi_sources;
  /// ψ_e: G/G_e -> H_e, gG_e ↦ φ(g).
  Homomorphism psi_edge;
};

/// G = H_1 × ... × H_k, G_i = tuples with identity in coordinate i,
/// G_e = ker φ. ψ maps are verified isomorphisms.
inline CwlToChar cwl_to_characterization(const CwlFunction& f) {
  const auto chk = verify_cwl(f);
  if (!chk.homomorphism) throw Error(ErrorKind::NotAHomomorphism, "'" + f.name + "' is not a homomorphism");
  if (!chk.surjective) throw Error(ErrorKind::NotSurjective, "'" + f.name + "' is not surjective");
  const auto g = direct_product(f.input_groups).relabeled("prod(" + f.name + ")");
  const auto rad = f.radices();
  std::map<std::string, std::vector<Elem>> subs;
  for (std::size_t i = 0; i < f.input_vars.size(); ++i) {
    std::vector<Elem> el;
    for (Elem x = 0; x < g.order(); ++x) {
      if (unrank(x, rad)[i] == f.input_groups[i].identity()) el.push_back(x);
    }
    subs[f.input_vars[i]] = std::move(el);
  }
  const auto a = analyze_homomorphism(f.map, g, f.output_group);
  subs[f.output_var] = a.kernel->elements();
  auto ch = GroupCharacterization::create(g, subs);

  std::vector<QuotientGroup> qs;
  std::vector<Homomorphism> psis;
  for (std::size_t i = 0; i < f.input_vars.size(); ++i) {
    auto q = quotient_group(g, ch.at(f.input_vars[i]));
    const auto& h = f.input_groups[i];
    std::vector<Elem> psi(h.order());
    for (Elem x = 0; x < h.order(); ++x) {
      std::vector<Elem> t(rad.size());
      for (std::size_t j = 0; j < rad.size(); ++j) t[j] = f.input_groups[j].identity();
      t[i] = x;
      psi[x] = q.projection(static_cast<Elem>(rank_tuple(t, rad)));
    }
    auto p = Homomorphism::verified(h, q.group, std::move(psi));
    if (!p.is_bijective()) throw Error(ErrorKind::Internal, "psi for '" + f.input_vars[i] + "' is not bijective");
    psis.push_back(std::move(p));
    qs.push_back(std::move(q));
  }
  auto qe = quotient_group(g, ch.at(f.output_var));
  std::vector<Elem> psi_e(qe.group.order());
  for (std::size_t c = 0; c < qe.cosets.size(); ++c) psi_e[c] = f.map[qe.cosets[c].representative];
  auto pe = Homomorphism::verified(qe.group, f.output_group, std::move(psi_e));
  if (!pe.is_bijective()) throw Error(ErrorKind::Internal, "psi_e is not bijective");
  return CwlToChar{std::move(ch), std::move(qs), std::move(qe), std::move(psis), std::move(pe)};
}

/// True iff the induced (Y_S, Y_e), pulled back through ψ, has exactly the
/// distribution of (X_S, φ(X_S)) under uniform X_S.
inline bool characterization_reproduces(const CwlFunction& f, const CwlToChar& r) {
  const std::size_t k = f.input_vars.size();
  std::map<SymbolTuple, std::uint64_t> code;
  for (std::size_t x = 0; x < f.domain_size(); ++x) {
    auto t = unrank(x, f.radices());
    t.push_back(f.map[x]);
    ++code[t];
  }
  std::vector<std::vector<Elem>> psi_inv(k);
  for (std::size_t i = 0; i < k; ++i) {
    psi_inv[i].assign(r.psi_sources[i].codomain().order(), 0);
    for (Elem h = 0; h < r.psi_sources[i].domain().order(); ++h) psi_inv[i][r.psi_sources[i](h)] = h;
  }
  const auto& g = r.characterization.group;
  std::map<SymbolTuple, std::uint64_t> induced;
  for (Elem x = 0; x < g.order(); ++x) {
    SymbolTuple t(k + 1);
    for (std::size_t i = 0; i < k; ++i) t[i] = psi_inv[i][r.source_quotients[i].projection(x)];
    t[k] = r.psi_edge(r.edge_quotient.projection(x));
    ++induced[t];
  }
  return ExactDistribution::from_tally(code, f.domain_size()) == ExactDistribution::from_tally(induced, g.order());
}

// ---------------------------------------------------------------------------
// Local CWL family -> global CWL family

struct GlobalCwlResult {
  CwlFamily family;
  /// verify_cwl per edge (instance edge order).
  std::vector<CwlCheck> checks;

  bool all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const CwlCheck& c) { return c.passes(); });
  }
};

namespace detail {

inline std::vector<std::string> names_of(const NetworkInstance& inst, std::span<const VarIndex> vars) {
  std::vector<std::string> out;
  for (auto v : vars) out.push_back(inst.var_name(v));
  return out;
}

inline const FiniteGroup& group_of(const CwlFamily& fam, const std::string& var) {
  auto it = fam.groups.find(var);
  if (it == fam.groups.end()) throw Error(ErrorKind::InconsistentFamily, "no group for variable '" + var + "'");
  return it->second;
}

}  // namespace detail

/// Composes local CWL functions along the topological order into global ones
/// (inputs: all sources in instance order).
inline GlobalCwlResult local_cwl_to_global_cwl(const NetworkInstance& inst, const CwlFamily& locals) {
  if (!check_consistent_cwl_family(locals)) throw Error(ErrorKind::InconsistentFamily, "local family is not consistent CWL");
  const auto srcs = source_vars(inst);
  const auto src_names = detail::names_of(inst, srcs);
  std::vector<FiniteGroup> src_groups;
  std::vector<std::size_t> rad;
  for (const auto& s : src_names) {
    src_groups.push_back(detail::group_of(locals, s));
    rad.push_back(src_groups.back().order());
  }
  std::vector<const CwlFunction*> fn(inst.edges().size());
  std::vector<std::vector<VarIndex>> inputs(inst.edges().size());
  for (std::size_t e = 0; e < inst.edges().size(); ++e) {
    const auto& id = inst.edges()[e].id;
    fn[e] = locals.producing(id);
    if (!fn[e]) throw Error(ErrorKind::MissingLocal, "no local CWL function for edge '" + id + "'");
    inputs[e] = inst.edge_inputs(e);
    if (fn[e]->input_vars != detail::names_of(inst, inputs[e])) {
      throw Error(ErrorKind::DimensionMismatch, "local CWL for '" + id + "' does not take In(tail) in sorted order");
    }
  }
  const std::size_t space = product_of(rad);
  std::vector<std::vector<Elem>> maps(inst.edges().size(), std::vector<Elem>(space));
  std::vector<Elem> value(inst.num_vars(), 0);
  const auto order = inst.edge_order();
  for (std::size_t x = 0; x < space; ++x) {
    const auto t = unrank(x, rad);
    std::copy(t.begin(), t.end(), value.begin());
    for (auto e : order) {
      std::size_t idx = 0;
      for (std::size_t k = 0; k < inputs[e].size(); ++k) idx = idx * fn[e]->input_groups[k].order() + value[inputs[e][k]];
      value[inst.edge_var(e)] = fn[e]->map[idx];
      maps[e][x] = fn[e]->map[idx];
    }
  }
  std::vector<CwlFunction> globals;
  GlobalCwlResult out;
  for (std::size_t e = 0; e < inst.edges().size(); ++e) {
    const auto& id = inst.edges()[e].id;
    globals.push_back(CwlFunction::create("global:" + id, src_names, src_groups, id, fn[e]->output_group, std::move(maps[e])));
    out.checks.push_back(verify_cwl(globals.back()));
  }
  out.family = CwlFamily::from_functions(std::move(globals));
  return out;
}

// ---------------------------------------------------------------------------
// Abelian global CWL family -> local CWL family

struct LocalExtension {
  std::string edge;
  std::size_t image_order = 0;  // |X̄_In(u)|
  std::size_t input_order = 0;  // |∏_{e∈In(u)} H_e|
  ExtensionStrategy strategy = ExtensionStrategy::None;
};

struct LocalCwlResult {
  CwlFamily family;
  std::vector<LocalExtension> extensions;
};

namespace detail {

struct EdgeLocal {
  CwlFunction function;
  LocalExtension info;
};

inline EdgeLocal local_for_edge(const NetworkInstance& inst, const CwlFamily& globals, std::size_t e,
                                const std::vector<const CwlFunction*>& fn) {
  const auto& id = inst.edges()[e].id;
  const auto inputs = inst.edge_inputs(e);
  const auto in_names = names_of(inst, inputs);
  std::vector<FiniteGroup> in_groups;
  std::vector<std::size_t> in_rad;
  for (const auto& n : in_names) {
    in_groups.push_back(group_of(globals, n));
    in_rad.push_back(in_groups.back().order());
  }
  const auto product = direct_product(in_groups);
  const CwlFunction& target = *fn[e];
  const std::size_t space = target.domain_size();
  const auto src_rad = target.radices();

  // φ_In(u)(x_S) for every source tuple, and the restricted map on its image.
  std::map<Elem, std::pair<Elem, std::size_t>> restricted;  // image elem -> (value, witness x_S)
  for (std::size_t x = 0; x < space; ++x) {
    SymbolTuple t;
    for (auto v : inputs) {
      t.push_back(inst.is_edge_var(v) ? fn[inst.edge_of(v)]->map[x] : unrank(x, src_rad)[v]);
    }
    const auto img = static_cast<Elem>(rank_tuple(t, in_rad));
    auto [it, fresh] = restricted.emplace(img, std::make_pair(target.map[x], x));
    if (!fresh && it->second.first != target.map[x]) {
      const auto a = unrank(it->second.second, src_rad), b = unrank(x, src_rad);
      std::string msg = "edge '" + id + "': source tuples ";
      for (auto s : a) msg += std::to_string(s);
      msg += " and ";
      for (auto s : b) msg += std::to_string(s);
      msg += " agree on In(u) but not on the edge";
      throw Error(ErrorKind::IllDefinedRestriction, msg);
    }
  }
  std::vector<Elem> image_el;
  std::vector<Elem> partial;
  for (const auto& [img, val] : restricted) {
    image_el.push_back(img);
    partial.push_back(val.first);
  }
  const auto image = Subgroup::verified(product, image_el);
  const auto lattice = subgroup_lattice(product);
  auto ext = extend_homomorphism(product, image, target.output_group, partial, &lattice);
  if (!ext.map) {
    throw Error(ErrorKind::ExtensionNotFound, "edge '" + id + "': no homomorphism on In(u) extends the restriction from the image subgroup of order " +
                                                  std::to_string(image.size()));
  }
  LocalExtension info{id, image.size(), product.order(), ext.strategy};
  auto f = CwlFunction::create("local:" + id, in_names, std::move(in_groups), id, target.output_group, ext.map->map());
  return EdgeLocal{std::move(f), std::move(info)};
}

}  // namespace detail

/// For each edge e*=(u,v), restricts φ_ge* to the image X̄ of
/// x_S ↦ (φ_ge(x_S))_{e∈In(u)} and extends it to a homomorphism on
/// ∏_{e∈In(u)} H_e. The result re-composes to the input globals.
/// With `parallel`, edges are processed concurrently; output order and
/// reported errors (first failing edge in instance order) are unchanged.
inline LocalCwlResult global_cwl_to_local_cwl(const NetworkInstance& inst, const CwlFamily& globals,
                                              bool parallel = false) {
  for (const auto& [var, g] : globals.groups) require_abelian(g, "global_cwl_to_local_cwl (variable '" + var + "')");
  for (const auto& f : globals.functions) {
    if (!verify_cwl(f).homomorphism) throw Error(ErrorKind::NotAHomomorphism, "global '" + f.name + "' is not CWL");
  }
  if (!check_consistent_cwl_family(globals)) throw Error(ErrorKind::InconsistentFamily, "global family is not consistent CWL");
  const auto src_names = detail::names_of(inst, source_vars(inst));
  std::vector<const CwlFunction*> fn(inst.edges().size());
  for (std::size_t e = 0; e < inst.edges().size(); ++e) {
    const auto& id = inst.edges()[e].id;
    fn[e] = globals.producing(id);
    if (!fn[e]) throw Error(ErrorKind::MissingLocal, "no global CWL function for edge '" + id + "'");
    if (fn[e]->input_vars != src_names) {
      throw Error(ErrorKind::DimensionMismatch, "global CWL for '" + id + "' must take all sources in order");
    }
  }

  std::vector<detail::EdgeLocal> per_edge;
  if (parallel) {
    std::vector<std::future<detail::EdgeLocal>> futs;
    for (std::size_t e = 0; e < inst.edges().size(); ++e) {
      futs.push_back(std::async(std::launch::async, [&, e] { return detail::local_for_edge(inst, globals, e, fn); }));
    }
    for (auto& f : futs) per_edge.push_back(f.get());
  } else {
    for (std::size_t e = 0; e < inst.edges().size(); ++e) per_edge.push_back(detail::local_for_edge(inst, globals, e, fn));
  }

  LocalCwlResult out;
  std::vector<CwlFunction> locals;
  for (auto& el : per_edge) {
    locals.push_back(std::move(el.function));
    out.extensions.push_back(std::move(el.info));
  }
  out.family = CwlFamily::from_functions(std::move(locals));
  for (const auto& s : src_names) out.family.groups.emplace(s, globals.groups.at(s));

  const auto back = local_cwl_to_global_cwl(inst, out.family);
  for (std::size_t e = 0; e < inst.edges().size(); ++e) {
    if (back.family.functions[e].map != fn[e]->map) {
      throw Error(ErrorKind::Internal, "locals for '" + inst.edges()[e].id + "' do not recompose to the global");
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Round trip: Abelian characterization -> local CWL code -> characterization

struct StageResult {
  std::string stage;
  bool ok = false;
  std::string detail;
  std::optional<ErrorKind> error;
};

struct RoundTripReport {
  std::vector<StageResult> stages;
  bool passed = false;
  std::optional<CwlFamily> global_cwl;
  std::optional<CwlFamily> local_cwl;
  std::optional<NetworkCode> code;
  std::optional<GroupCharacterization> recovered;
  std::optional<MatchReport> forward;   // input characterization vs local CWL code
  std::optional<MatchReport> backward;  // recovered characterization vs characterized code

  const StageResult* failed_stage() const {
    for (const auto& s : stages) {
      if (!s.ok) return &s;
    }
    return nullptr;
  }
};

struct RoundTripOptions {
  bool parallel = false;
  ProbeMode probe = ProbeMode::Default;
};

/// The CWL network code given by a local family: symbols are element indices.
inline NetworkCode code_from_local_cwl(const NetworkInstance& inst, const CwlFamily& locals) {
  NetworkCode code = NetworkCode::empty_for(inst);
  for (VarIndex v = 0; v < inst.num_vars(); ++v) code.alphabet[v] = detail::group_of(locals, inst.var_name(v)).order();
  for (std::size_t e = 0; e < inst.edges().size(); ++e) {
    const auto* f = locals.producing(inst.edges()[e].id);
    if (!f) throw Error(ErrorKind::MissingLocal, "no local CWL for '" + inst.edges()[e].id + "'");
    code.local[e] = std::vector<Symbol>(f->map.begin(), f->map.end());
  }
  return derive_globals(inst, code);
}

/// Abelian characterization over S ∪ E -> global family -> global CWL per
/// edge -> local CWL -> recomposed globals -> table code -> characterization
/// per edge from the CWL globals -> assembled characterization, with both
/// characterizations matched against the codes at the end. Stages stop at
/// the first error, which is recorded with its stage tag.
inline RoundTripReport abelian_roundtrip(const NetworkInstance& inst, const GroupCharacterization& ch,
                                         const RoundTripOptions& opt = {}) {
  RoundTripReport rep;
  const auto src_names = detail::names_of(inst, source_vars(inst));
  auto run = [&](const std::string& stage, auto&& body) {
    StageResult s{stage, false, {}, std::nullopt};
    try {
      s.detail = body();
      s.ok = true;
    } catch (const Error& e) {
      s.error = e.kind();
      s.detail = e.what();
    }
    rep.stages.push_back(s);
    return s.ok;
  };

  NetworkCode characterized;
  if (!run("characterization", [&] {
        require_abelian(ch.group, "round trip");
        for (VarIndex v = 0; v < inst.num_vars(); ++v) ch.at(inst.var_name(v));
        return std::string("group ") + ch.group.label() + " of order " + std::to_string(ch.group.order()) +
               " covers every variable";
      })) {
    return rep;
  }

  if (!run("global-family", [&] {
        const auto fam = characterized_family(inst, ch, FamilyKind::Global);
        const auto assembled = assemble_network_characterization(inst, fam, FamilyKind::Global);
        for (VarIndex v = 0; v < inst.num_vars(); ++v) {
          if (!(assembled.at(inst.var_name(v)) == ch.at(inst.var_name(v)))) {
            throw Error(ErrorKind::Internal, "assembled characterization differs at '" + inst.var_name(v) + "'");
          }
        }
        return std::to_string(fam.size()) + " global functions consistently characterized";
      })) {
    return rep;
  }

  if (!run("to-cwl", [&] {
        std::vector<CwlFunction> fns;
        for (const auto& e : inst.edges()) fns.push_back(abelian_char_to_cwl(ch, src_names, e.id).function);
        auto fam = CwlFamily::from_functions(std::move(fns));
        if (!check_consistent_cwl_family(fam)) throw Error(ErrorKind::InconsistentFamily, "CWL globals are not consistent");
        rep.global_cwl = std::move(fam);
        return std::to_string(inst.edges().size()) + " global functions are Abelian CWL";
      })) {
    return rep;
  }

  if (!run("localize", [&] {
        auto res = global_cwl_to_local_cwl(inst, *rep.global_cwl, opt.parallel);
        std::size_t by_complement = 0;
        for (const auto& x : res.extensions) by_complement += x.strategy == ExtensionStrategy::Complement;
        rep.local_cwl = std::move(res.family);
        return std::to_string(res.extensions.size()) + " local CWL functions (" + std::to_string(by_complement) +
               " via complement)";
      })) {
    return rep;
  }

  if (!run("recompose", [&] {
        const auto back = local_cwl_to_global_cwl(inst, *rep.local_cwl);
        if (!back.all_pass()) throw Error(ErrorKind::NotAHomomorphism, "a recomposed global fails verify_cwl");
        for (std::size_t e = 0; e < inst.edges().size(); ++e) {
          if (back.family.functions[e].map != rep.global_cwl->functions[e].map) {
            throw Error(ErrorKind::Internal, "recomposed global differs at '" + inst.edges()[e].id + "'");
          }
        }
        return std::string("recomposed globals equal the CWL globals");
      })) {
    return rep;
  }

  if (!run("code", [&] {
        characterized = code_from_characterization(inst, ch);
        auto code = code_from_local_cwl(inst, *rep.local_cwl);
        std::string detail = "local CWL code derived";
        bool any_demand = false;
        for (std::size_t t = 0; t < inst.terminals().size(); ++t) any_demand |= !inst.demanded_sources(t).empty();
        if (any_demand) {
          auto with_dec = synthesize_decoders(inst, code);
          if (with_dec && verify_decoding(inst, *with_dec).ok) {
            code = std::move(*with_dec);
            detail += "; all terminals decode";
          } else if (synthesize_decoders(inst, characterized)) {
            throw Error(ErrorKind::Internal, "round trip lost decodability");
          } else {
            detail += "; demands not met by the characterized code either";
          }
        }
        rep.code = std::move(code);
        return detail;
      })) {
    return rep;
  }

  if (!run("to-characterization", [&] {
        std::vector<CharacterizedFunction> fam;
        for (const auto& e : inst.edges()) {
          const auto& g = rep.global_cwl->functions[inst.edge_index(e.id).value()];
          const auto r = cwl_to_characterization(g);
          if (!characterization_reproduces(g, r)) throw Error(ErrorKind::Internal, "product-group characterization mismatch at '" + e.id + "'");
          fam.push_back(CharacterizedFunction::create(r.characterization, src_names, e.id));
        }
        rep.recovered = assemble_network_characterization(inst, fam, FamilyKind::Global);
        return "recovered characterization over " + rep.recovered->group.label() + " of order " +
               std::to_string(rep.recovered->group.order());
      })) {
    return rep;
  }

  run("match", [&] {
    rep.forward = characterization_matches_code(inst, ch, *rep.code, opt.probe);
    rep.backward = characterization_matches_code(inst, *rep.recovered, characterized, opt.probe);
    const auto direct = characterization_matches_code(inst, ch, characterized, opt.probe);
    if (!direct.matches) throw Error(ErrorKind::Internal, "input characterization does not match its own code");
    if (!rep.forward->matches) throw Error(ErrorKind::Internal, "local CWL code differs from the characterization: " + rep.forward->reason);
    if (!rep.backward->matches) throw Error(ErrorKind::Internal, "recovered characterization differs from the code: " + rep.backward->reason);
    return std::string("joint distributions match in both directions");
  });
  rep.passed = rep.failed_stage() == nullptr;
  return rep;
}

}  // namespace gnc
