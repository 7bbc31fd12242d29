#pragma once

// Shared fixtures: characterizations, linear codes, CWL functions, local CWL
// families and round-trip instances used across the unit and acceptance tests.

#include <random>
#include <string>
#include <vector>

#include "gnc/gnc.hpp"

namespace corpus {

using namespace gnc;

struct CharEntry {
  std::string name;
  GroupCharacterization ch;
};

struct LinearEntry {
  std::string name;
  NetworkInstance inst;
  LinearCode code;  // locals and derived globals
};

struct FamilyEntry {
  std::string name;
  NetworkInstance inst;
  CwlFamily locals;
};

struct RoundTripEntry {
  std::string name;
  NetworkInstance inst;
  GroupCharacterization ch;
};

inline NetworkInstance make_instance(std::vector<std::string> nodes, std::vector<InstanceSpec::EdgeSpec> edges,
                                     std::vector<std::string> sources, std::vector<std::string> terminals,
                                     std::map<std::string, std::vector<std::string>> demands = {}) {
  InstanceSpec s{std::move(nodes), std::move(edges), std::move(sources), std::move(terminals), std::move(demands)};
  return NetworkInstance::create(s);
}

/// s1, s2 -> u -> w -> t1, t2 plus side edges; same shape as the demo.
inline NetworkInstance butterfly() { return butterfly_instance(); }

inline NetworkInstance chain() {
  return make_instance({"s", "a", "t"}, {{"e1", "s", "a", 1}, {"e2", "a", "t", 1}}, {"s"}, {"t"}, {{"t", {"s"}}});
}

inline NetworkInstance single_edge() { return make_instance({"s", "t"}, {{"e1", "s", "t", 1}}, {"s"}, {"t"}, {{"t", {"s"}}}); }

/// Two sources into u, u -> v, plus s1 -> v and v -> t, u -> t.
inline NetworkInstance diamond() {
  return make_instance({"s1", "s2", "u", "v", "t"},
                       {{"e1", "s1", "u", 2}, {"e2", "s2", "u", 2}, {"e3", "u", "v", 2}, {"e4", "s1", "v", 2},
                        {"e5", "v", "t", 2}, {"e6", "u", "t", 2}},
                       {"s1", "s2"}, {"t"});
}

/// One source feeding a node through two parallel edges, then one out-edge.
inline NetworkInstance gadget() {
  return make_instance({"s", "u", "t"}, {{"e1", "s", "u", 3}, {"e2", "s", "u", 3}, {"e3", "u", "t", 3}}, {"s"}, {"t"});
}

inline NetworkInstance s3_net() {
  return make_instance({"s1", "s2", "u", "t"}, {{"e1", "s1", "u", 3}, {"e2", "s2", "u", 3}, {"e3", "u", "t", 3}, {"e4", "s2", "t", 3}},
                       {"s1", "s2"}, {"t"});
}

// ---------------------------------------------------------------------------

inline FiniteGroup named_group(const std::string& label) { return resolve_group_ref(label); }

/// The kind of gnc::Error thrown by `f`, or nothing if it returns normally.
template <class F>
std::optional<ErrorKind> error_kind(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return std::nullopt;
}

/// Up to five variables a..e with subgroups generated by seeded random
/// elements (0 to 2 generators each), plus one variable set to the whole group
/// and one to the trivial subgroup in alternating entries.
inline std::vector<CharEntry> characterization_corpus() {
  const std::vector<std::string> groups{"Z2",    "Z3",      "Z4",     "Z2xZ2",  "Z5",    "Z6",     "S3",       "Z7",
                                        "Z8",    "Z2xZ4",   "Z2xZ2xZ2", "Z9",   "Z3xZ3", "Z10",    "Z12",      "Z2xZ6",
                                        "Z16",   "Z4xZ4",   "Z2xZ2xZ2xZ2", "Z2xZ8", "Z3xZ6", "Z5xZ5", "Z4xZ8", "Z2xZ2xZ2xZ2xZ2",
                                        "Z8xZ8", "Z4xZ4xZ4", "Z2xZ2xZ2xZ2xZ2xZ2"};
  std::vector<CharEntry> out;
  std::mt19937 rng(20240611);
  for (std::size_t i = 0; i < groups.size(); ++i) {
    const auto g = named_group(groups[i]);
    std::map<std::string, std::vector<Elem>> vars;
    const char* names[] = {"a", "b", "c", "d", "e"};
    for (std::size_t v = 0; v < 5; ++v) {
      std::vector<Elem> gens;
      const std::size_t k = rng() % 3;
      for (std::size_t j = 0; j < k; ++j) gens.push_back(static_cast<Elem>(rng() % g.order()));
      vars[names[v]] = subgroup_closure(g, gens).elements();
    }
    if (i % 2 == 0) vars["d"] = whole_group(g).elements();
    out.push_back({groups[i], GroupCharacterization::create(g, vars)});
  }
  // Non-Abelian groups built as products and permutation groups.
  for (const auto& [label, g] : std::vector<std::pair<std::string, FiniteGroup>>{
           {"S3xZ2", direct_product(symmetric_group(3), cyclic_group(2))},
           {"S4", symmetric_group(4)},
           {"S3xS3", direct_product(symmetric_group(3), symmetric_group(3))}}) {
    std::map<std::string, std::vector<Elem>> vars;
    const char* names[] = {"a", "b", "c", "d"};
    for (std::size_t v = 0; v < 4; ++v) {
      std::vector<Elem> gens{static_cast<Elem>(rng() % g.order())};
      if (v == 3) gens.push_back(static_cast<Elem>(rng() % g.order()));
      vars[names[v]] = subgroup_closure(g, gens).elements();
    }
    out.push_back({label, GroupCharacterization::create(g, vars)});
  }
  out.push_back({"butterfly", butterfly_characterization()});
  return out;
}

// ---------------------------------------------------------------------------

inline Matrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t c, std::uint32_t q) {
  Matrix m(r, c);
  for (auto& v : m.data) v = rng() % q;
  return m;
}

inline LinearCode with_locals(const NetworkInstance& inst, std::uint32_t q, std::vector<std::size_t> dims,
                              std::vector<std::vector<Matrix>> locals) {
  LinearCode c = LinearCode::empty_for(inst, q);
  c.dim = std::move(dims);
  for (std::size_t e = 0; e < locals.size(); ++e) c.local[e] = std::move(locals[e]);
  return linear_local_to_global(inst, c);
}

inline std::vector<LinearEntry> linear_corpus() {
  std::vector<LinearEntry> out;
  const Matrix one = Matrix::identity(1);
  {
    const auto inst = butterfly();
    std::vector<std::vector<Matrix>> l;
    for (std::size_t e = 0; e < inst.edges().size(); ++e) l.push_back(std::vector<Matrix>(inst.edge_inputs(e).size(), one));
    out.push_back({"butterfly GF(2)", inst, with_locals(inst, 2, std::vector<std::size_t>(inst.num_vars(), 1), l)});
  }
  {
    const auto inst = butterfly();
    const Matrix two = Matrix::from_rows({{2}});
    std::vector<std::vector<Matrix>> l{{one}, {one}, {one, two}, {one}, {two}, {one}, {one}};
    out.push_back({"butterfly GF(3)", inst, with_locals(inst, 3, std::vector<std::size_t>(inst.num_vars(), 1), l)});
  }
  {
    const auto inst = chain();
    const Matrix a = Matrix::from_rows({{1, 2}, {0, 3}}), b = Matrix::from_rows({{4}, {1}});
    out.push_back({"chain GF(5)", inst, with_locals(inst, 5, {2, 2, 1}, {{a}, {b}})});
  }
  std::mt19937 rng(77);
  for (std::uint32_t q : {2u, 3u}) {
    const auto inst = diamond();
    // s1, s2, e1..e6
    const std::vector<std::size_t> dims{2, 1, 2, 1, 2, 1, 2, 2};
    std::vector<std::vector<Matrix>> l;
    for (std::size_t e = 0; e < inst.edges().size(); ++e) {
      std::vector<Matrix> blocks;
      for (auto v : inst.edge_inputs(e)) blocks.push_back(random_matrix(rng, dims[v], dims[inst.edge_var(e)], q));
      l.push_back(std::move(blocks));
    }
    out.push_back({"diamond GF(" + std::to_string(q) + ")", inst, with_locals(inst, q, dims, l)});
  }
  {
    const auto inst = gadget();
    const Matrix p = Matrix::from_rows({{1, 0}, {0, 1}, {0, 0}}), r = Matrix::from_rows({{0, 1}, {1, 1}, {1, 0}});
    const Matrix m1 = Matrix::from_rows({{1, 0, 1}, {0, 1, 1}}), m2 = Matrix::from_rows({{1, 1, 0}, {0, 0, 1}});
    out.push_back({"gadget GF(2)", inst, with_locals(inst, 2, {3, 2, 2, 3}, {{p}, {r}, {m1, m2}})});
  }
  {
    const auto inst = single_edge();
    out.push_back({"single edge GF(7)", inst, with_locals(inst, 7, {2, 1}, {{Matrix::from_rows({{3}, {5}})}})});
  }
  return out;
}

// ---------------------------------------------------------------------------

inline CwlFunction table_cwl(std::string name, std::vector<std::string> in, std::vector<FiniteGroup> groups, std::string out,
                             FiniteGroup out_group, const std::function<Elem(const std::vector<Elem>&)>& f) {
  std::vector<std::size_t> rad;
  for (const auto& g : groups) rad.push_back(g.order());
  std::vector<Elem> map(product_of(rad));
  for (std::size_t x = 0; x < map.size(); ++x) map[x] = f(unrank(x, rad));
  return CwlFunction::create(std::move(name), std::move(in), std::move(groups), std::move(out), std::move(out_group), std::move(map));
}

inline Elem sign_of(Elem p) {
  const auto perms = permutations_lex(3);
  const auto& q = perms[p];
  std::size_t inv = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = i + 1; j < 3; ++j) inv += q[i] > q[j];
  }
  return static_cast<Elem>(inv % 2);
}

/// Homomorphisms that are onto: the inputs of the conversion to characterizations.
inline std::vector<CwlFunction> cwl_corpus() {
  const auto z2 = named_group("Z2"), z3 = named_group("Z3"), z4 = named_group("Z4"), z6 = named_group("Z6"),
             z8 = named_group("Z8"), s3 = named_group("S3"), v4 = named_group("Z2xZ2");
  using V = std::vector<Elem>;
  std::vector<CwlFunction> out{
      table_cwl("xor", {"x1", "x2"}, {z2, z2}, "y", z2, [](const V& x) { return x[0] ^ x[1]; }),
      table_cwl("first", {"x1", "x2"}, {z2, z2}, "y", z2, [](const V& x) { return x[0]; }),
      table_cwl("identity", {"x"}, {z2}, "y", z2, [](const V& x) { return x[0]; }),
      table_cwl("mod2", {"x"}, {z4}, "y", z2, [](const V& x) { return x[0] % 2; }),
      table_cwl("sum_mod2", {"x1", "x2"}, {z4, z4}, "y", z2, [](const V& x) { return (x[0] + x[1]) % 2; }),
      table_cwl("add_z4", {"x1", "x2"}, {z4, z4}, "y", z4, [](const V& x) { return (x[0] + x[1]) % 4; }),
      table_cwl("crt", {"x1", "x2"}, {z2, z3}, "y", z6, [](const V& x) { return (3 * x[0] + 4 * x[1]) % 6; }),
      table_cwl("mod3", {"x"}, {z6}, "y", z3, [](const V& x) { return x[0] % 3; }),
      table_cwl("z8_z2", {"x1", "x2"}, {z8, z2}, "y", z4, [](const V& x) { return (x[0] + 2 * x[1]) % 4; }),
      table_cwl("klein_sum", {"x1", "x2"}, {v4, v4}, "y", v4, [](const V& x) { return x[0] ^ x[1]; }),
      table_cwl("sign", {"p"}, {s3}, "y", z2, [](const V& x) { return sign_of(x[0]); }),
      table_cwl("s3_identity", {"p"}, {s3}, "y", s3, [](const V& x) { return x[0]; }),
      table_cwl("s3_conj", {"p"}, {s3}, "y", s3, [&](const V& x) { return s3.op(s3.op(2, x[0]), s3.inverse(2)); }),
      table_cwl("s3_first", {"p", "q"}, {s3, s3}, "y", s3, [](const V& x) { return x[0]; }),
      table_cwl("sign_sum", {"p", "q"}, {s3, s3}, "y", z2, [](const V& x) { return sign_of(x[0]) ^ sign_of(x[1]); }),
  };
  std::mt19937 rng(5);
  const std::vector<std::size_t> dims{2, 1};
  while (true) {
    std::vector<Matrix> blocks{random_matrix(rng, 2, 2, 3), random_matrix(rng, 1, 2, 3)};
    Matrix stacked(3, 2);
    for (std::size_t i = 0; i < 2; ++i) {
      for (std::size_t j = 0; j < 2; ++j) stacked(i, j) = blocks[0](i, j);
    }
    for (std::size_t j = 0; j < 2; ++j) stacked(2, j) = blocks[1](0, j);
    if (matrix_rank(stacked, 3) < 2) continue;
    out.push_back(linear_map_as_cwl("gf3_linear", {"x1", "x2"}, dims, blocks, "y", 2, 3));
    break;
  }
  return out;
}

// ---------------------------------------------------------------------------

inline CwlFamily family_of(std::vector<CwlFunction> fns, const std::map<std::string, FiniteGroup>& sources) {
  auto fam = CwlFamily::from_functions(std::move(fns));
  for (const auto& [s, g] : sources) fam.groups.emplace(s, g);
  return fam;
}

/// Local families whose inputs follow each edge's input order. Every member
/// is an onto homomorphism and every composed global is onto.
inline std::vector<FamilyEntry> local_family_corpus() {
  using V = std::vector<Elem>;
  std::vector<FamilyEntry> out;
  const auto z2 = named_group("Z2"), z3 = named_group("Z3"), z4 = named_group("Z4"), s3 = named_group("S3"),
             v4 = named_group("Z2xZ2");
  auto fwd = [](const std::string& in, const FiniteGroup& g, const std::string& o) {
    return table_cwl("fwd_" + o, {in}, {g}, o, g, [](const V& x) { return x[0]; });
  };
  auto butterfly_family = [&](const std::string& name, const FiniteGroup& g, const std::function<Elem(Elem, Elem)>& combine) {
    const auto inst = butterfly();
    std::vector<CwlFunction> f{fwd("s1", g, "e1"), fwd("s2", g, "e2"),
                               table_cwl("combine", {"e1", "e2"}, {g, g}, "e3", g, [&](const V& x) { return combine(x[0], x[1]); }),
                               fwd("e3", g, "e4"), fwd("e3", g, "e5"), fwd("s1", g, "e6"), fwd("s2", g, "e7")};
    out.push_back({name, inst, family_of(std::move(f), {{"s1", g}, {"s2", g}})});
  };
  butterfly_family("butterfly Z2 xor", z2, [](Elem a, Elem b) { return a ^ b; });
  butterfly_family("butterfly Z3 sum", z3, [](Elem a, Elem b) { return (a + b) % 3; });
  butterfly_family("butterfly Z4 difference", z4, [](Elem a, Elem b) { return (a + 4 - b) % 4; });
  butterfly_family("butterfly Klein sum", v4, [](Elem a, Elem b) { return a ^ b; });
  {
    const auto inst = chain();
    std::vector<CwlFunction> f{fwd("s", z4, "e1"), table_cwl("mod2", {"e1"}, {z4}, "e2", z2, [](const V& x) { return x[0] % 2; })};
    out.push_back({"chain Z4 to Z2", inst, family_of(std::move(f), {{"s", z4}})});
  }
  {
    const auto inst = single_edge();
    out.push_back({"single edge Z2", inst, family_of({fwd("s", z2, "e1")}, {{"s", z2}})});
  }
  {
    const auto inst = s3_net();
    std::vector<CwlFunction> f{fwd("s1", s3, "e1"),
                               table_cwl("conj", {"s2"}, {s3}, "e2", s3, [&](const V& x) { return s3.op(s3.op(2, x[0]), s3.inverse(2)); }),
                               table_cwl("first", {"e1", "e2"}, {s3, s3}, "e3", s3, [](const V& x) { return x[0]; }),
                               fwd("s2", s3, "e4")};
    out.push_back({"all S3", inst, family_of(std::move(f), {{"s1", s3}, {"s2", s3}})});
  }
  {
    const auto inst = s3_net();
    std::vector<CwlFunction> f{fwd("s1", s3, "e1"), fwd("s2", s3, "e2"),
                               table_cwl("sign_sum", {"e1", "e2"}, {s3, s3}, "e3", z2,
                                         [](const V& x) { return sign_of(x[0]) ^ sign_of(x[1]); }),
                               table_cwl("sign", {"s2"}, {s3}, "e4", z2, [](const V& x) { return sign_of(x[0]); })};
    out.push_back({"S3 signs", inst, family_of(std::move(f), {{"s1", s3}, {"s2", s3}})});
  }
  {
    // Diamond over GF(3): e1 = s1, e2 = s2, e3 = e1 + e2, e4 = 2 s1, e5 = e3 + e4, e6 = e1 + 2 e2.
    const auto inst = diamond();
    auto lin = [&](const std::string& o, std::vector<std::string> in, std::vector<Elem> coef) {
      std::vector<FiniteGroup> gs(in.size(), z3);
      return table_cwl("lin_" + o, std::move(in), gs, o, z3, [coef](const V& x) {
        Elem y = 0;
        for (std::size_t i = 0; i < x.size(); ++i) y = (y + coef[i] * x[i]) % 3;
        return y;
      });
    };
    std::vector<CwlFunction> f{lin("e1", {"s1"}, {1}),       lin("e2", {"s2"}, {1}), lin("e3", {"e1", "e2"}, {1, 1}),
                               lin("e4", {"s1"}, {2}),       lin("e5", {"e3", "e4"}, {1, 1}),
                               lin("e6", {"e1", "e2"}, {1, 2})};
    out.push_back({"diamond GF(3)", inst, family_of(std::move(f), {{"s1", z3}, {"s2", z3}})});
  }
  return out;
}

// ---------------------------------------------------------------------------

/// Abelian characterizations that satisfy source independence and
/// representability on their instances.
inline std::vector<RoundTripEntry> roundtrip_corpus() {
  std::vector<RoundTripEntry> out;
  out.push_back({"butterfly Z2xZ2", butterfly(), butterfly_characterization()});
  {
    // Z3xZ3, element (a,b) = 3a + b; e3 carries a + b.
    const auto g = named_group("Z3xZ3");
    const std::vector<Elem> g1{0, 1, 2}, g2{0, 3, 6}, ge{0, 5, 7};
    out.push_back({"butterfly Z3xZ3", butterfly(),
                   GroupCharacterization::create(g, {{"s1", g1}, {"s2", g2}, {"e1", g1}, {"e6", g1}, {"e2", g2}, {"e7", g2},
                                                     {"e3", ge}, {"e4", ge}, {"e5", ge}})});
  }
  {
    // Z2xZ4, element (a,b) = 4a + b; e3 carries 2a + b in Z4.
    const auto g = named_group("Z2xZ4");
    const std::vector<Elem> g1{0, 1, 2, 3}, g2{0, 4}, ge{0, 6};
    out.push_back({"butterfly Z2xZ4", butterfly(),
                   GroupCharacterization::create(g, {{"s1", g1}, {"s2", g2}, {"e1", g1}, {"e6", g1}, {"e2", g2}, {"e7", g2},
                                                     {"e3", ge}, {"e4", ge}, {"e5", ge}})});
  }
  out.push_back({"chain Z4", chain(), GroupCharacterization::create(named_group("Z4"), {{"s", {0}}, {"e1", {0}}, {"e2", {0, 2}}})});
  out.push_back({"single edge Z2", single_edge(), GroupCharacterization::create(named_group("Z2"), {{"s", {0}}, {"e1", {0}}})});
  return out;
}

/// Z4 x Z2 sources into a node with two Z4 in-edges (s1 and s1 + 2 s2) and
/// an out-edge carrying s2: the image of the in-edges has no complement and
/// the restricted map does not extend.
inline RoundTripEntry no_extension_entry() {
  // Element (a,b) of Z4xZ2 has index 2a + b; e4 carries s1 + 2 s2, e5 carries s2.
  const auto g = named_group("Z4xZ2");
  const std::vector<Elem> gs1{0, 1}, gs2{0, 2, 4, 6}, mixed{0, 5};
  const auto inst = make_instance({"s1", "s2", "u", "v", "t"},
                                  {{"e1", "s1", "u", 2}, {"e2", "s1", "v", 2}, {"e3", "s2", "v", 1}, {"e4", "v", "u", 2},
                                   {"e5", "u", "t", 1}, {"e6", "s1", "t", 2}},
                                  {"s1", "s2"}, {"t"});
  return {"no extension", inst,
          GroupCharacterization::create(g, {{"s1", gs1}, {"s2", gs2}, {"e1", gs1}, {"e2", gs1}, {"e3", gs2}, {"e4", mixed},
                                            {"e5", gs2}, {"e6", gs1}})};
}

}  // namespace corpus
