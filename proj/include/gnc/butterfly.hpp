#pragma once

// The two-source butterfly: s1,s2 -> u -> w -> t1,t2 with side edges
// s1 -> t1 and s2 -> t2. Each terminal demands both sources.

#include "gnc/group_char.hpp"
#include "gnc/network.hpp"

namespace gnc {

inline NetworkInstance butterfly_instance() {
  InstanceSpec s;
  s.nodes = {"s1", "s2", "u", "w", "t1", "t2"};
  s.edges = {{"e1", "s1", "u", 1.0}, {"e2", "s2", "u", 1.0}, {"e3", "u", "w", 1.0}, {"e4", "w", "t1", 1.0},
             {"e5", "w", "t2", 1.0}, {"e6", "s1", "t1", 1.0}, {"e7", "s2", "t2", 1.0}};
  s.sources = {"s1", "s2"};
  s.terminals = {"t1", "t2"};
  s.demands = {{"t1", {"s1", "s2"}}, {"t2", {"s1", "s2"}}};
  return NetworkInstance::create(s);
}

/// Binary alphabets; e3 carries x1 XOR x2, every other edge forwards.
/// Terminals recover the missing bit by XOR.
inline NetworkCode butterfly_xor_code(const NetworkInstance& inst) {
  NetworkCode c = NetworkCode::empty_for(inst);
  for (auto& a : c.alphabet) a = 2;
  for (std::size_t e = 0; e < inst.edges().size(); ++e) {
    c.local[e] = inst.edges()[e].id == "e3" ? std::vector<Symbol>{0, 1, 1, 0} : std::vector<Symbol>{0, 1};
  }
  // t1 sees (e4, e6) = (x1^x2, x1); t2 sees (e5, e7) = (x1^x2, x2).
  c.decoder[*inst.node_index("t1")] = {{0, 0}, {1, 1}, {0, 1}, {1, 0}};
  c.decoder[*inst.node_index("t2")] = {{0, 0}, {1, 1}, {1, 0}, {0, 1}};
  return derive_globals(inst, c);
}

/// Z2×Z2 with G_s1 = {0,1}, G_s2 = {0,2}, G_e3 = {0,3}; forwarding edges
/// share the subgroup of the variable they forward.
inline GroupCharacterization butterfly_characterization() {
  const std::vector<Elem> g1{0, 1}, g2{0, 2}, g3{0, 3};
  return GroupCharacterization::create(cyclic_product({2, 2}).relabeled("Z2xZ2"),
                                       {{"s1", g1}, {"s2", g2}, {"e1", g1}, {"e6", g1}, {"e2", g2}, {"e7", g2},
                                        {"e3", g3}, {"e4", g3}, {"e5", g3}});
}

}  // namespace gnc
