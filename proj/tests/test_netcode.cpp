#include <gtest/gtest.h>

#include <cmath>

#include "corpus.hpp"

using namespace gnc;
using corpus::error_kind;

namespace {

const std::string kDataDir = GNC_DATA_DIR;

std::string data(const std::string& name) { return read_file(kDataDir + "/" + name); }

VarIndex var(const NetworkInstance& inst, const std::string& name) { return inst.require_var(name); }

std::vector<std::string> labels(const NetworkInstance& inst, const std::vector<NodeIndex>& order) {
  std::vector<std::string> out;
  for (auto v : order) out.push_back(inst.nodes()[v]);
  return out;
}

/// Local map for edge e as a function of its input symbols.
std::vector<Symbol> table_of(const NetworkInstance& inst, const NetworkCode& code, std::size_t e,
                             const std::function<Symbol(const std::vector<Elem>&)>& f) {
  const auto rad = code.radices(inst.edge_inputs(e));
  std::vector<Symbol> t(product_of(rad));
  for (std::size_t x = 0; x < t.size(); ++x) t[x] = f(unrank(x, rad));
  return t;
}

}  // namespace

TEST(ParseInstance, ButterflyTopology) {
  const auto p = parse_instance_text(data("butterfly_topology.inst"));
  EXPECT_EQ(p.instance.nodes().size(), 6u);
  EXPECT_EQ(p.instance.edges().size(), 7u);
  EXPECT_EQ(p.instance.sources().size(), 2u);
  EXPECT_EQ(p.instance.terminals().size(), 2u);
}

TEST(ParseInstance, RejectsInvalidTopologies) {
  const std::string head = "node s\nnode a\nnode t1\nsource s\nterminal t1\nedge e1 s a 1\nedge e2 a t1 1\n";
  EXPECT_EQ(error_kind([&] { parse_instance_text(head + "edge e3 t1 a 1\n"); }), ErrorKind::TerminalHasOutEdge);
  EXPECT_EQ(error_kind([&] { parse_instance_text(head + "edge e3 a s 1\n"); }), ErrorKind::SourceHasInEdge);
  const std::string cyc = "node s\nnode a\nnode b\nnode t\nsource s\nterminal t\n"
                          "edge e1 s a 1\nedge e2 a b 1\nedge e3 b a 1\nedge e4 b t 1\n";
  EXPECT_EQ(error_kind([&] { parse_instance_text(cyc); }), ErrorKind::CyclicGraph);
}

TEST(ParseInstance, SyntaxErrorsCarryLineNumbers) {
  try {
    parse_instance_text("node s\nnode t\nedge e1 s\n");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_EQ(e.kind(), ErrorKind::Syntax);
  }
  try {
    parse_instance_text("node s\nbogus directive\n");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(ParseInstance, SingleEdgeIsMinimalValidInstance) {
  const auto p = parse_instance_text("node s\nnode t\nedge e1 s t 1\nsource s 2\nterminal t\ndemand t s\n");
  EXPECT_EQ(p.instance.edges().size(), 1u);
  EXPECT_EQ(p.instance.demanded_sources(0), std::vector<std::size_t>{0});
}

TEST(ParseInstance, UnreachableDemandIsRejected) {
  const std::string text = "node s1\nnode s2\nnode t\nedge e1 s1 t 1\nsource s1\nsource s2\nterminal t\ndemand t s2\n";
  EXPECT_EQ(error_kind([&] { parse_instance_text(text); }), ErrorKind::InvalidInstance);
}

TEST(TopologicalOrder, ButterflySourcesFirstTerminalsLast) {
  const auto inst = butterfly_instance();
  const auto order = labels(inst, inst.topological_order());
  ASSERT_EQ(order.size(), 6u);
  EXPECT_EQ((std::vector<std::string>(order.begin(), order.begin() + 2)), (std::vector<std::string>{"s1", "s2"}));
  EXPECT_EQ((std::vector<std::string>(order.end() - 2, order.end())), (std::vector<std::string>{"t1", "t2"}));
  EXPECT_TRUE(inst.respects_edges(inst.topological_order()));
}

TEST(TopologicalOrder, Chain) {
  const auto inst = corpus::chain();
  EXPECT_EQ(labels(inst, inst.topological_order()), (std::vector<std::string>{"s", "a", "t"}));
}

TEST(TopologicalOrder, ParallelPathsUseLabelTieBreak) {
  const auto inst = corpus::make_instance({"s", "b", "a", "t"},
                                          {{"e1", "s", "b", 1}, {"e2", "s", "a", 1}, {"e3", "b", "t", 1}, {"e4", "a", "t", 1}},
                                          {"s"}, {"t"});
  EXPECT_EQ(labels(inst, inst.topological_order()), (std::vector<std::string>{"s", "a", "b", "t"}));
  EXPECT_TRUE(inst.respects_edges(inst.topological_order()));
  // The other interleaving is also valid.
  EXPECT_TRUE(inst.respects_edges({0, 1, 2, 3}));
  EXPECT_FALSE(inst.respects_edges({1, 0, 2, 3}));
}

TEST(DeriveGlobals, ButterflyBottleneckIsXor) {
  const auto inst = butterfly_instance();
  const auto code = butterfly_xor_code(inst);
  const auto e3 = *inst.edge_index("e3");
  ASSERT_TRUE(code.global[e3].has_value());
  // Source tuples in rank order: (x1,x2) = 2*x1 + x2.
  for (std::size_t x = 0; x < 4; ++x) EXPECT_EQ((*code.global[e3])[x], (x >> 1) ^ (x & 1));
}

TEST(DeriveGlobals, ChainOfIdentitiesIsIdentity) {
  const auto p = parse_instance_text(data("chain.inst"));
  for (const auto& g : p.code.global) EXPECT_EQ(*g, (std::vector<Symbol>{0, 1}));
}

TEST(DeriveGlobals, SourceEdgeProjectsOntoItsSource) {
  const auto inst = butterfly_instance();
  const auto code = butterfly_xor_code(inst);
  const auto e6 = *inst.edge_index("e6"), e7 = *inst.edge_index("e7");
  for (std::size_t x = 0; x < 4; ++x) {
    EXPECT_EQ((*code.global[e6])[x], x >> 1);
    EXPECT_EQ((*code.global[e7])[x], x & 1);
  }
}

TEST(DeriveGlobals, MissingLocalIsReported) {
  const auto inst = butterfly_instance();
  auto code = butterfly_xor_code(inst);
  code.local[2].reset();
  EXPECT_EQ(error_kind([&] { derive_globals(inst, code); }), ErrorKind::MissingLocal);
}

TEST(DeriveGlobals, IdempotentAndOrderIndependent) {
  const auto inst = butterfly_instance();
  const auto code = butterfly_xor_code(inst);
  const auto again = derive_globals(inst, code);
  EXPECT_EQ(again.global, code.global);
  std::vector<NodeIndex> other;
  for (const auto* l : {"s2", "s1", "u", "w", "t2", "t1"}) other.push_back(*inst.node_index(l));
  ASSERT_NE(other, inst.topological_order());
  EXPECT_EQ(derive_globals(inst, code, other).global, code.global);
  for (const auto& e : corpus::linear_corpus()) {
    const auto t = to_table_code(e.inst, e.code);
    EXPECT_EQ(derive_globals(e.inst, t).global, t.global) << e.name;
  }
}

TEST(VerifyDecoding, ButterflyXorCodeDecodes) {
  const auto inst = butterfly_instance();
  EXPECT_TRUE(verify_decoding(inst, butterfly_xor_code(inst)).ok);
}

TEST(VerifyDecoding, ForwardingOneSourceAtBottleneckFails) {
  const auto inst = butterfly_instance();
  auto code = butterfly_xor_code(inst);
  const auto e3 = *inst.edge_index("e3");
  code.local[e3] = table_of(inst, code, e3, [](const std::vector<Elem>& x) { return x[0]; });
  code = derive_globals(inst, code);
  const auto rep = verify_decoding(inst, code);
  ASSERT_FALSE(rep.ok);
  ASSERT_TRUE(rep.failure.has_value());
  const auto& f = *rep.failure;
  EXPECT_NE(f.expected, f.decoded);
  // Exhibit: the failing tuple has x2 = 1 and t1 sees only x1.
  EXPECT_EQ(f.source_tuple.size(), 2u);
  EXPECT_EQ(f.source_tuple[1], 1u);
  EXPECT_FALSE(synthesize_decoders(inst, code).has_value());
}

TEST(VerifyDecoding, NoDemandsTriviallyPass) {
  const auto inst = corpus::make_instance({"s", "t"}, {{"e1", "s", "t", 1}}, {"s"}, {"t"});
  auto code = NetworkCode::empty_for(inst);
  code.alphabet = {2, 2};
  code.local[0] = std::vector<Symbol>{0, 0};
  code = derive_globals(inst, code);
  EXPECT_TRUE(verify_decoding(inst, code).ok);
}

TEST(JointDistribution, ButterflyExamples) {
  const auto inst = butterfly_instance();
  const auto code = butterfly_xor_code(inst);
  const std::vector<VarIndex> bottleneck{var(inst, "e3")};
  const auto d = joint_distribution(inst, code, bottleneck);
  EXPECT_EQ(d.counts, (std::vector<std::uint64_t>{2, 2}));
  EXPECT_EQ(d.denominator, 4u);

  const std::vector<VarIndex> s1{var(inst, "s1")};
  EXPECT_EQ(joint_distribution(inst, code, s1).counts, (std::vector<std::uint64_t>{2, 2}));

  const std::vector<VarIndex> pair{var(inst, "s1"), var(inst, "e3")};
  const auto j = joint_distribution(inst, code, pair);
  EXPECT_EQ(j.support.size(), 4u);
  EXPECT_EQ(j.counts, (std::vector<std::uint64_t>{1, 1, 1, 1}));
}

TEST(Entropy, Examples) {
  ExactDistribution u4;
  u4.support = {{0}, {1}, {2}, {3}};
  u4.counts = {1, 1, 1, 1};
  u4.denominator = 4;
  EXPECT_NEAR(entropy_bits(u4), 2.0, 1e-12);

  ExactDistribution point;
  point.support = {{0}};
  point.counts = {5};
  point.denominator = 5;
  EXPECT_NEAR(entropy_bits(point), 0.0, 1e-12);

  ExactDistribution mixed;
  mixed.support = {{0}, {1}, {2}};
  mixed.counts = {1, 1, 2};
  mixed.denominator = 4;
  EXPECT_NEAR(entropy_bits(mixed), 1.5, 1e-12);
  EXPECT_FALSE(is_quasi_uniform(mixed));
}

TEST(JointDistribution, EdgesAreDeterminedByTheirInputs) {
  for (const auto& e : corpus::linear_corpus()) {
    const auto code = to_table_code(e.inst, e.code);
    for (std::size_t k = 0; k < e.inst.edges().size(); ++k) {
      auto in = e.inst.edge_inputs(k);
      const auto h_in = entropy_bits(joint_distribution(e.inst, code, in));
      in.push_back(e.inst.edge_var(k));
      const auto d = joint_distribution(e.inst, code, in);
      EXPECT_TRUE(d.counts_sum_to_denominator());
      EXPECT_NEAR(entropy_bits(d), h_in, 1e-9) << e.name << " edge " << e.inst.edges()[k].id;
    }
  }
}

TEST(CapacityWarnings, OversizedAlphabetsAreFlagged) {
  const auto inst = corpus::single_edge();
  auto code = NetworkCode::empty_for(inst);
  code.alphabet = {4, 4};
  code.local[0] = std::vector<Symbol>{0, 1, 2, 3};
  code = derive_globals(inst, code);
  const auto w = capacity_warnings(inst, code);
  ASSERT_EQ(w.size(), 1u);
  EXPECT_NE(w[0].find("e1"), std::string::npos);
  EXPECT_TRUE(capacity_warnings(butterfly_instance(), butterfly_xor_code(butterfly_instance())).empty());
}
