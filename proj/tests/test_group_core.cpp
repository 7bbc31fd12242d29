#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "corpus.hpp"

using namespace gnc;
using corpus::error_kind;
using corpus::named_group;

namespace {

// Independent S_n table: p∘q on lexicographically ordered one-line permutations.
OpTable permutation_table(std::size_t n) {
  std::vector<std::vector<Elem>> perms;
  std::vector<Elem> p(n);
  std::iota(p.begin(), p.end(), 0);
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  OpTable t(perms.size(), std::vector<Elem>(perms.size()));
  for (std::size_t a = 0; a < perms.size(); ++a) {
    for (std::size_t b = 0; b < perms.size(); ++b) {
      std::vector<Elem> c(n);
      for (std::size_t i = 0; i < n; ++i) c[i] = perms[a][perms[b][i]];
      t[a][b] = static_cast<Elem>(std::find(perms.begin(), perms.end(), c) - perms.begin());
    }
  }
  return t;
}

bool commutes_everywhere(const FiniteGroup& g) {
  for (Elem a = 0; a < g.order(); ++a) {
    for (Elem b = 0; b < g.order(); ++b) {
      if (g.op(a, b) != g.op(b, a)) return false;
    }
  }
  return true;
}

std::vector<Elem> sorted_set(const std::vector<Elem>& v) {
  auto s = v;
  std::sort(s.begin(), s.end());
  return s;
}

}  // namespace

TEST(GroupAxioms, CyclicTwoTableIsValid) {
  const auto g = verify_group_axioms({{0, 1}, {1, 0}});
  EXPECT_EQ(g.order(), 2u);
  EXPECT_EQ(g.identity(), 0u);
}

TEST(GroupAxioms, MissingInverseIsReported) {
  const auto v = check_group_axioms({{0, 1}, {1, 1}});
  ASSERT_TRUE(v.has_value());
  EXPECT_EQ(v->kind, ErrorKind::NoInverse);
  EXPECT_EQ(v->witness, std::vector<Elem>{1});
  EXPECT_EQ(error_kind([] { verify_group_axioms({{0, 1}, {1, 1}}); }), ErrorKind::NoInverse);
}

TEST(GroupAxioms, OtherViolations) {
  EXPECT_EQ(check_group_axioms({{0, 2}, {1, 0}})->kind, ErrorKind::NotClosed);
  EXPECT_EQ(check_group_axioms({{1, 1}, {1, 1}})->kind, ErrorKind::NoIdentity);
  EXPECT_EQ(error_kind([] { verify_group_axioms({{0, 1}}); }), ErrorKind::NotSquare);
  // Identity 0, every element self-inverse, but (1*2)*2 != 1*(2*2).
  const auto v = check_group_axioms({{0, 1, 2}, {1, 0, 0}, {2, 2, 0}});
  ASSERT_TRUE(v.has_value());
  EXPECT_EQ(v->kind, ErrorKind::NotAssociative);
}

TEST(GroupAxioms, SymmetricThreeMatchesPermutationComposition) {
  const auto table = permutation_table(3);
  const auto g = verify_group_axioms(table);
  EXPECT_FALSE(g.is_abelian());
  EXPECT_FALSE(commutes_everywhere(g));
  EXPECT_EQ(to_op_table(symmetric_group(3)), table);
  EXPECT_EQ(to_op_table(symmetric_group(4)), permutation_table(4));
}

TEST(GroupAxioms, CorpusGroupsSatisfyAxioms) {
  for (const auto& e : corpus::characterization_corpus()) {
    EXPECT_FALSE(check_group_axioms(to_op_table(e.ch.group)).has_value()) << e.name;
    EXPECT_EQ(e.ch.group.is_abelian(), commutes_everywhere(e.ch.group)) << e.name;
  }
}

TEST(DirectProduct, CoprimeCyclicFactorsGiveCyclic) {
  const auto g = direct_product(cyclic_group(2), cyclic_group(3));
  EXPECT_EQ(g.order(), 6u);
  EXPECT_TRUE(find_isomorphism(g, cyclic_group(6)).has_value());
}

TEST(DirectProduct, KleinGroupHasExponentTwo) {
  const auto g = direct_product(cyclic_group(2), cyclic_group(2));
  for (Elem x = 1; x < g.order(); ++x) EXPECT_EQ(g.element_order(x), 2u);
}

TEST(DirectProduct, SymmetricTimesCyclicIsNonAbelian) {
  const auto g = direct_product(symmetric_group(3), cyclic_group(2));
  EXPECT_EQ(g.order(), 12u);
  EXPECT_FALSE(commutes_everywhere(g));
  EXPECT_FALSE(g.is_abelian());
}

TEST(DirectProduct, IndexingIsMixedRadix) {
  const auto s3 = symmetric_group(3), z4 = cyclic_group(4);
  const auto g = direct_product(s3, z4);
  for (Elem a = 0; a < g.order(); ++a) {
    for (Elem b = 0; b < g.order(); ++b) {
      const Elem expect = s3.op(a / 4, b / 4) * 4 + z4.op(a % 4, b % 4);
      ASSERT_EQ(g.op(a, b), expect);
    }
  }
}

TEST(SubgroupClosure, Examples) {
  const auto z4 = cyclic_group(4);
  EXPECT_EQ(subgroup_closure(z4, {2}).elements(), (std::vector<Elem>{0, 2}));
  EXPECT_EQ(subgroup_closure(z4, {}).elements(), (std::vector<Elem>{0}));
  // (12) in one-line notation is 1 0 2, index 2.
  const auto s3 = symmetric_group(3);
  const auto h = subgroup_closure(s3, {2});
  EXPECT_EQ(h.size(), 2u);
  EXPECT_EQ(s3.op(2, 2), s3.identity());
}

TEST(SubgroupClosure, RejectsNonSubgroups) {
  EXPECT_EQ(error_kind([] { Subgroup::verified(cyclic_group(4), {0, 1}); }), ErrorKind::NotASubgroup);
  EXPECT_EQ(error_kind([] { Subgroup::verified(cyclic_group(4), {2}); }), ErrorKind::NotASubgroup);
}

TEST(LeftCosets, Examples) {
  const auto z4 = cyclic_group(4);
  const auto c = left_cosets(z4, subgroup_closure(z4, {2}));
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(c[0].elements, (std::vector<Elem>{0, 2}));
  EXPECT_EQ(c[1].elements, (std::vector<Elem>{1, 3}));

  const auto v4 = named_group("Z2xZ2");
  const auto diag = Subgroup::verified(v4, {0, 3});
  const auto d = left_cosets(v4, diag);
  ASSERT_EQ(d.size(), 2u);
  for (const auto& k : d) EXPECT_EQ(k.elements.size(), 2u);

  const auto s3 = symmetric_group(3);
  const auto whole = left_cosets(s3, whole_group(s3));
  ASSERT_EQ(whole.size(), 1u);
  EXPECT_EQ(whole[0].elements.size(), 6u);
}

TEST(LeftCosets, PartitionEveryCorpusSubgroup) {
  for (const auto& e : corpus::characterization_corpus()) {
    const auto& g = e.ch.group;
    for (const auto& [var, s] : e.ch.assignment) {
      const auto cs = left_cosets(g, s);
      ASSERT_EQ(cs.size(), g.order() / s.size()) << e.name << " " << var;
      std::vector<int> seen(g.order(), 0);
      for (const auto& c : cs) {
        EXPECT_EQ(c.elements.size(), s.size());
        EXPECT_EQ(c.representative, *std::min_element(c.elements.begin(), c.elements.end()));
        // Oracle: the coset is {r*s : s in S}.
        std::vector<Elem> expect;
        for (Elem x : s.elements()) expect.push_back(g.op(c.representative, x));
        EXPECT_EQ(sorted_set(c.elements), sorted_set(expect));
        for (Elem x : c.elements) ++seen[x];
      }
      EXPECT_TRUE(std::all_of(seen.begin(), seen.end(), [](int k) { return k == 1; })) << e.name;
    }
  }
}

TEST(IntersectSubgroups, Examples) {
  const auto z4 = cyclic_group(4);
  const std::vector<Subgroup> a{subgroup_closure(z4, {2}), whole_group(z4)};
  EXPECT_EQ(intersect_subgroups(z4, a).elements(), (std::vector<Elem>{0, 2}));

  const auto v4 = named_group("Z2xZ2");
  const std::vector<Subgroup> b{Subgroup::verified(v4, {0, 1}), Subgroup::verified(v4, {0, 2})};
  EXPECT_EQ(intersect_subgroups(v4, b).elements(), (std::vector<Elem>{0}));

  EXPECT_EQ(intersect_subgroups(z4, std::vector<Subgroup>{}).size(), 4u);
}

TEST(QuotientGroup, Examples) {
  const auto z4 = cyclic_group(4);
  const auto q = quotient_group(z4, subgroup_closure(z4, {2}));
  EXPECT_EQ(q.group.order(), 2u);
  EXPECT_TRUE(find_isomorphism(q.group, cyclic_group(2)).has_value());

  const auto s3 = symmetric_group(3);
  EXPECT_EQ(error_kind([&] { quotient_group(s3, subgroup_closure(s3, {2})); }), ErrorKind::NotNormal);
  EXPECT_TRUE(normality_witness(s3, subgroup_closure(s3, {2})).has_value());

  const auto v4 = named_group("Z2xZ2");
  const auto d = quotient_group(v4, Subgroup::verified(v4, {0, 3}));
  EXPECT_EQ(d.group.order(), 2u);
  // Multiply cosets elementwise and compare with the table.
  for (std::size_t a = 0; a < 2; ++a) {
    for (std::size_t b = 0; b < 2; ++b) {
      for (Elem x : d.cosets[a].elements) {
        for (Elem y : d.cosets[b].elements) EXPECT_EQ(d.projection(v4.op(x, y)), d.group.op(a, b));
      }
    }
  }
}

TEST(QuotientGroup, ProjectionIsSurjectiveWithKernelN) {
  for (const auto& e : corpus::characterization_corpus()) {
    if (!e.ch.group.is_abelian()) continue;
    for (const auto& [var, s] : e.ch.assignment) {
      const auto q = quotient_group(e.ch.group, s);
      const auto a = analyze_homomorphism(q.projection.map(), e.ch.group, q.group);
      ASSERT_TRUE(a.is_hom) << e.name;
      EXPECT_EQ(*a.kernel, s);
      EXPECT_EQ(a.image->size(), q.group.order());
    }
  }
}

TEST(AnalyzeHomomorphism, Examples) {
  const auto v4 = named_group("Z2xZ2"), z2 = cyclic_group(2), z4 = cyclic_group(4);
  const auto x = analyze_homomorphism(std::vector<Elem>{0, 1, 1, 0}, v4, z2);
  ASSERT_TRUE(x.is_hom);
  EXPECT_EQ(x.kernel->elements(), (std::vector<Elem>{0, 3}));
  EXPECT_EQ(x.image->size(), 2u);

  const auto m = analyze_homomorphism(std::vector<Elem>{0, 1, 0, 1}, z4, z2);
  ASSERT_TRUE(m.is_hom);
  EXPECT_EQ(m.kernel->elements(), (std::vector<Elem>{0, 2}));

  const auto bad = analyze_homomorphism(std::vector<Elem>{0, 1, 1, 0}, z4, z2);
  EXPECT_FALSE(bad.is_hom);
  ASSERT_TRUE(bad.violation.has_value());
  EXPECT_EQ(*bad.violation, (std::pair<Elem, Elem>{1, 1}));
  EXPECT_FALSE(bad.kernel.has_value());
}

TEST(AnalyzeHomomorphism, FirstIsomorphismTheoremHolds) {
  const std::vector<std::string> labels{"Z4", "Z2xZ2", "Z6", "S3", "Z2xZ4", "Z3"};
  for (const auto& a : labels) {
    for (const auto& b : labels) {
      const auto g = named_group(a), h = named_group(b);
      for (const auto& phi : enumerate_homomorphisms(g, h)) {
        const auto r = analyze_homomorphism(phi.map(), g, h);
        ASSERT_TRUE(r.is_hom);
        EXPECT_TRUE(is_normal(g, *r.kernel)) << a << "->" << b;
        EXPECT_EQ(r.image->size(), g.order() / r.kernel->size());
      }
    }
  }
}

TEST(FindIsomorphism, Examples) {
  const auto iso = find_isomorphism(named_group("Z2xZ3"), cyclic_group(6));
  ASSERT_TRUE(iso.has_value());
  EXPECT_TRUE(iso->is_bijective());
  EXPECT_FALSE(find_isomorphism(cyclic_group(4), named_group("Z2xZ2")).has_value());
  EXPECT_FALSE(find_isomorphism(cyclic_group(4), cyclic_group(5)).has_value());

  const auto v4 = named_group("Z2xZ2");
  const auto ker = analyze_homomorphism(std::vector<Elem>{0, 1, 1, 0}, v4, cyclic_group(2)).kernel;
  const auto q = quotient_group(v4, *ker);
  const auto psi = find_isomorphism(q.group, cyclic_group(2));
  ASSERT_TRUE(psi.has_value());
  EXPECT_TRUE(analyze_homomorphism(psi->map(), q.group, cyclic_group(2)).is_hom);
}

TEST(FindIsomorphism, NonAbelianPairs) {
  EXPECT_FALSE(find_isomorphism(symmetric_group(3), cyclic_group(6)).has_value());
  const auto a = direct_product(symmetric_group(3), cyclic_group(2));
  const auto b = direct_product(cyclic_group(2), symmetric_group(3));
  const auto iso = find_isomorphism(a, b);
  ASSERT_TRUE(iso.has_value());
  EXPECT_TRUE(iso->is_bijective());
}

TEST(FindComplement, Examples) {
  const auto v4 = named_group("Z2xZ2");
  const auto diag = Subgroup::verified(v4, {0, 3});
  const auto k = find_complement(v4, diag);
  ASSERT_TRUE(k.has_value());
  // First trivially meeting subgroup in lexicographic order: {(0,0),(0,1)}.
  EXPECT_EQ(k->complement.elements(), (std::vector<Elem>{0, 1}));
  // {(0,0),(1,0)} is also a complement.
  const std::vector<Subgroup> pair{diag, Subgroup::verified(v4, {0, 2})};
  EXPECT_EQ(intersect_subgroups(v4, pair).size(), 1u);

  const auto z4 = cyclic_group(4);
  EXPECT_FALSE(find_complement(z4, subgroup_closure(z4, {2})).has_value());

  const auto g = named_group("Z2xZ6");
  const auto t = find_complement(g, trivial_subgroup(g));
  ASSERT_TRUE(t.has_value());
  EXPECT_EQ(t->complement.size(), g.order());

  EXPECT_EQ(error_kind([] { find_complement(symmetric_group(3), trivial_subgroup(symmetric_group(3))); }), ErrorKind::NotAbelian);
}

TEST(FindComplement, WitnessInvariants) {
  for (const auto& label : {"Z2xZ4", "Z2xZ2xZ2", "Z3xZ6", "Z4xZ4", "Z12"}) {
    const auto g = named_group(label);
    for (const auto& s : subgroup_lattice(g)) {
      const auto k = find_complement(g, s);
      if (!k) continue;
      const std::vector<Subgroup> pair{s, k->complement};
      EXPECT_EQ(intersect_subgroups(g, pair).size(), 1u) << label;
      EXPECT_EQ(k->complement.size() * s.size(), g.order());
      std::vector<bool> hit(g.order(), false);
      for (Elem a : k->complement.elements()) {
        for (Elem b : s.elements()) hit[g.op(a, b)] = true;
      }
      EXPECT_TRUE(std::all_of(hit.begin(), hit.end(), [](bool b) { return b; })) << label;
    }
  }
}

TEST(SubgroupLattice, CountsMatchKnownValues) {
  EXPECT_EQ(subgroup_lattice(cyclic_group(12)).size(), 6u);       // divisors of 12
  EXPECT_EQ(subgroup_lattice(named_group("Z2xZ2")).size(), 5u);
  EXPECT_EQ(subgroup_lattice(named_group("Z2xZ2xZ2")).size(), 16u);
  EXPECT_EQ(subgroup_lattice(symmetric_group(3)).size(), 6u);
  EXPECT_EQ(subgroup_lattice(symmetric_group(4)).size(), 30u);
}

TEST(ExtendHomomorphism, DiagonalIntoTwo) {
  const auto v4 = named_group("Z2xZ2"), z2 = cyclic_group(2);
  const auto diag = Subgroup::verified(v4, {0, 3});
  const auto ext = extend_homomorphism(v4, diag, z2, std::vector<Elem>{0, 1});
  ASSERT_TRUE(ext.map.has_value());
  EXPECT_EQ(ext.strategy, ExtensionStrategy::Complement);
  const auto& m = ext.map->map();
  EXPECT_EQ(m[3], 1u);
  // With complement {(0,0),(0,1)}: φ(0,1) = 0 and φ(1,0) = 1.
  EXPECT_EQ(m[1], 0u);
  EXPECT_EQ(m[2], 1u);
  EXPECT_TRUE(analyze_homomorphism(m, v4, z2).is_hom);
}

TEST(ExtendHomomorphism, TrivialSubgroupAlwaysExtends) {
  for (const auto& label : {"Z4", "Z2xZ6", "Z3xZ3"}) {
    const auto g = named_group(label);
    const auto ext = extend_homomorphism(g, trivial_subgroup(g), cyclic_group(5), std::vector<Elem>{0});
    ASSERT_TRUE(ext.map.has_value());
    for (Elem y : ext.map->map()) EXPECT_EQ(y, 0u);
  }
}

TEST(ExtendHomomorphism, CyclicFourHalfIntoTwoHasNoExtension) {
  const auto z4 = cyclic_group(4), z2 = cyclic_group(2);
  const auto ext = extend_homomorphism(z4, subgroup_closure(z4, {2}), z2, std::vector<Elem>{0, 1});
  EXPECT_FALSE(ext.map.has_value());
  // Oracle: every homomorphism Z4 -> Z2 sends 2 to 0.
  for (const auto& phi : enumerate_homomorphisms(z4, z2)) EXPECT_EQ(phi(2), 0u);
}

TEST(ExtendHomomorphism, RejectsNonHomomorphicPartialMaps) {
  const auto z4 = cyclic_group(4);
  EXPECT_EQ(error_kind([&] { extend_homomorphism(z4, whole_group(z4), cyclic_group(2), std::vector<Elem>{0, 1, 1, 0}); }),
            ErrorKind::NotAHomomorphism);
  EXPECT_EQ(error_kind([] {
              extend_homomorphism(symmetric_group(3), trivial_subgroup(symmetric_group(3)), cyclic_group(2), std::vector<Elem>{0});
            }),
            ErrorKind::NotAbelian);
}

TEST(ExtendHomomorphism, ReturnedMapsAgreeWithPartialOnSubgroup) {
  for (const auto& label : {"Z2xZ4", "Z8", "Z2xZ2xZ2", "Z3xZ3", "Z4xZ4"}) {
    const auto g = named_group(label);
    const auto lattice = subgroup_lattice(g);
    for (const auto& s : lattice) {
      const auto sub = subgroup_as_group(g, s);
      for (std::size_t t : {2u, 4u}) {
        const auto y = cyclic_group(t);
        const bool has_complement = find_complement(g, s, lattice).has_value();
        for (const auto& phi : enumerate_homomorphisms(sub.group, y)) {
          const auto ext = extend_homomorphism(g, s, y, phi.map(), &lattice);
          if (has_complement) {
            EXPECT_EQ(ext.strategy, ExtensionStrategy::Complement) << label;
          }
          if (!ext.map) {
            // Oracle: no homomorphism G -> Y restricts to φ̄.
            for (const auto& full : enumerate_homomorphisms(g, y)) {
              bool agrees = true;
              for (std::size_t i = 0; i < s.size(); ++i) agrees = agrees && full(s.elements()[i]) == phi.map()[i];
              EXPECT_FALSE(agrees) << label;
            }
            continue;
          }
          EXPECT_TRUE(analyze_homomorphism(ext.map->map(), g, y).is_hom);
          for (std::size_t i = 0; i < s.size(); ++i) EXPECT_EQ((*ext.map)(s.elements()[i]), phi.map()[i]);
        }
      }
    }
  }
}

TEST(GroupOrderCap, LargeGroupsAreRejected) {
  EXPECT_EQ(error_kind([] { cyclic_group(max_group_order() + 1); }), ErrorKind::OrderCapExceeded);
}
