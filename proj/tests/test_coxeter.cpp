#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <tuple>
#include <vector>

#include "coxdec/coxeter/classify.hpp"
#include "coxdec/coxeter/reflection_group.hpp"
#include "coxdec/coxeter/system.hpp"

namespace {

using namespace coxdec;
using coxeter::CoxeterSystem;
using coxeter::CoxeterType;
using coxeter::Family;
using coxeter::Kind;
using exact::Signature;

constexpr std::uint32_t kInf = 0;

// Coxeter system from an edge list; label 0 stands for infinity.
CoxeterSystem diagram(std::size_t n, const std::vector<std::tuple<std::size_t, std::size_t, std::uint32_t>>& edges) {
  std::vector<std::vector<Label>> m(n, std::vector<Label>(n, Label(2)));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = Label(1);
  for (auto [a, b, l] : edges) m[a][b] = m[b][a] = l == kInf ? Label::infinity() : Label(l);
  return CoxeterSystem(m);
}

CoxeterSystem path(const std::vector<std::uint32_t>& labels) {
  std::vector<std::tuple<std::size_t, std::size_t, std::uint32_t>> e;
  for (std::size_t i = 0; i < labels.size(); ++i) e.emplace_back(i, i + 1, labels[i]);
  return diagram(labels.size() + 1, e);
}

CoxeterSystem standard(Family f, std::size_t n, std::uint32_t label = 0) {
  return coxeter::standard_system(CoxeterType{f, n, label});
}

TEST(TitsForm, Examples) {
  const auto a2 = coxeter::tits_form(path({3}));
  EXPECT_EQ(a2.at(0, 1), exact::CycloNumber(exact::Rational(-1, 2), a2.conductor()));
  EXPECT_EQ(a2.at(0, 0), exact::CycloNumber(exact::Rational(1), a2.conductor()));
  const auto i2inf = coxeter::tits_form(path({kInf}));
  EXPECT_EQ(i2inf.at(1, 0), exact::CycloNumber(-1));
  const auto a1a1 = coxeter::tits_form(path({2}));
  EXPECT_TRUE(a1a1.at(0, 1).is_zero());
  EXPECT_EQ(exact::signature(a1a1), (Signature{2, 0, 0}));
}

TEST(TitsForm, EntriesSymmetricWithUnitDiagonalAndBounded) {
  const auto cs = diagram(4, {{0, 1, 7}, {1, 2, kInf}, {2, 3, 5}, {0, 3, 3}});
  const auto b = coxeter::tits_form(cs);
  // lcm of 2m over the finite labels 7, 5, 3 and the two commuting pairs (m = 2).
  EXPECT_EQ(b.conductor(), 420u);
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(b.at(i, i), exact::CycloNumber(exact::Rational(1), b.conductor()));
    for (std::size_t j = 0; j < 4; ++j) {
      EXPECT_EQ(b.at(i, j), b.at(j, i));
      const double v = exact::approx(b.at(i, j));
      EXPECT_GE(v, -1.0);
      EXPECT_LE(v, 1.0);
    }
  }
}

TEST(Components, Examples) {
  EXPECT_EQ(coxeter::components(path({2})).size(), 2u);
  const auto a2 = coxeter::components(path({3}));
  ASSERT_EQ(a2.size(), 1u);
  EXPECT_EQ(a2[0].indices.size(), 2u);
  const auto two = coxeter::components(diagram(4, {{0, 1, 3}, {2, 3, kInf}}));
  ASSERT_EQ(two.size(), 2u);
  EXPECT_EQ(two[0].indices, (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(two[1].indices, (std::vector<std::size_t>{2, 3}));
  EXPECT_EQ(two[1].system, path({kInf}));
}

TEST(Components, FormAPartition) {
  const auto cs = diagram(7, {{0, 4, 3}, {4, 6, 5}, {1, 3, kInf}, {2, 5, 2}});
  std::vector<std::size_t> all;
  for (const auto& c : coxeter::components(cs)) all.insert(all.end(), c.indices.begin(), c.indices.end());
  std::sort(all.begin(), all.end());
  std::vector<std::size_t> expect(7);
  std::iota(expect.begin(), expect.end(), 0);
  EXPECT_EQ(all, expect);
  EXPECT_EQ(coxeter::components(cs).size(), 4u);
}

TEST(Classify, Examples) {
  const auto a3 = coxeter::classify(path({3, 3}));
  EXPECT_EQ(a3.kind, Kind::Finite);
  EXPECT_EQ(a3.signature, (Signature{3, 0, 0}));
  ASSERT_TRUE(a3.type);
  EXPECT_EQ(a3.type->name(), "A3");

  const auto a2t = coxeter::classify(diagram(3, {{0, 1, 3}, {1, 2, 3}, {0, 2, 3}}));
  EXPECT_EQ(a2t.kind, Kind::Affine);
  EXPECT_EQ(a2t.signature, (Signature{2, 0, 1}));

  const auto hyper = coxeter::classify(diagram(3, {{0, 1, kInf}, {1, 2, kInf}, {0, 2, kInf}}));
  EXPECT_EQ(hyper.kind, Kind::IndefiniteInfinite);
  EXPECT_EQ(hyper.signature, (Signature{2, 1, 0}));
  EXPECT_FALSE(hyper.type);
}

TEST(Classify, RejectsDisconnectedAndNamesRankTwo) {
  EXPECT_THROW(coxeter::classify(path({2})), ValidationError);
  EXPECT_EQ(coxeter::classify(path({kInf})).type->name(), "~A1");
  EXPECT_EQ(coxeter::classify(path({6})).type->name(), "I2(6)");
  EXPECT_EQ(coxeter::classify(path({4})).type->name(), "B2");
  EXPECT_EQ(coxeter::classify(path({5})).type->name(), "I2(5)");
}

TEST(Classify, RecognizesHandBuiltDiagrams) {
  // E6 as a star with arms 1, 2, 2 numbered from an outer vertex.
  EXPECT_EQ(coxeter::classify(diagram(6, {{0, 1, 3}, {1, 2, 3}, {2, 3, 3}, {3, 4, 3}, {2, 5, 3}})).type->name(), "E6");
  // F4 reversed.
  EXPECT_EQ(coxeter::classify(path({3, 4, 3})).type->name(), "F4");
  // H4 with the 5 at the far end.
  EXPECT_EQ(coxeter::classify(path({3, 3, 5})).type->name(), "H4");
  // ~G2, ~C3, ~B3, ~F4
  EXPECT_EQ(coxeter::classify(path({3, 6})).type->name(), "~G2");
  EXPECT_EQ(coxeter::classify(path({4, 3, 4})).type->name(), "~C3");
  EXPECT_EQ(coxeter::classify(diagram(4, {{0, 2, 3}, {1, 2, 3}, {2, 3, 4}})).type->name(), "~B3");
  EXPECT_EQ(coxeter::classify(path({3, 3, 4, 3})).type->name(), "~F4");
  // Extending ~F4 by one more node leaves the classical lists.
  EXPECT_EQ(coxeter::classify(path({3, 4, 3, 3, 3})).kind, Kind::IndefiniteInfinite);
}

TEST(Classify, SignatureFacts) {
  for (std::size_t n = 1; n <= 8; ++n) {
    const auto f = coxeter::signature_facts_check(standard(Family::A, n));
    EXPECT_TRUE(f.all());
    EXPECT_EQ(f.signature, (Signature{n, 0, 0}));
  }
  const auto a2t = coxeter::signature_facts_check(diagram(3, {{0, 1, 3}, {1, 2, 3}, {0, 2, 3}}));
  EXPECT_TRUE(a2t.semidefinite_kernel_at_most_one);
  EXPECT_TRUE(a2t.all());
  const auto hyper = coxeter::signature_facts_check(diagram(3, {{0, 1, kInf}, {1, 2, kInf}, {0, 2, kInf}}));
  EXPECT_TRUE(hyper.small_rank_almost_positive);
  EXPECT_TRUE(hyper.all());
}

TEST(ClassifyProperty, TrichotomyAndFactsOnRandomConnectedSystems) {
  std::mt19937_64 rng(5);
  const std::uint32_t labels[] = {2, 3, 3, 3, 4, 5, 6, 7, kInf};
  int tested = 0;
  while (tested < 150) {
    const std::size_t n = 2 + rng() % 5;
    std::vector<std::tuple<std::size_t, std::size_t, std::uint32_t>> e;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) e.emplace_back(i, j, labels[rng() % std::size(labels)]);
    const auto cs = diagram(n, e);
    if (!coxeter::is_connected(cs)) continue;
    ++tested;
    const auto c = coxeter::classify(cs);
    EXPECT_EQ(c.signature.dimension(), n);
    const int cases = (c.signature.p == n) + (c.signature.p + 1 == n && c.signature.r == 1) +
                      !(c.signature.p == n || (c.signature.p + 1 == n && c.signature.r == 1));
    EXPECT_EQ(cases, 1);
    EXPECT_TRUE(coxeter::signature_facts_check(cs).all());
  }
}

TEST(ClassifyProperty, InvariantUnderRelabeling) {
  std::mt19937_64 rng(17);
  const std::vector<CoxeterSystem> systems{standard(Family::E, 7), standard(Family::AffineD, 5),
                                           standard(Family::H, 4), path({3, 4, 3, 3}),
                                           diagram(4, {{0, 1, kInf}, {1, 2, 5}, {2, 3, 3}, {0, 3, 4}})};
  for (const auto& cs : systems) {
    const auto base = coxeter::classify(cs);
    const auto name = coxeter::canonical_name(cs);
    for (int k = 0; k < 5; ++k) {
      std::vector<std::size_t> perm(cs.rank());
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), rng);
      const auto p = cs.permuted(perm);
      const auto c = coxeter::classify(p);
      EXPECT_EQ(c.kind, base.kind);
      EXPECT_EQ(c.signature, base.signature);
      EXPECT_EQ(c.type.has_value(), base.type.has_value());
      if (c.type) {
        EXPECT_EQ(c.type->name(), base.type->name());
      }
      EXPECT_EQ(coxeter::canonical_name(p), name);
    }
  }
}

TEST(ClassifyProperty, RecognizerAgreesWithSignatureOnClassicalCorpus) {
  for (std::size_t rank = 1; rank <= 9; ++rank)
    for (const auto& t : coxeter::classical_types_of_rank(rank)) {
      const auto cs = coxeter::standard_system(t);
      ASSERT_EQ(cs.rank(), rank) << t.name();
      const auto c = coxeter::classify(cs);
      EXPECT_EQ(c.kind, t.is_affine() ? Kind::Affine : Kind::Finite) << t.name();
      EXPECT_EQ(c.signature, t.is_affine() ? (Signature{rank - 1, 0, 1}) : (Signature{rank, 0, 0})) << t.name();
    }
}

TEST(BuildGroup, Orders) {
  EXPECT_EQ(coxeter::build_group(path({3})).order(), 6u);
  EXPECT_EQ(coxeter::build_group(path({3, 4})).order(), 48u);
  EXPECT_EQ(coxeter::build_group(path({5, 3})).order(), 120u);
  EXPECT_EQ(coxeter::build_group(path({3, 4, 3})).order(), 1152u);
  EXPECT_EQ(coxeter::build_group(standard(Family::D, 4)).order(), 192u);
  EXPECT_EQ(coxeter::build_group(path({3, 3, 3})).order(), 120u);
  EXPECT_EQ(coxeter::build_group(path({7})).order(), 14u);
  EXPECT_EQ(coxeter::build_group(path({2, 2})).order(), 8u);
  EXPECT_EQ(coxeter::build_group(CoxeterSystem()).order(), 1u);
}

TEST(BuildGroup, LargerOrders) {
  EXPECT_EQ(coxeter::build_group(standard(Family::E, 6)).order(), 51840u);
  EXPECT_EQ(coxeter::build_group(path({5, 3, 3})).order(), 14400u);
  EXPECT_EQ(coxeter::build_group(standard(Family::B, 5)).order(), 3840u);
}

TEST(BuildGroup, BudgetAndInfiniteGroups) {
  EXPECT_THROW(coxeter::build_group(path({5, 3}), 100), BudgetExceeded);
  // Infinite components are rejected before any enumeration.
  EXPECT_THROW(coxeter::build_group(path({kInf}), 1000), ValidationError);
  EXPECT_THROW(coxeter::build_group(diagram(3, {{0, 1, 3}, {1, 2, 3}, {0, 2, 3}}), 5000), ValidationError);
  EXPECT_THROW(coxeter::build_group(standard(Family::A, 2).disjoint_union(path({kInf}))), ValidationError);
}

TEST(BuildGroup, GeneratorsAreFormPreservingInvolutions) {
  for (const auto& cs : {path({5, 3}), path({3, 4, 3}), path({8})}) {
    const auto w = coxeter::build_group(cs);
    const auto b = coxeter::to_matrix(w.form());
    const auto id = coxeter::CycloMatrix::identity(cs.rank(), w.conductor());
    for (const auto& s : w.generators()) {
      EXPECT_EQ(s * s, id);
      EXPECT_EQ(s.transposed() * b * s, b);
    }
  }
}

TEST(BuildGroup, ElementsAreDistinctAndBraidOrdersMatchLabels) {
  const auto cs = path({5, 3});
  const auto w = coxeter::build_group(cs);
  std::set<std::vector<std::string>> seen;
  for (std::size_t i = 0; i < w.order(); ++i) {
    std::vector<std::string> key;
    for (const auto& x : w.element(i).entries) key.push_back(x.to_string());
    EXPECT_TRUE(seen.insert(key).second);
  }
  const auto g = w.to_cayley();
  // Generator s is element right_multiple(0, s).
  for (std::size_t i = 0; i < cs.rank(); ++i)
    for (std::size_t j = 0; j < cs.rank(); ++j) {
      const auto si = w.right_multiple(0, i), sj = w.right_multiple(0, j);
      EXPECT_EQ(g.element_order(g.mul(si, sj)), i == j ? 1u : cs.label(i, j).value());
    }
}

TEST(BuildGroup, CayleyTableMatchesMatrices) {
  const auto w = coxeter::build_group(path({3, 4}));
  const auto g = w.to_cayley();
  ASSERT_EQ(g.order(), 48u);
  std::mt19937_64 rng(3);
  for (int k = 0; k < 200; ++k) {
    const auto a = static_cast<group::Element>(rng() % 48), b = static_cast<group::Element>(rng() % 48);
    EXPECT_EQ(w.element(a) * w.element(b), w.element(g.mul(a, b)));
  }
  EXPECT_THROW(w.to_cayley(40), BudgetExceeded);
}

TEST(Dot, LabelsEdges) {
  const auto dot = coxeter::to_dot(diagram(3, {{0, 1, 3}, {1, 2, kInf}}));
  EXPECT_NE(dot.find("s0 -- s1;"), std::string::npos);
  EXPECT_NE(dot.find("s1 -- s2 [label=\"inf\"];"), std::string::npos);
}

}  // namespace
