#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "coxdec/coxeter/classify.hpp"
#include "coxdec/coxeter/reflection_group.hpp"
#include "coxdec/decomp/decompose.hpp"
#include "coxdec/group/remak.hpp"

namespace {

using namespace coxdec;
using coxeter::CoxeterSystem;
using coxeter::CoxeterType;
using coxeter::Family;
using decomp::Provenance;
using decomp::Rule;

CoxeterSystem standard(Family f, std::size_t n, std::uint32_t label = 0) {
  return coxeter::standard_system(CoxeterType{f, n, label});
}

CoxeterSystem dihedral(std::uint32_t m) { return standard(Family::I, 2, m); }

// (label, order) pairs sorted, "inf" for infinite factors.
std::vector<std::pair<std::string, std::string>> summary(const decomp::CoxeterFactorization& f) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& x : f.factors) out.emplace_back(x.label, x.order ? x.order->get_str() : "inf");
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::size_t> orders(const decomp::CoxeterFactorization& f) {
  std::vector<std::size_t> out;
  for (const auto& x : f.factors) out.push_back(x.order->get_ui());
  std::sort(out.begin(), out.end());
  return out;
}

TEST(Decompose, Examples) {
  const auto b3 = decomp::decompose(standard(Family::B, 3));
  ASSERT_EQ(b3.factors.size(), 2u);
  EXPECT_EQ(b3.factors[0].order, mpz_class(2));
  EXPECT_TRUE(b3.factors[0].central);
  EXPECT_EQ(b3.factors[1].order, mpz_class(24));
  EXPECT_FALSE(b3.factors[1].central);

  EXPECT_EQ(orders(decomp::decompose(dihedral(6))), (std::vector<std::size_t>{2, 6}));

  const auto a1t = decomp::decompose(standard(Family::AffineA, 1));
  ASSERT_EQ(a1t.factors.size(), 1u);
  EXPECT_FALSE(a1t.factors[0].order);
  EXPECT_EQ(a1t.factors[0].rule, Rule::InfiniteIrreducible);
  EXPECT_EQ(a1t.factors[0].label, "~A1");
  EXPECT_FALSE(a1t.order());
}

TEST(Decompose, EmptySystemIsTheEmptyProduct) {
  const auto f = decomp::decompose(CoxeterSystem());
  EXPECT_TRUE(f.factors.empty());
  EXPECT_EQ(f.order(), mpz_class(1));
}

TEST(Decompose, ExceptionalTypes) {
  EXPECT_TRUE(decomp::is_exceptional_split({Family::B, 3, 0}));
  EXPECT_TRUE(decomp::is_exceptional_split({Family::B, 7, 0}));
  EXPECT_FALSE(decomp::is_exceptional_split({Family::B, 4, 0}));
  EXPECT_TRUE(decomp::is_exceptional_split({Family::H, 3, 0}));
  EXPECT_FALSE(decomp::is_exceptional_split({Family::H, 4, 0}));
  EXPECT_TRUE(decomp::is_exceptional_split({Family::E, 7, 0}));
  EXPECT_FALSE(decomp::is_exceptional_split({Family::E, 8, 0}));
  EXPECT_FALSE(decomp::is_exceptional_split({Family::D, 5, 0}));
  for (std::uint32_t m = 3; m <= 30; ++m)
    EXPECT_EQ(decomp::is_exceptional_split({Family::I, 2, m}), m >= 6 && m % 4 == 2) << m;
}

TEST(Decompose, RuleOnlyBeyondOracleBound) {
  const auto e7 = decomp::decompose(standard(Family::E, 7));
  ASSERT_EQ(e7.factors.size(), 2u);
  for (const auto& f : e7.factors) EXPECT_EQ(f.provenance, Provenance::RuleOnly);
  EXPECT_EQ(e7.factors[1].order, mpz_class(1451520));
  EXPECT_EQ(e7.order(), mpz_class(2903040));
  const auto b5 = decomp::decompose(standard(Family::B, 5));
  EXPECT_EQ(b5.factors[0].provenance, Provenance::RuleOnly);
  EXPECT_EQ(decomp::decompose(standard(Family::B, 3)).factors[0].provenance, Provenance::Rule);
}

TEST(Decompose, MixedFiniteAndInfiniteComponents) {
  const auto cs = standard(Family::B, 3).disjoint_union(standard(Family::AffineA, 2)).disjoint_union(dihedral(10));
  const auto f = decomp::decompose(cs);
  EXPECT_EQ(summary(f), (std::vector<std::pair<std::string, std::string>>{
                            {"W(B3)/Z", "24"}, {"W(I2(10))/Z", "10"}, {"Z/2", "2"}, {"Z/2", "2"}, {"~A2", "inf"}}));
  EXPECT_FALSE(f.order());
}

TEST(DecomposeProperty, InvariantUnderRelabeling) {
  std::mt19937_64 rng(8);
  const auto cs = standard(Family::H, 3).disjoint_union(dihedral(6)).disjoint_union(standard(Family::AffineC, 2));
  const auto base = summary(decomp::decompose(cs));
  for (int k = 0; k < 10; ++k) {
    std::vector<std::size_t> perm(cs.rank());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    EXPECT_EQ(summary(decomp::decompose(cs.permuted(perm))), base);
  }
}

TEST(DecomposeProperty, DisjointUnionIsMultisetUnion) {
  const std::vector<CoxeterSystem> parts{standard(Family::B, 3), dihedral(14), standard(Family::D, 4),
                                         standard(Family::AffineA, 1)};
  for (std::size_t i = 0; i < parts.size(); ++i)
    for (std::size_t j = 0; j < parts.size(); ++j) {
      auto expect = summary(decomp::decompose(parts[i]));
      const auto other = summary(decomp::decompose(parts[j]));
      expect.insert(expect.end(), other.begin(), other.end());
      std::sort(expect.begin(), expect.end());
      EXPECT_EQ(summary(decomp::decompose(parts[i].disjoint_union(parts[j]))), expect);
    }
}

TEST(DecomposeProperty, OrderIsProductOfFactorOrders) {
  for (const auto& cs : {standard(Family::B, 3), standard(Family::H, 3), standard(Family::F, 4), dihedral(18),
                         standard(Family::A, 2).disjoint_union(standard(Family::B, 2))})
    EXPECT_EQ(decomp::decompose(cs).order(), mpz_class(coxeter::build_group(cs).order()));
}

TEST(DecomposeProperty, SplitPredicateMatchesOracleOnIrreducibleCorpus) {
  std::vector<CoxeterSystem> corpus;
  for (std::size_t n = 1; n <= 4; ++n) corpus.push_back(standard(Family::A, n));
  for (std::size_t n = 2; n <= 4; ++n) corpus.push_back(standard(Family::B, n));
  corpus.push_back(standard(Family::D, 4));
  corpus.push_back(standard(Family::F, 4));
  corpus.push_back(standard(Family::H, 3));
  for (std::uint32_t m = 5; m <= 30; ++m) corpus.push_back(dihedral(m));
  for (const auto& cs : corpus) {
    const auto type = *coxeter::classify(cs).type;
    const auto g = coxeter::build_group(cs).to_cayley();
    const auto d = group::remak_decompose(g);
    const bool split = d.factors.size() > 1;
    EXPECT_EQ(split, decomp::is_exceptional_split(type)) << type.name();
    if (split) {
      ASSERT_EQ(d.factors.size(), 2u) << type.name();
      std::size_t central = 0;
      for (const auto& f : d.factors) central += f.order() == 2 && group::center(g).contains(f.members[1]);
      EXPECT_EQ(central, 1u) << type.name();
    }
  }
}

TEST(CrossValidate, Examples) {
  const auto a2 = decomp::cross_validate(standard(Family::A, 2));
  EXPECT_TRUE(a2.passed);
  EXPECT_EQ(a2.oracle_labels, (std::vector<std::string>{"Sym(3)"}));

  const auto h3 = decomp::cross_validate(standard(Family::H, 3));
  EXPECT_TRUE(h3.passed);
  EXPECT_EQ(h3.oracle_labels, (std::vector<std::string>{"Z/2", "Alt(5)"}));
  for (const auto& f : h3.factorization.factors) EXPECT_EQ(f.provenance, Provenance::Oracle);

  const auto d4 = decomp::cross_validate(standard(Family::D, 4));
  EXPECT_TRUE(d4.passed);
  ASSERT_EQ(d4.matches.size(), 1u);
  EXPECT_EQ(d4.matches[0].order, 192u);

  const auto b3 = decomp::cross_validate(standard(Family::B, 3));
  EXPECT_EQ(b3.oracle_labels, (std::vector<std::string>{"Z/2", "Sym(4)"}));
  const auto i26 = decomp::cross_validate(dihedral(6));
  EXPECT_EQ(i26.oracle_labels, (std::vector<std::string>{"Z/2", "Sym(3)"}));
  const auto i210 = decomp::cross_validate(dihedral(10));
  EXPECT_EQ(i210.oracle_labels, (std::vector<std::string>{"Z/2", "Dih(10)"}));
}

TEST(CrossValidate, ProductsAndBudgets) {
  const auto cs = standard(Family::B, 3).disjoint_union(standard(Family::A, 3));
  const auto r = decomp::cross_validate(cs);
  EXPECT_TRUE(r.passed) << r.message;
  EXPECT_EQ(r.oracle_labels, (std::vector<std::string>{"Z/2", "Sym(4)", "Sym(4)"}));
  EXPECT_THROW(decomp::cross_validate(standard(Family::AffineA, 2)), ValidationError);
  EXPECT_THROW(decomp::cross_validate(standard(Family::B, 3).disjoint_union(standard(Family::B, 3))), BudgetExceeded);
}

TEST(FactorCenterSplit, Examples) {
  const auto h3 = coxeter::build_group(standard(Family::H, 3)).to_cayley();
  const auto split = decomp::factor_center_split(h3);
  ASSERT_TRUE(split);
  EXPECT_EQ(split->first.order(), 2u);
  EXPECT_EQ(split->second.order(), 60u);
  EXPECT_TRUE(group::is_internal_direct_product(h3, {split->first, split->second}));
  EXPECT_FALSE(decomp::factor_center_split(group::dihedral(4)));
  EXPECT_THROW(decomp::factor_center_split(group::cyclic(4)), ValidationError);
  EXPECT_THROW(decomp::factor_center_split(group::symmetric(3)), ValidationError);
}

}  // namespace
