// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Each criterion is timed against its own wall-clock limit.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "corpus.hpp"
#include "coxdec/coxeter/classify.hpp"
#include "coxdec/coxeter/reflection_group.hpp"
#include "coxdec/decomp/decompose.hpp"
#include "coxdec/exact/symmatrix.hpp"
#include "coxdec/group/isomorphism.hpp"
#include "coxdec/group/kn.hpp"
#include "coxdec/group/lattice.hpp"
#include "coxdec/group/remak.hpp"
#include "coxdec/lie/algebra.hpp"
#include "coxdec/lie/decompose.hpp"
#include "coxdec/lie/structure.hpp"

namespace {

using namespace coxdec;
using coxeter::CoxeterSystem;
using coxeter::CoxeterType;
using coxeter::Family;
using exact::Rational;
using exact::Signature;

/// Collects failures for one criterion; the first few are printed.
class Tally {
public:
  void check(bool ok, const std::string& what) {
    ++checks_;
    if (ok) return;
    if (failures_.size() < 10) failures_.push_back(what);
    ++failed_;
  }
  std::size_t checks() const { return checks_; }
  std::size_t failed() const { return failed_; }
  const std::vector<std::string>& failures() const { return failures_; }

private:
  std::size_t checks_ = 0;
  std::size_t failed_ = 0;
  std::vector<std::string> failures_;
};

struct Criterion {
  int number;
  std::string title;
  double time_limit_s;
  std::function<void(Tally&)> body;
};

bool run(const Criterion& c) {
  Tally t;
  const auto start = std::chrono::steady_clock::now();
  std::string crash;
  try {
    c.body(t);
  } catch (const std::exception& e) {
    crash = e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool in_time = secs < c.time_limit_s;
  const bool ok = crash.empty() && t.failed() == 0 && t.checks() > 0 && in_time;
  std::printf("%s  criterion %d: %s  (%zu checks, %zu failed, %.2f s / limit %.0f s)\n", ok ? "PASS" : "FAIL",
              c.number, c.title.c_str(), t.checks(), t.failed(), secs, c.time_limit_s);
  for (const auto& f : t.failures()) std::printf("      - %s\n", f.c_str());
  if (!crash.empty()) std::printf("      - exception: %s\n", crash.c_str());
  if (!in_time) std::printf("      - over the time limit\n");
  std::fflush(stdout);
  return ok;
}

CoxeterSystem standard(Family f, std::size_t n, std::uint32_t label = 0) {
  return coxeter::standard_system(CoxeterType{f, n, label});
}

// ---------------------------------------------------------------------------

void trichotomy(Tally& t) {
  std::vector<CoxeterType> finite, affine;
  for (std::size_t n = 1; n <= 8; ++n) finite.push_back({Family::A, n, 0});
  for (std::size_t n = 2; n <= 8; ++n) finite.push_back({Family::B, n, 0});
  for (std::size_t n = 4; n <= 8; ++n) finite.push_back({Family::D, n, 0});
  for (std::size_t n = 6; n <= 8; ++n) finite.push_back({Family::E, n, 0});
  finite.push_back({Family::F, 4, 0});
  finite.push_back({Family::H, 3, 0});
  finite.push_back({Family::H, 4, 0});
  for (std::uint32_t m = 3; m <= 30; ++m) finite.push_back({Family::I, 2, m});
  affine.push_back({Family::AffineA, 1, 0});
  for (std::size_t rank = 3; rank <= 9; ++rank)
    for (const auto& type : coxeter::classical_types_of_rank(rank))
      if (type.is_affine()) affine.push_back(type);

  for (const auto& type : finite) {
    const auto cls = coxeter::classify(coxeter::standard_system(type));
    const std::size_t n = type.rank();
    t.check(cls.signature == Signature{n, 0, 0} && cls.kind == coxeter::Kind::Finite,
            type.name() + " has signature " + exact::to_string(cls.signature));
  }
  for (const auto& type : affine) {
    const auto cls = coxeter::classify(coxeter::standard_system(type));
    const std::size_t n = type.rank();
    t.check(cls.signature == Signature{n - 1, 0, 1} && cls.kind == coxeter::Kind::Affine,
            type.name() + " has signature " + exact::to_string(cls.signature));
  }
  // Every family in range is present.
  t.check(affine.size() == 8 + 6 + 7 + 5 + 3 + 1 + 1, "affine list has " + std::to_string(affine.size()) + " types");
}

// ---------------------------------------------------------------------------

struct Component {
  std::string name;
  CoxeterSystem system;
  std::size_t order;
};

std::vector<std::size_t> factor_orders(const decomp::CoxeterFactorization& f) {
  std::vector<std::size_t> out;
  for (const auto& x : f.factors) out.push_back(x.order->get_ui());
  std::sort(out.begin(), out.end());
  return out;
}

void coxeter_vs_oracle(Tally& t) {
  constexpr std::size_t kBound = 1152;
  std::vector<Component> pool;
  auto add = [&](Family f, std::size_t n, std::uint32_t m = 0) {
    const CoxeterType type{f, n, m};
    pool.push_back({type.name(), coxeter::standard_system(type), coxeter::finite_order(type).get_ui()});
  };
  for (std::size_t n = 1; n <= 4; ++n) add(Family::A, n);
  for (std::size_t n = 2; n <= 4; ++n) add(Family::B, n);
  add(Family::D, 4);
  add(Family::H, 3);
  add(Family::F, 4);
  // I2(3) = A2 and I2(4) = B2 are already in the pool.
  for (std::uint32_t m = 5; m <= 30; ++m) add(Family::I, 2, m);

  const decomp::CrossValidationBudget budget{coxeter::kDefaultClosureBudget, kBound};
  std::size_t systems = 0;
  std::vector<std::size_t> chosen;
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t order) {
    if (!chosen.empty()) {
      CoxeterSystem cs;
      std::string name;
      for (auto i : chosen) {
        cs = cs.disjoint_union(pool[i].system);
        name += (name.empty() ? "" : " x ") + pool[i].name;
      }
      const auto r = decomp::cross_validate(cs, budget);
      t.check(r.passed, name + ": " + r.message);
      ++systems;
    }
    for (std::size_t i = start; i < pool.size(); ++i) {
      if (order * pool[i].order > kBound) continue;
      chosen.push_back(i);
      rec(i, order * pool[i].order);
      chosen.pop_back();
    }
  };
  rec(0, 1);
  t.check(systems == 790, "enumerated " + std::to_string(systems) + " systems");

  const std::vector<std::pair<CoxeterSystem, std::vector<std::size_t>>> named{
      {standard(Family::B, 3), {2, 24}},        {standard(Family::H, 3), {2, 60}},
      {standard(Family::I, 2, 6), {2, 6}},      {standard(Family::I, 2, 10), {2, 10}},
      {standard(Family::D, 4), {192}},          {standard(Family::F, 4), {1152}}};
  for (const auto& [cs, expect] : named) {
    const auto r = decomp::cross_validate(cs, budget);
    t.check(r.passed && factor_orders(r.factorization) == expect, coxeter::canonical_name(cs) + " factor orders");
  }
}

// ---------------------------------------------------------------------------

bool is_prime_power(std::size_t n) {
  if (n < 2) return false;
  std::size_t p = 2;
  while (n % p) ++p;
  while (n % p == 0) n /= p;
  return n == 1;
}

void remak_uniqueness(Tally& t) {
  const auto groups = corpus::group_corpus();
  t.check(groups.size() >= 100, "corpus has only " + std::to_string(groups.size()) + " groups");
  for (const auto& [name, g] : groups) {
    const auto base = group::remak_decompose(g);
    const auto base_set = group::factor_multiset(g, base.factors);
    t.check(group::is_internal_direct_product(g, base.factors), name + ": factors are not a direct decomposition");
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      group::RemakOptions opt;
      opt.shuffle_seed = seed * 7919;
      const auto d = group::remak_decompose(g, opt);
      t.check(group::equivalent(base_set, group::factor_multiset(g, d.factors)),
              name + ": seed " + std::to_string(seed) + " gives a different multiset");
    }
    if (g.is_abelian())
      for (const auto& f : base.factors) {
        const auto sub = group::subgroup_group(g, f).group;
        bool cyclic = false;
        for (group::Element x = 0; x < sub.order() && !cyclic; ++x) cyclic = sub.element_order(x) == sub.order();
        t.check(cyclic && is_prime_power(sub.order()), name + ": abelian factor of order " +
                                                           std::to_string(sub.order()) + " is not a cyclic p-group");
      }
  }
}

// ---------------------------------------------------------------------------

void centerless_uniqueness(Tally& t) {
  const auto groups = corpus::centerless_corpus();
  t.check(groups.size() >= 10, "centerless corpus too small");
  for (const auto& [name, g] : groups) {
    t.check(group::center(g).order() == 1, name + " has a nontrivial centre");
    const auto all = group::all_remak_decompositions(g);
    t.check(!all.empty(), name + ": no decomposition found");
    std::set<std::vector<group::Subgroup>> distinct(all.begin(), all.end());
    t.check(distinct.size() == 1, name + ": " + std::to_string(distinct.size()) + " distinct factor sets");
    auto found = group::remak_decompose(g).factors;
    std::sort(found.begin(), found.end());
    t.check(!all.empty() && found == all.front(), name + ": greedy search disagrees with exhaustive search");
  }
}

// ---------------------------------------------------------------------------

void image_law(Tally& t) {
  std::size_t splits = 0;
  for (const auto& [name, g] : corpus::group_corpus()) {
    const auto d = group::remak_decompose(g);
    if (d.factors.size() < 2) continue;
    const auto q = group::quotient(g, group::hypercenter(g));
    // Every way of grouping the factors into two blocks A and B.
    const std::size_t k = d.factors.size();
    for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t{1} << k); ++mask) {
      if (mask & 1) continue;  // each unordered split once
      auto a = group::trivial_subgroup(), b = group::trivial_subgroup();
      for (std::size_t i = 0; i < k; ++i)
        ((mask >> i) & 1 ? a : b) = group::product(g, (mask >> i) & 1 ? a : b, d.factors[i]);
      const auto pa = group::image_in_quotient(q, a), pb = group::image_in_quotient(q, b);
      t.check(group::is_internal_direct_product(q.group, {pa, pb}), name + ": image law fails");
      ++splits;
    }
  }
  t.check(splits > 0, "no decompositions to test");
}

// ---------------------------------------------------------------------------

void kn_invariants(Tally& t) {
  std::mt19937_64 rng(2024);
  const auto pool = corpus::random_products(30, 5, 48);
  std::vector<corpus::NamedGroup> small = pool;
  for (auto& g : corpus::basic_nonabelian())
    if (g.group.order() <= 48) small.push_back(std::move(g));

  for (int k = 0; k < 50; ++k) {
    const auto& a = small[rng() % small.size()];
    const auto* b = &small[rng() % small.size()];
    while (a.group.order() * b->group.order() > 400) b = &small[rng() % small.size()];
    const std::size_t n = 2 + rng() % 5;
    const auto lhs = group::kn(group::direct_product(a.group, b->group), n).index;
    const auto rhs = group::kn(a.group, n).index * group::kn(b->group, n).index;
    t.check(lhs == rhs, "k_" + std::to_string(n) + "(" + a.name + " x " + b->name + ") = " + std::to_string(lhs) +
                            " but the product is " + std::to_string(rhs));
  }

  int quotients = 0;
  for (std::size_t attempt = 0; quotients < 50 && attempt < 1000; ++attempt) {
    const auto& [name, g] = small[rng() % small.size()];
    const auto normals = group::normal_subgroups(g);
    const auto& n = normals[rng() % normals.size()];
    const auto q = group::quotient(g, n).group;
    const std::size_t level = 2 + rng() % 5;
    t.check(group::kn(g, level).index >= group::kn(q, level).index,
            name + ": quotient by order " + std::to_string(n.order()) + " increases k_" + std::to_string(level));
    ++quotients;
  }
  t.check(quotients == 50, "only " + std::to_string(quotients) + " quotients");

  t.check(group::kn_free({2, 2}) == 4, "k_2(F_2) != 4");
  t.check(group::kn_free({2, 3}) == 36, "k_3(F_2) != 36");

  for (const auto& [name, g] : corpus::group_corpus()) {
    if (g.order() > 120) continue;
    const auto d = group::remak_decompose(g);
    for (std::size_t n = 2; n <= 6; ++n) {
      const auto k = group::kn(g, n).index;
      std::size_t count = 0;
      for (const auto& f : d.factors) count += group::kn(group::subgroup_group(g, f).group, n).index >= 2;
      t.check(static_cast<double>(count) <= std::log2(static_cast<double>(k)) + 1e-12,
              name + ": factor count bound fails at n=" + std::to_string(n));
    }
  }
}

// ---------------------------------------------------------------------------

void lie_suite(Tally& t) {
  using lie::OfSignature;
  using lie::Verdict;
  std::size_t scalar_certified = 0;
  for (std::size_t m = 1; m <= 5; ++m)
    for (std::size_t p = 0; p <= m; ++p)
      for (std::size_t r = 0; r <= 3; ++r) {
        const OfSignature sig{p, m - p, r};
        const std::string name =
            "of(" + std::to_string(p) + "," + std::to_string(m - p) + "," + std::to_string(r) + ")";
        const auto l = lie::of_algebra(sig);
        t.check(l.dim() == m * (m - 1) / 2 + r * m, name + " has dimension " + std::to_string(l.dim()));
        if (m >= 3) t.check(lie::is_perfect(l), name + " is not perfect");
        if (m == 2 && (r == 1 || r == 2))
          t.check(lie::is_solvable(l) && l.dim() - lie::derived(l).dim() == 1,
                  name + " is not solvable with a codimension-1 derived ideal");
        if (lie::center(l).dim() != 0) continue;
        const auto d = lie::decompose_ideals(l);
        const bool exceptional = m == 4 && r == 0 && p % 2 == 0;
        if (exceptional) {
          t.check(d.verdict == Verdict::Split && d.dimensions() == std::vector<std::size_t>{3, 3},
                  name + " does not split as 3 + 3");
        } else {
          t.check(d.verdict != Verdict::Split, name + " splits");
          if (d.verdict == Verdict::CertifiedIndecomposable && d.centroid_dim == 1) ++scalar_certified;
        }
      }
  t.check(scalar_certified >= 10, "only " + std::to_string(scalar_certified) + " centroid-dim-1 certificates");

  std::mt19937_64 rng(99);
  for (const OfSignature sig : {OfSignature{4, 0, 0}, {2, 2, 0}, {3, 0, 1}, {2, 1, 1}}) {
    const auto l = lie::of_algebra(sig);
    const auto base = lie::decompose_ideals(l);
    for (int trial = 0; trial < 10; ++trial) {
      const auto moved = lie::change_basis(l, lie::random_invertible(l.dim(), rng));
      const auto d = lie::decompose_ideals(moved, rng());
      t.check(d.verdict == base.verdict && d.dimensions() == base.dimensions(),
              "summand multiset changes under a basis change");
    }
  }
}

// ---------------------------------------------------------------------------

exact::SymMatrix random_rational(std::size_t n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-4, 4), den(1, 3);
  std::vector<std::vector<Rational>> rows(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      Rational x(num(rng), den(rng));
      x.canonicalize();
      // Sparse entries produce zero pivots and degenerate forms.
      if (rng() % 3 == 0) x = 0;
      rows[i][j] = rows[j][i] = x;
    }
  return exact::SymMatrix::from_rationals(rows);
}

exact::SymMatrix gram_of(const std::vector<std::pair<std::size_t, std::size_t>>& edges, std::size_t n) {
  std::vector<std::vector<Rational>> rows(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i) rows[i][i] = 2;
  for (auto [a, b] : edges) rows[a][b] = rows[b][a] = -1;
  return exact::SymMatrix::from_rationals(rows);
}

void exact_engine(Tally& t) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + rng() % 6;
    const auto m = random_rational(n, rng);
    exact::SymMatrix a(n);
    std::vector<std::vector<Rational>> ar(n, std::vector<Rational>(n));
    for (;;) {
      for (auto& row : ar)
        for (auto& x : row) x = coef(rng);
      lie::Matrix check(n, n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) check(i, j) = ar[i][j];
      if (lie::rank(check) == n) break;
    }
    const auto sig = exact::signature(m);
    const auto moved = exact::signature(m.congruent(ar));
    t.check(sig == moved, "congruence changes " + exact::to_string(sig) + " to " + exact::to_string(moved));
    t.check(sig.dimension() == n, "signature dimension mismatch");
    t.check(exact::signature(m.negated()) == sig.negated(), "negation does not swap p and q");
  }

  // Sign over the generated corpus: every nonzero cyclotomic value seen while
  // building Tits forms, their pairwise sums and products.
  std::vector<exact::CycloNumber> values;
  for (std::uint32_t m = 2; m <= 30; ++m) values.push_back(exact::cos_pi_over(Label(m), 2 * m));
  for (std::size_t i = 0; i < values.size(); ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      const auto l = std::lcm(values[i].conductor(), values[j].conductor());
      const auto x = values[i].lifted(l), y = values[j].lifted(l);
      for (const auto& v : {x - y, x + y, x * y - exact::CycloNumber(Rational(1, 4), l), x * x - y})
        if (!v.is_zero()) t.check(exact::sign(v) != exact::Sign::Zero, "sign() returned zero for " + v.to_string());
    }
  for (std::size_t n = 2; n <= 6; ++n)
    for (const auto& type : coxeter::classical_types_of_rank(n)) {
      const auto form = coxeter::tits_form(coxeter::standard_system(type));
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (!form.at(i, j).is_zero()) t.check(exact::sign(form.at(i, j)) != exact::Sign::Zero, type.name());
    }

  // E8: branch node 4 with arms 0-1-2-3-4-5-6 and 4-7; affine node 8 on node 0.
  std::vector<std::pair<std::size_t, std::size_t>> e8{{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {4, 7}};
  t.check(exact::signature(gram_of(e8, 8)) == Signature{8, 0, 0}, "E8 Gram is not positive definite");
  e8.push_back({0, 8});
  t.check(exact::signature(gram_of(e8, 9)) == Signature{8, 0, 1}, "affine E8 Gram is not (8,0,1)");
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "finite types are (n,0,0), affine types are (n-1,0,1)", 10, trichotomy},
      {2, "Coxeter factorization matches the Remak oracle for |W| <= 1152", 300, coxeter_vs_oracle},
      {3, "Remak factor multiset is independent of the search order", 600, remak_uniqueness},
      {4, "centerless groups have a unique set of factor subgroups", 600, centerless_uniqueness},
      {5, "direct factors map to direct factors modulo the hypercentre", 600, image_law},
      {6, "k_n product formula, monotonicity, free-group values, factor-count bound", 600, kn_invariants},
      {7, "Lie algebra suite", 60, lie_suite},
      {8, "exact signature and sign engine", 600, exact_engine},
  };
  int failed = 0;
  for (const auto& c : criteria) failed += !run(c);
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
