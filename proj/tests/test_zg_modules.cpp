#include "eqtate/tate.hpp"
#include "random_modules.hpp"

#include <gtest/gtest.h>

#include <set>
#include <tuple>

using namespace eqtate;
using eqtate::gen::random_finite_module;
using eqtate::gen::random_module;

namespace {

GroupPtr cyclic(std::size_t n) { return make_group(FiniteGroup::cyclic(n)); }
GroupPtr klein() {
  return make_group(FiniteGroup::product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2)));
}

// Brute-force Tate cardinalities for a finite module over a cyclic group
// presented on diagonal generators: enumerate every element.
std::tuple<Int, Int, Int> brute_force_h0_h1(const GModule& m) {
  GModule nm = m.normalized();
  const std::size_t k = nm.ngens();
  IntVector d(k);
  for (std::size_t i = 0; i < k; ++i) d[i] = nm.relations()(i, i);
  std::vector<IntVector> elems{IntVector{}};
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<IntVector> next;
    for (const auto& e : elems)
      for (Int v = 0; v < d[i]; ++v) {
        auto f = e;
        f.push_back(v);
        next.push_back(f);
      }
    elems = std::move(next);
  }
  auto reduce = [&](IntVector x) {
    for (std::size_t i = 0; i < k; ++i) mpz_fdiv_r(x[i].get_mpz_t(), x[i].get_mpz_t(), d[i].get_mpz_t());
    return x;
  };
  const auto sigma = *nm.group().cyclic_generator();
  const IntMatrix& s = nm.action(sigma);
  const IntMatrix N = nm.norm();
  std::set<IntVector> fixed, norms, ker_n, aug;
  for (const auto& x : elems) {
    auto sx = reduce(s.apply(x));
    if (sx == x) fixed.insert(x);
    auto nx = reduce(N.apply(x));
    norms.insert(nx);
    if (std::all_of(nx.begin(), nx.end(), [](const Int& v) { return sgn(v) == 0; })) ker_n.insert(x);
    IntVector diff(k);
    for (std::size_t i = 0; i < k; ++i) diff[i] = sx[i] - x[i];
    aug.insert(reduce(diff));
  }
  return {Int(fixed.size()) / Int(norms.size()), Int(ker_n.size()) / Int(aug.size()), Int(fixed.size())};
}

IntMatrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t c) {
  std::uniform_int_distribution<int> e(-3, 3);
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = e(rng);
  return m;
}

}  // namespace

TEST(FiniteGroup, RejectsBadTables) {
  EXPECT_THROW(FiniteGroup({{0, 1}, {0, 1}}, {1}), std::invalid_argument);
  EXPECT_THROW(FiniteGroup({{0, 1, 2}, {1, 0, 2}, {2, 2, 0}}, {1, 2}), std::invalid_argument);
  EXPECT_THROW(FiniteGroup::cyclic(0), std::invalid_argument);
  EXPECT_NO_THROW(FiniteGroup::symmetric3());
  EXPECT_FALSE(FiniteGroup::symmetric3().is_abelian());
  EXPECT_EQ(FiniteGroup::symmetric3().subgroups().size(), 6u);
  EXPECT_EQ(klein()->subgroups().size(), 5u);
  EXPECT_FALSE(klein()->is_cyclic());
}

TEST(GModule, RejectsInvalidActions) {
  auto c2 = cyclic(2);
  // σ = 2 on Z does not square to the identity
  EXPECT_THROW(sign_module(c2, {2}), std::invalid_argument);
  // σ = 2 on Z/3 does (4 ≡ 1)
  EXPECT_NO_THROW(GModule(c2, IntMatrix::from_rows({{3}}), {IntMatrix::from_rows({{2}})}));
  // action must preserve relations: swap on Z^2 / (2,0)
  EXPECT_THROW(GModule(c2, IntMatrix::from_rows({{2}, {0}}), {IntMatrix::from_rows({{0, 1}, {1, 0}})}),
               std::invalid_argument);
  auto c3 = cyclic(3);
  EXPECT_THROW(sign_module(c3, {-1}), std::invalid_argument);
}

TEST(TateCohomology, TrivialIntegers) {
  for (std::size_t n : {2, 3, 4, 5, 6}) {
    auto z = GModule::integers(cyclic(n));
    for (int d = -4; d <= 4; ++d) {
      auto h = tate_cohomology(z, d);
      if (d % 2 == 0)
        EXPECT_EQ(h, FinAbGroup::cyclic(n)) << n << " " << d;
      else
        EXPECT_TRUE(h.is_trivial()) << n << " " << d;
    }
  }
}

TEST(TateCohomology, SignModule) {
  auto s = sign_module(cyclic(2), {-1});
  for (int d = -3; d <= 3; ++d)
    EXPECT_EQ(tate_cohomology(s, d), d % 2 == 0 ? FinAbGroup() : FinAbGroup::cyclic(2));
}

TEST(TateCohomology, FreeModuleIsAcyclic) {
  for (std::size_t p : {2, 3, 5})
    for (int d = -3; d <= 3; ++d) EXPECT_TRUE(tate_cohomology(GModule::free(cyclic(p)), d).is_trivial());
}

TEST(TateCohomology, TrivialZ2OverC2) {
  auto m = GModule::trivial(cyclic(2), FinAbGroup::cyclic(2));
  auto [h0, h1, fixed] = brute_force_h0_h1(m);
  EXPECT_EQ(h0, 2);
  EXPECT_EQ(h1, 2);
  for (int d = -3; d <= 3; ++d) EXPECT_EQ(tate_cohomology(m, d), FinAbGroup::cyclic(2));
}

TEST(TateCohomology, CyclicAgainstBruteForce) {
  std::mt19937 rng(5);
  for (std::size_t n : {2, 3, 4, 6})
    for (int i = 0; i < 10; ++i) {
      auto m = random_finite_module(rng, cyclic(n), 3);
      if (*m.abelian_group().order() > 2000) continue;
      auto [h0, h1, fixed] = brute_force_h0_h1(m);
      EXPECT_EQ(*tate_cohomology(m, 0).order(), h0);
      EXPECT_EQ(*tate_cohomology(m, 1).order(), h1);
      EXPECT_EQ(*invariants(m).order(), fixed);
    }
}

TEST(CompleteResolution, PeriodicAndKernelBuiltAreExact) {
  EXPECT_TRUE(CompleteResolution::periodic(cyclic(4)).verify_exact(5));
  EXPECT_TRUE(CompleteResolution::periodic(cyclic(1)).verify_exact(3));
  for (auto g : {cyclic(3), klein(), make_group(FiniteGroup::symmetric3())}) {
    auto r = CompleteResolution::from_kernels(g, 5);
    EXPECT_TRUE(r.verify_exact(5));
    EXPECT_EQ(r.resolution_rank(0), 1u);
  }
  EXPECT_THROW(CompleteResolution::periodic(klein()), std::invalid_argument);
}

TEST(TateCohomologyGeneral, KleinFourIntegers) {
  auto z = GModule::integers(klein());
  // Ĥ^0 = Z/|G|; higher degrees from the Künneth formula for H^*(C2 x C2; Z);
  // negative degrees by Tate duality Ĥ^{-n}(G;Z) ≅ Ĥ^n(G;Z).
  EXPECT_EQ(tate_cohomology_general(z, 0), FinAbGroup::cyclic(4));
  EXPECT_TRUE(tate_cohomology_general(z, 1).is_trivial());
  EXPECT_EQ(tate_cohomology_general(z, 2), FinAbGroup::elementary(2, 2));
  EXPECT_EQ(tate_cohomology_general(z, 3), FinAbGroup::elementary(2, 1));
  EXPECT_EQ(tate_cohomology_general(z, 4), FinAbGroup::elementary(2, 3));
  EXPECT_TRUE(tate_cohomology_general(z, -1).is_trivial());
  EXPECT_EQ(tate_cohomology_general(z, -2), FinAbGroup::elementary(2, 2));
  EXPECT_EQ(tate_cohomology_general(z, -3), FinAbGroup::elementary(2, 1));
  EXPECT_THROW(tate_cohomology_general(z, 7), std::out_of_range);
}

TEST(TateCohomologyGeneral, FreeModulesVanishInWindow) {
  for (auto g : {klein(), make_group(FiniteGroup::symmetric3())}) {
    auto res = CompleteResolution::from_kernels(g, 5);
    for (std::size_t k = 1; k <= 2; ++k)
      for (int d = -4; d <= 4; ++d) EXPECT_TRUE(tate_cohomology(res, GModule::free(g, k), d).is_trivial());
  }
}

TEST(TateCohomologyGeneral, AgreesWithCyclicFastPathOnC3) {
  std::mt19937 rng(17);
  auto g = cyclic(3);
  auto res = CompleteResolution::from_kernels(g, 5);
  for (int i = 0; i < 20; ++i) {
    auto m = random_module(rng, g);
    for (int d = -3; d <= 3; ++d) EXPECT_EQ(tate_cohomology(res, m, d), tate_cohomology_cyclic(m, d));
  }
}

TEST(TateCohomology, PeriodicityAndAnnihilation) {
  std::mt19937 rng(99);
  for (std::size_t n : {2, 3, 4, 6})
    for (int i = 0; i < 12; ++i) {
      auto m = random_module(rng, cyclic(n));
      for (int d = -2; d <= 2; ++d) {
        auto h = tate_cohomology(m, d);
        EXPECT_EQ(h, tate_cohomology(m, d + 2));
        ASSERT_TRUE(h.is_finite());
        EXPECT_EQ(Int(n) % h.exponent(), 0) << h;
      }
    }
}

TEST(Herbrand, Examples) {
  EXPECT_EQ(herbrand_quotient(GModule::integers(cyclic(5))), mpq_class(5));
  EXPECT_EQ(herbrand_quotient(sign_module(cyclic(2), {-1})), mpq_class(1, 2));
  std::mt19937 rng(8);
  for (int i = 0; i < 50; ++i) {
    auto m = random_finite_module(rng, cyclic(2 + i % 5));
    EXPECT_EQ(herbrand_quotient(m), mpq_class(1));
  }
}

TEST(InducedModule, Examples) {
  auto g = cyclic(4);
  auto whole = make_subgroup(*g, {0, 1, 2, 3});
  auto m = sign_module(whole.group, {-1});
  auto ind = induced_module(g, whole, m);
  EXPECT_EQ(ind.abelian_group(), m.abelian_group());
  for (int d = 0; d < 2; ++d) EXPECT_EQ(tate_cohomology(ind, d), tate_cohomology(m, d));

  auto one = make_subgroup(*g, {0});
  auto zg = induced_module(g, one, GModule::integers(one.group));
  EXPECT_EQ(zg.ngens(), 4u);
  for (int d = -2; d < 2; ++d) EXPECT_TRUE(tate_cohomology(zg, d).is_trivial());
  EXPECT_THROW(make_subgroup(*g, {0, 1}), std::invalid_argument);
}

TEST(InducedModule, ShapiroOnRandomInstances) {
  std::mt19937 rng(31);
  std::vector<GroupPtr> groups{cyclic(4), cyclic(6), klein(), make_group(FiniteGroup::symmetric3()),
                               cyclic(12)};
  int instances = 0;
  for (int iter = 0; instances < 50; ++iter) {
    auto g = groups[iter % groups.size()];
    auto subs = g->subgroups();
    auto h = make_subgroup(*g, subs[rng() % subs.size()]);
    auto m = random_module(rng, h.group, 3);
    auto ind = induced_module(g, h, m);
    for (int d = -1; d <= 2; ++d)
      ASSERT_EQ(tate_cohomology(ind, d, {-3, 3}), tate_cohomology(m, d, {-3, 3}))
          << "order " << g->order() << " sub " << h.group->order() << " degree " << d;
    ++instances;
  }
}

TEST(DualModule, Examples) {
  auto g = cyclic(3);
  auto m = GModule::trivial(g, FinAbGroup::cyclic(6));
  auto md = dual_module(m);
  EXPECT_EQ(md.abelian_group(), FinAbGroup::cyclic(6));
  for (int d = -2; d <= 2; ++d) EXPECT_EQ(tate_cohomology(md, d), tate_cohomology(m, d));
  EXPECT_THROW(dual_module(GModule::integers(g)), std::domain_error);
}

TEST(DualModule, DualityOfCardinalities) {
  std::mt19937 rng(12);
  std::vector<GroupPtr> groups{cyclic(2), cyclic(3), cyclic(4), cyclic(6), klein(),
                               make_group(FiniteGroup::symmetric3())};
  for (int i = 0; i < 36; ++i) {
    auto g = groups[i % groups.size()];
    auto m = random_finite_module(rng, g, 3);
    auto md = dual_module(m);
    EXPECT_EQ(md.abelian_group().order(), m.abelian_group().order());
    for (int d = -2; d <= 1; ++d)
      EXPECT_EQ(tate_cohomology(md, d, {-3, 3}).order(), tate_cohomology(m, -1 - d, {-3, 3}).order());
  }
}

TEST(ShiftedIdentity, CyclicValues) {
  for (std::size_t p : {2, 3, 5}) {
    auto g = cyclic(p);
    EXPECT_TRUE(shifted_integral_identity(g, -2).is_trivial());
    EXPECT_EQ(shifted_integral_identity(g, 1), FinAbGroup::cyclic(p));
    EXPECT_EQ(shifted_integral_identity(g, -1), FinAbGroup::cyclic(p));
    EXPECT_TRUE(shifted_integral_identity(g, 2).is_trivial());
  }
}

TEST(LongExactSequence, AlternatingProductOverOnePeriod) {
  std::mt19937 rng(4);
  for (std::size_t n : {2, 3, 4}) {
    auto g = cyclic(n);
    int done = 0;
    while (done < 8) {
      // lattices A, B and an averaged G-map f: A -> B
      auto a = gen::permutation_module(g, g->subgroups()[rng() % g->subgroups().size()]);
      auto b = direct_sum(gen::permutation_module(g, {0}), GModule::integers(g));
      IntMatrix x = random_matrix(rng, b.ngens(), a.ngens());
      IntMatrix f(b.ngens(), a.ngens());
      for (std::size_t h = 0; h < n; ++h) f = f + b.action(h) * x * a.action(g->inverse(h));
      if (smith_normal_form(f, {false, false, false}).rank() != a.ngens()) continue;
      GModule c(g, f, b.generator_action());
      mpq_class prod = 1;
      // exact hexagon: alternate signs around all six terms
      for (int d = 0; d < 2; ++d) {
        mpq_class t(*tate_cohomology(a, d).order());
        t /= mpq_class(*tate_cohomology(b, d).order());
        t *= mpq_class(*tate_cohomology(c, d).order());
        if (d == 0) prod *= t; else prod /= t;
      }
      prod.canonicalize();
      EXPECT_EQ(prod, mpq_class(1));
      ++done;
    }
  }
}

TEST(Invariants, LatticeExamples) {
  auto c2 = cyclic(2);
  EXPECT_TRUE(invariants(sign_module(c2, {-1})).is_trivial());
  EXPECT_EQ(invariants(GModule::free(c2, 2)), FinAbGroup::free(2));
  EXPECT_EQ(invariants(GModule::trivial(c2, FinAbGroup::from_diagonal({Int(4), Int(0)}))),
            FinAbGroup::from_diagonal({Int(4), Int(0)}));
  // Z[ζ3] with σ = ζ3 has no fixed points; Z/4 with σ = -1 has fixed points {0, 2}
  auto c3 = cyclic(3);
  EXPECT_TRUE(invariants(GModule(c3, IntMatrix(2, 0), {IntMatrix::from_rows({{0, -1}, {1, -1}})})).is_trivial());
  EXPECT_EQ(invariants(GModule::with_diagonal_relations(c2, {Int(4)}, {IntMatrix::from_rows({{-1}})})),
            FinAbGroup::cyclic(Int(2)));
}

TEST(DualCohomology, AgreesWithFiniteAndLatticeDuals) {
  std::mt19937 rng(41);
  for (std::size_t n : {2, 3, 4}) {
    auto g = cyclic(n);
    for (int trial = 0; trial < 8; ++trial) {
      const GModule fin = random_finite_module(rng, g, 3);
      const GModule mod = random_module(rng, g, 3);
      for (int k = -2; k <= 2; ++k) {
        EXPECT_EQ(tate_cohomology_of_dual(fin, k), tate_cohomology(dual_module(fin), k));
        EXPECT_EQ(*tate_cohomology_of_dual(mod, k).order(), *tate_cohomology(mod, -1 - k).order());
        const auto [tor, lat] = torsion_split(mod);
        EXPECT_EQ(tate_cohomology_of_dual(lat, k), tate_cohomology(integral_dual(lat), k + 1));
      }
    }
  }
}

TEST(DualCohomology, NonSplitUnitExtension) {
  // μ_4 ⊕ Z twisted: σ(u) = u^{-1} ζ^2, σ(ζ) = ζ^{-1}, not a direct sum
  auto c2 = cyclic(2);
  GModule u(c2, IntMatrix::from_rows({{0}, {4}}), {IntMatrix::from_rows({{-1, 0}, {2, 3}})});
  GModule split = direct_sum(GModule::with_diagonal_relations(c2, {Int(4)}, {IntMatrix::from_rows({{3}})}),
                             sign_module(c2, {-1}));
  EXPECT_NE(tate_cohomology(u, 0), tate_cohomology(split, 0));
  for (int k = -3; k <= 3; ++k) EXPECT_EQ(*tate_cohomology_of_dual(u, k).order(), *tate_cohomology(u, -1 - k).order());
}
