#include "eqtate/numberfield.hpp"

#include <gtest/gtest.h>

using namespace eqtate;

namespace {

// Kronecker symbol (d/n) for n > 0, from quadratic reciprocity by hand.
int kronecker_oracle(long d, long n) {
  int r = 1;
  while (n % 2 == 0) {
    n /= 2;
    long m8 = ((d % 8) + 8) % 8;
    if (m8 % 2 == 0) return 0;
    if (m8 == 3 || m8 == 5) r = -r;
  }
  // Jacobi (d/n), n odd
  long a = ((d % n) + n) % n;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      if (n % 8 == 3 || n % 8 == 5) r = -r;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) r = -r;
    a %= n;
  }
  return n == 1 ? r : 0;
}

// Analytic class number formula for d < 0 fundamental.
long class_number_oracle(long d) {
  const long n = -d;
  long sum = 0;
  for (long a = 1; a < n; ++a) sum += kronecker_oracle(d, a) * a;
  const long w = d == -3 ? 6 : (d == -4 ? 4 : 2);
  return -(w * sum) / (2 * n);
}

std::string order_str(const FinAbGroup& g) { return g.order()->get_str(); }

}  // namespace

TEST(NumberField, FundamentalDiscriminants) {
  std::vector<long> yes{-3, -4, -7, -8, 5, 8, 12, -20, -84, 13, -420}, no{0, 1, -1, 4, -12, 9, 16, -16, 2, 3, 6};
  for (long d : yes) EXPECT_TRUE(is_fundamental_discriminant(Int(d))) << d;
  for (long d : no) EXPECT_FALSE(is_fundamental_discriminant(Int(d))) << d;
  EXPECT_EQ(QuadField(Int(-1)).discriminant(), -4);
  EXPECT_EQ(QuadField(Int(5)).discriminant(), 5);
  EXPECT_EQ(QuadField(Int(-5)).discriminant(), -20);
  EXPECT_THROW(QuadField(Int(4)), std::invalid_argument);
  EXPECT_THROW(QuadField(Int(1)), std::invalid_argument);
  EXPECT_EQ(squarefree_part(Int(-45)), -5);
  EXPECT_EQ(squarefree_part(Int(72)), 2);
}

TEST(NumberField, ReductionIsCanonical) {
  // every form in the orbit of a reduced form under SL2(Z) moves reduces back
  for (long d : {-23L, -56L, -84L, -163L, -420L}) {
    for (const auto& f : reduced_forms(Int(d))) {
      QuadForm g = f;
      for (int step = 0; step < 6; ++step) {
        // x -> x + y, then swap with sign
        g = {g.a, g.b + 2 * g.a, g.a + g.b + g.c};
        g = {g.c, -g.b, g.a};
        EXPECT_EQ(g.discriminant(), d);
        EXPECT_EQ(reduce(g), f) << d;
      }
    }
  }
}

TEST(NumberField, ClassNumberMatchesAnalyticFormula) {
  for (long d = -3; d > -500; --d) {
    if (!is_fundamental_discriminant(Int(d))) continue;
    const auto cl = quad_class_group(Int(d));
    EXPECT_EQ(Int(class_number_oracle(d)), *cl.order()) << d;
  }
}

TEST(NumberField, ClassNumberOne) {
  std::vector<long> found;
  for (long m = -1; m > -200; --m) {
    if (!is_squarefree(Int(m))) continue;
    if (quad_class_group(QuadField(Int(m)).discriminant()).is_trivial()) found.push_back(-m);
  }
  EXPECT_EQ(found, (std::vector<long>{1, 2, 3, 7, 11, 19, 43, 67, 163}));
}

TEST(NumberField, ClassGroupStructure) {
  EXPECT_EQ(quad_class_group(Int(-56)), FinAbGroup::cyclic(Int(4)));
  EXPECT_EQ(quad_class_group(Int(-84)), FinAbGroup::elementary(Int(2), 2));
  EXPECT_EQ(quad_class_group(Int(-420)), FinAbGroup::elementary(Int(2), 3));
  EXPECT_EQ(quad_class_group(Int(-47)), FinAbGroup::cyclic(Int(5)));
  EXPECT_EQ(quad_class_group(Int(-20)), FinAbGroup::cyclic(Int(2)));
  EXPECT_THROW(quad_class_group(Int(-12)), std::invalid_argument);
  EXPECT_THROW(quad_class_group(Int(5)), std::invalid_argument);
  // genus theory: the 2-rank is (number of prime divisors of d) - 1
  for (long d = -3; d > -1000; --d) {
    if (!is_fundamental_discriminant(Int(d))) continue;
    const auto cl = quad_class_group(Int(d));
    EXPECT_EQ(cl.p_rank(Int(2)), prime_factors(Int(d)).size() - 1) << d;
  }
}

TEST(NumberField, CompositionIsAGroupLaw) {
  for (long d : {-84L, -231L, -420L, -47L}) {
    const auto forms = reduced_forms(Int(d));
    const auto e = identity_form(Int(d));
    for (const auto& f : forms) {
      EXPECT_EQ(compose(f, e), f);
      EXPECT_EQ(compose(f, QuadForm{f.a, -f.b, f.c}), e);
      for (const auto& g : forms) {
        EXPECT_EQ(compose(f, g), compose(g, f));
        for (const auto& h : forms) EXPECT_EQ(compose(compose(f, g), h), compose(f, compose(g, h)));
      }
    }
  }
}

TEST(NumberField, FundamentalUnits) {
  auto u2 = fundamental_unit(Int(2));
  EXPECT_EQ(std::tuple(u2.a, u2.b, u2.den, u2.norm), std::tuple(Int(1), Int(1), Int(1), -1));
  auto u3 = fundamental_unit(Int(3));
  EXPECT_EQ(std::tuple(u3.a, u3.b, u3.den, u3.norm), std::tuple(Int(2), Int(1), Int(1), 1));
  auto u5 = fundamental_unit(Int(5));
  EXPECT_EQ(std::tuple(u5.a, u5.b, u5.den, u5.norm), std::tuple(Int(1), Int(1), Int(2), -1));
  auto u94 = fundamental_unit(Int(94));
  EXPECT_EQ(u94.a, 2143295);
  EXPECT_EQ(u94.b, 221064);
  EXPECT_THROW(fundamental_unit(Int(-1)), std::invalid_argument);
  EXPECT_THROW(fundamental_unit(Int(8)), std::invalid_argument);

  // minimality by search: no unit (x + y√m)/den with 0 < y < b
  for (long m = 2; m <= 50; ++m) {
    if (!is_squarefree(Int(m))) continue;
    const auto u = fundamental_unit(Int(m));
    const Int den2 = u.den * u.den;
    EXPECT_EQ(u.a * u.a - m * u.b * u.b, u.norm * den2) << m;
    EXPECT_GT(u.b, 0);
    for (Int y = 1; y < u.b; ++y) {
      for (int sign : {-1, 1}) {
        Int x2 = m * y * y + sign * den2;
        if (x2 < 0) continue;
        Int x;
        mpz_sqrt(x.get_mpz_t(), x2.get_mpz_t());
        if (x * x != x2) continue;
        // half-integral units need x ≡ y mod 2
        if (u.den == 2 && (x - y) % 2 != 0) continue;
        ADD_FAILURE() << "smaller unit for m=" << m << ": " << x << "," << y;
      }
    }
  }
}

TEST(NumberField, Splitting) {
  EXPECT_EQ(splitting(Int(-4), Int(2)), Splitting::Ramified);
  EXPECT_EQ(splitting(Int(-4), Int(5)), Splitting::Split);
  EXPECT_EQ(splitting(Int(-4), Int(3)), Splitting::Inert);
  EXPECT_EQ(splitting(Int(5), Int(2)), Splitting::Inert);
  EXPECT_EQ(splitting(Int(-7), Int(2)), Splitting::Split);
  EXPECT_EQ(splitting(Int(-20), Int(5)), Splitting::Ramified);
  EXPECT_THROW(splitting(Int(-4), Int(4)), std::invalid_argument);
  EXPECT_THROW(splitting(Int(-12), Int(5)), std::invalid_argument);
  for (long d : {-3L, -4L, -7L, -8L, -20L, 5L, 8L, 12L, 13L, -84L})
    for (long p : {2L, 3L, 5L, 7L, 11L, 13L, 17L, 19L, 23L}) {
      const int k = kronecker_oracle(d, p);
      const auto s = splitting(Int(d), Int(p));
      EXPECT_EQ(s, k == 0 ? Splitting::Ramified : (k > 0 ? Splitting::Split : Splitting::Inert)) << d << " " << p;
    }
}

TEST(NumberField, BiquadraticRamification) {
  // Q(i, √5) / Q(i): only the prime above 5 ramifies among the finite places
  const auto rec = biquad_ramification(QuadField(Int(-1)), Int(5));
  EXPECT_EQ(rec.s(), 2u);  // 5 splits in Q(i)
  EXPECT_EQ(rec.s_bar(), 2u);
  EXPECT_EQ(rec.s0(), 2u);
  for (const auto& p : rec.places) {
    if (p.archimedean) continue;
    EXPECT_EQ(p.e * p.f * p.g, 2);
    EXPECT_EQ(p.inertia.size(), static_cast<std::size_t>(p.e));
    if (p.residue_char == 2) EXPECT_EQ(p.e, 1);
    if (p.residue_char == 5) EXPECT_EQ(p.e, 2);
  }
  // Q(ζ8)/Q(√2): 2 is totally ramified in Q(ζ8), and both real places ramify
  const auto r2 = biquad_ramification(QuadField(Int(2)), Int(-1));
  EXPECT_EQ(r2.s(), 1u);
  EXPECT_EQ(r2.s_bar(), 3u);
  // Q(√3, √5)/Q(√3): unramified at infinity, 5 ramifies and is inert in Q(√3)
  const auto r4 = biquad_ramification(QuadField(Int(3)), Int(5));
  EXPECT_EQ(r4.s(), 1u);
  EXPECT_EQ(r4.s_bar(), 1u);
  // Q(√-5)/Q(√5) = Q(√5, i)/Q(√5): 2 is inert in Q(√5), ramified upstairs
  const auto r3 = biquad_ramification(QuadField(Int(5)), Int(-1));
  EXPECT_EQ(r3.s(), 1u);
  EXPECT_EQ(r3.s_bar(), 3u);
  EXPECT_THROW(biquad_ramification(QuadField(Int(-1)), Int(-4)), std::invalid_argument);
  EXPECT_THROW(biquad_ramification(QuadField(Int(-1)), Int(9)), std::invalid_argument);

  const auto q = quad_ramification(QuadField(Int(-5)));
  EXPECT_EQ(q.s(), 2u);
  EXPECT_EQ(q.s_bar(), 3u);
  EXPECT_EQ(q.s0(), 2u);
}

TEST(NumberField, RamificationValidation) {
  auto rec = quad_ramification(QuadField(Int(-1)));
  rec.places[0].f = 2;
  try {
    rec.validate();
    FAIL();
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("e*f*g"), std::string::npos);
  }
  rec = quad_ramification(QuadField(Int(-1)));
  rec.places[0].inertia = {0};
  rec.places[0].decomposition = {0};
  EXPECT_THROW(rec.validate(), std::invalid_argument);
}
