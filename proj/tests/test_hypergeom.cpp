#include <gtest/gtest.h>

#include <random>

#include "hyperverify/hypergeom.hpp"

using namespace hyperverify;

namespace {

PrecReal gamma_q(const Rational& x, Precision p) {
  PrecReal v(x, p), out(p);
  mpfr_gamma(out.raw(), v.get(), MPFR_RNDN);
  return out;
}

Rational legendre_recurrence(long n, const Rational& x) {
  Rational p0(1), p1(x);
  if (n == 0) return p0;
  for (long k = 1; k < n; ++k) {
    Rational p2 = (Rational(2 * k + 1) * x * p1 - Rational(k) * p0) / Rational(k + 1);
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

}  // namespace

TEST(Hypergeom, ChuVandermonde) {
  for (long n = 0; n <= 10; ++n) {
    const Rational b(7, 3), c(5, 2);
    Rational v = pfq_terminating({{Rational(-n), b}, {c}, Rational(1)});
    EXPECT_EQ(v, pochhammer(c - b, n) / pochhammer(c, n)) << n;
  }
}

TEST(Hypergeom, PfaffSaalschutz) {
  // 3F2(-n, a, b; c, 1+a+b-c-n; 1) = (c-a)_n (c-b)_n / ((c)_n (c-a-b)_n)
  const Rational a(1, 3), b(3, 4), c(11, 5);
  for (long n = 1; n <= 8; ++n) {
    Rational lhs = pfq_terminating({{Rational(-n), a, b}, {c, Rational(1) + a + b - c - Rational(n)}, Rational(1)});
    Rational rhs = pochhammer(c - a, n) * pochhammer(c - b, n) / (pochhammer(c, n) * pochhammer(c - a - b, n));
    rhs.canonicalize();
    EXPECT_EQ(lhs, rhs) << n;
  }
}

TEST(Hypergeom, TerminatingErrors) {
  EXPECT_THROW(pfq_terminating({{Rational(1, 2)}, {Rational(1)}, Rational(1, 2)}), std::invalid_argument);
  EXPECT_THROW(pfq_terminating({{Rational(-5)}, {Rational(-2)}, Rational(1)}), PoleError);
  // A lower pole beyond the termination point is harmless.
  EXPECT_NO_THROW(pfq_terminating({{Rational(-2)}, {Rational(-5)}, Rational(1)}));
}

TEST(Hypergeom, GaussSummationAtOne) {
  const Precision p = 128;
  const Rational a(1, 3), b(1, 4), c(10);
  PrecReal expected = gamma_q(c, p) * gamma_q(c - a - b, p) / (gamma_q(c - a, p) * gamma_q(c - b, p));
  PfqResult r = pfq_numeric({a, b}, {c}, PrecReal(1L, p), p);
  EXPECT_TRUE(within_pow2(r.value, expected, -100));
  EXPECT_GT(r.tail_bound, 0.0);
  EXPECT_TRUE(within_pow2(r.value, PrecReal("1.0090834583464502340711125367496766424978160182926", p), -100));
}

TEST(Hypergeom, ReferenceValuesInsideUnitDisc) {
  PrecReal v = hyp2f1(Rational(1, 3), Rational(2, 3), Rational(1), PrecReal(Rational(3, 10), 160), 160);
  EXPECT_TRUE(within_pow2(v, PrecReal("1.0807822091865561701554286103418093051810421077914", 160), -150));
  PfqResult w = pfq_numeric({Rational(1, 2), Rational(1, 3), Rational(2, 3)}, {Rational(1), Rational(1)},
                            PrecReal(Rational(21, 25), 160), 160);
  EXPECT_TRUE(within_pow2(w.value, PrecReal("1.1680901836941728604011312182771030443523823909643", 160), -145));
}

TEST(Hypergeom, ElementaryClosedForms) {
  // 2F1(1,1;2;z) = -log(1-z)/z and 1F0(a;;z) = (1-z)^-a.
  const Precision p = 128;
  PrecReal z(Rational(-1, 2), p);
  PrecReal lhs = hyp2f1(Rational(1), Rational(1), Rational(2), z, p);
  EXPECT_TRUE(within_pow2(lhs, -log(1L - z) / z, -120));
  PrecReal g = pfq_numeric({Rational(3, 2)}, {}, PrecReal(Rational(1, 4), p), p).value;
  EXPECT_TRUE(within_pow2(g, pow(PrecReal(Rational(3, 4), p), PrecReal(Rational(-3, 2), p)), -120));
}

TEST(Hypergeom, NumericDomainErrors) {
  const Precision p = 64;
  EXPECT_THROW(pfq_numeric({Rational(1), Rational(1)}, {Rational(1)}, PrecReal(1L, p), p), std::domain_error);
  EXPECT_THROW(pfq_numeric({Rational(1, 2)}, {Rational(1)}, PrecReal(2L, p), p), std::domain_error);
  EXPECT_THROW(pfq_numeric({Rational(1), Rational(1), Rational(1)}, {Rational(1)}, PrecReal(Rational(1, 2), p), p),
               std::domain_error);
  EXPECT_THROW(pfq_numeric({Rational(1, 2)}, {Rational(-3)}, PrecReal(Rational(1, 2), p), p), PoleError);
}

TEST(Hypergeom, LegendreAgreesWithRecurrence) {
  for (long n = 0; n <= 15; ++n) {
    for (const Rational& x : {Rational(0), Rational(1, 3), Rational(-7, 5), Rational(17)}) {
      EXPECT_EQ(legendre(n, x), legendre_recurrence(n, x)) << n;
    }
  }
}

TEST(Hypergeom, WhippleRandomParameters) {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<long> num(-30, 30), den(1, 7), nn(0, 8);
  int checked = 0, skipped = 0;
  while (checked < 40) {
    auto draw = [&] { Rational r(num(rng), den(rng)); r.canonicalize(); return r; };
    try {
      EXPECT_TRUE(whipple_check(draw(), draw(), draw(), draw(), nn(rng)));
      ++checked;
    } catch (const std::exception&) {
      ++skipped;
    }
  }
  EXPECT_LT(skipped, 200);
}

TEST(Hypergeom, WhippleNegativeControl) {
  auto [lhs, rhs] = whipple_sides(Rational(1, 3), Rational(5, 7), Rational(2, 9), Rational(11, 4), 4);
  EXPECT_EQ(lhs, rhs);
  auto [lhs2, rhs2] = whipple_sides(Rational(1, 3), Rational(5, 7), Rational(2, 9), Rational(11, 4), 5);
  EXPECT_NE(lhs, lhs2);
  EXPECT_THROW(whipple_sides(Rational(1, 3), Rational(-2), Rational(2, 9), Rational(11, 4), 4), PoleError);
}

TEST(Hypergeom, Clausen) {
  for (const Rational& r : {Rational(1, 2), Rational(1, 3), Rational(1, 4), Rational(1, 6)}) {
    auto c = clausen_check(r, Rational(1, 5), 128);
    EXPECT_TRUE(c.passed) << r;
  }
  // Reference value for r = 1/3, x = 0.3: the 3F2 argument is 0.84.
  auto c = clausen_check(Rational(1, 3), Rational(3, 10), 160);
  EXPECT_TRUE(within_pow2(c.lhs, PrecReal("1.1680901836941728604011312182771030443523823909643", 160), -140));
  EXPECT_THROW(clausen_check(Rational(1, 3), Rational(1, 2)), std::domain_error);
}
