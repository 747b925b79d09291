#include <gtest/gtest.h>

#include <map>
#include <random>

#include "hyperverify/linform.hpp"

using namespace hyperverify;

namespace {

Integer u_oracle(long n) {
  Integer total(0);
  for (long k = 0; k <= n; ++k) {
    Integer c = binomial(n, k) * binomial(n + k, k);
    total += c * c;
  }
  return total;
}

// Apery's closed form for the companion sequence.
Rational v_oracle(long n) {
  Rational h3(0);
  for (long m = 1; m <= n; ++m) h3 += Rational(1, ipow(Integer(m), 3));
  Rational total(0), inner(0);
  for (long k = 0; k <= n; ++k) {
    if (k > 0) {
      Rational t(1, 2 * ipow(Integer(k), 3) * binomial(n, k) * binomial(n + k, k));
      t.canonicalize();
      inner += (k % 2 == 1) ? t : Rational(-t);
    }
    Integer c = binomial(n, k) * binomial(n + k, k);
    total += Rational(c * c) * (h3 + inner);
  }
  total.canonicalize();
  return total;
}

// Direct evaluation of the factored form.
Rational evaluate_direct(const RationalFunctionFactored& rf, const Rational& t) {
  Rational v = rf.scalar;
  for (const auto& [root, mult] : rf.numerator_roots) v *= rpow(t - root, mult);
  for (const auto& [k, mult] : rf.poles) v /= rpow(t + Rational(k), mult);
  return v;
}

bool same_form(const LinearForm& a, const LinearForm& b) {
  return a.constant() == b.constant() && a.zeta_coeffs() == b.zeta_coeffs();
}

}  // namespace

TEST(LinForm, MakeRationalFunctionCancelsAndValidates) {
  auto rf = make_rational_function(Rational(2), {{Rational(0), 1}, {Rational(3), 1}}, {{0, 2}, {1, 1}});
  EXPECT_EQ(rf.poles.at(0), 1);
  EXPECT_EQ(rf.numerator_roots.count(Rational(0)), 0u);
  EXPECT_THROW(make_rational_function(Rational(1), {{Rational(1), 2}}, {{0, 1}}), std::invalid_argument);
  EXPECT_THROW(make_rational_function(Rational(1), {}, {{-1, 1}}), std::invalid_argument);
}

TEST(LinForm, PartialFractionsEvaluateLikeTheFunction) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long> num(-200, 200), den(1, 37);
  for (const auto& rf : {apery_kernel(3), square(apery_kernel(4)), rivoal_rational(2, 5, 2), rivoal_rational(1, 3, 1)}) {
    PartialFraction pf = partial_fractions(rf);
    for (int i = 0; i < 10; ++i) {
      Rational t(num(rng), den(rng));
      t.canonicalize();
      if (is_integer(t) && t <= 0) continue;
      EXPECT_EQ(evaluate(pf, t), evaluate_direct(rf, t));
    }
  }
}

TEST(LinForm, RecombineReproducesNumerator) {
  auto rf = square(apery_kernel(5));
  EXPECT_EQ(recombine(partial_fractions(rf), rf.poles), numerator_polynomial(rf));
}

TEST(LinForm, SimplePoleDivergenceIsDetected) {
  auto rf = make_rational_function(Rational(1), {}, {{0, 1}, {1, 1}});
  PartialFraction pf = partial_fractions(rf);
  EXPECT_NO_THROW(sum_over_positive_integers(pf));  // 1/t - 1/(t+1) telescopes
  auto lone = make_rational_function(Rational(1), {}, {{0, 1}, {2, 1}});
  PartialFraction bad = partial_fractions(lone);
  bad.terms[{0, 1}] += 1;
  EXPECT_THROW(sum_over_positive_integers(bad), DivergenceError);
}

TEST(LinForm, TelescopingSumHasExactValue) {
  // sum_{nu>=1} 1/(nu (nu+1)) = 1 and sum 1/nu^2 = zeta(2).
  auto rf = make_rational_function(Rational(1), {}, {{0, 1}, {1, 1}});
  LinearForm f = sum_over_positive_integers(partial_fractions(rf));
  EXPECT_EQ(f.constant(), 1);
  EXPECT_TRUE(f.zeta_coeffs().empty());
  auto sq = make_rational_function(Rational(1), {}, {{0, 2}});
  LinearForm z = sum_over_positive_integers(partial_fractions(sq));
  EXPECT_EQ(z.zeta_coeff(2), 1);
  EXPECT_EQ(z.constant(), 0);
}

TEST(LinForm, GnFormIsAperyForm) {
  for (long n = 1; n <= 12; ++n) {
    LinearForm f = linear_form_gn(n);
    EXPECT_EQ(f.zeta_coeff(3), Rational(u_oracle(n))) << n;
    EXPECT_EQ(f.constant(), -v_oracle(n)) << n;
    EXPECT_EQ(f.zeta_coeff(2), 0) << n;
  }
  EXPECT_EQ(linear_form_gn(1).constant(), -6);
  EXPECT_EQ(linear_form_gn(2).constant(), Rational(-351, 4));
}

TEST(LinForm, GnEqualsBall) {
  for (long n = 1; n <= 20; ++n) {
    LinearForm gn = linear_form_gn(n), ball = linear_form_ball(n);
    EXPECT_TRUE(same_form(gn, ball)) << "n=" << n << "\n" << gn.to_string() << "\n" << ball.to_string();
    EXPECT_EQ(ball.zeta_coeff(2), 0);
    EXPECT_EQ(ball.zeta_coeff(4), 0);
  }
}

TEST(LinForm, EvaluationIsSmall) {
  // 73 zeta(3) - 351/4 from an independent reference.
  PrecReal v = linear_form_gn(2).evaluate(192);
  PrecReal ref("0.00015393065038283418088579033584932584399934085642374", 192);
  EXPECT_TRUE(within_pow2(v, ref, -150));
}

TEST(LinForm, RivoalFormsHaveOnlyOddZetaValues) {
  for (long n = 1; n <= 6; ++n) {
    LinearForm f = linear_form_rivoal(n, 5, 2);
    EXPECT_EQ(f.zeta_coeff(2), 0);
    EXPECT_EQ(f.zeta_coeff(4), 0);
    EXPECT_EQ(f.zeta_coeff(6), 0);
    const Integer d = lcm_upto(n);
    const Rational scale(2 * ipow(d, 6));
    for (const auto& c : f.all_coefficients()) EXPECT_TRUE(is_integer(scale * c)) << "n=" << n << " c=" << c;
  }
  EXPECT_THROW(rivoal_rational(2, 4, 1), std::invalid_argument);
  EXPECT_THROW(rivoal_rational(2, 5, 3), std::invalid_argument);
}

TEST(LinForm, LinearFormArithmetic) {
  LinearForm f(Rational(2));
  f.add_zeta(3, Rational(5));
  f.add_zeta(3, Rational(-5));
  EXPECT_TRUE(f.zeta_coeffs().empty());
  EXPECT_THROW(f.add_zeta(1, Rational(1)), std::invalid_argument);
  f.add_zeta(5, Rational(1, 3));
  LinearForm g = f.scaled(Rational(3));
  EXPECT_EQ(g.zeta_coeff(5), 1);
  EXPECT_EQ(g.constant(), 6);
  EXPECT_EQ(g.to_string(), "(1)*zeta(5) + (6)");
}
