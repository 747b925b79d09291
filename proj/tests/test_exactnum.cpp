#include <gtest/gtest.h>

#include <stdexcept>

#include "hyperverify/exactnum.hpp"

using namespace hyperverify;

TEST(ExactNum, ParseRationalForms) {
  EXPECT_EQ(parse_rational("3/4"), Rational(3, 4));
  EXPECT_EQ(parse_rational("-6/8"), Rational(-3, 4));
  EXPECT_EQ(parse_rational("0.125"), Rational(1, 8));
  EXPECT_EQ(parse_rational("-2.5"), Rational(-5, 2));
  EXPECT_EQ(parse_rational("17"), Rational(17));
}

TEST(ExactNum, ParseRationalRejectsGarbage) {
  EXPECT_THROW(parse_rational(""), std::invalid_argument);
  EXPECT_THROW(parse_rational("abc"), std::invalid_argument);
  EXPECT_THROW(parse_rational("1/0"), std::domain_error);
}

TEST(ExactNum, MakeRationalRejectsZeroDenominator) {
  EXPECT_THROW(make_rational(1, 0), std::domain_error);
  EXPECT_EQ(make_rational(Integer(10), Integer(-4)), Rational(-5, 2));
}

TEST(ExactNum, FactorialAndBinomial) {
  EXPECT_EQ(factorial(0), 1);
  EXPECT_EQ(factorial(20), Integer("2432902008176640000"));
  EXPECT_EQ(binomial(10, 3), 120);
  EXPECT_EQ(binomial(5, 7), 0);
  EXPECT_EQ(binomial(5, -1), 0);
  // Pascal's rule as an independent cross-check.
  for (long n = 1; n <= 30; ++n) {
    for (long k = 1; k < n; ++k) EXPECT_EQ(binomial(n, k), binomial(n - 1, k - 1) + binomial(n - 1, k));
  }
}

TEST(ExactNum, PochhammerMatchesFactorial) {
  EXPECT_EQ(pochhammer(Rational(1), 6), Rational(factorial(6)));
  EXPECT_EQ(pochhammer(Rational(1, 2), 3), Rational(15, 8));
  EXPECT_EQ(pochhammer(Rational(-2), 5), Rational(0));
  EXPECT_EQ(pochhammer(Rational(7, 3), 0), Rational(1));
}

TEST(ExactNum, PowersAndIntegrality) {
  EXPECT_EQ(ipow(Integer(3), 5), 243);
  EXPECT_EQ(rpow(Rational(2, 3), -2), Rational(9, 4));
  EXPECT_THROW(rpow(Rational(0), -1), std::domain_error);
  EXPECT_TRUE(is_integer(make_rational(8, 4)));
  EXPECT_FALSE(is_integer(Rational(3, 2)));
}

TEST(ExactNum, LcmUpto) {
  EXPECT_EQ(lcm_upto(1), 1);
  EXPECT_EQ(lcm_upto(10), 2520);
  EXPECT_EQ(lcm_upto(20), Integer("232792560"));
}

TEST(ExactNum, DivisorSigmaAgainstBruteForce) {
  for (long n = 1; n <= 200; ++n) {
    for (unsigned long k = 0; k <= 3; ++k) {
      Integer brute(0);
      for (long d = 1; d <= n; ++d) {
        if (n % d == 0) brute += ipow(Integer(d), k);
      }
      EXPECT_EQ(divisor_sigma(k, n), brute) << "n=" << n << " k=" << k;
    }
  }
}

TEST(ExactNum, HarmonicNumbers) {
  EXPECT_EQ(harmonic(4, 1), Rational(25, 12));
  EXPECT_EQ(harmonic(3, 2), Rational(49, 36));
  EXPECT_EQ(harmonic(0, 3), Rational(0));
  EXPECT_THROW(harmonic(3, 0), std::invalid_argument);
}

TEST(ExactNum, BernoulliNumbers) {
  auto b = bernoulli_numbers(12);
  ASSERT_GE(b.size(), 13u);
  EXPECT_EQ(b[0], Rational(1));
  EXPECT_EQ(b[2], Rational(1, 6));
  EXPECT_EQ(b[4], Rational(-1, 30));
  EXPECT_EQ(b[12], Rational(-691, 2730));
  EXPECT_EQ(b[7], Rational(0));
}

TEST(ExactNum, PerfectSquare) {
  Integer root;
  EXPECT_TRUE(perfect_square(Integer("152415787532388367504942236884722755800955129"), root));
  EXPECT_EQ(root, Integer("12345678901234567890123"));
  EXPECT_FALSE(perfect_square(Integer(99), root));
}
