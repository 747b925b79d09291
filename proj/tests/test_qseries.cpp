#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "hyperverify/qseries.hpp"

using namespace hyperverify;

namespace {

// p(n) by Euler's pentagonal-number recurrence.
std::vector<Integer> partitions(int n) {
  std::vector<Integer> p(static_cast<std::size_t>(n) + 1, Integer(0));
  p[0] = 1;
  for (int m = 1; m <= n; ++m) {
    for (int k = 1;; ++k) {
      int g1 = k * (3 * k - 1) / 2, g2 = k * (3 * k + 1) / 2;
      if (g1 > m) break;
      const Integer& a = p[static_cast<std::size_t>(m - g1)];
      if (k % 2) p[static_cast<std::size_t>(m)] += a; else p[static_cast<std::size_t>(m)] -= a;
      if (g2 <= m) {
        const Integer& b = p[static_cast<std::size_t>(m - g2)];
        if (k % 2) p[static_cast<std::size_t>(m)] += b; else p[static_cast<std::size_t>(m)] -= b;
      }
    }
  }
  return p;
}

// Partitions of n into parts congruent to +-r mod 5, by dynamic programming.
Integer restricted_partitions(int n, int r) {
  std::vector<Integer> ways(static_cast<std::size_t>(n) + 1, Integer(0));
  ways[0] = 1;
  for (int part = 1; part <= n; ++part) {
    if (part % 5 != r && part % 5 != 5 - r) continue;
    for (int m = part; m <= n; ++m) ways[static_cast<std::size_t>(m)] += ways[static_cast<std::size_t>(m - part)];
  }
  return ways[static_cast<std::size_t>(n)];
}

// Plain five-fold enumeration of ab + bc + cd + de = n.
long liouville_brute(long n) {
  long count = 0;
  for (long a = 1; a <= n; ++a)
    for (long b = 1; a * b <= n; ++b)
      for (long c = 0; a * b + b * c <= n; ++c)
        for (long d = 1; a * b + b * c + c * d + d <= n; ++d)
          for (long e = 1; a * b + b * c + c * d + d * e <= n; ++e)
            if (a * b + b * c + c * d + d * e == n) ++count;
  return count;
}

}  // namespace

TEST(QSeries, ArithmeticAndTruncation) {
  QSeries a(5, {Rational(1), Rational(2)});
  QSeries b(5, {Rational(1), Rational(-1)});
  QSeries prod = a * b;
  EXPECT_EQ(prod[0], 1);
  EXPECT_EQ(prod[1], 1);
  EXPECT_EQ(prod[2], -2);
  EXPECT_EQ(prod[3], 0);
  EXPECT_EQ(prod.order(), 5);
  QSeries big = QSeries::monomial(Rational(3), 9, 5);
  EXPECT_TRUE(big.is_zero());
  EXPECT_THROW(QSeries::monomial(Rational(1), -1, 5), std::invalid_argument);
  EXPECT_THROW(a.truncated(6), std::invalid_argument);
  EXPECT_EQ(a.truncated(1).order(), 1);
}

TEST(QSeries, InverseOfGeometricFactor) {
  QSeries s = QSeries::one(20);
  s.mul_one_minus(1, 1);
  QSeries inv = s.inverse();
  for (int i = 0; i <= 20; ++i) EXPECT_EQ(inv[i], 1);
  EXPECT_EQ((inv * s), QSeries::one(20));
  EXPECT_THROW(QSeries(10).inverse(), std::domain_error);
}

TEST(QSeries, SubstitutePowerAndShift) {
  QSeries s(10, {Rational(1), Rational(1), Rational(1)});
  QSeries t = s.substitute_power(3);
  EXPECT_EQ(t[0], 1);
  EXPECT_EQ(t[3], 1);
  EXPECT_EQ(t[6], 1);
  EXPECT_EQ(t[1], 0);
  QSeries u = s.shifted(9, Rational(2));
  EXPECT_EQ(u[9], 2);
  EXPECT_EQ(u[10], 2);
  EXPECT_EQ(qs_arith(QsOp::mul, s, s), s * s);
  EXPECT_EQ(qs_arith(QsOp::substitute_power, s, 3), t);
}

TEST(QSeries, EulerProductGivesPartitionNumbers) {
  const int order = 150;
  QSeries gen = qpoch(1, 1, 1, kInfinite, order).inverse();
  auto p = partitions(order);
  for (int n = 0; n <= order; ++n) EXPECT_EQ(gen[n], Rational(p[static_cast<std::size_t>(n)])) << n;
  EXPECT_EQ(gen[100], Rational(Integer("190569292")));
}

TEST(QSeries, EtaQuotientMatchesDirectProduct) {
  const int order = 80;
  QSeries direct = QSeries::one(order);
  for (long n = 0; 5 * n + 1 <= order; ++n) direct.div_one_minus(1, 5 * n + 1);
  for (long n = 0; 5 * n + 4 <= order; ++n) direct.div_one_minus(1, 5 * n + 4);
  EXPECT_EQ(eta_quotient({{1, 5, -1}, {4, 5, -1}}, order), direct);
  EXPECT_THROW(eta_quotient({{0, 5, 1}}, order), std::invalid_argument);
}

TEST(QSeries, RogersRamanujanSumsCountRestrictedPartitions) {
  const int order = 100;
  QSeries g = rogers_ramanujan_sum(0, order), h = rogers_ramanujan_sum(1, order);
  for (int n = 0; n <= order; ++n) {
    EXPECT_EQ(g[n], Rational(restricted_partitions(n, 1))) << n;
    EXPECT_EQ(h[n], Rational(restricted_partitions(n, 2))) << n;
  }
  EXPECT_TRUE(verify_q_identity(g, rogers_ramanujan_product(0, order)).full_agreement());
  EXPECT_TRUE(verify_q_identity(h, rogers_ramanujan_product(1, order)).full_agreement());
}

TEST(QSeries, MismatchReportIsPrecise) {
  QSeries a = rogers_ramanujan_sum(0, 30);
  QSeries b = a;
  b[17] += 1;
  auto rep = verify_q_identity(a, b);
  ASSERT_FALSE(rep.full_agreement());
  EXPECT_EQ(rep.equal_to_order, 16);
  EXPECT_EQ(rep.first_mismatch->order, 17);
  EXPECT_EQ(rep.first_mismatch->rhs - rep.first_mismatch->lhs, 1);
  // Swapping the two RR sums is a negative control.
  EXPECT_FALSE(verify_q_identity(rogers_ramanujan_sum(0, 30), rogers_ramanujan_product(1, 30)).full_agreement());
}

TEST(QSeries, LambertSeriesGivesDivisorSums) {
  const int order = 300;
  for (unsigned long k = 0; k <= 3; ++k) {
    QSeries s = lambert_sigma(k, order);
    EXPECT_EQ(s[0], 0);
    for (long n = 1; n <= order; ++n) {
      Integer brute(0);
      for (long d = 1; d <= n; ++d) {
        if (n % d == 0) brute += ipow(Integer(d), k);
      }
      ASSERT_EQ(s[static_cast<int>(n)], Rational(brute)) << "k=" << k << " n=" << n;
    }
  }
}

TEST(QSeries, BellIdentitiesAgreeWithSigmaTwo) {
  const int order = 120;
  QSeries rhs = lambert_sigma(2, order);
  for (auto v : {BellVariant::bell, BellVariant::bell2, BellVariant::bell3}) {
    EXPECT_TRUE(verify_q_identity(bell_lhs(v, order), rhs).full_agreement());
  }
  // Negative control: sigma_1 is not the common right side.
  EXPECT_FALSE(verify_q_identity(bell_lhs(BellVariant::bell, order), lambert_sigma(1, order)).full_agreement());
}

TEST(QSeries, LiouvilleCount) {
  for (long n = 1; n <= 18; ++n) EXPECT_EQ(liouville_count(n), liouville_brute(n)) << n;
  for (long n = 1; n <= 40; ++n) {
    Integer expected = divisor_sigma(2, n) - Integer(n) * divisor_sigma(0, n);
    EXPECT_EQ(Integer(liouville_count(n)), expected) << n;
  }
  EXPECT_THROW(liouville_count(0), std::invalid_argument);
}

TEST(QSeries, QZetaApproachesZetaValues) {
  // (1-q)^2 zeta_q(2) -> zeta(2) = pi^2/6 as q -> 1.
  const long double q = 0.999L;
  const long double scaled = (1 - q) * (1 - q) * zeta_q_numeric(2, q);
  EXPECT_NEAR(static_cast<double>(scaled), 1.6449340668482264, 3e-3);
  EXPECT_THROW(zeta_q_numeric(2, 1.0L), std::domain_error);
}
