#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "hyperverify/numerics.hpp"
#include "hyperverify/precreal.hpp"

using namespace hyperverify;

namespace {

// 50-digit references computed with an independent arbitrary-precision package.
const char* const kZeta3 = "1.2020569031595942853997381615114499907649862923405";
const char* const kMu0 = "13.417820233353765784580199246647428368581606993318";
const char* const kRateLimit = "0.029437251522859414379735309483623057163937495476623";

PrecReal mpfr_pi(Precision p) {
  PrecReal x(p);
  mpfr_const_pi(x.raw(), MPFR_RNDN);
  return x;
}

}  // namespace

TEST(PrecReal, ConstructionAndPrecision) {
  PrecReal a(Rational(1, 3), 200);
  EXPECT_EQ(a.precision(), 200);
  PrecReal b("0.1", 64);
  EXPECT_NEAR(b.to_double(), 0.1, 1e-18);
  PrecReal c(a, 64);
  EXPECT_EQ(c.precision(), 64);
  EXPECT_THROW(PrecReal("not-a-number", 64), std::invalid_argument);
}

TEST(PrecReal, BinaryOperationsUseSmallerPrecision) {
  PrecReal a(Rational(1, 3), 256), b(Rational(1, 7), 64);
  EXPECT_EQ((a + b).precision(), 64);
  EXPECT_EQ((a * b).precision(), 64);
  EXPECT_EQ((b - a).precision(), 64);
}

TEST(PrecReal, MixedRationalArithmeticIsExactlyRounded) {
  const Precision p = 300;
  PrecReal x = PrecReal(Rational(2, 3), p) * Rational(3, 2);
  EXPECT_TRUE(within_pow2(x, PrecReal(1L, p), -295));
  PrecReal y = 1L - PrecReal(Rational(1, 4), p);
  EXPECT_EQ(y, PrecReal(Rational(3, 4), p));
  EXPECT_THROW(PrecReal(1L, p) / Rational(0), std::domain_error);
}

TEST(PrecReal, FixedTruncatesInsteadOfRounding) {
  PrecReal x(Rational(2, 3), 128);
  EXPECT_EQ(x.fixed(4), "0.6666");
  EXPECT_EQ(PrecReal(Rational(-5, 4), 64).fixed(1), "-1.2");
}

TEST(PrecReal, PiMatchesMpfrConstant) {
  for (Precision p : {64, 256, 1024}) {
    EXPECT_TRUE(within_pow2(pi(p), mpfr_pi(p), 3 - static_cast<long>(p))) << p;
  }
}

TEST(PrecReal, ZetaEvenValuesFromPi) {
  const Precision p = 256;
  PrecReal ref_pi = mpfr_pi(p + 32);
  PrecReal z2 = pow(ref_pi, 2L) / 6L;
  PrecReal z4 = pow(ref_pi, 4L) / 90L;
  EXPECT_TRUE(within_pow2(zeta(2, p), PrecReal(z2, p), 6 - static_cast<long>(p)));
  EXPECT_TRUE(within_pow2(zeta(4, p), PrecReal(z4, p), 6 - static_cast<long>(p)));
}

TEST(PrecReal, ZetaThreeReference) {
  PrecReal ref(kZeta3, 200);
  EXPECT_TRUE(within_pow2(zeta(3, 160), PrecReal(ref, 160), -160));
  EXPECT_THROW(zeta(1, 64), std::invalid_argument);
}

TEST(PrecReal, ZetaLargeArgumentApproachesOne) {
  PrecReal z = zeta(40, 128);
  PrecReal expected = 1L + pow2(-40, 128);
  for (long k = 3; k <= 8; ++k) expected += pow(PrecReal(k, 128), -40L);
  EXPECT_TRUE(within_pow2(z, expected, -115));
}

TEST(PrecReal, NamedConstants) {
  EXPECT_TRUE(within_pow2(mu0(160), PrecReal(PrecReal(kMu0, 200), 160), -150));
  EXPECT_TRUE(within_pow2(apery_rate_limit(160), PrecReal(PrecReal(kRateLimit, 200), 160), -160));
  EXPECT_TRUE(within_pow2(const_real("zeta(3)", 128), zeta(3, 128), -125));
  EXPECT_TRUE(within_pow2(const_real("sqrt(2)", 128) * const_real("sqrt(2)", 128), PrecReal(2L, 128), -124));
  EXPECT_NEAR(const_real("log(1/2)", 64).to_double(), -std::numbers::ln2, 1e-16);
}

TEST(PrecReal, NamedConstantErrors) {
  EXPECT_THROW(const_real("zeta(1)", 64), std::invalid_argument);
  EXPECT_THROW(const_real("zeta(x)", 64), std::invalid_argument);
  EXPECT_THROW(const_real("sqrt(-2)", 64), std::invalid_argument);
  EXPECT_THROW(const_real("gamma", 64), std::invalid_argument);
  EXPECT_THROW(const_real("log(2", 64), std::invalid_argument);
}

TEST(PrecReal, AgmOfOneAndRootTwo) {
  // Gauss's constant: agm(1, sqrt 2) = pi / (2 * lemniscate quarter period).
  PrecReal m = agm(PrecReal(1L, 128), sqrt(PrecReal(2L, 128)));
  EXPECT_NEAR(m.to_double(), 1.1981402347355922074, 1e-16);
}

TEST(Numerics, TanhSinhPolynomialAndEndpointSingularity) {
  auto poly = tanh_sinh_plain([](double x) { return x * x * x; }, 0.0, 2.0, 1e-12);
  EXPECT_NEAR(poly.value, 4.0, 1e-12);
  // log(x)^2 on [0,1] integrates to 2; the singularity sits at the endpoint.
  auto sing = tanh_sinh([](const Node<double>& n) { return std::log(n.from_lower) * std::log(n.from_lower); }, 0.0,
                        1.0, 1e-10);
  EXPECT_NEAR(sing.value, 2.0, 1e-9);
}

TEST(Numerics, TanhSinhHighPrecision) {
  const Precision p = 192;
  auto res = tanh_sinh_plain([](const PrecReal& x) { return 4L / (1L + x * x); }, PrecReal(0L, p), PrecReal(1L, p),
                             pow2(-170, p), 14);
  EXPECT_TRUE(within_pow2(res.value, mpfr_pi(p), -165));
}

TEST(Numerics, TanhSinhReportsNonConvergence) {
  auto wild = [](double x) { return std::sin(1.0 / (x + 1e-9)); };
  EXPECT_THROW(tanh_sinh_plain(wild, 0.0, 1.0, 1e-14, 2), ConvergenceError);
  auto res = tanh_sinh([&](const Node<double>& n) { return wild(n.x); }, 0.0, 1.0, 1e-14, 2, false);
  EXPECT_FALSE(res.converged);
}

TEST(Numerics, MaximizeBoxFindsInteriorMaximum) {
  auto f = [](const std::vector<double>& v) {
    return -(v[0] - 0.3) * (v[0] - 0.3) - 2.0 * (v[1] - 0.7) * (v[1] - 0.7) + 1.0;
  };
  auto res = maximize_box(f, {0.0, 0.0}, {1.0, 1.0}, 8, 1e-12);
  EXPECT_NEAR(res.value, 1.0, 1e-12);
  EXPECT_NEAR(res.argmax[0], 0.3, 1e-5);
  EXPECT_NEAR(res.argmax[1], 0.7, 1e-5);
}
