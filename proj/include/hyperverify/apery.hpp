#ifndef HYPERVERIFY_APERY_HPP
#define HYPERVERIFY_APERY_HPP

// Apéry's approximations to zeta(3): the binomial sum, the three-term
// recursion, residuals, growth rate, integrality, and the triple-integral and
// cube-maximum cross-checks.

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "hyperverify/exactnum.hpp"
#include "hyperverify/numerics.hpp"
#include "hyperverify/precreal.hpp"

namespace hyperverify {

struct AperyPair {
  long n = 0;
  Integer u;
  Rational v;
};

/// u_n = sum_k C(n,k)^2 C(n+k,k)^2.
inline Integer u_binomial(long n) {
  if (n < 0) throw std::invalid_argument("u_binomial: n must be nonnegative");
  Integer total(0);
  for (long k = 0; k <= n; ++k) {
    Integer a = binomial(n, k) * binomial(n + k, k);
    total += a * a;
  }
  return total;
}

/// One step of (n+1)^3 y_{n+1} = (2n+1)(17n^2+17n+5) y_n - n^3 y_{n-1}.
inline Rational apery_step(long n, const Rational& prev, const Rational& cur) {
  Rational a = Rational((2 * n + 1) * (17 * n * n + 17 * n + 5));
  Rational n3 = Rational(n * n * n);
  Rational m3 = Rational((n + 1) * (n + 1) * (n + 1));
  Rational next = (a * cur - n3 * prev) / m3;
  next.canonicalize();
  return next;
}

/// (u_n, v_n) for n = 0..nmax from the recursion with u_0=1, u_1=5, v_0=0, v_1=6.
inline std::vector<AperyPair> apery_sequences(long nmax) {
  if (nmax < 1) throw std::invalid_argument("apery_sequences: nmax must be >= 1");
  std::vector<AperyPair> out;
  out.reserve(static_cast<std::size_t>(nmax + 1));
  out.push_back({0, Integer(1), Rational(0)});
  out.push_back({1, Integer(5), Rational(6)});
  Rational u_prev(1), u_cur(5);
  for (long n = 1; n < nmax; ++n) {
    Rational u_next = apery_step(n, u_prev, u_cur);
    if (!is_integer(u_next)) throw std::logic_error("apery_sequences: non-integral u");
    Rational v_next = apery_step(n, out[n - 1].v, out[n].v);
    out.push_back({n + 1, u_next.get_num(), v_next});
    u_prev = u_cur;
    u_cur = u_next;
  }
  return out;
}

inline AperyPair apery_pair(long n) {
  if (n == 0) return {0, Integer(1), Rational(0)};
  return apery_sequences(n).back();
}

/// u_n zeta(3) - v_n. The difference cancels about 2 log2(u_n) bits, so the
/// working precision is raised until the result carries `prec` bits.
inline PrecReal residual(long n, Precision prec = kDefaultPrecision) {
  if (n < 0) throw std::invalid_argument("residual: n must be nonnegative");
  AperyPair pair = apery_pair(n);
  const Precision cap = std::max<Precision>(4096, prec + 64);
  Precision work = prec + 2 * static_cast<Precision>(mpz_sizeinbase(pair.u.get_mpz_t(), 2)) + 32;
  for (; work <= 2 * cap; work *= 2) {
    if (work > cap) work = cap;
    PrecReal r = PrecReal(pair.u, work) * zeta(3, work) - PrecReal(pair.v, work);
    // Absolute error of the product is below u zeta(3) 2^{5-work}.
    PrecReal bound = PrecReal(pair.u, 64) * 2 * pow2(5 - static_cast<long>(work), 64);
    if (r > 0 && r * pow2(-static_cast<long>(prec), 64) > bound) return PrecReal(r, prec);
    if (work == cap) break;
  }
  throw std::runtime_error("residual: more than " + std::to_string(cap) +
                           " bits needed to certify the sign");
}

/// residual(nmax)^(1/nmax), which tends to (sqrt 2 - 1)^4.
inline PrecReal rate_check(long nmax, Precision prec = kDefaultPrecision) {
  if (nmax < 1) throw std::invalid_argument("rate_check: nmax must be >= 1");
  PrecReal r = residual(nmax, prec);
  return exp(log(r) / nmax);
}

struct IntegralityRow {
  long n = 0;
  bool u_integer = false;
  bool scaled_v_integer = false;
  Integer scaled_v;  // 2 d_n^3 v_n when integral
};

inline std::vector<IntegralityRow> integrality_report(long nmax) {
  auto seq = apery_sequences(nmax);
  std::vector<IntegralityRow> rows;
  for (long n = 1; n <= nmax; ++n) {
    const auto& pair = seq[static_cast<std::size_t>(n)];
    Integer d = lcm_upto(n);
    Rational scaled = Rational(2 * d * d * d) * pair.v;
    scaled.canonicalize();
    IntegralityRow row{n, pair.u == u_binomial(n), is_integer(scaled), Integer(0)};
    if (row.scaled_v_integer) row.scaled_v = scaled.get_num();
    rows.push_back(row);
  }
  return rows;
}

/// (1/2) of the triple integral of x^n(1-x)^n y^n(1-y)^n z^n(1-z)^n / (1-(1-xy)z)^{n+1}
/// over the unit cube, by nested tanh-sinh in double precision. With
/// e = xy and w = 1 - z the denominator is d = e + (1-e)w; the innermost
/// integral runs over tau = log d in [log e, 0], where the integrand
/// (w/d)^n z^n / (1-e) stays bounded and smooth even as e -> 0.
inline QuadratureResult<double> beukers_integral_numeric(long n, double tol = 1e-8) {
  if (n < 0 || n > 3) throw std::invalid_argument("beukers_integral_numeric: n must be in 0..3");
  if (!(tol >= 1e-12)) throw std::invalid_argument("beukers_integral_numeric: tol too small");
  const double inner_tol = tol * 1e-2;
  const int m = static_cast<int>(n);
  auto f_x = [&](const Node<double>& x) {
    auto f_y = [&](const Node<double>& y) {
      const double w_xy = std::pow(x.x * x.from_upper * y.x * y.from_upper, m);
      if (m > 0 && w_xy == 0.0) return 0.0;
      const double e = std::max(x.x * y.x, 1e-300);
      const double one_minus_e = x.from_upper + x.x * y.from_upper;  // 1 - xy
      const double log_e = e > 0.5 ? std::log1p(-one_minus_e) : std::log(e);
      auto f_tau = [&](const Node<double>& t) {
        const double d = std::exp(t.x);
        const double w = e * std::expm1(t.from_lower) / one_minus_e;  // 1 - z
        const double z = -std::expm1(-t.from_upper) / one_minus_e;
        return std::pow(w / d * z, m) / one_minus_e;
      };
      return w_xy * tanh_sinh(f_tau, log_e, 0.0, inner_tol, 12).value;
    };
    return tanh_sinh(f_y, 0.0, 1.0, inner_tol * 10, 12).value;
  };
  auto res = tanh_sinh(f_x, 0.0, 1.0, tol, 12);
  res.value *= 0.5;
  res.error_estimate *= 0.5;
  return res;
}

/// Maximum over [0,1]^3 of x(1-x)y(1-y)z(1-z)/(1-(1-xy)z); equals (sqrt 2 - 1)^4.
inline MaximizeResult<PrecReal> cube_max_check(Precision prec = kDefaultPrecision) {
  auto f = [prec](const std::vector<PrecReal>& v) {
    const PrecReal one(1L, prec);
    const PrecReal& x = v[0];
    const PrecReal& y = v[1];
    const PrecReal& z = v[2];
    PrecReal den = (one - z) + x * y * z;
    if (den.is_zero()) return PrecReal(0L, prec);
    return x * (one - x) * y * (one - y) * z * (one - z) / den;
  };
  std::vector<PrecReal> lo(3, PrecReal(0L, prec));
  std::vector<PrecReal> hi(3, PrecReal(1L, prec));
  PrecReal tol = pow2(-std::min<long>(static_cast<long>(prec) - 8, 100), prec);
  return maximize_box<PrecReal>(f, lo, hi, 20, tol);
}

}  // namespace hyperverify

#endif  // HYPERVERIFY_APERY_HPP
