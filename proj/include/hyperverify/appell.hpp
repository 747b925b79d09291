#ifndef HYPERVERIFY_APPELL_HPP
#define HYPERVERIFY_APPELL_HPP

// Appell's double series F2 and F4, the reduction and transformation
// identities relating them to 2F1, complete elliptic integrals, Bailey's
// two-variable elliptic integral, Legendre-polynomial generating functions,
// and partial sums of 1/pi series.

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "hyperverify/exactnum.hpp"
#include "hyperverify/hypergeom.hpp"
#include "hyperverify/numerics.hpp"
#include "hyperverify/precreal.hpp"

namespace hyperverify {

struct Appell4Spec {
  Rational a, b, c1, c2;
  PrecReal x, y;
};

struct Appell2Spec {
  Rational a, b1, b2, c1, c2;
  PrecReal x, y;
};

struct DoubleSeriesResult {
  PrecReal value;
  PrecReal tail_estimate;
  long shells = 0;
};

namespace detail {

inline void require_lower(const Rational& c, const char* what) {
  if (is_integer(c) && c <= 0) throw PoleError(std::string(what) + ": lower parameter is a nonpositive integer");
}

/// Sums T(m, n) shell by shell in s = m + n. `step_m(m, n)` is the rational
/// part of T(m,n)/T(m-1,n) and `step_n(n)` that of T(0,n)/T(0,n-1); the
/// arguments x, y are applied here. The tail after shell s is estimated as
/// S_s rho/(1-rho), with rho the largest of the last four shell ratios
/// inflated by 10%; this majorant is empirical, not certified.
template <typename StepM, typename StepN>
DoubleSeriesResult sum_shells(StepM&& step_m, StepN&& step_n, const PrecReal& x, const PrecReal& y,
                              Precision prec, long max_shells) {
  const Precision work = prec + 32;
  const PrecReal xw(x, work), yw(y, work);
  std::vector<PrecReal> shell{PrecReal(1L, work)};
  PrecReal total(1L, work);
  std::vector<double> ratios;
  double prev_mass = 1.0;
  for (long s = 1; s <= max_shells; ++s) {
    std::vector<PrecReal> next;
    next.reserve(static_cast<std::size_t>(s + 1));
    next.push_back(shell[0] * step_n(s) * yw);
    for (long m = 1; m <= s; ++m) {
      next.push_back(shell[static_cast<std::size_t>(m - 1)] * step_m(m, s - m) * xw);
    }
    PrecReal mass(0L, 64);
    for (const auto& t : next) {
      total += t;
      mass += abs(PrecReal(t, 64));
    }
    shell = std::move(next);
    const double mass_d = mass.to_double();
    if (mass.is_zero()) return {PrecReal(total, prec), PrecReal(0L, prec), s};
    ratios.push_back(prev_mass > 0 ? mass_d / prev_mass : 1.0);
    prev_mass = mass_d;
    if (ratios.size() >= 8) {
      double rho = 0.0;
      for (std::size_t i = ratios.size() - 4; i < ratios.size(); ++i) rho = std::max(rho, ratios[i]);
      rho *= 1.1;
      if (rho < 1.0) {
        PrecReal tail = mass * PrecReal(rho / (1.0 - rho), 64);
        if (tail <= abs(PrecReal(total, 64)) * pow2(6 - static_cast<long>(prec), 64)) {
          return {PrecReal(total, prec), PrecReal(tail, prec), s};
        }
      }
    }
  }
  throw ConvergenceError("double series: tail estimate not reached within the shell budget");
}

}  // namespace detail

/// F4(a, b; c1, c2 | x, y) for sqrt|x| + sqrt|y| <= 0.95.
inline DoubleSeriesResult f4_numeric(const Appell4Spec& sp, Precision prec = kDefaultPrecision,
                                     long max_shells = 20000) {
  detail::require_lower(sp.c1, "f4_numeric");
  detail::require_lower(sp.c2, "f4_numeric");
  const double reach = std::sqrt(std::fabs(sp.x.to_double())) + std::sqrt(std::fabs(sp.y.to_double()));
  if (!(reach <= 0.95)) throw std::domain_error("f4_numeric: need sqrt|x| + sqrt|y| <= 0.95");
  auto step_m = [&](long m, long n) {
    Rational num = (sp.a + (m + n - 1)) * (sp.b + (m + n - 1));
    return Rational(num / (Rational(m) * (sp.c1 + (m - 1))));
  };
  auto step_n = [&](long n) {
    Rational num = (sp.a + (n - 1)) * (sp.b + (n - 1));
    return Rational(num / (Rational(n) * (sp.c2 + (n - 1))));
  };
  return detail::sum_shells(step_m, step_n, sp.x, sp.y, prec, max_shells);
}

/// F2(a; b1, b2; c1, c2 | x, y) for |x| + |y| <= 0.95.
inline DoubleSeriesResult f2_numeric(const Appell2Spec& sp, Precision prec = kDefaultPrecision,
                                     long max_shells = 20000) {
  detail::require_lower(sp.c1, "f2_numeric");
  detail::require_lower(sp.c2, "f2_numeric");
  const double reach = std::fabs(sp.x.to_double()) + std::fabs(sp.y.to_double());
  if (!(reach <= 0.95)) throw std::domain_error("f2_numeric: need |x| + |y| <= 0.95");
  auto step_m = [&](long m, long n) {
    Rational num = (sp.a + (m + n - 1)) * (sp.b1 + (m - 1));
    return Rational(num / (Rational(m) * (sp.c1 + (m - 1))));
  };
  auto step_n = [&](long n) {
    Rational num = (sp.a + (n - 1)) * (sp.b2 + (n - 1));
    return Rational(num / (Rational(n) * (sp.c2 + (n - 1))));
  };
  return detail::sum_shells(step_m, step_n, sp.x, sp.y, prec, max_shells);
}

inline PrecReal check_tolerance(Precision prec) { return pow2(10 - static_cast<long>(prec), prec); }

/// F4(a, b; c, a+b-c+1 | X(1-Y), Y(1-X)) = 2F1(a,b;c|X) 2F1(a,b;a+b-c+1|Y).
inline NumericCheck f4_reduction_check(const Rational& a, const Rational& b, const Rational& c, const PrecReal& X,
                                       const PrecReal& Y, Precision prec = kDefaultPrecision) {
  if (abs(X) > 0.15 || abs(Y) > 0.15) throw std::domain_error("f4_reduction_check: need |X|, |Y| <= 0.15");
  const Precision work = prec + 16;
  const PrecReal Xw(X, work), Yw(Y, work), one(1L, work);
  const Rational c2 = a + b - c + 1;
  PrecReal lhs = f4_numeric({a, b, c, c2, Xw * (one - Yw), Yw * (one - Xw)}, work).value;
  PrecReal rhs = hyp2f1(a, b, c, Xw, work) * hyp2f1(a, b, c2, Yw, work);
  return make_check(PrecReal(lhs, prec), PrecReal(rhs, prec), check_tolerance(prec));
}

/// F2(a; a-b+1/2, b; c, 2b | X/(1+Y)^2, 4Y/(1+Y)^2) = (1+Y)^{2a} F4(a, a-b+1/2; c, b+1/2 | X, Y^2).
inline NumericCheck f2_to_f4_check(const Rational& a, const Rational& b, const Rational& c, const PrecReal& X,
                                   const PrecReal& Y, Precision prec = kDefaultPrecision) {
  if (abs(X) > 0.1 || abs(Y) > 0.1) throw std::domain_error("f2_to_f4_check: need |X|, |Y| <= 0.1");
  const Precision work = prec + 16;
  const PrecReal Xw(X, work), Yw(Y, work), one(1L, work);
  const Rational half(1, 2);
  const PrecReal sq = (one + Yw) * (one + Yw);
  PrecReal lhs = f2_numeric({a, a - b + half, b, c, Rational(2) * b, Xw / sq, Yw * 4 / sq}, work).value;
  PrecReal rhs = pow(one + Yw, Rational(2) * a) * f4_numeric({a, a - b + half, c, b + half, Xw, Yw * Yw}, work).value;
  return make_check(PrecReal(lhs, prec), PrecReal(rhs, prec), check_tolerance(prec));
}

/// F2(a+b-1/2; a, b; 2a, 2b | 4u(1-u)(1-2v)/(1-2uv)^2, 4v(1-v)(1-2u)/(1-2uv)^2)
///   = (1-2uv)^{2a+2b-1} 2F1(a+b-1/2, a; 2a | 4u(1-u)) 2F1(a+b-1/2, b; 2b | 4v(1-v)).
inline NumericCheck beukers_f2_check(const Rational& a, const Rational& b, const PrecReal& u, const PrecReal& v,
                                     Precision prec = kDefaultPrecision) {
  if (abs(u) > 0.1 || abs(v) > 0.1) throw std::domain_error("beukers_f2_check: need |u|, |v| <= 0.1");
  const Precision work = prec + 16;
  const PrecReal uw(u, work), vw(v, work), one(1L, work);
  const Rational e = a + b - Rational(1, 2);
  const PrecReal w = one - uw * vw * 2;
  const PrecReal x = uw * (one - uw) * (one - vw * 2) * 4 / (w * w);
  const PrecReal y = vw * (one - vw) * (one - uw * 2) * 4 / (w * w);
  PrecReal lhs = f2_numeric({e, a, b, Rational(2) * a, Rational(2) * b, x, y}, work).value;
  PrecReal rhs = pow(w, Rational(2) * a + Rational(2) * b - 1) * hyp2f1(e, a, Rational(2) * a, uw * (one - uw) * 4, work) *
                 hyp2f1(e, b, Rational(2) * b, vw * (one - vw) * 4, work);
  return make_check(PrecReal(lhs, prec), PrecReal(rhs, prec), check_tolerance(prec));
}

/// K(k) = pi / (2 agm(1, k')).
inline PrecReal elliptic_K(const PrecReal& k, Precision prec = kDefaultPrecision) {
  const Precision work = prec + 16;
  const PrecReal kw(k, work), one(1L, work);
  if (kw < 0.0 || kw >= 1.0) throw std::domain_error("elliptic_K: need 0 <= k < 1");
  PrecReal kp = sqrt(one - kw * kw);
  return PrecReal(pi(work) / (agm(one, kp) * 2), prec);
}

struct EllipticArgs {
  PrecReal k, l, k_prime, l_prime, k1, k2;
};

inline EllipticArgs elliptic_args(const PrecReal& k, const PrecReal& l) {
  const Precision p = min_precision(k, l);
  const PrecReal one(1L, p);
  const PrecReal rest = one - k * k - l * l;
  if (k < 0.0 || l < 0.0 || rest <= 0.0) throw std::domain_error("elliptic_args: need k, l >= 0 and k^2 + l^2 < 1");
  PrecReal kp = sqrt(one - k * k);
  PrecReal lp = sqrt(one - l * l);
  PrecReal k1 = (kp - sqrt(rest)) / (one + lp);
  PrecReal k2 = (sqrt((one + k) * (lp + k)) - sqrt((one - k) * (lp - k))) / (one + lp);
  return {k, l, kp, lp, k1, k2};
}

struct QuadratureCheck {
  bool passed = false;
  double quadrature = 0.0;
  double closed_form = 0.0;
  double difference = 0.0;
};

/// Double integral of 1/sqrt(1 - k^2 sin^2 t - l^2 sin^2 s) over [0, pi/2]^2
/// against 2/(1+l') K(k1) K(k2).
inline QuadratureCheck bailey_I_check(double k, double l, double tol = 1e-8) {
  if (!(tol >= 1e-12)) throw std::invalid_argument("bailey_I_check: tol too small");
  EllipticArgs ea = elliptic_args(PrecReal(k, 128), PrecReal(l, 128));
  const double half_pi = std::acos(-1.0) / 2;
  auto outer = [&](double t) {
    const double st = std::sin(t);
    const double base = 1.0 - k * k * st * st;
    auto inner = [&](double s) {
      const double ss = std::sin(s);
      return 1.0 / std::sqrt(base - l * l * ss * ss);
    };
    return tanh_sinh_plain(inner, 0.0, half_pi, tol * 1e-2, 12).value;
  };
  const double quad = tanh_sinh_plain(outer, 0.0, half_pi, tol * 1e-1, 12).value;
  const PrecReal one(1L, 128);
  const double closed = (elliptic_K(ea.k1) * elliptic_K(ea.k2) * 2 / (one + ea.l_prime)).to_double();
  const double diff = std::fabs(quad - closed);
  return {diff <= tol, quad, closed, diff};
}

/// Coefficient of x^n in (x^2 + b x + c)^n.
inline Integer tn(long b, long c, long n) {
  if (n < 0) throw std::invalid_argument("tn: n must be nonnegative");
  Integer total(0);
  for (long k = 0; 2 * k <= n; ++k) {
    total += binomial(n, 2 * k) * binomial(2 * k, k) * ipow(Integer(b), static_cast<unsigned long>(n - 2 * k)) *
             ipow(Integer(c), static_cast<unsigned long>(k));
  }
  return total;
}

/// P_n at a real argument by the three-term recursion.
inline PrecReal legendre_real(long n, const PrecReal& x) {
  const Precision p = x.precision();
  PrecReal prev(1L, p), cur(x, p);
  if (n == 0) return prev;
  for (long m = 1; m < n; ++m) {
    PrecReal next = (x * cur * (2 * m + 1) - prev * m) / (m + 1);
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

struct TnLegendreResult {
  bool passed = false;
  bool exact = false;
  Integer tn_value;
};

/// T_n(b,c) = D^{n/2} P_n(b / sqrt D), D = b^2 - 4c > 0. Exact when D is a
/// perfect square; otherwise compared with relative tolerance 2^(10-prec).
inline TnLegendreResult tn_legendre_check(long b, long c, long n, Precision prec = kDefaultPrecision) {
  const Integer d = Integer(b) * b - Integer(4) * c;
  if (d <= 0) throw std::domain_error("tn_legendre_check: need b^2 - 4c > 0");
  const Integer t = tn(b, c, n);
  Integer root;
  if (perfect_square(d, root)) {
    Rational rhs = Rational(ipow(root, static_cast<unsigned long>(n))) * legendre(n, make_rational(Integer(b), root));
    return {Rational(t) == rhs, true, t};
  }
  const Precision work = prec + 32 + 4 * static_cast<Precision>(n);
  PrecReal sd = sqrt(PrecReal(d, work));
  PrecReal rhs = pow(sd, n) * legendre_real(n, PrecReal(b, work) / sd);
  PrecReal lhs(t, work);
  bool ok = abs(lhs - rhs) <= abs(lhs) * pow2(10 - static_cast<long>(prec), 64) ||
            (t == 0 && abs(rhs) <= pow2(10 - static_cast<long>(prec), 64));
  return {ok, false, t};
}

/// sum (r)_n (1-r)_n / n!^2 P_n(x) z^n against
/// 2F1(r,1-r;1|(1-rho-z)/2) 2F1(r,1-r;1|(1-rho+z)/2), rho = sqrt(1 - 2xz + z^2).
/// For 0 < r < 1 the coefficients and |P_n(x)| are at most 1, so the series
/// tail after z^n is below |z|^{n+1}/(1-|z|).
inline NumericCheck brafman_check(const Rational& r, const PrecReal& x, const PrecReal& z,
                                  Precision prec = kDefaultPrecision) {
  if (r <= 0 || r >= 1) throw std::domain_error("brafman_check: need 0 < r < 1");
  if (abs(z) > 0.2 || abs(x) > 1.0) throw std::domain_error("brafman_check: need |z| <= 0.2 and |x| <= 1");
  const Precision work = prec + 24;
  const PrecReal xw(x, work), zw(z, work), one(1L, work);
  const Rational one_minus_r = Rational(1) - r;
  const PrecReal target = pow2(-static_cast<long>(prec) - 4, work);
  const double az = std::fabs(zw.to_double());
  PrecReal sum(1L, work), coeff(1L, work), zn(1L, work);
  PrecReal p_prev(1L, work), p_cur(xw);
  for (long n = 1;; ++n) {
    coeff *= (r + (n - 1)) * (one_minus_r + (n - 1)) / (Rational(n) * n);
    zn *= zw;
    sum += coeff * p_cur * zn;
    if (az == 0.0 || std::pow(az, n + 1) / (1 - az) < target.to_double()) break;
    PrecReal p_next = (xw * p_cur * (2 * n + 1) - p_prev * n) / (n + 1);
    p_prev = std::move(p_cur);
    p_cur = std::move(p_next);
  }
  PrecReal rho = sqrt(one - xw * zw * 2 + zw * zw);
  PrecReal rhs = hyp2f1(r, one_minus_r, Rational(1), (one - rho - zw) / 2, work) *
                 hyp2f1(r, one_minus_r, Rational(1), (one - rho + zw) / 2, work);
  return make_check(PrecReal(sum, prec), PrecReal(rhs, prec), check_tolerance(prec));
}

/// Generating functions of P_{2n} and P_{3n} near X = Y = 1. The summand
/// P_{kn}(w) s^{kn} is evaluated as H_{kn} with H_m = P_m(w) s^m, from the
/// homogeneous recursion H_{m+1} = ((2m+1) A H_m - m s^2 H_{m-1})/(m+1),
/// A = w s, which has no (X-Y) denominator. Since |H_m| <= R^m with
/// R = |A| + sqrt(A^2 + s^2) and the weights are at most 1, the tail after
/// index n is below R^{k(n+1)}/(1 - R^k).
inline NumericCheck rarefied_check(int order, const PrecReal& X, const PrecReal& Y,
                                   Precision prec = kDefaultPrecision) {
  if (order != 2 && order != 3) throw std::invalid_argument("rarefied_check: order must be 2 or 3");
  const Precision work = prec + 24;
  const PrecReal Xw(X, work), Yw(Y, work), one(1L, work);
  if (abs(one - Xw) > 0.1 || abs(one - Yw) > 0.1) throw std::domain_error("rarefied_check: need |1-X|, |1-Y| <= 0.1");
  PrecReal A(work), s2(work), prefactor(work);
  Rational w1, w2;
  if (order == 2) {
    const PrecReal q = one + Xw * Yw;
    A = (Xw + Yw) * (one - Xw * Yw) / (q * q);
    s2 = (Xw - Yw) * (Xw - Yw) / (q * q);
    prefactor = q / 2;
    w1 = w2 = Rational(1, 2);
  } else {
    const PrecReal d = one + Xw * Yw * (Xw + Yw) * 4;
    A = (Xw + Yw - Xw * Xw * Yw * Yw * 2) / d;
    s2 = (Xw - Yw) * (Xw - Yw) / d;
    prefactor = sqrt(d) / 3;
    w1 = Rational(1, 3);
    w2 = Rational(2, 3);
  }
  const double R = std::fabs(A.to_double()) + std::sqrt(A.to_double() * A.to_double() + s2.to_double());
  const double Rk = std::pow(R, order);
  if (!(Rk < 1.0)) throw std::domain_error("rarefied_check: series outside its convergence region");
  const PrecReal target = pow2(-static_cast<long>(prec) - 4, work);
  PrecReal sum(1L, work), weight(1L, work);
  PrecReal h_prev(1L, work), h_cur(A);  // H_0, H_1
  long m = 1;
  for (long n = 1;; ++n) {
    while (m < order * n) {
      PrecReal h_next = (A * h_cur * (2 * m + 1) - s2 * h_prev * m) / (m + 1);
      h_prev = std::move(h_cur);
      h_cur = std::move(h_next);
      ++m;
    }
    weight *= (w1 + (n - 1)) * (w2 + (n - 1)) / (Rational(n) * n);
    sum += weight * h_cur;
    if (Rk == 0.0 || std::pow(Rk, n + 1) / (1 - Rk) < target.to_double()) break;
  }
  const Rational half(1, 2);
  PrecReal rhs(work);
  if (order == 2) {
    rhs = prefactor * hyp2f1(half, half, Rational(1), one - Xw * Xw, work) *
          hyp2f1(half, half, Rational(1), one - Yw * Yw, work);
  } else {
    rhs = prefactor * hyp2f1(w1, w2, Rational(1), one - Xw * Xw * Xw, work) *
          hyp2f1(w1, w2, Rational(1), one - Yw * Yw * Yw, work);
  }
  return make_check(PrecReal(sum, prec), PrecReal(rhs, prec), check_tolerance(prec));
}

enum class PiSeries { sun1, sun2, ramanujan };

inline std::string to_string(PiSeries id) {
  switch (id) {
    case PiSeries::sun1: return "SUN1";
    case PiSeries::sun2: return "SUN2";
    case PiSeries::ramanujan: return "RAMANUJAN";
  }
  return "?";
}

/// Exact partial sum of the first `terms` terms.
inline Rational pi_series_exact(PiSeries id, long terms) {
  if (terms < 1) throw std::invalid_argument("pi_series: terms must be >= 1");
  Rational sum(0);
  for (long n = 0; n < terms; ++n) {
    const auto un = static_cast<unsigned long>(n);
    Rational term;
    switch (id) {
      case PiSeries::sun1: {
        Integer c = binomial(2 * n, n);
        term = Rational(Integer(7 + 30 * n) * c * c * tn(34, 1, n), ipow(Integer(1024), un));
        if (n % 2 == 1) term = -term;
        break;
      }
      case PiSeries::sun2:
        term = Rational(Integer(2 + 15 * n) * binomial(2 * n, n) * binomial(3 * n, 2 * n) * tn(18, 6, n),
                        ipow(Integer(972), un));
        break;
      case PiSeries::ramanujan: {
        Integer c = binomial(2 * n, n);
        term = Rational(Integer(1103 + 26390 * n) * c * c * binomial(4 * n, 2 * n), ipow(Integer(396), 4 * un));
        break;
      }
    }
    term.canonicalize();
    sum += term;
  }
  return sum;
}

inline PrecReal pi_series(PiSeries id, long terms, Precision prec = kDefaultPrecision) {
  return PrecReal(pi_series_exact(id, terms), prec);
}

/// The closed-form limits 12/pi, 45 sqrt3/(4 pi), 99^2/(2 pi sqrt2).
inline PrecReal pi_series_limit(PiSeries id, Precision prec = kDefaultPrecision) {
  const PrecReal p = pi(prec);
  switch (id) {
    case PiSeries::sun1: return PrecReal(12L, prec) / p;
    case PiSeries::sun2: return sqrt(PrecReal(3L, prec)) * 45 / (p * 4);
    case PiSeries::ramanujan: return PrecReal(99L * 99L, prec) / (p * 2 * sqrt(PrecReal(2L, prec)));
  }
  throw std::invalid_argument("pi_series_limit: unknown series");
}

}  // namespace hyperverify

#endif  // HYPERVERIFY_APPELL_HPP
