#ifndef HYPERVERIFY_NUMERICS_HPP
#define HYPERVERIFY_NUMERICS_HPP

// Generic numerical kernels shared by the identity checks: double-exponential
// (tanh-sinh) quadrature and a derivative-free box maximizer. Both are
// templates over the real type so the same code runs in double for the
// multi-dimensional integrals and in PrecReal where high accuracy is needed.

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hyperverify/precreal.hpp"

namespace hyperverify {

class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <typename Real>
struct RealTraits;

template <>
struct RealTraits<double> {
  static double make(double v, Precision) { return v; }
  static double ratio(long num, long den, Precision) {
    return static_cast<double>(num) / static_cast<double>(den);
  }
  static double pi(Precision) { return std::numbers::pi; }
  static Precision bits(const double&) { return 53; }
  static double to_double(double v) { return v; }
  // Nodes may approach an endpoint down to the bottom of the exponent range.
  static double node_range(Precision) { return 340.0; }
};

template <>
struct RealTraits<PrecReal> {
  static PrecReal make(double v, Precision p) { return PrecReal(v, p); }
  static PrecReal ratio(long num, long den, Precision p) { return PrecReal(make_rational(num, den), p); }
  static PrecReal pi(Precision p) { return hyperverify::pi(p); }
  static Precision bits(const PrecReal& x) { return x.precision(); }
  static double to_double(const PrecReal& v) { return v.to_double(); }
  static double node_range(Precision p) { return static_cast<double>(p) * 0.6931471805599453 + 10.0; }
};

/// A quadrature node with both endpoint distances carried explicitly, so an
/// integrand that is singular at an endpoint can be evaluated without
/// cancellation (x may round to the endpoint; the distance does not).
template <typename Real>
struct Node {
  Real x;
  Real from_lower;
  Real from_upper;
};

template <typename Real>
struct QuadratureResult {
  Real value;
  Real error_estimate;
  int levels = 0;
  long evaluations = 0;
  bool converged = true;
};

/// Tanh-sinh quadrature of f over [a, b]. Refines by halving the step until
/// two successive estimates agree to `tol` (absolute). When `max_level` is
/// exhausted it throws ConvergenceError, or with `strict` false returns the
/// last estimate with `converged` cleared.
template <typename Real, typename F>
QuadratureResult<Real> tanh_sinh(F&& f, const Real& a, const Real& b, const Real& tol,
                                 int max_level = 10, bool strict = true) {
  using T = RealTraits<Real>;
  using std::abs;
  using std::asinh;
  using std::cosh;
  using std::exp;
  using std::sinh;
  const Precision p = T::bits(tol);
  const Real half_pi = T::pi(p) * T::ratio(1, 2, p);
  const Real width = b - a;
  const Real half_width = width * T::ratio(1, 2, p);
  // Nodes stop once pi/2 sinh t exceeds the type's node range.
  const double u_max = T::node_range(p);
  const double t_max = std::asinh(2.0 * u_max / std::numbers::pi);

  long evaluations = 0;
  auto sample = [&](const Real& t) {
    Real u = half_pi * sinh(t);
    Real e = exp(u + u);  // e^{2u}
    Real one = T::make(1.0, p);
    Real from_upper = width / (one + e);
    Real from_lower = width - from_upper;
    if (u < T::make(0.0, p)) {
      from_lower = width / (one + one / e);
      from_upper = width - from_lower;
    }
    Real ch = cosh(u);
    Real weight = half_width * half_pi * cosh(t) / (ch * ch);
    Node<Real> node{a + from_lower, from_lower, from_upper};
    ++evaluations;
    return weight * f(node);
  };

  // Level 0: integer t.
  Real h = T::make(1.0, p);
  Real sum = sample(T::make(0.0, p));
  for (long j = 1; j <= static_cast<long>(t_max); ++j) {
    Real t = T::make(static_cast<double>(j), p);
    sum += sample(t);
    sum += sample(-t);
  }
  Real estimate = sum * h;
  Real previous = estimate;
  for (int level = 1; level <= max_level; ++level) {
    h = h * T::ratio(1, 2, p);
    const long steps = static_cast<long>(t_max * std::ldexp(1.0, level)) + 1;
    for (long j = 1; j <= steps; j += 2) {
      Real t = h * T::make(static_cast<double>(j), p);
      if (T::to_double(t) > t_max) break;
      sum += sample(t);
      sum += sample(-t);
    }
    estimate = sum * h;
    Real diff = abs(estimate - previous);
    if (level >= 3 && diff <= tol) {
      return {estimate, diff, level, evaluations};
    }
    if (level == max_level && !strict) {
      return {estimate, diff, level, evaluations, false};
    }
    previous = estimate;
  }
  throw ConvergenceError("tanh-sinh quadrature did not reach tolerance in " +
                         std::to_string(max_level) + " levels");
}

/// Plain-function convenience overload: f(x).
template <typename Real, typename F>
QuadratureResult<Real> tanh_sinh_plain(F&& f, const Real& a, const Real& b, const Real& tol,
                                       int max_level = 10) {
  return tanh_sinh([&](const Node<Real>& n) { return f(n.x); }, a, b, tol, max_level);
}

template <typename Real>
struct MaximizeResult {
  std::vector<Real> argmax;
  Real value;
  int sweeps = 0;
};

/// Maximizes f over a box: uniform grid search for a starting point, then
/// cyclic golden-section line searches over the full range of each
/// coordinate until a sweep improves the value by less than tol / 100.
/// Assumes f is unimodal along every coordinate line near the maximum.
template <typename Real, typename F>
MaximizeResult<Real> maximize_box(F&& f, const std::vector<Real>& lower, const std::vector<Real>& upper,
                                  int grid, const Real& tol, int max_sweeps = 2000) {
  using T = RealTraits<Real>;
  using std::abs;
  using std::sqrt;
  const std::size_t dim = lower.size();
  const Precision p = T::bits(tol);
  std::vector<Real> best(lower);
  Real best_value = f(best);
  std::vector<int> idx(dim, 1);
  for (;;) {
    std::vector<Real> x(lower);
    for (std::size_t d = 0; d < dim; ++d) {
      x[d] = lower[d] + (upper[d] - lower[d]) * T::ratio(idx[d], grid, p);
    }
    Real v = f(x);
    if (v > best_value) {
      best_value = v;
      best = x;
    }
    std::size_t d = 0;
    while (d < dim && ++idx[d] >= grid) idx[d++] = 1;
    if (d == dim) break;
  }

  const Real inv_phi = (sqrt(T::make(5.0, p)) - T::make(1.0, p)) * T::ratio(1, 2, p);
  const Real width_tol = tol * T::make(1e-3, p);
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    Real start_value = best_value;
    for (std::size_t d = 0; d < dim; ++d) {
      Real lo = lower[d];
      Real hi = upper[d];
      auto at = [&](const Real& c) {
        std::vector<Real> y(best);
        y[d] = c;
        return f(y);
      };
      Real c1 = hi - inv_phi * (hi - lo);
      Real c2 = lo + inv_phi * (hi - lo);
      Real f1 = at(c1);
      Real f2 = at(c2);
      for (int it = 0; it < 2 * static_cast<int>(p) && hi - lo > width_tol; ++it) {
        if (f1 < f2) {
          lo = c1;
          c1 = c2;
          f1 = f2;
          c2 = lo + inv_phi * (hi - lo);
          f2 = at(c2);
        } else {
          hi = c2;
          c2 = c1;
          f2 = f1;
          c1 = hi - inv_phi * (hi - lo);
          f1 = at(c1);
        }
      }
      const bool first = f1 > f2;
      if ((first ? f1 : f2) > best_value) {
        best_value = first ? f1 : f2;
        best[d] = first ? c1 : c2;
      }
    }
    if (abs(best_value - start_value) <= tol * T::make(1e-2, p) && sweep > 2) {
      return {best, best_value, sweep + 1};
    }
  }
  throw ConvergenceError("maximize_box: no convergence");
}

}  // namespace hyperverify

#endif  // HYPERVERIFY_NUMERICS_HPP
