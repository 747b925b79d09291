#ifndef HYPERVERIFY_HYPERGEOM_HPP
#define HYPERVERIFY_HYPERGEOM_HPP

// Generalized hypergeometric series pFq: exact terminating sums, numerically
// summed convergent series with explicit tail bounds, Legendre polynomials,
// and the Whipple and Clausen checks.

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "hyperverify/exactnum.hpp"
#include "hyperverify/numerics.hpp"
#include "hyperverify/precreal.hpp"

namespace hyperverify {

struct HGSpec {
  std::vector<Rational> upper;
  std::vector<Rational> lower;
  Rational argument;
};

class PoleError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

namespace detail {

/// Removes upper/lower pairs with equal values.
inline void cancel_pairs(std::vector<Rational>& upper, std::vector<Rational>& lower) {
  for (auto it = upper.begin(); it != upper.end();) {
    auto match = std::find(lower.begin(), lower.end(), *it);
    if (match != lower.end()) {
      lower.erase(match);
      it = upper.erase(it);
    } else {
      ++it;
    }
  }
}

/// Smallest N such that some upper parameter equals -N, if any.
inline std::optional<long> termination_index(const std::vector<Rational>& upper) {
  std::optional<long> best;
  for (const auto& a : upper) {
    if (is_integer(a) && a <= 0) {
      long n = -a.get_num().get_si();
      if (!best || n < *best) best = n;
    }
  }
  return best;
}

/// Throws PoleError if a lower parameter vanishes in (b)_n for some n <= last.
inline void check_lower_poles(const std::vector<Rational>& lower, long last) {
  for (const auto& b : lower) {
    if (is_integer(b) && b <= 0 && -b.get_num().get_si() < last) {
      throw PoleError("lower parameter " + b.get_str() + " hits a pole before termination");
    }
  }
}

/// Ratio t_{n+1}/t_n without the argument.
inline Rational term_ratio(const std::vector<Rational>& upper, const std::vector<Rational>& lower, long n) {
  Rational num(1), den(n + 1);
  for (const auto& a : upper) num *= a + n;
  for (const auto& b : lower) den *= b + n;
  Rational r = num / den;
  r.canonicalize();
  return r;
}

}  // namespace detail

/// Exact value of a terminating series.
inline Rational pfq_terminating(HGSpec spec) {
  detail::cancel_pairs(spec.upper, spec.lower);
  auto last = detail::termination_index(spec.upper);
  if (!last) throw std::invalid_argument("pfq_terminating: no nonpositive integer upper parameter");
  detail::check_lower_poles(spec.lower, *last);
  Rational term(1), sum(1);
  for (long n = 0; n < *last; ++n) {
    term *= detail::term_ratio(spec.upper, spec.lower, n) * spec.argument;
    sum += term;
  }
  sum.canonicalize();
  return sum;
}

struct PfqResult {
  PrecReal value;
  PrecReal tail_bound;  // absolute bound on the omitted terms
  long terms = 0;
};

/// Numerical pFq at a real argument. Supported: terminating series; |z| < 1
/// with p <= q+1; z = 1 with p = q+1 and delta = sum(lower) - sum(upper) > 0.
///
/// Tail bounds. For |z| < 1 and k beyond every |b_j|, |t_{k+1}/t_k| is at
/// most G(m) = |z| * prod of per-pair suprema of (k+|a|)/(k-|b|) and
/// (k+|a|)/(k+1) over k >= m, so the tail after t_n is below |t_n| G/(1-G).
/// For z = 1, with C = 1 + sum b_j^2 and k >= max(2, 2 max|b_j|, 2C/delta),
/// log|t_{k+1}/t_k| <= -(1 + delta/2)/k, hence |t_k| <= |t_n| (n/k)^(1+delta/2)
/// and the tail after t_n is below |t_n| * 2n/delta.
inline PfqResult pfq_numeric(std::vector<Rational> upper, std::vector<Rational> lower, const PrecReal& z,
                             Precision prec = kDefaultPrecision, long max_terms = 4'000'000) {
  detail::cancel_pairs(upper, lower);
  const Precision work = prec + 40;
  const PrecReal zw(z, work);
  auto last = detail::termination_index(upper);
  if (last) detail::check_lower_poles(lower, *last);
  for (const auto& b : lower) {
    if (!last && is_integer(b) && b <= 0) throw PoleError("lower parameter is a nonpositive integer");
  }

  enum class Mode { finite, disk, unit };
  Mode mode = Mode::finite;
  double delta = 0.0;
  if (!last) {
    const std::size_t p = upper.size();
    const std::size_t q = lower.size();
    const PrecReal az = abs(zw);
    if (az < 1.0) {
      if (p > q + 1 && !zw.is_zero()) throw std::domain_error("pfq_numeric: divergent (p > q + 1)");
      mode = Mode::disk;
    } else if (zw == PrecReal(1L, work) && p == q + 1) {
      Rational excess(0);
      for (const auto& b : lower) excess += b;
      for (const auto& a : upper) excess -= a;
      if (excess <= 0) throw std::domain_error("pfq_numeric: divergent at z = 1 (parameter excess <= 0)");
      delta = excess.get_d();
      mode = Mode::unit;
    } else {
      throw std::domain_error("pfq_numeric: argument outside the supported region");
    }
  }

  double max_b = 0.0, max_neg_a = 0.0, sum_b2 = 1.0;
  for (const auto& b : lower) {
    max_b = std::max(max_b, std::fabs(b.get_d()));
    sum_b2 += b.get_d() * b.get_d();
  }
  for (const auto& a : upper) max_neg_a = std::max(max_neg_a, -a.get_d());
  const double abs_z = std::fabs(zw.to_double());

  auto disk_ratio_bound = [&](long m) {
    const double k = static_cast<double>(m);
    double g = abs_z;
    std::size_t i = 0;
    for (; i < upper.size() && i < lower.size(); ++i) {
      g *= (k + std::fabs(upper[i].get_d())) / (k - std::fabs(lower[i].get_d()));
    }
    if (i < upper.size()) {  // the single leftover upper pairs with (k+1)
      g *= std::max(1.0, (k + std::fabs(upper[i].get_d())) / (k + 1.0));
    } else {
      g /= k + 1.0;
      for (std::size_t j = i; j < lower.size(); ++j) g /= k - std::fabs(lower[j].get_d());
    }
    return g * (1.0 + 1e-9);
  };
  const long start = static_cast<long>(std::ceil(std::max({max_b, max_neg_a, 2.0, 2.0 * max_b,
                                                           mode == Mode::unit ? 2.0 * sum_b2 / delta : 0.0}))) + 1;

  PrecReal term(1L, work);
  PrecReal sum(1L, work);
  for (long n = 0;; ++n) {
    if (last && n >= *last) return {PrecReal(sum, prec), PrecReal(0L, prec), n + 1};
    if (n >= max_terms) throw ConvergenceError("pfq_numeric: tail bound not reached within the term budget");
    if (mode != Mode::finite && n >= start) {
      PrecReal tail(0L, work);
      bool usable = false;
      if (mode == Mode::disk) {
        const double g = disk_ratio_bound(n);
        if (g < 1.0) {
          tail = abs(term) * PrecReal(g / (1.0 - g), 64);
          usable = true;
        }
      } else {
        tail = abs(term) * PrecReal(2.0 * static_cast<double>(n) / delta, 64);
        usable = true;
      }
      if (usable) {
        PrecReal target = abs(sum) * pow2(3 - static_cast<long>(prec), 64);
        if (tail <= target || (sum.is_zero() && tail.is_zero())) {
          return {PrecReal(sum, prec), PrecReal(tail, prec), n + 1};
        }
      }
    }
    term *= detail::term_ratio(upper, lower, n);
    term *= zw;
    if (term.is_zero() && mode == Mode::disk) return {PrecReal(sum, prec), PrecReal(0L, prec), n + 1};
    sum += term;
  }
}

inline PfqResult pfq_numeric(const HGSpec& spec, Precision prec = kDefaultPrecision) {
  return pfq_numeric(spec.upper, spec.lower, PrecReal(spec.argument, prec + 40), prec);
}

/// 2F1(a, b; c | z) as a PrecReal.
inline PrecReal hyp2f1(const Rational& a, const Rational& b, const Rational& c, const PrecReal& z,
                       Precision prec = kDefaultPrecision) {
  return pfq_numeric({a, b}, {c}, z, prec).value;
}

/// P_n(x) = 2F1(-n, n+1; 1 | (1-x)/2).
inline Rational legendre(long n, const Rational& x) {
  if (n < 0) throw std::invalid_argument("legendre: n must be nonnegative");
  if (n == 0) return Rational(1);
  return pfq_terminating({{Rational(-n), Rational(n + 1)}, {Rational(1)}, (Rational(1) - x) / 2});
}

/// Both sides of Whipple's 4F3 -> 5F4 transformation at parameters
/// (f, h, a, g) with the terminating parameter -N.
inline std::pair<Rational, Rational> whipple_sides(const Rational& f, const Rational& h, const Rational& a,
                                                   const Rational& g, long N) {
  if (N < 0) throw std::invalid_argument("whipple: N must be nonnegative");
  const Rational one(1), half(1, 2);
  const Rational mn(-N);
  const Rational e = (one + f - Rational(N) - g) / 2;
  // A lower parameter in -N..0 makes some term 0/0 even when an earlier
  // upper parameter stops the series, so the identity has no meaning there.
  for (const Rational& b : std::vector<Rational>{h, one + f + a - h, g, e, e + half}) {
    if (is_integer(b) && b <= 0 && b >= mn) throw PoleError("whipple: lower parameter " + b.get_str() + " in -N..0");
  }
  Rational lhs = pfq_terminating({{f, one + f - h, h - a, mn}, {h, one + f + a - h, g}, one});
  Rational gn = pochhammer(g, N);
  if (gn == 0) throw PoleError("whipple: (g)_N vanishes");
  Rational rhs = pochhammer(g - f, N) / gn *
                 pfq_terminating({{a, mn, one + f - g, f / 2, f / 2 + half}, {h, one + f + a - h, e, e + half}, one});
  lhs.canonicalize();
  rhs.canonicalize();
  return {lhs, rhs};
}

inline bool whipple_check(const Rational& f, const Rational& h, const Rational& a, const Rational& g, long N) {
  auto [lhs, rhs] = whipple_sides(f, h, a, g, N);
  return lhs == rhs;
}

struct NumericCheck {
  bool passed = false;
  PrecReal lhs;
  PrecReal rhs;
  PrecReal difference;
  PrecReal tolerance;
};

inline NumericCheck make_check(PrecReal lhs, PrecReal rhs, PrecReal tolerance) {
  PrecReal diff = abs(lhs - rhs);
  bool ok = diff <= tolerance;
  return {ok, std::move(lhs), std::move(rhs), std::move(diff), std::move(tolerance)};
}

/// 3F2(1/2, r, 1-r; 1, 1 | 4x(1-x)) against 2F1(r, 1-r; 1 | x)^2.
inline NumericCheck clausen_check(const Rational& r, const Rational& x, Precision prec = kDefaultPrecision) {
  if (x < 0 || x >= Rational(1, 2)) throw std::domain_error("clausen_check: need 0 <= x < 1/2");
  const Precision work = prec + 16;
  const Rational one(1);
  PrecReal arg(Rational(4) * x * (one - x), work);
  PrecReal lhs = pfq_numeric({Rational(1, 2), r, one - r}, {one, one}, arg, work).value;
  PrecReal f = hyp2f1(r, one - r, one, PrecReal(x, work), work);
  return make_check(PrecReal(lhs, prec), PrecReal(f * f, prec), pow2(10 - static_cast<long>(prec), prec));
}

}  // namespace hyperverify

#endif  // HYPERVERIFY_HYPERGEOM_HPP
