#ifndef HYPERVERIFY_BAILEYPAIR_HPP
#define HYPERVERIFY_BAILEYPAIR_HPP

// The bilinear pair transform
//   beta_n  = sum_{r<=n} alpha_r u_{n-r} v_{n+r},
//   gamma_n = sum_{r>=n} delta_r u_{r-n} v_{r+n},
// with sum alpha_n gamma_n = sum beta_n delta_n, its q-Gauss specialization,
// the resulting weak lemma, Rogers-Ramanujan derivations, and the letter
// identities in the mod 18 / mod 9 / mod 27 families.
//
// Parameters a, rho1, rho2 are signed monomials s q^e; rho may also be
// infinite, in which case the limit rule
//   (rho)_n (x/rho)^n -> (-1)^n q^{n(n-1)/2} x^n,  (x/rho)_n -> 1
// is applied before any series is expanded.

#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

#include "hyperverify/exactnum.hpp"
#include "hyperverify/qseries.hpp"

namespace hyperverify {

struct QMonomial {
  int sign = 1;
  long exponent = 0;
  bool infinite = false;

  static QMonomial power(long e, int sign = 1) { return {sign, e, false}; }
  static QMonomial infinity() { return {1, 0, true}; }
  std::string to_string() const {
    if (infinite) return "inf";
    std::string s = sign < 0 ? "-" : "";
    if (exponent == 0) return s + "1";
    return s + (exponent == 1 ? "q" : "q^" + std::to_string(exponent));
  }
};

/// (m; q)_n for a finite monomial m = s q^e with e >= 0.
inline QSeries mono_poch(const QMonomial& m, long n, int order) {
  if (m.infinite) throw std::invalid_argument("mono_poch: infinite monomial");
  if (m.exponent < 0) throw std::domain_error("mono_poch: negative exponent " + m.to_string());
  return qpoch(m.sign, m.exponent, 1, n, order);
}

/// Multiplies s by 1/(m; q)_n.
inline QSeries& divide_mono_poch(QSeries& s, const QMonomial& m, long n) {
  if (m.exponent < 0) throw std::domain_error("divide_mono_poch: negative exponent " + m.to_string());
  return divide_poch(s, m.sign, m.exponent, 1, n);
}

/// m^n as a series (zero once the exponent passes the order).
inline QSeries mono_power(const QMonomial& m, long n, int order) {
  if (m.exponent < 0 && n > 0) throw std::domain_error("mono_power: negative exponent");
  const int s = (m.sign < 0 && n % 2 == 1) ? -1 : 1;
  const long e = m.exponent * n;
  return QSeries::monomial(Rational(s), e > order ? order + 1 : e, order);
}

/// aq / rho for finite a and rho.
inline QMonomial aq_over(const QMonomial& a, const QMonomial& rho) {
  return {a.sign * rho.sign, a.exponent + 1 - rho.exponent, false};
}

// ---------------------------------------------------------------------------
// Pair systems

struct PairSystem {
  int order = 0;
  long cutoff = 0;                // M
  std::vector<QSeries> alpha;     // 0..M
  std::vector<QSeries> delta;     // 0..M, taken as zero beyond M
  std::vector<QSeries> kernel_u;  // 0..2M
  std::vector<QSeries> kernel_v;  // 0..2M
};

/// u_n = 1/(q;q)_n and v_n = 1/(aq;q)_n for n = 0..count-1.
inline void standard_kernel(const QMonomial& a, long count, int order, std::vector<QSeries>& u,
                            std::vector<QSeries>& v) {
  u.assign(1, QSeries::one(order));
  v.assign(1, QSeries::one(order));
  const QMonomial aq{a.sign, a.exponent + 1, false};
  for (long n = 1; n < count; ++n) {
    QSeries un = u.back();
    if (n <= order) un.div_one_minus(1, n);
    QSeries vn = v.back();
    if (aq.exponent + n - 1 <= order) vn.div_one_minus(aq.sign, aq.exponent + n - 1);
    u.push_back(std::move(un));
    v.push_back(std::move(vn));
  }
}

inline PairSystem make_standard_system(const QMonomial& a, std::vector<QSeries> alpha, std::vector<QSeries> delta,
                                       int order) {
  if (alpha.size() != delta.size() || alpha.empty()) {
    throw std::invalid_argument("make_standard_system: alpha and delta must have equal nonzero length");
  }
  PairSystem ps;
  ps.order = order;
  ps.cutoff = static_cast<long>(alpha.size()) - 1;
  ps.alpha = std::move(alpha);
  ps.delta = std::move(delta);
  standard_kernel(a, 2 * ps.cutoff + 1, order, ps.kernel_u, ps.kernel_v);
  return ps;
}

inline void validate(const PairSystem& ps) {
  const auto m = static_cast<std::size_t>(ps.cutoff);
  if (ps.alpha.size() != m + 1 || ps.delta.size() != m + 1 || ps.kernel_u.size() < 2 * m + 1 ||
      ps.kernel_v.size() < 2 * m + 1) {
    throw std::invalid_argument("PairSystem: sequence lengths do not match the cutoff");
  }
}

inline QSeries beta_from_alpha(const PairSystem& ps, long n) {
  validate(ps);
  if (n < 0 || n > ps.cutoff) throw std::out_of_range("beta_from_alpha: n outside 0..M");
  QSeries out(ps.order);
  for (long r = 0; r <= n; ++r) {
    const auto& a = ps.alpha[static_cast<std::size_t>(r)];
    if (a.is_zero()) continue;
    out += a * ps.kernel_u[static_cast<std::size_t>(n - r)] * ps.kernel_v[static_cast<std::size_t>(n + r)];
  }
  return out;
}

inline QSeries gamma_from_delta(const PairSystem& ps, long n) {
  validate(ps);
  QSeries out(ps.order);
  for (long r = std::max(n, 0L); r <= ps.cutoff; ++r) {
    const auto& d = ps.delta[static_cast<std::size_t>(r)];
    if (d.is_zero()) continue;
    out += d * ps.kernel_u[static_cast<std::size_t>(r - n)] * ps.kernel_v[static_cast<std::size_t>(r + n)];
  }
  return out;
}

struct BilateralReport {
  QIdentityReport agreement;
  long cutoff = 0;
  QSeries alpha_gamma{0};
  QSeries beta_delta{0};
};

/// sum_n alpha_n gamma_n against sum_n beta_n delta_n, n = 0..M.
inline BilateralReport bilateral_identity_check(const PairSystem& ps) {
  validate(ps);
  QSeries lhs(ps.order), rhs(ps.order);
  for (long n = 0; n <= ps.cutoff; ++n) {
    lhs += ps.alpha[static_cast<std::size_t>(n)] * gamma_from_delta(ps, n);
    rhs += beta_from_alpha(ps, n) * ps.delta[static_cast<std::size_t>(n)];
  }
  return {verify_q_identity(lhs, rhs), ps.cutoff, lhs, rhs};
}

// ---------------------------------------------------------------------------
// q-Gauss specialization

/// w_n = (rho1)_n (rho2)_n (aq/(rho1 rho2))^n with the infinite-rho limit rule.
inline QSeries lemma_weight(const QMonomial& a, const QMonomial& rho1, const QMonomial& rho2, long n, int order) {
  if (a.infinite || a.exponent < 0) throw std::domain_error("lemma_weight: a must be s q^e with e >= 0");
  if (!rho1.infinite && !rho2.infinite) {
    QMonomial x{a.sign * rho1.sign * rho2.sign, a.exponent + 1 - rho1.exponent - rho2.exponent, false};
    if (x.exponent < 1) {
      throw std::domain_error("q-Gauss: aq/(rho1 rho2) = " + x.to_string() + " needs a positive q-power");
    }
    return mono_poch(rho1, n, order) * mono_poch(rho2, n, order) * mono_power(x, n, order);
  }
  long shift = 0;
  int sign = 1;
  QSeries out = QSeries::one(order);
  const QMonomial* finite = !rho1.infinite ? &rho1 : (!rho2.infinite ? &rho2 : nullptr);
  if (finite) {
    // (rho)_n (-1)^n q^{n(n-1)/2} (aq/rho)^n
    QMonomial x = aq_over(a, *finite);
    if (x.exponent < 0) throw std::domain_error("q-Gauss: aq/rho = " + x.to_string() + " is not a power series");
    out = mono_poch(*finite, n, order);
    shift = n * (n - 1) / 2 + x.exponent * n;
    sign = ((n % 2 == 1) ? -1 : 1) * ((x.sign < 0 && n % 2 == 1) ? -1 : 1);
  } else {
    // a^n q^{n^2}
    shift = a.exponent * n + n * n;
    sign = (a.sign < 0 && n % 2 == 1) ? -1 : 1;
  }
  if (shift > order) return QSeries(order);
  return out.shifted(shift, Rational(sign));
}

/// 1/((aq/rho1)_n (aq/rho2)_n), infinite rho contributing 1.
inline QSeries lemma_bracket(const QMonomial& a, const QMonomial& rho1, const QMonomial& rho2, long n, int order) {
  QSeries out = QSeries::one(order);
  for (const auto* rho : {&rho1, &rho2}) {
    if (!rho->infinite) divide_mono_poch(out, aq_over(a, *rho), n);
  }
  return out;
}

/// (aq/rho1)_inf (aq/rho2)_inf / ((aq)_inf (aq/(rho1 rho2))_inf), limits applied.
inline QSeries lemma_product(const QMonomial& a, const QMonomial& rho1, const QMonomial& rho2, int order) {
  QSeries out = QSeries::one(order);
  for (const auto* rho : {&rho1, &rho2}) {
    if (!rho->infinite) {
      QMonomial x = aq_over(a, *rho);
      multiply_poch(out, x.sign, x.exponent, 1, kInfinite);
    }
  }
  divide_poch(out, a.sign, a.exponent + 1, 1, kInfinite);
  if (!rho1.infinite && !rho2.infinite) {
    divide_poch(out, a.sign * rho1.sign * rho2.sign, a.exponent + 1 - rho1.exponent - rho2.exponent, 1, kInfinite);
  }
  return out;
}

/// Smallest M with ord(w_n) > order for all n > M. The weight's valuation is
/// nondecreasing in n for every supported parameter choice (linear growth
/// for finite rho, quadratic for infinite rho).
inline long lemma_cutoff(const QMonomial& a, const QMonomial& rho1, const QMonomial& rho2, int order) {
  long n = 0;
  while (lemma_weight(a, rho1, rho2, n + 1, order).valuation() <= order) {
    ++n;
    if (n > 4L * order + 8) throw std::logic_error("lemma_cutoff: weight valuation does not grow");
  }
  return n;
}

struct QGaussReport {
  QIdentityReport agreement;
  long cutoff = 0;
};

/// gamma_n computed from delta_r = w_r against the closed form w_n b_n P.
inline QGaussReport qgauss_gamma_check(const QMonomial& rho1, const QMonomial& rho2, const QMonomial& a, long n,
                                       int order) {
  const long m = std::max(lemma_cutoff(a, rho1, rho2, order), n);
  std::vector<QSeries> delta, alpha;
  for (long r = 0; r <= m; ++r) {
    delta.push_back(lemma_weight(a, rho1, rho2, r, order));
    alpha.emplace_back(order);
  }
  PairSystem ps = make_standard_system(a, std::move(alpha), std::move(delta), order);
  QSeries direct = gamma_from_delta(ps, n);
  QSeries closed = lemma_weight(a, rho1, rho2, n, order) * lemma_bracket(a, rho1, rho2, n, order) *
                   lemma_product(a, rho1, rho2, order);
  return {verify_q_identity(direct, closed), m};
}

struct WeakLemmaReport {
  QIdentityReport agreement;
  long cutoff = 0;
  QSeries lhs{0};
  QSeries rhs{0};
};

/// sum_n w_n beta_n = P sum_n w_n b_n alpha_n with beta from alpha under the
/// standard kernel. Entries of alpha beyond its length are zero.
inline WeakLemmaReport weak_lemma_check(const std::vector<QSeries>& alpha, const QMonomial& a, const QMonomial& rho1,
                                        const QMonomial& rho2, int order) {
  const long m = lemma_cutoff(a, rho1, rho2, order);
  std::vector<QSeries> al, de;
  for (long n = 0; n <= m; ++n) {
    al.push_back(n < static_cast<long>(alpha.size()) ? alpha[static_cast<std::size_t>(n)].truncated(order)
                                                     : QSeries(order));
    de.push_back(lemma_weight(a, rho1, rho2, n, order));
  }
  PairSystem ps = make_standard_system(a, al, de, order);
  QSeries lhs(order), inner(order);
  for (long n = 0; n <= m; ++n) {
    lhs += de[static_cast<std::size_t>(n)] * beta_from_alpha(ps, n);
    if (!al[static_cast<std::size_t>(n)].is_zero()) {
      inner += de[static_cast<std::size_t>(n)] * lemma_bracket(a, rho1, rho2, n, order) * al[static_cast<std::size_t>(n)];
    }
  }
  QSeries rhs = lemma_product(a, rho1, rho2, order) * inner;
  return {verify_q_identity(lhs, rhs), m, lhs, rhs};
}

// ---------------------------------------------------------------------------
// Rogers-Ramanujan

enum class RRIdentity { rr1, rr2 };

/// The Rogers-Ramanujan alpha sequence for a = 1 (rr1) or a = q (rr2), whose
/// beta under the standard kernel is 1/(q;q)_n.
inline std::vector<QSeries> rr_alpha(RRIdentity which, long count, int order) {
  std::vector<QSeries> out;
  for (long n = 0; n < count; ++n) {
    const int s = n % 2 == 1 ? -1 : 1;
    QSeries term(order);
    if (which == RRIdentity::rr1) {
      if (n == 0) {
        term = QSeries::one(order);
      } else {
        const long e = n * (3 * n - 1) / 2;
        term = QSeries::monomial(Rational(s), e, order) + QSeries::monomial(Rational(s), e + n, order);
      }
    } else {
      // (-1)^n q^{n(3n+1)/2} (1 - q^{2n+1})/(1 - q)
      const long e = n * (3 * n + 1) / 2;
      if (e <= order) {
        term = QSeries::monomial(Rational(s), e, order);
        term.mul_one_minus(1, 2 * n + 1);
        term.div_one_minus(1, 1);
      }
    }
    out.push_back(std::move(term));
  }
  return out;
}

struct RRReport {
  QIdentityReport sum_vs_product;
  QIdentityReport pair_beta;       // beta_n from alpha_n against 1/(q)_n, worst n
  QIdentityReport lemma;           // weak lemma at rho1, rho2 -> infinity
  QIdentityReport lemma_vs_product;
  long cutoff = 0;
  bool passed() const {
    return sum_vs_product.full_agreement() && pair_beta.full_agreement() && lemma.full_agreement() &&
           lemma_vs_product.full_agreement();
  }
};

inline RRReport rr_check(RRIdentity which, int order) {
  if (order < 10) throw std::invalid_argument("rr_check: order must be at least 10");
  const int shift = which == RRIdentity::rr1 ? 0 : 1;
  const QMonomial a = QMonomial::power(shift);
  const QMonomial inf = QMonomial::infinity();
  RRReport rep;
  rep.sum_vs_product = verify_q_identity(rogers_ramanujan_sum(shift, order), rogers_ramanujan_product(shift, order));
  const long m = lemma_cutoff(a, inf, inf, order);
  rep.cutoff = m;
  auto alpha = rr_alpha(which, m + 1, order);
  PairSystem ps = make_standard_system(a, alpha, std::vector<QSeries>(static_cast<std::size_t>(m + 1), QSeries(order)),
                                       order);
  rep.pair_beta.equal_to_order = order;
  rep.pair_beta.requested_order = order;
  for (long n = 0; n <= m; ++n) {
    QSeries expected = QSeries::one(order);
    divide_poch(expected, 1, 1, 1, n);
    auto r = verify_q_identity(beta_from_alpha(ps, n), expected);
    if (!r.full_agreement() && r.equal_to_order < rep.pair_beta.equal_to_order) rep.pair_beta = r;
  }
  auto lemma = weak_lemma_check(alpha, a, inf, inf, order);
  rep.lemma = lemma.agreement;
  rep.lemma_vs_product = verify_q_identity(lemma.rhs, rogers_ramanujan_product(shift, order));
  return rep;
}

// ---------------------------------------------------------------------------
// Letter identities

enum class DysonIdentity { mod18, mod9, gen27_a1, gen27_ax3 };

inline std::string to_string(DysonIdentity which) {
  switch (which) {
    case DysonIdentity::mod18: return "MOD18_71";
    case DysonIdentity::mod9: return "MOD9_72";
    case DysonIdentity::gen27_a1: return "GEN27_A1_at_a1";
    case DysonIdentity::gen27_ax3: return "GEN27_A1_at_ax3";
  }
  return "?";
}

struct LetterSides {
  QSeries lhs{0};
  QSeries rhs{0};
};

/// Notation: x_n! = prod_{j=1..n}(1-x^j), x^k_n! = prod_{j=1..n}(1-x^{kj}),
/// (a)_n = prod_{j<n}(1 - a x^j), [a]_n = prod_{j<n}(1 - a x^{3j}).
inline LetterSides mod18_sides(int order) {
  // sum_n x^6_n! x^n / (x_{2n+2}! x^2_n!)
  //   = prod (1-x^{18n})(1-x^{18n-3})(1-x^{18n-15}) / ((1-x^n)(1-x^{2n-1}))
  QSeries lhs(order);
  for (long n = 0; n <= order; ++n) {
    QSeries t = QSeries::monomial(Rational(1), n, order);
    multiply_poch(t, 1, 6, 6, n);
    divide_poch(t, 1, 1, 1, 2 * n + 2);
    divide_poch(t, 1, 2, 2, n);
    lhs += t;
  }
  QSeries rhs = eta_quotient({{18, 18, 1}, {15, 18, 1}, {3, 18, 1}, {1, 1, -1}, {1, 2, -1}}, order);
  return {lhs, rhs};
}

inline LetterSides mod9_sides(int order) {
  // 1 + 2 sum_{n>=1} x^6_{n-1}! x^n / (x_{2n-1}! x^2_n!)
  //   = prod (1+x^n)(1-x^{9n}) / ((1-x^n)(1+x^{9n}))
  QSeries lhs = QSeries::one(order);
  for (long n = 1; n <= order; ++n) {
    QSeries t = QSeries::monomial(Rational(2), n, order);
    multiply_poch(t, 1, 6, 6, n - 1);
    divide_poch(t, 1, 1, 1, 2 * n - 1);
    divide_poch(t, 1, 2, 2, n);
    lhs += t;
  }
  QSeries rhs = QSeries::one(order);
  multiply_poch(rhs, -1, 1, 1, kInfinite);
  divide_poch(rhs, 1, 1, 1, kInfinite);
  multiply_poch(rhs, 1, 9, 9, kInfinite);
  divide_poch(rhs, -1, 9, 9, kInfinite);
  return {lhs, rhs};
}

/// The mod-27 generating identity at a = x^k:
///   1 + sum_{n>=1} (-1)^n [ax^3]_{n-1} (1 - a x^{6n}) a^{4n} x^{(27n^2-3n)/2} / x^3_n!
///   = (ax; x)_inf * sum_{n>=0} a^n x^{n^2} [ax^3]_{n-1} / (x_n! (ax)_{2n-1}).
/// The n = 0 summand on the right is 1, from [ax^3]_{-1}/(ax)_{-1} = (1-a)/(1-a).
inline LetterSides gen27_sides(long k, int order) {
  QSeries lhs = QSeries::one(order);
  for (long n = 1;; ++n) {
    const long e = 4 * k * n + (27 * n * n - 3 * n) / 2;
    if (e > order) break;
    QSeries t = QSeries::monomial(Rational(n % 2 == 1 ? -1 : 1), e, order);
    multiply_poch(t, 1, k + 3, 3, n - 1);
    t.mul_one_minus(1, k + 6 * n);
    divide_poch(t, 1, 3, 3, n);
    lhs += t;
  }
  QSeries sum = QSeries::one(order);
  for (long n = 1;; ++n) {
    const long e = k * n + n * n;
    if (e > order) break;
    QSeries t = QSeries::monomial(Rational(1), e, order);
    multiply_poch(t, 1, k + 3, 3, n - 1);
    divide_poch(t, 1, 1, 1, n);
    divide_poch(t, 1, k + 1, 1, 2 * n - 1);
    sum += t;
  }
  QSeries prod = QSeries::one(order);
  multiply_poch(prod, 1, k + 1, 1, kInfinite);
  return {lhs, prod * sum};
}

inline LetterSides dyson_sides(DysonIdentity which, int order) {
  switch (which) {
    case DysonIdentity::mod18: return mod18_sides(order);
    case DysonIdentity::mod9: return mod9_sides(order);
    case DysonIdentity::gen27_a1: return gen27_sides(0, order);
    case DysonIdentity::gen27_ax3: return gen27_sides(3, order);
  }
  throw std::invalid_argument("dyson_sides: unknown identity");
}

inline QIdentityReport dyson_letter_check(DysonIdentity which, int order) {
  if (order < 20) throw std::invalid_argument("dyson_letter_check: order must be at least 20");
  auto sides = dyson_sides(which, order);
  return verify_q_identity(sides.lhs, sides.rhs);
}

}  // namespace hyperverify

#endif  // HYPERVERIFY_BAILEYPAIR_HPP
