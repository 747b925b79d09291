#ifndef HYPERVERIFY_QSERIES_HPP
#define HYPERVERIFY_QSERIES_HPP

// Truncated formal power series in q over the rationals, together with the
// q-product and Lambert-series builders used by the identity checks.
//
// A QSeries of order N is known modulo q^(N+1): it stores the dense
// coefficients of q^0..q^N. Binary operations truncate to the smaller order.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hyperverify/exactnum.hpp"

namespace hyperverify {

class QSeries {
 public:
  explicit QSeries(int order) : coeffs_(checked_order(order) + 1, Rational(0)) {}
  QSeries(int order, std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
    coeffs_.resize(static_cast<std::size_t>(checked_order(order)) + 1, Rational(0));
  }

  static QSeries one(int order) { return monomial(Rational(1), 0, order); }
  /// c q^e (zero when e exceeds the order).
  static QSeries monomial(const Rational& c, long e, int order) {
    if (e < 0) throw std::invalid_argument("QSeries::monomial: negative exponent");
    QSeries s(order);
    if (e <= order) s.coeffs_[static_cast<std::size_t>(e)] = c;
    return s;
  }

  int order() const { return static_cast<int>(coeffs_.size()) - 1; }
  const Rational& operator[](int i) const { return coeffs_.at(static_cast<std::size_t>(i)); }
  Rational& operator[](int i) { return coeffs_.at(static_cast<std::size_t>(i)); }
  std::span<const Rational> coefficients() const { return coeffs_; }

  /// Index of the lowest nonzero coefficient; order()+1 for the zero series.
  int valuation() const {
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      if (coeffs_[i] != 0) return static_cast<int>(i);
    }
    return order() + 1;
  }
  bool is_zero() const { return valuation() > order(); }

  QSeries truncated(int order) const {
    if (order > this->order()) throw std::invalid_argument("cannot raise the order of a series");
    return QSeries(order, {coeffs_.begin(), coeffs_.begin() + order + 1});
  }

  QSeries& operator+=(const QSeries& rhs) {
    shrink_to(rhs.order());
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
    return *this;
  }
  QSeries& operator-=(const QSeries& rhs) {
    shrink_to(rhs.order());
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
    return *this;
  }
  QSeries& operator*=(const Rational& c) {
    for (auto& x : coeffs_) x *= c;
    return *this;
  }
  QSeries& operator*=(const QSeries& rhs) {
    *this = *this * rhs;
    return *this;
  }

  friend QSeries operator+(QSeries a, const QSeries& b) { return a += b; }
  friend QSeries operator-(QSeries a, const QSeries& b) { return a -= b; }
  friend QSeries operator-(QSeries a) {
    for (auto& x : a.coeffs_) x = -x;
    return a;
  }
  friend QSeries operator*(QSeries a, const Rational& c) { return a *= c; }
  friend QSeries operator*(const Rational& c, QSeries a) { return a *= c; }
  friend QSeries operator*(const QSeries& a, const QSeries& b) {
    const int n = std::min(a.order(), b.order());
    QSeries out(n);
    Rational tmp;
    for (int i = 0; i <= n; ++i) {
      const Rational& ai = a.coeffs_[static_cast<std::size_t>(i)];
      if (ai == 0) continue;
      for (int j = 0; i + j <= n; ++j) {
        const Rational& bj = b.coeffs_[static_cast<std::size_t>(j)];
        if (bj == 0) continue;
        mpq_mul(tmp.get_mpq_t(), ai.get_mpq_t(), bj.get_mpq_t());
        out.coeffs_[static_cast<std::size_t>(i + j)] += tmp;
      }
    }
    return out;
  }

  /// Multiplicative inverse; requires a nonzero constant term.
  QSeries inverse() const {
    if (coeffs_[0] == 0) throw std::domain_error("QSeries: inverse of a series with zero constant term");
    const int n = order();
    QSeries out(n);
    const Rational inv0 = Rational(1) / coeffs_[0];
    out.coeffs_[0] = inv0;
    for (int m = 1; m <= n; ++m) {
      Rational acc(0);
      for (int k = 1; k <= m; ++k) {
        const Rational& ak = coeffs_[static_cast<std::size_t>(k)];
        if (ak != 0) acc += ak * out.coeffs_[static_cast<std::size_t>(m - k)];
      }
      out.coeffs_[static_cast<std::size_t>(m)] = -acc * inv0;
    }
    return out;
  }

  /// q -> q^k, truncated to the same order.
  QSeries substitute_power(int k) const {
    if (k < 1) throw std::invalid_argument("substitute_power: k must be >= 1");
    QSeries out(order());
    for (int i = 0; static_cast<long>(i) * k <= order(); ++i) {
      out.coeffs_[static_cast<std::size_t>(i * k)] = coeffs_[static_cast<std::size_t>(i)];
    }
    return out;
  }

  /// Multiplication by c q^m.
  QSeries shifted(long m, const Rational& c = Rational(1)) const {
    if (m < 0) throw std::invalid_argument("shifted: negative shift");
    QSeries out(order());
    for (long i = order(); i >= m; --i) {
      out.coeffs_[static_cast<std::size_t>(i)] = coeffs_[static_cast<std::size_t>(i - m)] * c;
    }
    return out;
  }

  /// In-place multiplication by (1 - sign q^e), O(N).
  QSeries& mul_one_minus(int sign, long e) {
    if (e < 0) throw std::invalid_argument("mul_one_minus: negative exponent");
    if (e == 0) return *this *= Rational(1 - sign);
    for (long i = order(); i >= e; --i) {
      auto& c = coeffs_[static_cast<std::size_t>(i)];
      const auto& lower = coeffs_[static_cast<std::size_t>(i - e)];
      if (sign > 0) c -= lower; else c += lower;
    }
    return *this;
  }

  /// In-place division by (1 - sign q^e), O(N). For e = 0 only the factor
  /// 1 + 1 = 2 is invertible.
  QSeries& div_one_minus(int sign, long e) {
    if (e < 0 || (e == 0 && sign > 0)) throw std::domain_error("div_one_minus: factor is not invertible");
    if (e == 0) return *this *= Rational(1, 2);
    for (long i = e; i <= order(); ++i) {
      auto& c = coeffs_[static_cast<std::size_t>(i)];
      const auto& lower = coeffs_[static_cast<std::size_t>(i - e)];
      if (sign > 0) c += lower; else c -= lower;
    }
    return *this;
  }

  friend bool operator==(const QSeries& a, const QSeries& b) {
    const int n = std::min(a.order(), b.order());
    for (int i = 0; i <= n; ++i) {
      if (a.coeffs_[static_cast<std::size_t>(i)] != b.coeffs_[static_cast<std::size_t>(i)]) return false;
    }
    return true;
  }

  std::string to_string(int max_terms = 12) const {
    std::string out;
    int shown = 0;
    for (int i = 0; i <= order() && shown < max_terms; ++i) {
      const Rational& c = coeffs_[static_cast<std::size_t>(i)];
      if (c == 0) continue;
      if (!out.empty()) out += c < 0 ? " - " : " + ";
      else if (c < 0) out += "-";
      Rational mag = abs(c);
      if (i == 0 || mag != 1) out += mag.get_str();
      if (i > 0) out += (i == 1) ? "q" : "q^" + std::to_string(i);
      ++shown;
    }
    if (out.empty()) out = "0";
    return out + " + O(q^" + std::to_string(order() + 1) + ")";
  }

 private:
  static int checked_order(int order) {
    if (order < 0) throw std::invalid_argument("QSeries: negative order");
    return order;
  }
  void shrink_to(int order) {
    if (order < this->order()) coeffs_.resize(static_cast<std::size_t>(order) + 1);
  }

  std::vector<Rational> coeffs_;
};

// ---------------------------------------------------------------------------
// Ring operations by name

enum class QsOp { add, sub, mul, invert, substitute_power };

inline QSeries qs_arith(QsOp op, const QSeries& a, const QSeries& b) {
  switch (op) {
    case QsOp::add: return a + b;
    case QsOp::sub: return a - b;
    case QsOp::mul: return a * b;
    case QsOp::invert: return a.inverse();
    case QsOp::substitute_power: break;
  }
  throw std::invalid_argument("qs_arith: substitute_power takes an integer operand");
}

inline QSeries qs_arith(QsOp op, const QSeries& a, int k) {
  if (op == QsOp::substitute_power) return a.substitute_power(k);
  if (op == QsOp::invert) return a.inverse();
  throw std::invalid_argument("qs_arith: operation needs a series operand");
}

// ---------------------------------------------------------------------------
// Products

inline constexpr long kInfinite = std::numeric_limits<long>::max();

/// prod_{j=0}^{n-1} (1 - sign q^(m + c j)), truncated at order N. For
/// n == kInfinite the product stops once the exponent exceeds N.
inline QSeries qpoch(int sign, long m, long c, long n, int order) {
  if (m < 0 || c < 1 || n < 0) throw std::invalid_argument("qpoch: bad parameters");
  QSeries out = QSeries::one(order);
  for (long j = 0; j < n; ++j) {
    long e = m + c * j;
    if (e > order) break;
    out.mul_one_minus(sign, e);
  }
  return out;
}

/// (1-q^k)(1-q^{2k})...(1-q^{nk}); the letters' x^k_n!.
inline QSeries q_factorial(long k, long n, int order) { return qpoch(1, k, k, n, order); }

/// (a; q^step)_n for the monomial a = sign q^e: prod_{j<n} (1 - sign q^(e + step j)).
/// step 1 is the ordinary q-shifted factorial, step 3 the letters' {a}_n and [a]_n.
inline QSeries monomial_poch(int sign, long e, long step, long n, int order) {
  return qpoch(sign, e, step, n, order);
}

/// Divides `s` by prod_{j<n}(1 - sign q^(e + step j)); every factor must be invertible.
inline QSeries& divide_poch(QSeries& s, int sign, long e, long step, long n) {
  for (long j = 0; j < n; ++j) {
    long ex = e + step * j;
    if (ex > s.order()) break;
    s.div_one_minus(sign, ex);
  }
  return s;
}

inline QSeries& multiply_poch(QSeries& s, int sign, long e, long step, long n) {
  for (long j = 0; j < n; ++j) {
    long ex = e + step * j;
    if (ex > s.order()) break;
    s.mul_one_minus(sign, ex);
  }
  return s;
}

struct EtaFactor {
  long residue;   // b
  long modulus;   // c
  long exponent;  // e
};

/// prod over factors of prod_{n>=1} (1 - q^(c n - (c - b)))^e.
inline QSeries eta_quotient(std::span<const EtaFactor> factors, int order) {
  QSeries out = QSeries::one(order);
  for (const auto& f : factors) {
    if (f.modulus < 1 || f.residue < 1 || f.residue > f.modulus) {
      throw std::invalid_argument("eta_quotient: need 1 <= residue <= modulus");
    }
    for (long ex = f.residue; ex <= order; ex += f.modulus) {
      if (f.exponent > 0) {
        for (long k = 0; k < f.exponent; ++k) out.mul_one_minus(1, ex);
      } else {
        for (long k = 0; k < -f.exponent; ++k) out.div_one_minus(1, ex);
      }
    }
  }
  return out;
}

inline QSeries eta_quotient(std::initializer_list<EtaFactor> factors, int order) {
  return eta_quotient(std::span<const EtaFactor>(factors.begin(), factors.size()), order);
}

// ---------------------------------------------------------------------------
// Lambert series and the divisor-sum identities

/// sum_{n=1}^{N} n^k q^n / (1 - q^n), the truncated q-zeta value zeta_q(k+1).
inline QSeries lambert_sigma(unsigned long k, int order) {
  if (order < 1) throw std::invalid_argument("lambert_sigma: order must be >= 1");
  QSeries out(order);
  for (long n = 1; n <= order; ++n) {
    QSeries term = QSeries::monomial(Rational(ipow(Integer(n), k)), n, order);
    term.div_one_minus(1, n);
    out += term;
  }
  return out;
}

enum class BellVariant { bell, bell2, bell3 };

/// Left-hand sides of the three divisor-sum identities whose common right
/// side is sum n^2 q^n / (1 - q^n):
///   bell:  sum_n q^n/(1-q^n)^2 * sum_{l<=n} 1/(1-q^l)
///   bell2: (1-q) sum_n (1-q^{2n+1}) q^n / ((1-q^n)^2 (1-q^{n+1})^2)
///                 * sum_{j<=n} (1+q^j)/(1-q^j)
///   bell3: (1+q) sum_n (1+q^{2n+1}) q^n / ((1-q^n)^2 (1+q^{n+1})^2)
///                 * sum_{j<=n} (1+q^{2j})/(1-q^{2j})
/// The n-th term starts at q^n, so the outer sum stops at n = N.
inline QSeries bell_lhs(BellVariant variant, int order) {
  if (order < 1) throw std::invalid_argument("bell_lhs: order must be >= 1");
  QSeries total(order);
  QSeries inner(order);
  for (long n = 1; n <= order; ++n) {
    QSeries piece = QSeries::one(order);
    switch (variant) {
      case BellVariant::bell:
        piece.div_one_minus(1, n);
        break;
      case BellVariant::bell2:
        piece.mul_one_minus(-1, n);
        piece.div_one_minus(1, n);
        break;
      case BellVariant::bell3:
        piece.mul_one_minus(-1, 2 * n);
        piece.div_one_minus(1, 2 * n);
        break;
    }
    inner += piece;

    QSeries term = inner.shifted(n);
    term.div_one_minus(1, n);
    term.div_one_minus(1, n);
    switch (variant) {
      case BellVariant::bell:
        break;
      case BellVariant::bell2:
        term.mul_one_minus(1, 2 * n + 1);
        term.div_one_minus(1, n + 1);
        term.div_one_minus(1, n + 1);
        break;
      case BellVariant::bell3:
        term.mul_one_minus(-1, 2 * n + 1);
        term.div_one_minus(-1, n + 1);
        term.div_one_minus(-1, n + 1);
        break;
    }
    total += term;
  }
  if (variant == BellVariant::bell2) total.mul_one_minus(1, 1);
  if (variant == BellVariant::bell3) total.mul_one_minus(-1, 1);
  return total;
}

/// Number of (a, b, c, d, e) with a, b, d, e > 0, c >= 0 and
/// ab + bc + cd + de = n, by exhaustive enumeration.
inline long liouville_count(long n) {
  if (n < 1) throw std::invalid_argument("liouville_count: n must be positive");
  // ab + bc + cd + de = b(a + c) + d(c + e)
  long count = 0;
  for (long b = 1; b <= n; ++b) {
    for (long d = 1; b + d <= n; ++d) {
      for (long c = 0; b * c + c * d <= n; ++c) {
        for (long a = 1; a * b + b * c + c * d + d <= n; ++a) {
          long rest = n - a * b - b * c - c * d;
          if (rest > 0 && rest % d == 0) ++count;
        }
      }
    }
  }
  return count;
}

/// zeta_q(s) = sum n^(s-1) q^n / (1 - q^n) for real 0 < q < 1, summed
/// until the terms drop below 1e-18 of the partial sum.
inline long double zeta_q_numeric(int s, long double q) {
  if (!(q > 0.0L && q < 1.0L)) throw std::domain_error("zeta_q_numeric: need 0 < q < 1");
  long double sum = 0.0L;
  long double qn = 1.0L;
  for (long n = 1; n < 100000000; ++n) {
    qn *= q;
    long double term = std::pow(static_cast<long double>(n), s - 1) * qn / (1.0L - qn);
    sum += term;
    if (term < 1e-18L * sum && n > 10) return sum;
  }
  throw std::runtime_error("zeta_q_numeric: no convergence");
}

// ---------------------------------------------------------------------------
// Comparison

struct QMismatch {
  int order;
  Rational lhs;
  Rational rhs;
};

struct QIdentityReport {
  int equal_to_order = -1;  // -1: disagree already at q^0
  int requested_order = 0;
  std::optional<QMismatch> first_mismatch;
  bool full_agreement() const { return !first_mismatch.has_value(); }
};

/// Compares coefficients up to the common order.
inline QIdentityReport verify_q_identity(const QSeries& lhs, const QSeries& rhs) {
  const int n = std::min(lhs.order(), rhs.order());
  QIdentityReport report;
  report.requested_order = n;
  for (int i = 0; i <= n; ++i) {
    if (lhs[i] != rhs[i]) {
      report.equal_to_order = i - 1;
      report.first_mismatch = QMismatch{i, lhs[i], rhs[i]};
      return report;
    }
  }
  report.equal_to_order = n;
  return report;
}

/// sum_n q^(n^2 + shift n) / (q;q)_n; shift 0 and 1 give the two
/// Rogers-Ramanujan sum sides.
inline QSeries rogers_ramanujan_sum(int shift, int order) {
  QSeries out(order);
  for (long n = 0; n * n + shift * n <= order; ++n) {
    QSeries term = QSeries::monomial(Rational(1), n * n + shift * n, order);
    divide_poch(term, 1, 1, 1, n);
    out += term;
  }
  return out;
}

/// prod 1/((1-q^{5n+1+s})(1-q^{5n+4-s})); s = 0 or 1.
inline QSeries rogers_ramanujan_product(int shift, int order) {
  return eta_quotient({{1 + shift, 5, -1}, {4 - shift, 5, -1}}, order);
}

}  // namespace hyperverify

#endif  // HYPERVERIFY_QSERIES_HPP
