#ifndef HYPERVERIFY_PRECREAL_HPP
#define HYPERVERIFY_PRECREAL_HPP

// High-precision reals tagged with their working precision.
//
// Contract: every operation on operands of precision p returns a value with
// relative error at most 2^(4-p); a binary operation runs at the smaller of
// the operand precisions. Basic arithmetic and the elementary functions
// delegate to MPFR (correctly rounded, so the contract holds with room to
// spare); pi and zeta(s) are computed here, at p + 32 guard bits, and then
// rounded to p.

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>

#include "hyperverify/exactnum.hpp"

namespace hyperverify {

using Precision = mpfr_prec_t;

inline constexpr Precision kDefaultPrecision = 128;

class PrecReal {
 public:
  explicit PrecReal(Precision bits = kDefaultPrecision) {
    mpfr_init2(value_, checked(bits));
    mpfr_set_zero(value_, 1);
  }
  PrecReal(long v, Precision bits) : PrecReal(bits) { mpfr_set_si(value_, v, MPFR_RNDN); }
  PrecReal(double v, Precision bits) : PrecReal(bits) { mpfr_set_d(value_, v, MPFR_RNDN); }
  PrecReal(const Rational& v, Precision bits) : PrecReal(bits) {
    mpfr_set_q(value_, v.get_mpq_t(), MPFR_RNDN);
  }
  PrecReal(const Integer& v, Precision bits) : PrecReal(bits) {
    mpfr_set_z(value_, v.get_mpz_t(), MPFR_RNDN);
  }
  PrecReal(const std::string& decimal, Precision bits) : PrecReal(bits) {
    if (mpfr_set_str(value_, decimal.c_str(), 10, MPFR_RNDN) != 0) {
      throw std::invalid_argument("bad real literal: " + decimal);
    }
  }
  /// Re-rounds an existing value to a new precision.
  PrecReal(const PrecReal& other, Precision bits) : PrecReal(bits) {
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }

  PrecReal(const PrecReal& other) : PrecReal(other.precision()) {
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  PrecReal(PrecReal&& other) noexcept : PrecReal(other.precision()) { mpfr_swap(value_, other.value_); }
  PrecReal& operator=(const PrecReal& other) {
    if (this != &other) {
      mpfr_set_prec(value_, other.precision());
      mpfr_set(value_, other.value_, MPFR_RNDN);
    }
    return *this;
  }
  PrecReal& operator=(PrecReal&& other) noexcept {
    mpfr_swap(value_, other.value_);
    return *this;
  }
  ~PrecReal() { mpfr_clear(value_); }

  Precision precision() const { return mpfr_get_prec(value_); }
  mpfr_srcptr get() const { return value_; }
  mpfr_ptr raw() { return value_; }

  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
  bool is_zero() const { return mpfr_zero_p(value_) != 0; }
  bool is_finite() const { return mpfr_number_p(value_) != 0; }
  int sign() const { return mpfr_sgn(value_); }
  /// Binary exponent e with 0.5 <= |x| / 2^e < 1; very negative for zero.
  long exponent2() const {
    if (is_zero()) return -(1L << 40);
    return mpfr_get_exp(value_);
  }

  /// Fixed-point rendering with the given number of decimals (truncated, not
  /// rounded, so printed digits are always digits of the value).
  std::string fixed(int decimals) const {
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*RZf", decimals, value_);
    std::string out(buf);
    mpfr_free_str(buf);
    return out;
  }
  std::string scientific(int digits) const {
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*RNe", std::max(digits - 1, 0), value_);
    std::string out(buf);
    mpfr_free_str(buf);
    return out;
  }

#define HYPERVERIFY_COMPOUND(op, fn)                                  \
  PrecReal& operator op(const PrecReal & rhs) {                       \
    if (rhs.precision() < precision()) mpfr_prec_round(value_, rhs.precision(), MPFR_RNDN); \
    fn(value_, value_, rhs.value_, MPFR_RNDN);                        \
    return *this;                                                     \
  }
  HYPERVERIFY_COMPOUND(+=, mpfr_add)
  HYPERVERIFY_COMPOUND(-=, mpfr_sub)
  HYPERVERIFY_COMPOUND(*=, mpfr_mul)
  HYPERVERIFY_COMPOUND(/=, mpfr_div)
#undef HYPERVERIFY_COMPOUND

  PrecReal& operator+=(const Rational& r) { mpfr_add_q(value_, value_, r.get_mpq_t(), MPFR_RNDN); return *this; }
  PrecReal& operator-=(const Rational& r) { mpfr_sub_q(value_, value_, r.get_mpq_t(), MPFR_RNDN); return *this; }
  PrecReal& operator*=(const Rational& r) { mpfr_mul_q(value_, value_, r.get_mpq_t(), MPFR_RNDN); return *this; }
  PrecReal& operator/=(const Rational& r) {
    if (r == 0) throw std::domain_error("division by zero");
    mpfr_div_q(value_, value_, r.get_mpq_t(), MPFR_RNDN);
    return *this;
  }
  PrecReal& operator+=(long v) { mpfr_add_si(value_, value_, v, MPFR_RNDN); return *this; }
  PrecReal& operator-=(long v) { mpfr_sub_si(value_, value_, v, MPFR_RNDN); return *this; }
  PrecReal& operator*=(long v) { mpfr_mul_si(value_, value_, v, MPFR_RNDN); return *this; }
  PrecReal& operator/=(long v) { mpfr_div_si(value_, value_, v, MPFR_RNDN); return *this; }

  PrecReal operator-() const {
    PrecReal out(*this);
    mpfr_neg(out.value_, out.value_, MPFR_RNDN);
    return out;
  }

 private:
  static Precision checked(Precision bits) {
    if (bits < MPFR_PREC_MIN || bits > (1L << 24)) {
      throw std::invalid_argument("precision out of range: " + std::to_string(bits));
    }
    return bits;
  }

  mpfr_t value_;
};

inline Precision min_precision(const PrecReal& a, const PrecReal& b) {
  return std::min(a.precision(), b.precision());
}

#define HYPERVERIFY_BINARY(op, fn)                                        \
  inline PrecReal operator op(const PrecReal& a, const PrecReal& b) {     \
    PrecReal out(min_precision(a, b));                                    \
    fn(out.raw(), a.get(), b.get(), MPFR_RNDN);                           \
    return out;                                                           \
  }
HYPERVERIFY_BINARY(+, mpfr_add)
HYPERVERIFY_BINARY(-, mpfr_sub)
HYPERVERIFY_BINARY(*, mpfr_mul)
HYPERVERIFY_BINARY(/, mpfr_div)
#undef HYPERVERIFY_BINARY

template <typename T>
  requires std::is_same_v<T, Rational> || std::is_integral_v<T>
inline PrecReal operator+(PrecReal a, const T& b) { a += static_cast<std::conditional_t<std::is_integral_v<T>, long, Rational>>(b); return a; }
template <typename T>
  requires std::is_same_v<T, Rational> || std::is_integral_v<T>
inline PrecReal operator-(PrecReal a, const T& b) { a -= static_cast<std::conditional_t<std::is_integral_v<T>, long, Rational>>(b); return a; }
template <typename T>
  requires std::is_same_v<T, Rational> || std::is_integral_v<T>
inline PrecReal operator*(PrecReal a, const T& b) { a *= static_cast<std::conditional_t<std::is_integral_v<T>, long, Rational>>(b); return a; }
template <typename T>
  requires std::is_same_v<T, Rational> || std::is_integral_v<T>
inline PrecReal operator/(PrecReal a, const T& b) { a /= static_cast<std::conditional_t<std::is_integral_v<T>, long, Rational>>(b); return a; }
template <typename T>
  requires std::is_same_v<T, Rational> || std::is_integral_v<T>
inline PrecReal operator+(const T& b, PrecReal a) { return std::move(a) + b; }
template <typename T>
  requires std::is_same_v<T, Rational> || std::is_integral_v<T>
inline PrecReal operator*(const T& b, PrecReal a) { return std::move(a) * b; }
template <typename T>
  requires std::is_same_v<T, Rational> || std::is_integral_v<T>
inline PrecReal operator-(const T& b, const PrecReal& a) { return -(a - b); }
template <typename T>
  requires std::is_same_v<T, Rational> || std::is_integral_v<T>
inline PrecReal operator/(const T& b, const PrecReal& a) {
  return PrecReal(Rational(b), a.precision()) / a;
}

inline int compare(const PrecReal& a, const PrecReal& b) { return mpfr_cmp(a.get(), b.get()); }
inline bool operator<(const PrecReal& a, const PrecReal& b) { return compare(a, b) < 0; }
inline bool operator>(const PrecReal& a, const PrecReal& b) { return compare(a, b) > 0; }
inline bool operator<=(const PrecReal& a, const PrecReal& b) { return compare(a, b) <= 0; }
inline bool operator>=(const PrecReal& a, const PrecReal& b) { return compare(a, b) >= 0; }
inline bool operator==(const PrecReal& a, const PrecReal& b) { return compare(a, b) == 0; }
inline bool operator<(const PrecReal& a, double b) { return mpfr_cmp_d(a.get(), b) < 0; }
inline bool operator>(const PrecReal& a, double b) { return mpfr_cmp_d(a.get(), b) > 0; }
inline bool operator<=(const PrecReal& a, double b) { return mpfr_cmp_d(a.get(), b) <= 0; }
inline bool operator>=(const PrecReal& a, double b) { return mpfr_cmp_d(a.get(), b) >= 0; }

#define HYPERVERIFY_UNARY(name, fn)                 \
  inline PrecReal name(const PrecReal& x) {         \
    PrecReal out(x.precision());                    \
    fn(out.raw(), x.get(), MPFR_RNDN);              \
    return out;                                     \
  }
HYPERVERIFY_UNARY(abs, mpfr_abs)
HYPERVERIFY_UNARY(exp, mpfr_exp)
HYPERVERIFY_UNARY(log, mpfr_log)
HYPERVERIFY_UNARY(sin, mpfr_sin)
HYPERVERIFY_UNARY(cos, mpfr_cos)
HYPERVERIFY_UNARY(sinh, mpfr_sinh)
HYPERVERIFY_UNARY(cosh, mpfr_cosh)
HYPERVERIFY_UNARY(tanh, mpfr_tanh)
HYPERVERIFY_UNARY(log1p, mpfr_log1p)
HYPERVERIFY_UNARY(expm1, mpfr_expm1)
#undef HYPERVERIFY_UNARY

inline PrecReal sqrt(const PrecReal& x) {
  if (x.sign() < 0) throw std::domain_error("sqrt of a negative number");
  PrecReal out(x.precision());
  mpfr_sqrt(out.raw(), x.get(), MPFR_RNDN);
  return out;
}

inline PrecReal pow(const PrecReal& x, const PrecReal& y) {
  PrecReal out(min_precision(x, y));
  mpfr_pow(out.raw(), x.get(), y.get(), MPFR_RNDN);
  return out;
}

inline PrecReal pow(const PrecReal& x, long n) {
  PrecReal out(x.precision());
  mpfr_pow_si(out.raw(), x.get(), n, MPFR_RNDN);
  return out;
}

/// x^e for rational e; integer exponents go through repeated squaring so that
/// negative bases stay legal.
inline PrecReal pow(const PrecReal& x, const Rational& e) {
  if (is_integer(e) && e.get_num().fits_slong_p()) return pow(x, e.get_num().get_si());
  if (x.sign() < 0) throw std::domain_error("negative base with a fractional exponent");
  return pow(x, PrecReal(e, x.precision()));
}

inline PrecReal ldexp(const PrecReal& x, long e) {
  PrecReal out(x.precision());
  mpfr_mul_2si(out.raw(), x.get(), e, MPFR_RNDN);
  return out;
}

inline PrecReal max(const PrecReal& a, const PrecReal& b) { return a < b ? b : a; }
inline PrecReal min(const PrecReal& a, const PrecReal& b) { return a < b ? a : b; }

/// 2^e at precision p.
inline PrecReal pow2(long e, Precision p) { return ldexp(PrecReal(1L, p), e); }

/// |a - b| <= 2^e.
inline bool within_pow2(const PrecReal& a, const PrecReal& b, long e) {
  PrecReal diff = abs(a - b);
  return diff <= pow2(e, diff.precision());
}

inline std::string to_string(const PrecReal& x, int digits = 20) { return x.scientific(digits); }

// ---------------------------------------------------------------------------
// Constants

/// Arithmetic-geometric mean of two positive reals.
inline PrecReal agm(PrecReal a, PrecReal b) {
  if (a.sign() < 0 || b.sign() < 0) throw std::domain_error("agm of a negative argument");
  if (a.is_zero() || b.is_zero()) return PrecReal(min_precision(a, b));
  const Precision p = min_precision(a, b);
  const PrecReal tol = pow2(-static_cast<long>(p) + 2, p);
  for (int iter = 0; iter < 200; ++iter) {
    PrecReal mean = ldexp(a + b, -1);
    PrecReal geo = sqrt(a * b);
    a = std::move(mean);
    b = std::move(geo);
    if (abs(a - b) <= tol * a) break;
  }
  return ldexp(a + b, -1);
}

/// pi by the Gauss-Legendre (Brent-Salamin) AGM iteration.
inline PrecReal pi(Precision p) {
  const Precision w = p + 32;
  PrecReal a(1L, w);
  PrecReal b = sqrt(PrecReal(make_rational(1, 2), w));
  PrecReal t(make_rational(1, 4), w);
  PrecReal scale(1L, w);
  const PrecReal tol = pow2(-static_cast<long>(w) + 4, w);
  for (int iter = 0; iter < 64; ++iter) {
    PrecReal next = ldexp(a + b, -1);
    PrecReal diff = a - next;
    t -= scale * diff * diff;
    scale *= 2L;
    b = sqrt(a * b);
    a = std::move(next);
    if (abs(a - b) <= tol) break;
  }
  PrecReal sum = a + b;
  return PrecReal(sum * sum / ldexp(t, 2), p);
}

/// Riemann zeta at an integer s >= 2 by Euler-Maclaurin summation:
///   zeta(s) = sum_{n<N} n^-s + N^(1-s)/(s-1) + N^-s/2
///             + sum_k B_2k/(2k)! (s)_(2k-1) N^(-s-2k+1) + R,
/// with |R| bounded by the first omitted correction term.
inline PrecReal zeta(long s, Precision p) {
  if (s < 2) throw std::invalid_argument("zeta: s must be an integer >= 2");
  const Precision w = p + 32;
  const long n_cut = std::max<long>(10, static_cast<long>(w) / 6 + 10);
  PrecReal sum(w);
  for (long n = n_cut - 1; n >= 1; --n) {  // smallest terms first
    PrecReal term(n, w);
    sum += 1L / pow(term, s);
  }
  const PrecReal big_n(n_cut, w);
  const PrecReal n_pow = pow(big_n, -s);  // N^-s
  sum += big_n * n_pow / (s - 1);
  sum += ldexp(n_pow, -1);

  const PrecReal tol = abs(sum) * pow2(-static_cast<long>(w), w);
  const PrecReal inv_n2 = 1L / (big_n * big_n);
  // term_k = B_2k / (2k)! * s(s+1)...(s+2k-2) * N^(-s-2k+1)
  PrecReal power = n_pow * big_n;  // N^(1-s); multiplied by N^-2 each step
  Rational rising(1);              // (s)_(2k-1)
  std::size_t kmax = 16;
  std::vector<Rational> bern = bernoulli_numbers(2 * kmax);
  for (std::size_t k = 1;; ++k) {
    if (2 * k > bern.size() - 1) {
      kmax *= 2;
      bern = bernoulli_numbers(2 * kmax);
    }
    if (k == 1) {
      rising = Rational(s);
    } else {
      rising *= Rational((s + 2 * static_cast<long>(k) - 3) * (s + 2 * static_cast<long>(k) - 2));
    }
    power *= inv_n2;
    Rational coeff = bern[2 * k] * rising / Rational(factorial(2 * k));
    PrecReal term = power * coeff;
    sum += term;
    if (abs(term) <= tol) break;
    if (k > 4 * static_cast<std::size_t>(n_cut)) {
      throw std::runtime_error("zeta: Euler-Maclaurin corrections failed to decay");
    }
  }
  return PrecReal(sum, p);
}

inline PrecReal sqrt(const Rational& r, Precision p) {
  if (r <= 0) throw std::domain_error("sqrt: argument must be positive");
  return PrecReal(sqrt(PrecReal(r, p + 16)), p);
}

inline PrecReal log(const Rational& r, Precision p) {
  if (r <= 0) throw std::domain_error("log: argument must be positive");
  return PrecReal(log(PrecReal(r, p + 16)), p);
}

/// 1 + (4 log(sqrt2 + 1) + 3) / (4 log(sqrt2 + 1) - 3).
inline PrecReal mu0(Precision p) {
  const Precision w = p + 32;
  PrecReal l = ldexp(log(sqrt(PrecReal(2L, w)) + 1L), 2);
  return PrecReal(1L + (l + 3L) / (l - 3L), p);
}

/// (sqrt2 - 1)^4, the geometric rate of the Apery residuals.
inline PrecReal apery_rate_limit(Precision p) {
  const Precision w = p + 16;
  return PrecReal(pow(sqrt(PrecReal(2L, w)) - 1L, 4L), p);
}

namespace detail {

inline std::string strip(const std::string& s) {
  auto b = s.find_first_not_of(" \t");
  auto e = s.find_last_not_of(" \t");
  return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

// Splits "name(arg)" into name and arg; arg empty when no parentheses.
inline std::pair<std::string, std::string> split_call(const std::string& text) {
  auto open = text.find('(');
  if (open == std::string::npos) return {strip(text), {}};
  if (text.back() != ')') throw std::invalid_argument("malformed constant: " + text);
  return {strip(text.substr(0, open)), strip(text.substr(open + 1, text.size() - open - 2))};
}

}  // namespace detail

/// Named constants: pi, zeta(s), sqrt(r), log(r), mu0, plus the aliases
/// zeta3 and rate-limit used on the command line.
inline PrecReal const_real(const std::string& name, Precision p) {
  auto [head, arg] = detail::split_call(name);
  if (head == "pi" && arg.empty()) return pi(p);
  if (head == "mu0" && arg.empty()) return mu0(p);
  if (head == "zeta3" && arg.empty()) return zeta(3, p);
  if (head == "rate-limit" && arg.empty()) return apery_rate_limit(p);
  if (head == "zeta") {
    char* end = nullptr;
    long s = std::strtol(arg.c_str(), &end, 10);
    if (arg.empty() || *end != '\0' || s < 2) {
      throw std::invalid_argument("zeta needs an integer argument >= 2");
    }
    return zeta(s, p);
  }
  if (head == "sqrt" || head == "log") {
    if (arg.empty()) throw std::invalid_argument(head + " needs an argument");
    Rational r = parse_rational(arg);
    if (r <= 0) throw std::invalid_argument(head + " needs a positive argument");
    return head == "sqrt" ? sqrt(r, p) : log(r, p);
  }
  throw std::invalid_argument("unknown constant: " + name);
}

}  // namespace hyperverify

#endif  // HYPERVERIFY_PRECREAL_HPP
