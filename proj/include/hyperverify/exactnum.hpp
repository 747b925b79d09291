#ifndef HYPERVERIFY_EXACTNUM_HPP
#define HYPERVERIFY_EXACTNUM_HPP

// Exact integers and rationals plus the combinatorial primitives that the
// rest of the library builds on.

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hyperverify {

using Integer = mpz_class;
/// Always kept canonical (lowest terms, positive denominator).
using Rational = mpq_class;

inline Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline Rational make_rational(long num, long den = 1) {
  return make_rational(Integer(num), Integer(den));
}

/// Parses "p", "p/q", or a plain decimal such as "0.15".
inline Rational parse_rational(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty rational literal");
  auto dot = text.find('.');
  if (dot == std::string::npos) {
    Rational r;
    if (r.set_str(text, 10) != 0) {
      throw std::invalid_argument("bad rational literal: " + text);
    }
    if (r.get_den() == 0) throw std::domain_error("zero denominator: " + text);
    r.canonicalize();
    return r;
  }
  std::string digits = text.substr(0, dot) + text.substr(dot + 1);
  if (digits.empty() || digits == "-" || digits == "+") {
    throw std::invalid_argument("bad decimal literal: " + text);
  }
  Integer num;
  if (num.set_str(digits, 10) != 0) {
    throw std::invalid_argument("bad decimal literal: " + text);
  }
  Integer den;
  mpz_ui_pow_ui(den.get_mpz_t(), 10, text.size() - dot - 1);
  return make_rational(num, den);
}

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

inline Integer ipow(const Integer& base, unsigned long exp) {
  Integer out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exp);
  return out;
}

inline Rational rpow(const Rational& base, long exp) {
  if (exp < 0) {
    if (base == 0) throw std::domain_error("zero to a negative power");
    return rpow(Rational(1) / base, -exp);
  }
  Rational out(ipow(base.get_num(), static_cast<unsigned long>(exp)),
               ipow(base.get_den(), static_cast<unsigned long>(exp)));
  out.canonicalize();
  return out;
}

inline Integer factorial(unsigned long n) {
  Integer out;
  mpz_fac_ui(out.get_mpz_t(), n);
  return out;
}

/// C(n, k); zero outside 0 <= k <= n.
inline Integer binomial(long n, long k) {
  if (n < 0) throw std::invalid_argument("binomial: n must be nonnegative");
  if (k < 0 || k > n) return 0;
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n),
               static_cast<unsigned long>(k));
  return out;
}

/// Rising factorial a(a+1)...(a+n-1).
inline Rational pochhammer(const Rational& a, long n) {
  if (n < 0) throw std::invalid_argument("pochhammer: n must be nonnegative");
  Rational out(1);
  Rational x = a;
  for (long j = 0; j < n; ++j) {
    out *= x;
    x += 1;
  }
  return out;
}

/// d_n = lcm(1, ..., n).
inline Integer lcm_upto(long n) {
  if (n < 1) throw std::invalid_argument("lcm_upto: n must be positive");
  Integer out(1);
  for (long j = 2; j <= n; ++j) {
    mpz_lcm_ui(out.get_mpz_t(), out.get_mpz_t(), static_cast<unsigned long>(j));
  }
  return out;
}

/// sigma_k(n) = sum of d^k over the divisors d of n.
inline Integer divisor_sigma(unsigned long k, long n) {
  if (n < 1) throw std::invalid_argument("divisor_sigma: n must be positive");
  Integer out(0);
  for (long d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    out += ipow(Integer(d), k);
    long other = n / d;
    if (other != d) out += ipow(Integer(other), k);
  }
  return out;
}

/// Generalized harmonic number H_k^(j) = sum_{m=1..k} m^(-j); H_0 = 0.
/// Values are memoized process-wide; the cache is append-only and guarded.
inline Rational harmonic(long k, long j) {
  if (k < 0 || j < 1) throw std::invalid_argument("harmonic: bad index");
  static std::mutex mutex;
  static std::map<long, std::vector<Rational>> cache;  // j -> H_0..H_k
  std::lock_guard<std::mutex> lock(mutex);
  auto& row = cache[j];
  if (row.empty()) row.emplace_back(0);
  while (static_cast<long>(row.size()) <= k) {
    long m = static_cast<long>(row.size());
    row.push_back(row.back() + Rational(1, ipow(Integer(m), static_cast<unsigned long>(j))));
  }
  return row[static_cast<std::size_t>(k)];
}

/// Bernoulli numbers B_0..B_n (B_1 = -1/2), memoized.
inline std::vector<Rational> bernoulli_numbers(std::size_t n) {
  static std::mutex mutex;
  static std::vector<Rational> cache{Rational(1)};
  std::lock_guard<std::mutex> lock(mutex);
  while (cache.size() <= n) {
    // sum_{k=0}^{m} C(m+1, k) B_k = 0
    std::size_t m = cache.size();
    Rational acc(0);
    for (std::size_t k = 0; k < m; ++k) {
      if (k > 1 && k % 2 == 1) continue;
      acc += Rational(binomial(static_cast<long>(m + 1), static_cast<long>(k))) * cache[k];
    }
    Rational b = -acc / Rational(static_cast<long>(m + 1));
    b.canonicalize();
    cache.push_back(b);
  }
  return {cache.begin(), cache.begin() + static_cast<std::ptrdiff_t>(n + 1)};
}

/// Exact integer square root if x is a perfect square.
inline bool perfect_square(const Integer& x, Integer& root) {
  if (x < 0) return false;
  if (mpz_perfect_square_p(x.get_mpz_t()) == 0) return false;
  mpz_sqrt(root.get_mpz_t(), x.get_mpz_t());
  return true;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

}  // namespace hyperverify

#endif  // HYPERVERIFY_EXACTNUM_HPP
