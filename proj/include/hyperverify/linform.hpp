#ifndef HYPERVERIFY_LINFORM_HPP
#define HYPERVERIFY_LINFORM_HPP

// Rational functions with poles at nonpositive integers, their exact partial
// fraction decompositions, and summation over t = 1, 2, 3, ... into linear
// forms c_0 + sum_j c_j zeta(j) with rational coefficients.

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hyperverify/exactnum.hpp"
#include "hyperverify/precreal.hpp"

namespace hyperverify {

/// scalar * prod (t - root)^mult / prod (t + k)^m_k.
struct RationalFunctionFactored {
  Rational scalar{1};
  std::map<Rational, int> numerator_roots;
  std::map<long, int> poles;

  long numerator_degree() const {
    long d = 0;
    for (const auto& [root, mult] : numerator_roots) d += mult;
    return d;
  }
  long denominator_degree() const {
    long d = 0;
    for (const auto& [k, mult] : poles) d += mult;
    return d;
  }
};

/// Normalizes a factored rational function: drops zero multiplicities,
/// cancels numerator roots that sit on poles, and checks that the result is
/// proper with poles at nonpositive integers.
inline RationalFunctionFactored make_rational_function(Rational scalar, std::map<Rational, int> roots,
                                                       std::map<long, int> poles) {
  for (auto it = poles.begin(); it != poles.end();) {
    if (it->first < 0) throw std::invalid_argument("pole must sit at a nonpositive integer");
    if (it->second < 0) throw std::invalid_argument("negative pole multiplicity");
    it = it->second == 0 ? poles.erase(it) : std::next(it);
  }
  for (auto it = roots.begin(); it != roots.end();) {
    if (it->second < 0) throw std::invalid_argument("negative root multiplicity");
    const Rational& root = it->first;
    if (is_integer(root) && root <= 0) {
      long k = -root.get_num().get_si();
      auto pole = poles.find(k);
      if (pole != poles.end()) {
        int common = std::min(pole->second, it->second);
        pole->second -= common;
        it->second -= common;
        if (pole->second == 0) poles.erase(pole);
      }
    }
    it = it->second == 0 ? roots.erase(it) : std::next(it);
  }
  RationalFunctionFactored rf{std::move(scalar), std::move(roots), std::move(poles)};
  if (rf.scalar != 0 && rf.numerator_degree() >= rf.denominator_degree()) {
    throw std::invalid_argument("rational function is not proper");
  }
  return rf;
}

inline RationalFunctionFactored square(const RationalFunctionFactored& rf) {
  RationalFunctionFactored out = rf;
  out.scalar *= rf.scalar;
  for (auto& [root, mult] : out.numerator_roots) mult *= 2;
  for (auto& [k, mult] : out.poles) mult *= 2;
  return out;
}

inline Rational evaluate(const RationalFunctionFactored& rf, const Rational& t) {
  Rational num = rf.scalar;
  for (const auto& [root, mult] : rf.numerator_roots) num *= rpow(t - root, mult);
  Rational den(1);
  for (const auto& [k, mult] : rf.poles) den *= rpow(t + Rational(k), mult);
  if (den == 0) throw std::domain_error("rational function evaluated at a pole");
  return num / den;
}

/// sum A_{k,j} / (t + k)^j, keyed by (k, j).
struct PartialFraction {
  std::map<std::pair<long, int>, Rational> terms;

  Rational coefficient(long k, int j) const {
    auto it = terms.find({k, j});
    return it == terms.end() ? Rational(0) : it->second;
  }
  friend bool operator==(const PartialFraction&, const PartialFraction&) = default;
};

/// Exact decomposition. The coefficients at the pole -k come from the Taylor
/// expansion of g(h) = (t + k)^{m_k} R(t) at t = -k + h, computed as
/// C exp(sum_f e_f log(1 + h / a_f)) over the linear factors (a_f + h)^{e_f}.
inline PartialFraction partial_fractions(const RationalFunctionFactored& rf) {
  if (rf.scalar != 0 && rf.numerator_degree() >= rf.denominator_degree()) {
    throw std::invalid_argument("partial_fractions: improper rational function");
  }
  PartialFraction pf;
  if (rf.scalar == 0) return pf;
  for (const auto& [k, m] : rf.poles) {
    // Factors as (a, e): (a + h)^e.
    std::vector<std::pair<Rational, int>> factors;
    for (const auto& [root, mult] : rf.numerator_roots) {
      factors.emplace_back(Rational(-k) - root, mult);
    }
    for (const auto& [other, mult] : rf.poles) {
      if (other != k) factors.emplace_back(Rational(other - k), -mult);
    }
    Rational leading = rf.scalar;
    std::vector<Rational> power_sums(static_cast<std::size_t>(m), Rational(0));
    for (const auto& [a, e] : factors) {
      if (a == 0) throw std::logic_error("partial_fractions: uncancelled root on a pole");
      leading *= rpow(a, e);
      Rational inv = Rational(1) / a;
      Rational pw = inv;
      for (int i = 1; i < m; ++i) {
        power_sums[static_cast<std::size_t>(i)] += Rational(e) * pw;
        pw *= inv;
      }
    }
    // log g = log C + sum_i l_i h^i with l_i = (-1)^{i+1}/i * sum_f e_f a_f^{-i}
    std::vector<Rational> log_coeff(static_cast<std::size_t>(m), Rational(0));
    for (int i = 1; i < m; ++i) {
      Rational li = power_sums[static_cast<std::size_t>(i)] / Rational(i);
      log_coeff[static_cast<std::size_t>(i)] = (i % 2 == 1) ? li : Rational(-li);
    }
    // exp of a series without constant term: n E_n = sum_{j=1}^n j l_j E_{n-j}
    std::vector<Rational> taylor(static_cast<std::size_t>(m), Rational(0));
    taylor[0] = 1;
    for (int n = 1; n < m; ++n) {
      Rational acc(0);
      for (int j = 1; j <= n; ++j) {
        acc += Rational(j) * log_coeff[static_cast<std::size_t>(j)] * taylor[static_cast<std::size_t>(n - j)];
      }
      taylor[static_cast<std::size_t>(n)] = acc / Rational(n);
    }
    for (int i = 0; i < m; ++i) {
      Rational coeff = leading * taylor[static_cast<std::size_t>(i)];
      if (coeff != 0) pf.terms[{k, m - i}] = coeff;
    }
  }
  return pf;
}

/// Termwise d/dt: A/(t+k)^j -> -j A/(t+k)^(j+1).
inline PartialFraction pf_derivative(const PartialFraction& pf) {
  PartialFraction out;
  for (const auto& [key, coeff] : pf.terms) {
    out.terms[{key.first, key.second + 1}] = -Rational(key.second) * coeff;
  }
  return out;
}

inline Rational evaluate(const PartialFraction& pf, const Rational& t) {
  Rational sum(0);
  for (const auto& [key, coeff] : pf.terms) {
    Rational base = t + Rational(key.first);
    if (base == 0) throw std::domain_error("partial fraction evaluated at a pole");
    sum += coeff / rpow(base, key.second);
  }
  return sum;
}

/// c_0 + sum_{j>=2} c_j zeta(j). Zero coefficients are never stored.
class LinearForm {
 public:
  LinearForm() = default;
  explicit LinearForm(Rational constant) : constant_(std::move(constant)) {}

  const Rational& constant() const { return constant_; }
  Rational zeta_coeff(int j) const {
    auto it = zeta_.find(j);
    return it == zeta_.end() ? Rational(0) : it->second;
  }
  const std::map<int, Rational>& zeta_coeffs() const { return zeta_; }

  void add_constant(const Rational& c) { constant_ += c; }
  void add_zeta(int j, const Rational& c) {
    if (j < 2) throw std::invalid_argument("zeta index must be >= 2");
    Rational v = zeta_coeff(j) + c;
    if (v == 0) zeta_.erase(j); else zeta_[j] = v;
  }

  LinearForm scaled(const Rational& c) const {
    LinearForm out(constant_ * c);
    for (const auto& [j, v] : zeta_) out.add_zeta(j, v * c);
    return out;
  }

  /// Every coefficient, constant first.
  std::vector<Rational> all_coefficients() const {
    std::vector<Rational> out{constant_};
    for (const auto& [j, v] : zeta_) out.push_back(v);
    return out;
  }

  PrecReal evaluate(Precision p) const {
    const Precision w = p + 32;
    PrecReal sum(constant_, w);
    for (const auto& [j, v] : zeta_) sum += zeta(j, w) * v;
    return PrecReal(sum, p);
  }

  std::string to_string() const {
    std::string out;
    for (auto it = zeta_.rbegin(); it != zeta_.rend(); ++it) {
      if (!out.empty()) out += " + ";
      out += "(" + it->second.get_str() + ")*zeta(" + std::to_string(it->first) + ")";
    }
    if (!out.empty()) out += " + ";
    return out + "(" + constant_.get_str() + ")";
  }

  friend bool operator==(const LinearForm&, const LinearForm&) = default;

 private:
  Rational constant_{0};
  std::map<int, Rational> zeta_;
};

class DivergenceError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// sum_{nu >= 1} of the partial fraction:
///   zeta coefficient j >= 2: sum_k A_{k,j};
///   constant: -sum_{k,j} A_{k,j} H_k^(j).
/// The j = 1 part converges only when sum_k A_{k,1} = 0.
inline LinearForm sum_over_positive_integers(const PartialFraction& pf) {
  Rational simple(0);
  for (const auto& [key, coeff] : pf.terms) {
    if (key.second == 1) simple += coeff;
  }
  if (simple != 0) throw DivergenceError("sum over positive integers diverges (simple-pole residues do not cancel)");
  LinearForm out;
  for (const auto& [key, coeff] : pf.terms) {
    const auto [k, j] = key;
    if (j >= 2) out.add_zeta(j, coeff);
    if (k > 0) out.add_constant(-coeff * harmonic(k, j));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Polynomials, used to check a decomposition by clearing denominators.

using Polynomial = std::vector<Rational>;  // ascending powers of t

inline Polynomial poly_mul(const Polynomial& a, const Polynomial& b) {
  if (a.empty() || b.empty()) return {};
  Polynomial out(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

inline Polynomial poly_linear_power(const Rational& shift, int power) {  // (t + shift)^power
  Polynomial out{Rational(1)};
  for (int i = 0; i < power; ++i) out = poly_mul(out, {shift, Rational(1)});
  return out;
}

inline void poly_trim(Polynomial& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline Polynomial numerator_polynomial(const RationalFunctionFactored& rf) {
  Polynomial out{rf.scalar};
  for (const auto& [root, mult] : rf.numerator_roots) out = poly_mul(out, poly_linear_power(-root, mult));
  poly_trim(out);
  return out;
}

/// sum_{k,j} A_{k,j} * D(t) / (t+k)^j where D = prod (t+k)^{m_k} over `poles`.
inline Polynomial recombine(const PartialFraction& pf, const std::map<long, int>& poles) {
  Polynomial total;
  for (const auto& [key, coeff] : pf.terms) {
    const auto [k, j] = key;
    auto pole = poles.find(k);
    if (pole == poles.end() || pole->second < j) throw std::invalid_argument("recombine: term outside the pole set");
    Polynomial piece{coeff};
    for (const auto& [other, mult] : poles) {
      int power = (other == k) ? mult - j : mult;
      piece = poly_mul(piece, poly_linear_power(Rational(other), power));
    }
    if (total.size() < piece.size()) total.resize(piece.size(), Rational(0));
    for (std::size_t i = 0; i < piece.size(); ++i) total[i] += piece[i];
  }
  poly_trim(total);
  return total;
}

// ---------------------------------------------------------------------------
// The approximating forms

/// R(t) = (t-1)...(t-n) / (t(t+1)...(t+n)).
inline RationalFunctionFactored apery_kernel(long n) {
  if (n < 0) throw std::invalid_argument("apery_kernel: n must be nonnegative");
  std::map<Rational, int> roots;
  std::map<long, int> poles;
  for (long j = 1; j <= n; ++j) roots[Rational(j)] = 1;
  for (long j = 0; j <= n; ++j) poles[j] = 1;
  return make_rational_function(Rational(1), std::move(roots), std::move(poles));
}

/// n!^(s+1-2r) (t + n/2) prod_{j=1}^{rn} (t-j)(t+n+j) / prod_{j=0}^{n} (t+j)^(s+1).
inline RationalFunctionFactored rivoal_rational(long n, long s, long r) {
  if (n < 0) throw std::invalid_argument("rivoal_rational: n must be nonnegative");
  if (s < 3 || s % 2 == 0) throw std::invalid_argument("rivoal_rational: s must be odd and >= 3");
  if (r < 1 || 2 * r >= s) throw std::invalid_argument("rivoal_rational: need 1 <= r < s/2");
  std::map<Rational, int> roots;
  roots[make_rational(-n, 2)] += 1;
  for (long j = 1; j <= r * n; ++j) {
    roots[Rational(j)] += 1;
    roots[Rational(-n - j)] += 1;
  }
  std::map<long, int> poles;
  for (long j = 0; j <= n; ++j) poles[j] = static_cast<int>(s + 1);
  Rational scalar(ipow(factorial(static_cast<unsigned long>(n)), static_cast<unsigned long>(s + 1 - 2 * r)));
  return make_rational_function(std::move(scalar), std::move(roots), std::move(poles));
}

/// -1/2 sum_{nu>=1} d/dt R(t)^2 |_{t=nu} = u_n zeta(3) - v_n.
inline LinearForm linear_form_gn(long n) {
  if (n < 1) throw std::invalid_argument("linear_form_gn: n must be >= 1");
  PartialFraction pf = pf_derivative(partial_fractions(square(apery_kernel(n))));
  return sum_over_positive_integers(pf).scaled(make_rational(-1, 2));
}

inline LinearForm linear_form_rivoal(long n, long s, long r) {
  return sum_over_positive_integers(partial_fractions(rivoal_rational(n, s, r)));
}

/// The (s, r) = (3, 1) member of the family.
inline LinearForm linear_form_ball(long n) { return linear_form_rivoal(n, 3, 1); }

}  // namespace hyperverify

#endif  // HYPERVERIFY_LINFORM_HPP
