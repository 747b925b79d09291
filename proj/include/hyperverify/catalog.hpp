#ifndef HYPERVERIFY_CATALOG_HPP
#define HYPERVERIFY_CATALOG_HPP

// Identity registry and verification driver. Records live in a JSON file;
// each id is bound to a runner here that reads its parameters from the
// record, merged with caller overrides.

#include <fnmatch.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"

#include "hyperverify/apery.hpp"
#include "hyperverify/appell.hpp"
#include "hyperverify/baileypair.hpp"
#include "hyperverify/exactnum.hpp"
#include "hyperverify/hypergeom.hpp"
#include "hyperverify/linform.hpp"
#include "hyperverify/precreal.hpp"
#include "hyperverify/qseries.hpp"

namespace hyperverify {

using Json = nlohmann::ordered_json;

enum class Strategy { exact_finite, qseries_order, numeric_tol, linform_exact };
enum class Status { pass, fail, partial };

inline std::string to_string(Strategy s) {
  switch (s) {
    case Strategy::exact_finite: return "EXACT_FINITE";
    case Strategy::qseries_order: return "QSERIES_ORDER";
    case Strategy::numeric_tol: return "NUMERIC_TOL";
    case Strategy::linform_exact: return "LINFORM_EXACT";
  }
  return "?";
}

inline std::string to_string(Status s) {
  switch (s) {
    case Status::pass: return "PASS";
    case Status::fail: return "FAIL";
    case Status::partial: return "PARTIAL";
  }
  return "?";
}

class CatalogError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnknownIdentity : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class InvalidOverride : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline Strategy strategy_from_string(const std::string& s) {
  for (auto st : {Strategy::exact_finite, Strategy::qseries_order, Strategy::numeric_tol, Strategy::linform_exact}) {
    if (to_string(st) == s) return st;
  }
  throw CatalogError("unknown strategy: " + s);
}

struct IdentityRecord {
  std::string id;
  std::string title;
  std::string paper_anchor;
  Strategy strategy = Strategy::exact_finite;
  Json params = Json::object();
  Json default_budget = Json::object();
};

struct VerificationReport {
  std::string id;
  Status status = Status::fail;
  std::optional<long> checked_order;
  std::optional<double> tolerance;  // bound the check was held to
  std::optional<double> achieved;   // worst observed error
  std::optional<std::string> first_mismatch;
  double elapsed_ms = 0.0;
  std::string details;

  bool ok(bool allow_partial) const {
    return status == Status::pass || (allow_partial && status == Status::partial);
  }
};

inline Json to_json(const IdentityRecord& r) {
  Json j;
  j["id"] = r.id;
  j["title"] = r.title;
  j["paper_anchor"] = r.paper_anchor;
  j["strategy"] = to_string(r.strategy);
  j["params"] = r.params;
  j["default_budget"] = r.default_budget;
  return j;
}

inline IdentityRecord record_from_json(const Json& j) {
  if (!j.is_object()) throw CatalogError("catalog entry is not an object");
  IdentityRecord r;
  try {
    r.id = j.at("id").get<std::string>();
    r.title = j.at("title").get<std::string>();
    r.paper_anchor = j.at("paper_anchor").get<std::string>();
    r.strategy = strategy_from_string(j.at("strategy").get<std::string>());
    r.params = j.value("params", Json::object());
    r.default_budget = j.value("default_budget", Json::object());
  } catch (const Json::exception& e) {
    throw CatalogError("malformed catalog entry: " + std::string(e.what()));
  }
  if (!r.params.is_object() || !r.default_budget.is_object()) {
    throw CatalogError("entry " + r.id + ": params and default_budget must be objects");
  }
  return r;
}

template <typename T>
Json optional_json(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

inline Json to_json(const VerificationReport& r, bool include_timing = true) {
  Json j;
  j["id"] = r.id;
  j["status"] = to_string(r.status);
  j["checked_order"] = optional_json(r.checked_order);
  j["tolerance"] = optional_json(r.tolerance);
  j["achieved"] = optional_json(r.achieved);
  j["first_mismatch"] = optional_json(r.first_mismatch);
  j["elapsed_ms"] = include_timing ? Json(r.elapsed_ms) : Json(nullptr);
  j["details"] = r.details;
  return j;
}

inline Json to_json(const std::vector<VerificationReport>& reports, bool include_timing = true) {
  Json arr = Json::array();
  for (const auto& r : reports) arr.push_back(to_json(r, include_timing));
  return arr;
}

// ---------------------------------------------------------------------------
// Runner context

class RunContext {
 public:
  RunContext(const IdentityRecord& record, Json settings) : record_(record), settings_(std::move(settings)) {}

  const IdentityRecord& record() const { return record_; }
  const Json& settings() const { return settings_; }
  bool has(const std::string& key) const { return settings_.contains(key); }
  const Json& at(const std::string& key) const {
    if (!settings_.contains(key)) throw CatalogError(record_.id + ": missing parameter '" + key + "'");
    return settings_.at(key);
  }
  long integer(const std::string& key) const { return at(key).get<long>(); }
  double real(const std::string& key) const { return at(key).get<double>(); }
  std::string text(const std::string& key) const { return at(key).get<std::string>(); }
  Rational rational(const std::string& key) const { return parse_json_rational(at(key)); }

  int order() const { return static_cast<int>(integer("order")); }
  Precision prec() const { return static_cast<Precision>(integer("prec")); }
  double tol() const { return real("tol"); }
  std::uint64_t seed() const { return at("seed").get<std::uint64_t>(); }

  static Rational parse_json_rational(const Json& v) {
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return Rational(v.get<long>());
    throw CatalogError("expected a rational (string or integer)");
  }

 private:
  const IdentityRecord& record_;
  Json settings_;
};

using Runner = std::function<VerificationReport(const RunContext&)>;

namespace detail {

inline std::string fmt(double v, int digits = 6) {
  std::ostringstream os;
  os.precision(digits);
  os << v;
  return os.str();
}

inline VerificationReport q_report(const QIdentityReport& r, std::string details) {
  VerificationReport rep;
  rep.status = r.full_agreement() ? Status::pass : Status::fail;
  rep.checked_order = r.equal_to_order;
  if (r.first_mismatch) {
    rep.first_mismatch = "q^" + std::to_string(r.first_mismatch->order) + ": lhs " + r.first_mismatch->lhs.get_str() +
                         ", rhs " + r.first_mismatch->rhs.get_str();
  }
  rep.details = std::move(details);
  return rep;
}

/// Collects the worst case of many numeric checks.
struct NumericTally {
  explicit NumericTally(double tol) : tolerance(tol) {}

  double tolerance = 0.0;
  double worst = 0.0;
  long count = 0;
  long failed = 0;
  std::string first_failure;

  void add(bool passed, double difference, const std::string& label) {
    ++count;
    worst = std::max(worst, difference);
    if (!passed) {
      if (failed == 0) first_failure = label + ": difference " + fmt(difference, 3);
      ++failed;
    }
  }
  void add(const NumericCheck& c, const std::string& label) {
    add(c.passed, c.difference.to_double(), label);
  }
  VerificationReport report(std::string details) const {
    VerificationReport rep;
    rep.status = failed == 0 && count > 0 ? Status::pass : Status::fail;
    rep.tolerance = tolerance;
    rep.achieved = worst;
    if (failed > 0) rep.first_mismatch = first_failure;
    rep.details = std::to_string(count - failed) + "/" + std::to_string(count) + " passed; " + details;
    return rep;
  }
};

inline Rational random_rational(std::mt19937_64& rng, const Rational& lo, const Rational& hi, long max_den) {
  const long den = std::uniform_int_distribution<long>(1, max_den)(rng);
  Rational l = lo * den, h = hi * den;
  const long a = static_cast<long>(std::ceil(l.get_d()));
  const long b = static_cast<long>(std::floor(h.get_d()));
  Rational r(std::uniform_int_distribution<long>(a, b)(rng), den);
  r.canonicalize();
  return r;
}

inline bool nonpositive_integer(const Rational& r) { return is_integer(r) && r <= 0; }

inline QMonomial parse_monomial(const std::string& text) {
  if (text == "inf") return QMonomial::infinity();
  std::string s = text;
  int sign = 1;
  if (!s.empty() && s[0] == '-') {
    sign = -1;
    s = s.substr(1);
  }
  if (s == "1") return QMonomial::power(0, sign);
  if (s == "q") return QMonomial::power(1, sign);
  if (s.rfind("q^", 0) == 0) {
    char* end = nullptr;
    long e = std::strtol(s.c_str() + 2, &end, 10);
    if (*end == '\0' && s.size() > 2) return QMonomial::power(e, sign);
  }
  throw CatalogError("malformed q-monomial: " + text);
}

// ---- Apery --------------------------------------------------------------

/// v_n = sum_k C(n,k)^2 C(n+k,k)^2 (H_n^(3) + sum_{m<=k} (-1)^{m-1} / (2 m^3 C(n,m) C(n+m,m))).
inline Rational v_binomial(long n) {
  Rational total(0), inner(0);
  const Rational h3 = harmonic(n, 3);
  for (long k = 0; k <= n; ++k) {
    if (k > 0) {
      Rational t(1, 2 * ipow(Integer(k), 3) * binomial(n, k) * binomial(n + k, k));
      t.canonicalize();
      inner += k % 2 == 1 ? t : Rational(-t);
    }
    Integer c = binomial(n, k) * binomial(n + k, k);
    total += Rational(c * c) * (h3 + inner);
  }
  total.canonicalize();
  return total;
}

inline VerificationReport run_apery_recursion(const RunContext& ctx) {
  const long nmax = ctx.integer("n_max");
  auto seq = apery_sequences(nmax);
  VerificationReport rep;
  const bool init = seq[0].u == 1 && seq[1].u == 5 && seq[0].v == 0 && seq[1].v == 6;
  long good = -1;
  for (long n = 0; n <= nmax; ++n) {
    const auto& p = seq[static_cast<std::size_t>(n)];
    if (p.u != u_binomial(n) || p.v != v_binomial(n)) {
      rep.first_mismatch = "n=" + std::to_string(n);
      break;
    }
    good = n;
  }
  rep.checked_order = good;
  rep.status = init && good == nmax ? Status::pass : Status::fail;
  if (!init) rep.first_mismatch = "initial values";
  rep.details = "recursion vs binomial sums for u_n and v_n, n <= " + std::to_string(nmax) +
                "; u_100 has " + std::to_string(mpz_sizeinbase(seq[std::min<long>(100, nmax)].u.get_mpz_t(), 10)) +
                " digits";
  return rep;
}

inline VerificationReport run_apery_integrality(const RunContext& ctx) {
  const long nmax = ctx.integer("n_max");
  VerificationReport rep;
  long good = 0;
  for (const auto& row : integrality_report(nmax)) {
    if (!row.u_integer || !row.scaled_v_integer) {
      rep.first_mismatch = "n=" + std::to_string(row.n);
      break;
    }
    good = row.n;
  }
  rep.checked_order = good;
  rep.status = good == nmax ? Status::pass : Status::fail;
  rep.details = "u_n and 2 d_n^3 v_n integral for 1 <= n <= " + std::to_string(nmax);
  return rep;
}

inline VerificationReport run_apery_rate(const RunContext& ctx) {
  const long n = ctx.integer("nmax");
  const Precision prec = ctx.prec();
  const double rel_tol = ctx.real("rel_tol");
  const std::string estimator = ctx.text("estimator");
  if (estimator != "root" && estimator != "corrected") throw InvalidOverride("estimator must be root or corrected");
  PrecReal r = residual(n, prec);
  PrecReal root = exp(log(r) / n);
  // residual ~ C L^n n^{-3/2}; removing the power of n leaves L C^{1/n}
  PrecReal corrected = exp((log(r) + log(PrecReal(n, prec)) * Rational(3, 2)) / n);
  PrecReal limit = apery_rate_limit(prec);
  const double raw_dev = (root / limit).to_double() - 1.0;
  const double cor_dev = (corrected / limit).to_double() - 1.0;
  const double dev = estimator == "root" ? raw_dev : cor_dev;
  VerificationReport rep;
  rep.status = std::fabs(dev) <= rel_tol ? Status::pass : Status::fail;
  rep.tolerance = rel_tol;
  rep.achieved = std::fabs(dev);
  rep.checked_order = n;
  rep.details = "estimator=" + estimator + "; residual^(1/n)=" + to_string(root, 10) + " (" + fmt(raw_dev * 100, 4) +
                "%); (residual n^1.5)^(1/n)=" + to_string(corrected, 10) + " (" + fmt(cor_dev * 100, 4) +
                "%); limit=" + to_string(limit, 10);
  return rep;
}

inline VerificationReport run_const_mu0(const RunContext& ctx) {
  PrecReal v = mu0(ctx.prec());
  const std::string expected = ctx.text("printed");
  const auto dot = expected.find('.');
  const int decimals = dot == std::string::npos ? 0 : static_cast<int>(expected.size() - dot - 1);
  // the printed value is a truncation, so compare floor(v 10^d)
  Integer scaled;
  {
    PrecReal s = v * Rational(ipow(Integer(10), static_cast<unsigned long>(decimals)));
    mpfr_get_z(scaled.get_mpz_t(), s.get(), MPFR_RNDD);
  }
  std::string digits = expected;
  digits.erase(std::remove(digits.begin(), digits.end(), '.'), digits.end());
  VerificationReport rep;
  rep.status = scaled == Integer(digits) ? Status::pass : Status::fail;
  rep.tolerance = std::pow(10.0, -decimals);
  rep.details = "mu0 = " + to_string(v, 20) + "; printed " + expected;
  return rep;
}

inline VerificationReport run_apery_cube(const RunContext& ctx) {
  auto res = cube_max_check(ctx.prec());
  PrecReal target = PrecReal(17L, ctx.prec()) - sqrt(PrecReal(2L, ctx.prec())) * 12;
  const double diff = abs(res.value - target).to_double();
  VerificationReport rep;
  rep.status = diff <= ctx.tol() ? Status::pass : Status::fail;
  rep.tolerance = ctx.tol();
  rep.achieved = diff;
  rep.details = "max " + to_string(res.value, 16) + " at (" + to_string(res.argmax[0], 8) + ", " +
                to_string(res.argmax[1], 8) + ", " + to_string(res.argmax[2], 8) + "); 17-12sqrt2 = " +
                to_string(target, 16);
  return rep;
}

inline VerificationReport run_beukers_integral(const RunContext& ctx) {
  const long nmax = ctx.integer("n_max");
  const double tol = ctx.tol();
  NumericTally tally{tol};
  std::string values;
  for (long n = 0; n <= nmax; ++n) {
    auto q = beukers_integral_numeric(n, std::max(1e-12, tol * 1e-2));
    const double exact = residual(n, 64).to_double();
    const double diff = std::fabs(q.value - exact);
    tally.add(diff <= tol, diff, "n=" + std::to_string(n));
    values += (n ? ", " : "") + std::string("I_") + std::to_string(n) + "=" + fmt(q.value, 12);
  }
  return tally.report(values + " against u_n zeta(3) - v_n");
}

inline VerificationReport run_euler_zeta21(const RunContext& ctx) {
  const long terms = ctx.integer("terms");
  const double tol = ctx.tol();
  long double h = 0.0L, sum = 0.0L;
  for (long n = 2; n <= terms; ++n) {
    h += 1.0L / static_cast<long double>(n - 1);
    sum += h / (static_cast<long double>(n) * static_cast<long double>(n));
  }
  // sum_{n>N} H_{n-1}/n^2 = (log N + gamma + 1)/N + O(log N / N^2)
  const long double big_n = static_cast<long double>(terms);
  const long double gamma = 0.57721566490153286060651209L;
  const long double tail = (std::log(big_n) + gamma + 1.0L) / big_n;
  const double value = static_cast<double>(sum + tail);
  const double z3 = zeta(3, 64).to_double();
  const double diff = std::fabs(value - z3);
  VerificationReport rep;
  rep.status = diff <= tol ? Status::pass : Status::fail;
  rep.tolerance = tol;
  rep.achieved = diff;
  rep.details = "sum H_{n-1}/n^2 to N=" + std::to_string(terms) + " plus tail = " + fmt(value, 15) +
                "; zeta(3) = " + fmt(z3, 15);
  return rep;
}

// ---- Linear forms ---------------------------------------------------------

inline VerificationReport run_gn_ball(const RunContext& ctx) {
  const long nmax = ctx.integer("n_max");
  VerificationReport rep;
  long good = 0;
  for (long n = 1; n <= nmax; ++n) {
    LinearForm gn = linear_form_gn(n);
    LinearForm ball = linear_form_ball(n);
    std::string problem;
    if (!(gn == ball)) problem = "GN != Ball";
    else if (gn.zeta_coeff(2) != 0) problem = "zeta(2) coefficient of GN";
    else if (ball.zeta_coeff(2) != 0 || ball.zeta_coeff(4) != 0) problem = "even zeta coefficient of Ball";
    if (!problem.empty()) {
      rep.first_mismatch = "n=" + std::to_string(n) + ": " + problem;
      break;
    }
    good = n;
  }
  rep.checked_order = good;
  rep.status = good == nmax ? Status::pass : Status::fail;
  rep.details = "exact linear forms for 1 <= n <= " + std::to_string(nmax) + "; n=1: " + linear_form_gn(1).to_string();
  return rep;
}

inline VerificationReport run_ball_hypergeometric(const RunContext& ctx) {
  const long n0 = ctx.integer("n_min"), n1 = ctx.integer("n_max");
  const Precision prec = ctx.prec();
  NumericTally tally{std::ldexp(1.0, 10 - static_cast<int>(prec))};
  for (long n = n0; n <= n1; ++n) {
    const Rational a(n + 1), b(2 * n + 2);
    std::vector<Rational> upper{Rational(3 * n + 2), Rational(3 * n + 4, 2), a, a, a, a, a};
    std::vector<Rational> lower{Rational(3 * n + 2, 2), b, b, b, b, b};
    PfqResult f = pfq_numeric(upper, lower, PrecReal(1L, prec + 16), prec + 16);
    Integer n7 = ipow(factorial(static_cast<unsigned long>(n)), 7);
    // the leading 7F6 term is the nu = n+1 summand, (3n+2)! n!^7 / (2 (2n+1)!^5)
    Rational pre(factorial(static_cast<unsigned long>(3 * n + 2)) * n7,
                 2 * ipow(factorial(static_cast<unsigned long>(2 * n + 1)), 5));
    pre.canonicalize();
    PrecReal rhs = f.value * pre;
    PrecReal lhs = linear_form_ball(n).evaluate(prec + 16);
    const double rel = (abs(lhs - rhs) / abs(lhs)).to_double();
    tally.add(rel <= tally.tolerance, rel, "n=" + std::to_string(n));
  }
  return tally.report("relative error of the Ball form against (3n+2)! n!^7 / (2 (2n+1)!^5) times a very-well-poised 7F6 at z=1");
}

inline VerificationReport run_rivoal(const RunContext& ctx) {
  const long s = ctx.integer("s"), r = ctx.integer("r"), nmax = ctx.integer("n_max");
  VerificationReport rep;
  long good = 0;
  std::string sample;
  for (long n = 1; n <= nmax; ++n) {
    LinearForm f = linear_form_rivoal(n, s, r);
    if (n == 1) sample = f.to_string();
    std::string problem;
    for (const auto& [j, c] : f.zeta_coeffs()) {
      if (j % 2 == 0) problem = "zeta(" + std::to_string(j) + ") coefficient " + c.get_str();
    }
    const Integer d = lcm_upto(n);
    const Rational scale(2 * ipow(d, static_cast<unsigned long>(s + 1)));
    for (const auto& c : f.all_coefficients()) {
      if (!is_integer(scale * c)) problem = "2 d_n^" + std::to_string(s + 1) + " c not integral for c = " + c.get_str();
    }
    if (!problem.empty()) {
      rep.first_mismatch = "n=" + std::to_string(n) + ": " + problem;
      break;
    }
    good = n;
  }
  rep.checked_order = good;
  rep.status = good == nmax ? Status::pass : Status::fail;
  rep.details = "s=" + std::to_string(s) + ", r=" + std::to_string(r) + "; n=1: " + sample;
  return rep;
}

// ---- Hypergeometric -------------------------------------------------------

inline VerificationReport run_whipple(const RunContext& ctx) {
  std::mt19937_64 rng(ctx.seed());
  const long sets = ctx.integer("sets"), nmax = ctx.integer("n_max");
  VerificationReport rep;
  long passed = 0, skipped = 0;
  while (passed < sets) {
    auto draw = [&] { return random_rational(rng, Rational(-7, 2), Rational(7, 2), 6); };
    Rational f = draw(), h = draw(), a = draw(), g = draw();
    long n = std::uniform_int_distribution<long>(0, nmax)(rng);
    std::pair<Rational, Rational> sides;
    try {
      sides = whipple_sides(f, h, a, g, n);
    } catch (const PoleError&) {
      ++skipped;
      continue;
    }
    if (sides.first != sides.second) {
      rep.first_mismatch = "f=" + f.get_str() + " h=" + h.get_str() + " a=" + a.get_str() + " g=" + g.get_str() +
                           " N=" + std::to_string(n) + ": " + sides.first.get_str() + " vs " + sides.second.get_str();
      break;
    }
    ++passed;
  }
  rep.status = passed == sets ? Status::pass : Status::fail;
  rep.checked_order = nmax;
  rep.details = std::to_string(passed) + " random parameter sets exact (" + std::to_string(skipped) +
                " draws hit a denominator pole and were redrawn)";
  return rep;
}

inline VerificationReport run_clausen(const RunContext& ctx) {
  const Precision prec = ctx.prec();
  NumericTally tally{std::ldexp(1.0, 10 - static_cast<int>(prec))};
  for (const auto& rv : ctx.at("r")) {
    for (const auto& xv : ctx.at("x")) {
      Rational r = RunContext::parse_json_rational(rv), x = RunContext::parse_json_rational(xv);
      tally.add(clausen_check(r, x, prec), "r=" + r.get_str() + " x=" + x.get_str());
    }
  }
  return tally.report("3F2(1/2,r,1-r;1,1|4x(1-x)) = 2F1(r,1-r;1|x)^2");
}

// ---- Appell circle --------------------------------------------------------

inline Rational draw_param(std::mt19937_64& rng) { return random_rational(rng, Rational(1, 10), Rational(5, 2), 6); }
inline Rational draw_arg(std::mt19937_64& rng, const Rational& bound) {
  return random_rational(rng, -bound, bound, 100);
}

inline VerificationReport run_f4_reduction(const RunContext& ctx) {
  std::mt19937_64 rng(ctx.seed());
  const Precision prec = ctx.prec();
  NumericTally tally{check_tolerance(prec).to_double()};
  for (long i = 0; i < ctx.integer("sets");) {
    Rational a = draw_param(rng), b = draw_param(rng), c = draw_param(rng);
    if (nonpositive_integer(a + b - c + 1)) continue;
    Rational x = draw_arg(rng, Rational(3, 25)), y = draw_arg(rng, Rational(3, 25));
    tally.add(f4_reduction_check(a, b, c, PrecReal(x, prec), PrecReal(y, prec), prec),
              "a=" + a.get_str() + " b=" + b.get_str() + " c=" + c.get_str() + " X=" + x.get_str() + " Y=" + y.get_str());
    ++i;
  }
  return tally.report("F4 at (X(1-Y), Y(1-X)) against the product of two 2F1");
}

inline VerificationReport run_f2_to_f4(const RunContext& ctx) {
  std::mt19937_64 rng(ctx.seed());
  const Precision prec = ctx.prec();
  NumericTally tally{check_tolerance(prec).to_double()};
  for (long i = 0; i < ctx.integer("sets"); ++i) {
    Rational a = draw_param(rng), b = draw_param(rng), c = draw_param(rng);
    Rational x = draw_arg(rng, Rational(1, 10)), y = draw_arg(rng, Rational(1, 10));
    tally.add(f2_to_f4_check(a, b, c, PrecReal(x, prec), PrecReal(y, prec), prec),
              "a=" + a.get_str() + " b=" + b.get_str() + " c=" + c.get_str() + " X=" + x.get_str() + " Y=" + y.get_str());
  }
  return tally.report("F2 with lower 2b against (1+Y)^{2a} F4");
}

inline VerificationReport run_beukers_f2(const RunContext& ctx) {
  std::mt19937_64 rng(ctx.seed());
  const Precision prec = ctx.prec();
  NumericTally tally{check_tolerance(prec).to_double()};
  for (long i = 0; i < ctx.integer("sets"); ++i) {
    Rational a = draw_param(rng), b = draw_param(rng);
    Rational u = draw_arg(rng, Rational(1, 10)), v = draw_arg(rng, Rational(1, 10));
    tally.add(beukers_f2_check(a, b, PrecReal(u, prec), PrecReal(v, prec), prec),
              "a=" + a.get_str() + " b=" + b.get_str() + " u=" + u.get_str() + " v=" + v.get_str());
  }
  return tally.report("F2 factorization into two 2F1");
}

inline VerificationReport run_brafman(const RunContext& ctx) {
  const Precision prec = ctx.prec();
  NumericTally tally{check_tolerance(prec).to_double()};
  const Rational r = ctx.rational("r"), x = ctx.rational("x"), z = ctx.rational("z");
  tally.add(brafman_check(r, PrecReal(x, prec), PrecReal(z, prec), prec),
            "r=" + r.get_str() + " x=" + x.get_str() + " z=" + z.get_str());
  return tally.report("Legendre generating function with (r)_n (1-r)_n / n!^2 weights");
}

inline VerificationReport run_rarefied(const RunContext& ctx, int order) {
  const Precision prec = ctx.prec();
  NumericTally tally{check_tolerance(prec).to_double()};
  for (const auto& pt : ctx.at("points")) {
    Rational x = RunContext::parse_json_rational(pt.at(0)), y = RunContext::parse_json_rational(pt.at(1));
    tally.add(rarefied_check(order, PrecReal(x, prec), PrecReal(y, prec), prec),
              "X=" + x.get_str() + " Y=" + y.get_str());
  }
  return tally.report("sum of P_{" + std::to_string(order) + "n} against a product of two 2F1");
}

inline VerificationReport run_tn_legendre(const RunContext& ctx) {
  const long nmax = ctx.integer("n_max");
  const Precision prec = ctx.prec();
  VerificationReport rep;
  long checks = 0, exact = 0;
  for (const auto& pair : ctx.at("pairs")) {
    const long b = pair.at(0).get<long>(), c = pair.at(1).get<long>();
    for (long n = 0; n <= nmax; ++n) {
      auto r = tn_legendre_check(b, c, n, prec);
      ++checks;
      exact += r.exact ? 1 : 0;
      if (!r.passed && !rep.first_mismatch) {
        rep.first_mismatch = "b=" + std::to_string(b) + " c=" + std::to_string(c) + " n=" + std::to_string(n);
      }
    }
  }
  rep.status = rep.first_mismatch ? Status::fail : Status::pass;
  rep.checked_order = nmax;
  rep.tolerance = std::ldexp(1.0, 10 - static_cast<int>(prec));
  rep.details = std::to_string(checks) + " values of T_n(b,c) = D^{n/2} P_n(b/sqrt D), " + std::to_string(exact) +
                " exact; T_2(34,1) = " + tn(34, 1, 2).get_str();
  return rep;
}

inline VerificationReport run_elliptic(const RunContext& ctx) {
  const double tol = ctx.tol();
  NumericTally tally{tol};
  auto main = bailey_I_check(ctx.real("k"), ctx.real("l"), tol);
  tally.add(main.passed, main.difference, "k=" + fmt(ctx.real("k")) + " l=" + fmt(ctx.real("l")));
  for (const auto& k : ctx.at("degenerate_k")) {
    auto d = bailey_I_check(k.get<double>(), 0.0, tol);
    tally.add(d.passed, d.difference, "k=" + fmt(k.get<double>()) + " l=0");
  }
  return tally.report("I(k,l) = " + fmt(main.quadrature, 12) + " by quadrature, " + fmt(main.closed_form, 12) +
                      " from 2/(1+l') K(k1) K(k2)");
}

inline VerificationReport run_pi_series(const RunContext& ctx, PiSeries id) {
  const Precision prec = ctx.prec();
  const long terms = ctx.integer("terms");
  PrecReal partial = pi_series(id, terms, prec), limit = pi_series_limit(id, prec);
  const double diff = abs(partial - limit).to_double();
  NumericTally tally{ctx.tol()};
  tally.add(diff <= ctx.tol(), diff, to_string(id));
  return tally.report(std::to_string(terms) + " terms = " + to_string(partial, 30) + "; limit " + to_string(limit, 30));
}

// ---- q-series -------------------------------------------------------------

inline QSeries sigma_series(unsigned long k, int order) {
  QSeries s(order);
  for (int n = 1; n <= order; ++n) s[n] = Rational(divisor_sigma(k, n));
  return s;
}

inline VerificationReport run_bell(const RunContext& ctx, BellVariant v) {
  const int order = ctx.order();
  return q_report(verify_q_identity(bell_lhs(v, order), sigma_series(2, order)),
                  "left side against sum sigma_2(n) q^n from divisor sums");
}

inline VerificationReport run_lambert(const RunContext& ctx) {
  const int order = ctx.order();
  QIdentityReport worst;
  worst.equal_to_order = order;
  worst.requested_order = order;
  std::string ks;
  for (const auto& kv : ctx.at("k")) {
    const auto k = kv.get<unsigned long>();
    auto r = verify_q_identity(lambert_sigma(k, order), sigma_series(k, order));
    if (!r.full_agreement() && r.equal_to_order < worst.equal_to_order) worst = r;
    ks += (ks.empty() ? "" : ",") + std::to_string(k);
  }
  return q_report(worst, "sum n^k q^n/(1-q^n) coefficients against sigma_k(n), k in {" + ks + "}");
}

inline VerificationReport run_liouville(const RunContext& ctx) {
  const long nmax = ctx.integer("n_max");
  VerificationReport rep;
  long good = 0;
  for (long n = 1; n <= nmax; ++n) {
    Integer expected = divisor_sigma(2, n) - Integer(n) * divisor_sigma(0, n);
    long got = liouville_count(n);
    if (Integer(got) != expected) {
      rep.first_mismatch = "n=" + std::to_string(n) + ": count " + std::to_string(got) + ", expected " + expected.get_str();
      break;
    }
    good = n;
  }
  rep.checked_order = good;
  rep.status = good == nmax ? Status::pass : Status::fail;
  rep.details = "solutions of ab+bc+cd+de=n counted by enumeration against sigma_2(n) - n sigma_0(n)";
  return rep;
}

inline VerificationReport run_zetaq(const RunContext& ctx) {
  NumericTally tally{ctx.real("rel_tol")};
  std::string notes;
  for (const auto& sv : ctx.at("s")) {
    const int s = sv.get<int>();
    const double target = static_cast<double>(factorial(static_cast<unsigned long>(s - 1)).get_si()) *
                          zeta(s, 64).to_double();
    double prev = INFINITY;
    bool monotone = true;
    double last = 0.0;
    for (const auto& tv : ctx.at("one_minus_q")) {
      const long double t = tv.get<double>();
      const long double v = std::pow(t, s) * zeta_q_numeric(s, 1.0L - t);
      last = std::fabs(static_cast<double>(v) / target - 1.0);
      if (last > prev) monotone = false;
      prev = last;
    }
    tally.add(monotone && last <= tally.tolerance, last, "s=" + std::to_string(s));
    notes += (notes.empty() ? "" : ", ") + std::string("s=") + std::to_string(s) + ": " + fmt(last, 3);
  }
  return tally.report("(1-q)^s zeta_q(s) -> (s-1)! zeta(s), relative error at the smallest 1-q: " + notes);
}

inline VerificationReport run_rr(const RunContext& ctx, RRIdentity which) {
  auto r = rr_check(which, ctx.order());
  VerificationReport rep;
  const QIdentityReport* parts[] = {&r.sum_vs_product, &r.pair_beta, &r.lemma, &r.lemma_vs_product};
  const char* names[] = {"sum vs product", "beta from alpha", "weak lemma", "lemma vs product"};
  for (int i = 0; i < 4; ++i) {
    if (!parts[i]->full_agreement()) {
      rep = q_report(*parts[i], names[i]);
      rep.first_mismatch = std::string(names[i]) + " at " + *rep.first_mismatch;
      return rep;
    }
  }
  rep = q_report(r.sum_vs_product, "sum = product; pair derivation through the lemma with cutoff M=" +
                                       std::to_string(r.cutoff));
  return rep;
}

inline VerificationReport run_dyson(const RunContext& ctx, std::vector<DysonIdentity> which) {
  const int order = ctx.order();
  const long min_order = ctx.integer("min_order");
  VerificationReport rep;
  rep.status = Status::pass;
  rep.checked_order = order;
  std::string notes;
  for (auto id : which) {
    auto r = dyson_letter_check(id, order);
    notes += (notes.empty() ? "" : "; ") + to_string(id) + " agrees to q^" + std::to_string(r.equal_to_order);
    if (r.equal_to_order < *rep.checked_order) {
      rep.checked_order = r.equal_to_order;
      auto sub = q_report(r, "");
      rep.first_mismatch = to_string(id) + " at " + *sub.first_mismatch;
    }
  }
  if (*rep.checked_order < order) rep.status = *rep.checked_order >= min_order ? Status::partial : Status::fail;
  rep.details = notes;
  return rep;
}

inline QSeries random_series(std::mt19937_64& rng, int order, int max_terms) {
  QSeries s(order);
  const int terms = std::uniform_int_distribution<int>(0, max_terms)(rng);
  for (int i = 0; i < terms; ++i) {
    const int e = std::uniform_int_distribution<int>(0, order)(rng);
    s[e] += Rational(std::uniform_int_distribution<long>(-9, 9)(rng), std::uniform_int_distribution<long>(1, 5)(rng));
  }
  for (int i = 0; i <= order; ++i) s[i].canonicalize();
  return s;
}

inline VerificationReport run_bilateral(const RunContext& ctx) {
  std::mt19937_64 rng(ctx.seed());
  const int order = ctx.order();
  const long systems = ctx.integer("systems"), max_cutoff = ctx.integer("max_cutoff");
  const QMonomial choices[] = {QMonomial::power(0), QMonomial::power(1), QMonomial::power(2), QMonomial::power(0, -1),
                               QMonomial::power(1, -1)};
  VerificationReport rep;
  long passed = 0;
  for (long i = 0; i < systems; ++i) {
    const QMonomial a = choices[std::uniform_int_distribution<int>(0, 4)(rng)];
    const long m = std::uniform_int_distribution<long>(0, max_cutoff)(rng);
    std::vector<QSeries> alpha, delta;
    for (long r = 0; r <= m; ++r) {
      alpha.push_back(random_series(rng, order, 4));
      delta.push_back(random_series(rng, order, 4));
    }
    auto r = bilateral_identity_check(make_standard_system(a, alpha, delta, order));
    if (!r.agreement.full_agreement()) {
      if (!rep.first_mismatch) {
        rep.first_mismatch = "system " + std::to_string(i) + " (a=" + a.to_string() + ", M=" + std::to_string(m) + ")";
      }
      continue;
    }
    ++passed;
  }
  rep.status = passed == systems ? Status::pass : Status::fail;
  rep.checked_order = order;
  rep.details = std::to_string(passed) + "/" + std::to_string(systems) + " random systems satisfy sum alpha gamma = sum beta delta";
  return rep;
}

inline VerificationReport run_qgauss(const RunContext& ctx) {
  const int order = ctx.order();
  const long nmax = ctx.integer("n_max");
  VerificationReport rep;
  rep.status = Status::pass;
  rep.checked_order = order;
  long cases = 0;
  for (const auto& c : ctx.at("cases")) {
    QMonomial a = parse_monomial(c.at(0)), r1 = parse_monomial(c.at(1)), r2 = parse_monomial(c.at(2));
    for (long n = 0; n <= nmax; ++n) {
      auto r = qgauss_gamma_check(r1, r2, a, n, order);
      ++cases;
      if (!r.agreement.full_agreement() && rep.status == Status::pass) {
        rep.status = Status::fail;
        rep.checked_order = r.agreement.equal_to_order;
        rep.first_mismatch = "a=" + a.to_string() + " rho=(" + r1.to_string() + ", " + r2.to_string() +
                             ") n=" + std::to_string(n);
      }
    }
  }
  rep.details = std::to_string(cases) + " (parameters, n) cases: gamma_n by direct summation equals the closed form";
  return rep;
}

inline VerificationReport run_weak_lemma(const RunContext& ctx) {
  const int order = ctx.order();
  const QMonomial inf = QMonomial::infinity();
  struct Case {
    RRIdentity which;
    QMonomial a, r1, r2;
    bool product;
  };
  const Case cases[] = {{RRIdentity::rr1, QMonomial::power(0), inf, inf, true},
                        {RRIdentity::rr2, QMonomial::power(1), inf, inf, true},
                        {RRIdentity::rr1, QMonomial::power(0), QMonomial::power(0, -1), inf, false}};
  for (const auto& c : cases) {
    const long m = lemma_cutoff(c.a, c.r1, c.r2, order);
    auto res = weak_lemma_check(rr_alpha(c.which, m + 1, order), c.a, c.r1, c.r2, order);
    std::string label = "a=" + c.a.to_string() + " rho=(" + c.r1.to_string() + ", " + c.r2.to_string() + ")";
    if (!res.agreement.full_agreement()) {
      auto rep = q_report(res.agreement, label);
      rep.first_mismatch = label + " at " + *rep.first_mismatch;
      return rep;
    }
    if (c.product) {
      auto pr = verify_q_identity(res.rhs, rogers_ramanujan_product(c.a.exponent == 0 ? 0 : 1, order));
      if (!pr.full_agreement()) {
        auto rep = q_report(pr, label);
        rep.first_mismatch = label + " product side at " + *rep.first_mismatch;
        return rep;
      }
    }
  }
  QIdentityReport ok;
  ok.equal_to_order = order;
  ok.requested_order = order;
  return q_report(ok, "Rogers-Ramanujan alpha through the weak lemma at a=1, a=q (rho -> inf) and a=1 (rho1=-1)");
}

}  // namespace detail

/// Runner for every catalog id.
inline const std::map<std::string, Runner>& runners() {
  using namespace detail;
  static const std::map<std::string, Runner> table = {
      {"apery.recursion", run_apery_recursion},
      {"apery.integrality", run_apery_integrality},
      {"apery.rate", run_apery_rate},
      {"apery.cube.max", run_apery_cube},
      {"beukers.integral", run_beukers_integral},
      {"const.mu0", run_const_mu0},
      {"euler.zeta21", run_euler_zeta21},
      {"gn.equals.ball", run_gn_ball},
      {"ball.hypergeometric", run_ball_hypergeometric},
      {"rivoal.odd.only", run_rivoal},
      {"whipple", run_whipple},
      {"clausen", run_clausen},
      {"f4.reduction", run_f4_reduction},
      {"f2.to.f4", run_f2_to_f4},
      {"beukers.f2", run_beukers_f2},
      {"brafman", run_brafman},
      {"rarefied.2", [](const RunContext& c) { return run_rarefied(c, 2); }},
      {"rarefied.3", [](const RunContext& c) { return run_rarefied(c, 3); }},
      {"tn.legendre", run_tn_legendre},
      {"elliptic.I", run_elliptic},
      {"pi.sun1", [](const RunContext& c) { return run_pi_series(c, PiSeries::sun1); }},
      {"pi.sun2", [](const RunContext& c) { return run_pi_series(c, PiSeries::sun2); }},
      {"pi.ramanujan", [](const RunContext& c) { return run_pi_series(c, PiSeries::ramanujan); }},
      {"bell.sigma2", [](const RunContext& c) { return run_bell(c, BellVariant::bell); }},
      {"bell.vwp", [](const RunContext& c) { return run_bell(c, BellVariant::bell2); }},
      {"bell.vwp.alt", [](const RunContext& c) { return run_bell(c, BellVariant::bell3); }},
      {"lambert.sigma", run_lambert},
      {"liouville.count", run_liouville},
      {"zetaq.limit", run_zetaq},
      {"rr.1", [](const RunContext& c) { return run_rr(c, RRIdentity::rr1); }},
      {"rr.2", [](const RunContext& c) { return run_rr(c, RRIdentity::rr2); }},
      {"dyson.mod18", [](const RunContext& c) { return run_dyson(c, {DysonIdentity::mod18}); }},
      {"dyson.mod9", [](const RunContext& c) { return run_dyson(c, {DysonIdentity::mod9}); }},
      {"dyson.gen27",
       [](const RunContext& c) { return run_dyson(c, {DysonIdentity::gen27_a1, DysonIdentity::gen27_ax3}); }},
      {"lemma.bilateral", run_bilateral},
      {"lemma.qgauss", run_qgauss},
      {"lemma.weak", run_weak_lemma},
  };
  return table;
}

// ---------------------------------------------------------------------------
// Loading

inline std::string catalog_path() {
  if (const char* env = std::getenv("HYPERVERIFY_CATALOG"); env && *env) return env;
#ifdef HYPERVERIFY_DEFAULT_CATALOG
  return HYPERVERIFY_DEFAULT_CATALOG;
#else
  return "catalog/identities.json";
#endif
}

inline std::vector<IdentityRecord> parse_catalog(const Json& doc) {
  if (!doc.is_array()) throw CatalogError("catalog must be a JSON array");
  std::vector<IdentityRecord> out;
  std::set<std::string> seen;
  for (const auto& item : doc) {
    IdentityRecord r = record_from_json(item);
    if (!seen.insert(r.id).second) throw CatalogError("duplicate catalog id: " + r.id);
    if (!runners().count(r.id)) throw CatalogError("catalog id without a runner: " + r.id);
    out.push_back(std::move(r));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  return out;
}

inline std::vector<IdentityRecord> load_catalog(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CatalogError("cannot open catalog file: " + path);
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw CatalogError("catalog " + path + " is not valid JSON: " + e.what());
  }
  return parse_catalog(doc);
}

/// All records, sorted by id, from the file named by catalog_path().
inline std::vector<IdentityRecord> catalog_entries() { return load_catalog(catalog_path()); }

inline std::optional<IdentityRecord> find_entry(const std::vector<IdentityRecord>& entries, const std::string& id) {
  for (const auto& r : entries) {
    if (r.id == id) return r;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Running

namespace detail {

inline bool same_kind(const Json& expected, const Json& given) {
  if (expected.is_number_integer()) return given.is_number_integer();
  if (expected.is_number()) return given.is_number();
  return expected.type() == given.type();
}

inline void check_budget_value(const std::string& key, const Json& v) {
  if (key == "order" && (v.get<long>() < 1 || v.get<long>() > 5000)) throw InvalidOverride("order must be in 1..5000");
  if (key == "prec" && (v.get<long>() < 16 || v.get<long>() > (1L << 20))) {
    throw InvalidOverride("prec must be in 16..1048576");
  }
  if (key == "tol" && !(v.get<double>() > 0.0)) throw InvalidOverride("tol must be positive");
}

}  // namespace detail

/// params and default_budget merged, then overridden. Every override key must
/// name an existing setting and keep its JSON kind.
inline Json effective_settings(const IdentityRecord& record, const Json& overrides) {
  Json s = record.params;
  for (const auto& [k, v] : record.default_budget.items()) s[k] = v;
  if (overrides.is_null()) return s;
  if (!overrides.is_object()) throw InvalidOverride("overrides must be an object");
  for (const auto& [k, v] : overrides.items()) {
    if (!s.contains(k)) throw InvalidOverride("'" + k + "' is not a setting of " + record.id);
    if (!detail::same_kind(s[k], v)) throw InvalidOverride("'" + k + "' has the wrong type for " + record.id);
    detail::check_budget_value(k, v);
    s[k] = v;
  }
  return s;
}

inline VerificationReport run(const IdentityRecord& record, const Json& overrides = Json::object()) {
  auto it = runners().find(record.id);
  if (it == runners().end()) throw UnknownIdentity("no runner for " + record.id);
  const Json settings = effective_settings(record, overrides);
  const auto start = std::chrono::steady_clock::now();
  VerificationReport rep;
  try {
    rep = it->second(RunContext(record, settings));
  } catch (const InvalidOverride&) {
    throw;
  } catch (const std::exception& e) {
    rep = VerificationReport{};
    rep.status = Status::fail;
    rep.details = std::string("error: ") + e.what();
  }
  rep.id = record.id;
  rep.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

inline VerificationReport run(const std::string& id, const Json& overrides = Json::object()) {
  auto entries = catalog_entries();
  auto rec = find_entry(entries, id);
  if (!rec) throw UnknownIdentity("unknown identity id: " + id);
  return run(*rec, overrides);
}

inline bool matches(const std::string& filter, const std::string& id) {
  return filter.empty() || fnmatch(filter.c_str(), id.c_str(), 0) == 0;
}

/// Runs every matching entry on `jobs` worker threads; reports sorted by id.
inline std::vector<VerificationReport> run_all(const std::vector<IdentityRecord>& entries, const std::string& filter,
                                               int jobs = 1) {
  if (jobs < 1) throw std::invalid_argument("run_all: jobs must be >= 1");
  std::vector<const IdentityRecord*> selected;
  for (const auto& r : entries) {
    if (matches(filter, r.id)) selected.push_back(&r);
  }
  std::sort(selected.begin(), selected.end(), [](auto* a, auto* b) { return a->id < b->id; });
  std::vector<VerificationReport> out(selected.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < selected.size(); i = next++) out[i] = run(*selected[i]);
  };
  const auto threads = std::min<std::size_t>(static_cast<std::size_t>(jobs), selected.size());
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return out;
}

inline std::vector<VerificationReport> run_all(const std::string& filter, int jobs = 1) {
  return run_all(catalog_entries(), filter, jobs);
}

}  // namespace hyperverify

#endif  // HYPERVERIFY_CATALOG_HPP
