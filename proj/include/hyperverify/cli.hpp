#ifndef HYPERVERIFY_CLI_HPP
#define HYPERVERIFY_CLI_HPP

// Command-line front end. Human-readable text goes to `out`; the JSON report
// is written only to the file named by --report.

#include <cmath>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "hyperverify/apery.hpp"
#include "hyperverify/catalog.hpp"
#include "hyperverify/precreal.hpp"

namespace hyperverify {

struct CliConfig {
  std::string command;
  std::string id;
  std::string filter;
  std::optional<long> order;
  std::optional<long> prec;
  std::optional<double> tol;
  int jobs = 1;
  std::string report_path;
  bool allow_partial = false;
  long n = 0;
  std::string name;
};

namespace detail {

inline std::string report_line(const VerificationReport& r) {
  std::ostringstream os;
  os << std::left << std::setw(8) << to_string(r.status) << std::setw(22) << r.id;
  if (r.checked_order) os << " order=" << *r.checked_order;
  if (r.achieved) os << " err=" << fmt(*r.achieved, 3);
  if (r.tolerance) os << " tol=" << fmt(*r.tolerance, 3);
  if (r.first_mismatch) os << " mismatch: " << *r.first_mismatch;
  os << "  " << r.details << "  (" << std::fixed << std::setprecision(1) << r.elapsed_ms << " ms)";
  return os.str();
}

inline void write_report(const std::string& path, const std::vector<VerificationReport>& reports) {
  std::ofstream f(path);
  if (!f) throw CatalogError("cannot write report file: " + path);
  f << to_json(reports).dump(2) << "\n";
}

/// Significant decimal digits carried by `prec` bits, less one guard digit.
inline int decimal_digits(Precision prec) { return std::max(1, static_cast<int>(prec * 0.30102999566398120) - 1); }

inline std::string fixed_significant(const PrecReal& x, Precision prec) {
  const double mag = std::fabs(x.to_double());
  const int int_digits = mag >= 1.0 ? static_cast<int>(std::floor(std::log10(mag))) + 1 : 0;
  return x.fixed(std::max(1, decimal_digits(prec) - int_digits));
}

inline int exit_for(const std::vector<VerificationReport>& reports, bool allow_partial) {
  for (const auto& r : reports) {
    if (!r.ok(allow_partial)) return 1;
  }
  return 0;
}

inline int cmd_list(std::ostream& out) {
  for (const auto& r : catalog_entries()) {
    out << std::left << std::setw(22) << r.id << std::setw(15) << to_string(r.strategy) << r.title << "  ["
        << r.paper_anchor << "]\n";
  }
  return 0;
}

inline int cmd_verify(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  auto entries = catalog_entries();
  auto rec = find_entry(entries, cfg.id);
  if (!rec) {
    err << "unknown identity id: " << cfg.id << "\n";
    return 2;
  }
  Json overrides = Json::object();
  if (cfg.order) overrides["order"] = *cfg.order;
  if (cfg.prec) overrides["prec"] = *cfg.prec;
  if (cfg.tol) overrides["tol"] = *cfg.tol;
  VerificationReport rep = run(*rec, overrides);
  out << report_line(rep) << "\n";
  if (!cfg.report_path.empty()) write_report(cfg.report_path, {rep});
  return rep.ok(cfg.allow_partial) ? 0 : 1;
}

inline int cmd_verify_all(const CliConfig& cfg, std::ostream& out) {
  auto reports = run_all(catalog_entries(), cfg.filter, cfg.jobs);
  long pass = 0, fail = 0, partial = 0;
  for (const auto& r : reports) {
    out << report_line(r) << "\n";
    (r.status == Status::pass ? pass : r.status == Status::fail ? fail : partial)++;
  }
  out << reports.size() << " identities: " << pass << " PASS, " << partial << " PARTIAL, " << fail << " FAIL\n";
  if (!cfg.report_path.empty()) write_report(cfg.report_path, reports);
  return exit_for(reports, cfg.allow_partial);
}

inline int cmd_apery(const CliConfig& cfg, std::ostream& out) {
  const Precision prec = static_cast<Precision>(cfg.prec.value_or(kDefaultPrecision));
  AperyPair p = apery_pair(cfg.n);
  PrecReal r = residual(cfg.n, prec);
  PrecReal rate = exp(log(r) / cfg.n);
  Integer d = lcm_upto(cfg.n);
  Rational scaled = Rational(2 * d * d * d) * p.v;
  scaled.canonicalize();
  out << "n = " << cfg.n << "\n"
      << "u_n = " << p.u.get_str() << "\n"
      << "v_n = " << p.v.get_str() << "\n"
      << "u_n zeta(3) - v_n = " << to_string(r, 20) << "\n"
      << "(u_n zeta(3) - v_n)^(1/n) = " << to_string(rate, 20) << "\n"
      << "(sqrt2 - 1)^4 = " << to_string(apery_rate_limit(prec), 20) << "\n"
      << "u_n integral: " << (p.u == u_binomial(cfg.n) ? "yes" : "no") << "\n"
      << "2 d_n^3 v_n integral: " << (is_integer(scaled) ? "yes" : "no") << "\n";
  return 0;
}

inline int cmd_const(const CliConfig& cfg, std::ostream& out) {
  const Precision prec = static_cast<Precision>(cfg.prec.value_or(kDefaultPrecision));
  out << fixed_significant(const_real(cfg.name, prec), prec) << "\n";
  return 0;
}

}  // namespace detail

/// Parses argv and runs one subcommand. Returns 0 when every check passes,
/// 1 when one fails, 2 on usage or configuration errors.
inline int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact and high-precision verification of hypergeometric and q-series identities", "hyperverify"};
  app.require_subcommand(1, 1);
  CliConfig cfg;

  auto* list = app.add_subcommand("list", "List catalog ids, titles and anchors");

  auto* verify = app.add_subcommand("verify", "Verify one identity");
  verify->add_option("--id", cfg.id, "Catalog id")->required();
  auto* order_opt = verify->add_option("--order", cfg.order, "q-series order override")->check(CLI::PositiveNumber);
  auto* prec_opt = verify->add_option("--prec", cfg.prec, "Precision override in bits")->check(CLI::PositiveNumber);
  auto* tol_opt = verify->add_option("--tol", cfg.tol, "Tolerance override")->check(CLI::PositiveNumber);
  order_opt->excludes(prec_opt)->excludes(tol_opt);
  prec_opt->excludes(tol_opt);
  verify->add_option("--report", cfg.report_path, "Write a JSON report to this path");
  verify->add_flag("--allow-partial", cfg.allow_partial, "Count PARTIAL as success");

  auto* all = app.add_subcommand("verify-all", "Verify every catalog entry");
  all->add_option("--filter", cfg.filter, "Glob over ids, e.g. 'pi.*'");
  all->add_option("--jobs", cfg.jobs, "Worker threads")->check(CLI::Range(1, 256));
  all->add_option("--report", cfg.report_path, "Write a JSON report to this path");
  all->add_flag("--allow-partial", cfg.allow_partial, "Count PARTIAL as success");

  auto* apery = app.add_subcommand("apery", "Print Apery data for one n");
  apery->add_option("--n", cfg.n, "Index n >= 1")->required()->check(CLI::Range(1L, 100000L));
  apery->add_option("--prec", cfg.prec, "Precision in bits")->check(CLI::Range(16L, 1L << 20));

  auto* cnst = app.add_subcommand("const", "Print a constant");
  cnst->add_option("--name", cfg.name, "Constant name")->required()->check(CLI::IsMember({"mu0", "zeta3", "rate-limit"}));
  cnst->add_option("--prec", cfg.prec, "Precision in bits")->check(CLI::Range(16L, 1L << 20));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  try {
    if (list->parsed()) return detail::cmd_list(out);
    if (verify->parsed()) return detail::cmd_verify(cfg, out, err);
    if (all->parsed()) return detail::cmd_verify_all(cfg, out);
    if (apery->parsed()) return detail::cmd_apery(cfg, out);
    if (cnst->parsed()) return detail::cmd_const(cfg, out);
  } catch (const CatalogError& e) {
    err << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace hyperverify

#endif  // HYPERVERIFY_CLI_HPP
