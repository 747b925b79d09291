#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "hyperverify/cli.hpp"

using namespace hyperverify;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "hyperverify");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("hyperverify_test_" + std::to_string(::getpid()) + "_" + name))
      .string();
}

std::string without_timing(const std::string& text) {
  return std::regex_replace(text, std::regex(R"(\([0-9.]+ ms\))"), "(ms)");
}

// Checks one report object against the report schema.
void expect_report_schema(const Json& r) {
  ASSERT_TRUE(r.is_object());
  const std::vector<std::string> keys = {"id", "status", "checked_order", "tolerance", "achieved",
                                         "first_mismatch", "elapsed_ms", "details"};
  ASSERT_EQ(r.size(), keys.size());
  std::size_t i = 0;
  for (const auto& [k, v] : r.items()) EXPECT_EQ(k, keys[i++]);
  EXPECT_TRUE(r["id"].is_string());
  EXPECT_TRUE(r["status"] == "PASS" || r["status"] == "FAIL" || r["status"] == "PARTIAL");
  EXPECT_TRUE(r["checked_order"].is_null() || r["checked_order"].is_number_integer());
  EXPECT_TRUE(r["tolerance"].is_null() || r["tolerance"].is_number());
  EXPECT_TRUE(r["achieved"].is_null() || r["achieved"].is_number());
  EXPECT_TRUE(r["first_mismatch"].is_null() || r["first_mismatch"].is_string());
  EXPECT_TRUE(r["elapsed_ms"].is_number());
  EXPECT_GE(r["elapsed_ms"].get<double>(), 0.0);
  EXPECT_TRUE(r["details"].is_string());
  EXPECT_TRUE(r["checked_order"].is_number() || r["tolerance"].is_number() || r["status"] == "FAIL");
}

}  // namespace

TEST(Cli, ListShowsIdsTitlesAnchors) {
  auto r = invoke({"list"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("bell.sigma2"), std::string::npos);
  EXPECT_NE(r.out.find("Whipple transformation"), std::string::npos);
  EXPECT_NE(r.out.find("QSERIES_ORDER"), std::string::npos);
  EXPECT_TRUE(r.err.empty());
}

TEST(Cli, VerifyBellPasses) {
  auto r = invoke({"verify", "--id", "bell.sigma2", "--order", "200"});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  EXPECT_EQ(r.out.rfind("PASS", 0), 0u);
  EXPECT_NE(r.out.find("order=200"), std::string::npos);
}

TEST(Cli, VerifyUnknownIdIsConfigError) {
  auto r = invoke({"verify", "--id", "nonsense"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("nonsense"), std::string::npos);
}

TEST(Cli, VerifyFailureExitsOne) {
  auto r = invoke({"verify", "--id", "pi.sun1", "--tol", "1e-40"});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.out.rfind("FAIL", 0), 0u);
}

TEST(Cli, OverrideErrorsExitTwo) {
  EXPECT_EQ(invoke({"verify", "--id", "whipple", "--order", "10"}).code, 2);
  EXPECT_EQ(invoke({"verify", "--id", "rr.1", "--order", "100000"}).code, 2);
  EXPECT_EQ(invoke({"verify", "--id", "rr.1", "--order", "50", "--prec", "64"}).code, 2);
  EXPECT_EQ(invoke({"verify", "--id", "rr.1", "--order", "-3"}).code, 2);
}

TEST(Cli, UsageErrorsGoToStderr) {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {}, {"frobnicate"}, {"list", "--bogus"}, {"verify"}, {"const", "--name", "e"}, {"apery", "--n", "0"}}) {
    auto r = invoke(args);
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("Usage"), std::string::npos);
    EXPECT_TRUE(r.out.empty());
  }
}

TEST(Cli, HelpGoesToStdout) {
  auto r = invoke({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("verify-all"), std::string::npos);
}

TEST(Cli, ConstMu0) {
  auto r = invoke({"const", "--name", "mu0", "--prec", "64"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("13.417820", 0), 0u) << r.out;
  auto z = invoke({"const", "--name", "zeta3", "--prec", "128"});
  EXPECT_EQ(z.out.rfind("1.20205690315959428539973816151144", 0), 0u) << z.out;
  auto rate = invoke({"const", "--name", "rate-limit"});
  EXPECT_EQ(rate.out.rfind("0.0294372515228594143797", 0), 0u) << rate.out;
}

TEST(Cli, AperyPrintsData) {
  auto r = invoke({"apery", "--n", "3"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("u_n = 1445"), std::string::npos);
  EXPECT_NE(r.out.find("v_n = 62531/36"), std::string::npos);
  EXPECT_NE(r.out.find("u_n integral: yes"), std::string::npos);
  EXPECT_NE(r.out.find("2 d_n^3 v_n integral: yes"), std::string::npos);
  EXPECT_NE(r.out.find("(u_n zeta(3) - v_n)^(1/n)"), std::string::npos);
}

TEST(Cli, VerifyAllFilterAndEmptyMatch) {
  auto r = invoke({"verify-all", "--filter", "pi.*", "--jobs", "2"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("3 identities: 3 PASS, 0 PARTIAL, 0 FAIL"), std::string::npos) << r.out;
  auto e = invoke({"verify-all", "--filter", "nothing.*"});
  EXPECT_EQ(e.code, 0);
  EXPECT_NE(e.out.find("0 identities"), std::string::npos);
  EXPECT_EQ(invoke({"verify-all", "--jobs", "0"}).code, 2);
}

TEST(Cli, OutputIsDeterministicExceptTiming) {
  const std::vector<std::string> args = {"verify-all", "--filter", "[b-l]*", "--jobs", "3"};
  auto a = invoke(args), b = invoke(args);
  EXPECT_EQ(a.code, b.code);
  EXPECT_EQ(without_timing(a.out), without_timing(b.out));
  EXPECT_NE(a.out.find(" ms)"), std::string::npos);
}

TEST(Cli, ReportIsSchemaValidJson) {
  const std::string path = temp_path("report.json");
  auto r = invoke({"verify-all", "--filter", "*.*", "--jobs", "4", "--report", path, "--allow-partial"});
  EXPECT_EQ(r.code, 0) << r.out;
  std::ifstream in(path);
  ASSERT_TRUE(in.good());
  Json doc = Json::parse(in);
  ASSERT_TRUE(doc.is_array());
  EXPECT_GE(doc.size(), 31u);
  std::string prev;
  for (const auto& rep : doc) {
    expect_report_schema(rep);
    EXPECT_LT(prev, rep["id"].get<std::string>());
    prev = rep["id"].get<std::string>();
  }
  // Nothing machine-readable leaks onto standard output.
  EXPECT_FALSE(Json::accept(r.out));
  EXPECT_NE(r.out.find(" identities: "), std::string::npos);
  std::filesystem::remove(path);
}

TEST(Cli, ReportPathErrorIsConfigError) {
  EXPECT_EQ(invoke({"verify", "--id", "pi.sun1", "--report", "/nonexistent/dir/out.json"}).code, 2);
}

TEST(Cli, CatalogPathFromEnvironment) {
  const std::string path = temp_path("catalog.json");
  {
    Json doc = Json::array();
    for (const auto& r : load_catalog(HYPERVERIFY_TEST_CATALOG)) {
      if (r.id == "pi.sun1") {
        IdentityRecord loose = r;
        loose.default_budget["tol"] = 1e-40;  // unattainable, so the run must fail
        doc.push_back(to_json(loose));
      }
    }
    std::ofstream(path) << doc.dump(2);
  }
  ::setenv("HYPERVERIFY_CATALOG", path.c_str(), 1);
  auto listed = invoke({"list"});
  auto failed = invoke({"verify", "--id", "pi.sun1"});
  auto missing = invoke({"verify", "--id", "pi.sun2"});
  ::setenv("HYPERVERIFY_CATALOG", "/nonexistent/catalog.json", 1);
  auto broken = invoke({"list"});
  ::unsetenv("HYPERVERIFY_CATALOG");
  std::filesystem::remove(path);

  EXPECT_EQ(listed.code, 0);
  EXPECT_EQ(std::count(listed.out.begin(), listed.out.end(), '\n'), 1);
  EXPECT_EQ(failed.code, 1);
  EXPECT_EQ(missing.code, 2);
  EXPECT_EQ(broken.code, 2);
  EXPECT_NE(broken.err.find("cannot open catalog"), std::string::npos);
}

TEST(Cli, PartialNeedsAllowPartial) {
  // Bypass the catalog: a report with PARTIAL status maps to exit 1 or 0.
  VerificationReport p;
  p.status = Status::partial;
  EXPECT_EQ(detail::exit_for({p}, false), 1);
  EXPECT_EQ(detail::exit_for({p}, true), 0);
}
