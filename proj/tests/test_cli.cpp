#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "golden_cases.hpp"

using namespace knotshift;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST(Cli, AnalyzeTrefoil) {
  auto r = run({"analyze", "--knot", "trefoil", "--p", "2", "--r", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = Json::parse(r.out);
  EXPECT_EQ(j["schema"], kSchemaVersion);
  EXPECT_EQ(j["n"], 2);
  EXPECT_EQ(j["hom_order"], "2^4");
  EXPECT_EQ(j["d"], 6);
  EXPECT_EQ(j["Q"], Json::array({1, 3, 6}));
}

TEST(Cli, PeriodsFigureEightTable) {
  auto r = run({"periods", "--knot", "figure8", "--p", "5", "--rmax", "3", "--format", "table"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("  1  2  10  "), std::string::npos);
  EXPECT_NE(r.out.find("  2  2  50  "), std::string::npos);
  EXPECT_NE(r.out.find("  3  2  250  "), std::string::npos);
  EXPECT_NE(r.out.find("growth from s=1"), std::string::npos);
  auto j = Json::parse(run({"periods", "--knot", "figure8", "--p", "5", "--rmax", "3"}).out);
  EXPECT_EQ(j["tower"]["d"], Json::array({10, 50, 250}));
  EXPECT_EQ(j["tower"]["pattern"], "GrowthFrom");
  EXPECT_EQ(j["tower"]["s"], 1);
}

TEST(Cli, CoveringsTrefoil) {
  auto r = run({"coverings", "--knot", "trefoil", "--sigma", "6", "--d", "6"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(Json::parse(r.out)["coverings"]["surjective_count"], "24");
  auto rep = run({"coverings", "--knot", "trefoil", "--sigma", "2,2", "--d", "3"});
  EXPECT_EQ(rep.code, 1);
  EXPECT_NE(rep.err.find("repeats a prime"), std::string::npos);
}

TEST(Cli, AnalyzeSigmaAllowsRepeatedPrimes) {
  auto r = run({"analyze", "--knot", "trefoil", "--sigma", "2,2"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = Json::parse(r.out);
  EXPECT_EQ(j["d"], 3);
  EXPECT_EQ(j["hom_order"], "2^2 * 2^2");
  EXPECT_EQ(j["period_counts"]["3"], "15");
}

TEST(Cli, ErrorsAndExitCodes) {
  auto r = run({"analyze", "--knot", "nonesuch", "--p", "2", "--r", "1"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("unknown knot"), std::string::npos);
  EXPECT_TRUE(r.out.empty());
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"analyze", "--knot", "trefoil"}).code, 1);
  EXPECT_EQ(run({"analyze", "--knot", "trefoil", "--p", "4"}).code, 1);
  EXPECT_EQ(run({"analyze", "--knot", "trefoil", "--p", "2", "--format", "xml"}).code, 1);
  EXPECT_EQ(run({"periods", "--knot", "trefoil", "--p", "2", "--rmax", "0"}).code, 1);
  EXPECT_EQ(run({"coverings", "--knot", "trefoil", "--sigma", "6", "--d", "0"}).code, 1);
  EXPECT_EQ(run({"analyze", "--knot", "missing/file.wirt", "--p", "2"}).code, 1);
  EXPECT_EQ(run({"analyze", "--knot", "7_4", "--p", "2", "--route", "wirtinger"}).code, 1);
  EXPECT_EQ(run({"analyze", "--knot", "figure8", "--p", "5", "--r", "3", "--order-cap", "3"}).code, 1);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, OrderCapFromEnvironment) {
  ::setenv("KNOTSHIFT_ORDER_CAP", "3", 1);
  auto capped = run({"analyze", "--knot", "figure8", "--p", "5"});
  auto flag = run({"analyze", "--knot", "figure8", "--p", "5", "--order-cap", "100"});
  ::setenv("KNOTSHIFT_ORDER_CAP", "zero", 1);
  auto bad = run({"analyze", "--knot", "figure8", "--p", "5"});
  ::unsetenv("KNOTSHIFT_ORDER_CAP");
  EXPECT_EQ(capped.code, 1);
  EXPECT_NE(capped.err.find("cap"), std::string::npos);
  EXPECT_EQ(flag.code, 0);
  EXPECT_EQ(bad.code, 1);
}

TEST(Cli, WirtingerFiles) {
  const std::string dir = KNOTSHIFT_SAMPLES_DIR;
  auto file = run({"analyze", "--knot", dir + "/figure8.wirt", "--p", "5", "--r", "2"});
  auto builtin = run({"analyze", "--knot", "figure8", "--p", "5", "--r", "2"});
  ASSERT_EQ(file.code, 0) << file.err;
  auto jf = Json::parse(file.out);
  auto jb = Json::parse(builtin.out);
  EXPECT_EQ(jf["delta"], jb["delta"]);
  EXPECT_EQ(jf["period_counts"], jb["period_counts"]);
  auto bad = run({"analyze", "--knot", dir + "/not_a_knot.wirt", "--p", "2"});
  EXPECT_EQ(bad.code, 1);
  EXPECT_NE(bad.err.find("not a knot"), std::string::npos);
}

TEST(Cli, Selfcheck) {
  auto r = run({"selfcheck"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
  EXPECT_NE(r.out.find("all checks passed"), std::string::npos);
}

TEST(Cli, Deterministic) {
  for (const auto& g : golden_cases()) {
    auto a = run(g.args);
    auto b = run(g.args);
    EXPECT_EQ(a.out, b.out) << g.file;
    auto ta = g.args;
    ta.insert(ta.end(), {"--format", "table"});
    EXPECT_EQ(run(ta).out, run(ta).out) << g.file;
  }
}

TEST(Cli, GoldenFiles) {
  for (const auto& g : golden_cases()) {
    auto r = run(g.args);
    ASSERT_EQ(r.code, 0) << g.file << ": " << r.err;
    EXPECT_EQ(r.out, slurp(std::string(KNOTSHIFT_GOLDEN_DIR) + "/" + g.file)) << g.file;
  }
}

TEST(Report, RoundTrip) {
  std::vector<Report> reports = {
      analyze_report(builtin_knot("trefoil"), RingParams(2, 2)),
      analyze_report(builtin_knot("figure8"), parse_sigma("4,5")),
      periods_report(builtin_knot("trefoil"), 2, 4),
      periods_report(builtin_knot("figure8"), 5, 3),
      coverings_report(builtin_knot("trefoil"), parse_sigma("6"), 6),
      coverings_report(builtin_knot("figure8"), parse_sigma("5,4"), 1),
  };
  // too many fixed points to list
  reports.push_back(coverings_report(builtin_knot("figure8"), parse_sigma("3125"), 250));
  EXPECT_FALSE(reports.back().coverings->representatives_listed);
  for (const auto& rep : reports) {
    auto text = emit(rep);
    EXPECT_NE(text.find("\"schema\": \"knotshift/v1\""), std::string::npos);
    auto back = parse_report(text);
    EXPECT_EQ(back, rep) << text;
    EXPECT_EQ(emit(back), text);
  }
  EXPECT_THROW(parse_report("{\"schema\": \"knotshift/v0\"}"), InputError);
  EXPECT_THROW(parse_report("not json"), InputError);
}
