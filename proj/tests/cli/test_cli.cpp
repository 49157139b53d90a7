#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "format.hpp"

namespace hexfourier::cli {
namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> v;
  std::istringstream is(s);
  for (std::string l; std::getline(is, l);) v.push_back(l);
  return v;
}

std::vector<std::string> fields(const std::string& line) {
  std::vector<std::string> v;
  std::istringstream is(line);
  for (std::string f; std::getline(is, f, ',');) v.push_back(f);
  return v;
}

TEST(Format, ShortestRoundTrip) {
  EXPECT_EQ(fmt(3.0), "3");
  EXPECT_EQ(fmt(0.1), "0.1");
  EXPECT_EQ(fmt(-1.5e-300), "-1.5e-300");
  EXPECT_EQ(fmt(NAN), "nan");
  const double x = 1.0 / 3.0;
  EXPECT_EQ(std::stod(fmt(x)), x);
}

TEST(Format, Parsers) {
  const GridSpec g = parse_grid("-15:15:201");
  EXPECT_EQ(g.columns(), 201);
  EXPECT_THROW(parse_grid("0:1:0"), UsageError);
  EXPECT_THROW(parse_grid("1:0:5"), UsageError);
  EXPECT_THROW(parse_grid("a:b:c"), UsageError);
  EXPECT_THROW(parse_grid("0:1"), UsageError);
  EXPECT_EQ(parse_list("5,10,20").size(), 3u);
  EXPECT_TRUE(parse_list("").empty());
  EXPECT_THROW(parse_list("1,,2"), UsageError);
  EXPECT_EQ(parse_point("0,0").x1, 0.0);
}

TEST(Kernel, DirichletAtOrigin) {
  const auto r = invoke({"kernel", "--type", "dirichlet", "--rho", "1", "--point", "0,0"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 2u);
  EXPECT_EQ(ls[0], "x1,x2,t1,t2,t3,value,method,err_est");
  const auto f = fields(ls[1]);
  ASSERT_EQ(f.size(), 8u);
  EXPECT_EQ(f[5], "3");
  EXPECT_EQ(f[6], "limit-formula");
}

TEST(Kernel, CesaroGridIsNonnegative) {
  const auto r = invoke({"kernel", "--type", "cesaro", "--delta", "2", "--R", "1", "--grid", "-15:15:201"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 201u * 201u + 1);
  double min = INFINITY;
  for (std::size_t i = 1; i < ls.size(); ++i) min = std::min(min, std::stod(fields(ls[i])[5]));
  EXPECT_GE(min, -1e-10);
}

TEST(Kernel, UsageErrors) {
  EXPECT_EQ(invoke({"kernel", "--type", "cesaro", "--delta", "2", "--grid", "-1:1:3"}).code, 2);
  EXPECT_EQ(invoke({"kernel", "--type", "dirichlet", "--point", "0,0"}).code, 2);
  EXPECT_EQ(invoke({"kernel", "--type", "bogus", "--rho", "1", "--point", "0,0"}).code, 2);
  EXPECT_EQ(invoke({"kernel", "--type", "e", "--rho", "1", "--point", "0,0", "--unknown", "3"}).code, 2);
  EXPECT_EQ(invoke({"kernel", "--type", "e", "--rho", "1"}).code, 2);
  EXPECT_EQ(invoke({"kernel", "--type", "e", "--rho", "-1", "--point", "0,0"}).code, 2);
  EXPECT_EQ(invoke({}).code, 2);
  const auto r = invoke({"kernel", "--type", "cesaro", "--grid", "-1:1:3"});
  EXPECT_NE(r.err.find("--R"), std::string::npos);
}

TEST(Kernel, Deterministic) {
  const std::vector<std::string> args = {"kernel", "--type", "e", "--rho", "2.5", "--grid", "-3:3:21"};
  EXPECT_EQ(invoke(args).out, invoke(args).out);
}

TEST(Verify, SingleSuitesPass) {
  for (const char* suite : {"spline", "psi"}) {
    const auto r = invoke({"verify", "--suite", suite, "--seed", "42"});
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_NE(r.out.find(std::string("suite=") + suite + " checks="), std::string::npos);
    EXPECT_NE(r.out.find("failures=0"), std::string::npos);
  }
}

TEST(Verify, CesaroBelowTwoAssertsWitness) {
  const auto r = invoke({"verify", "--suite", "cesaro", "--delta", "1.5"});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("PASS cesaro/witness-negative"), std::string::npos);
}

TEST(Verify, JIncludesRegionChecks) {
  const auto r = invoke({"verify", "--suite", "j"});
  EXPECT_EQ(r.code, 0) << r.out;
  for (const char* cls : {"E---", "E--+", "E-++", "E+++"}) {
    EXPECT_NE(r.out.find(std::string("class=") + cls), std::string::npos) << cls;
  }
}

TEST(Verify, UnknownSuiteIsUsageError) {
  EXPECT_EQ(invoke({"verify", "--suite", "nope"}).code, 2);
}

class TempDir : public ::testing::Test {
 protected:
  void SetUp() override {
    dir = std::filesystem::temp_directory_path() /
          ("hexfourier_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    std::filesystem::create_directories(dir);
  }
  void TearDown() override { std::filesystem::remove_all(dir); }
  std::filesystem::path dir;
};

TEST_F(TempDir, SpiderFigure) {
  const auto stem = (dir / "spider").string();
  const auto r = invoke({"figure", "--name", "spider", "--grid", "-6:6:61", "--out", stem});
  ASSERT_EQ(r.code, 0) << r.err;
  std::ifstream pgm(stem + ".pgm", std::ios::binary);
  std::string magic;
  int w = 0, h = 0, maxv = 0;
  pgm >> magic >> w >> h >> maxv;
  EXPECT_EQ(magic, "P5");
  EXPECT_EQ(w, 61);
  EXPECT_EQ(h, 61);
  EXPECT_EQ(maxv, 255);
  pgm.get();
  std::string pixels((std::istreambuf_iterator<char>(pgm)), {});
  EXPECT_EQ(pixels.size(), 61u * 61u);
  // Centre pixel lies in the region where the spider function vanishes.
  EXPECT_EQ(static_cast<unsigned char>(pixels[30 * 61 + 30]), 0);

  std::ifstream csv(stem + ".csv");
  std::string header;
  std::getline(csv, header);
  EXPECT_EQ(header, "x1,x2,t1,t2,t3,value");
  std::ifstream txt(stem + ".txt");
  std::string sidecar((std::istreambuf_iterator<char>(txt)), {});
  EXPECT_NE(sidecar.find("min=0"), std::string::npos);
}

TEST_F(TempDir, SplineFigureIsNonnegative) {
  const auto stem = (dir / "spline").string();
  ASSERT_EQ(invoke({"figure", "--name", "spline", "--grid", "-4:4:41", "--out", stem}).code, 0);
  std::ifstream csv(stem + ".csv");
  std::string line;
  std::getline(csv, line);
  while (std::getline(csv, line)) {
    const double v = std::stod(fields(line)[5]);
    if (!std::isnan(v)) EXPECT_GE(v, 0.0);
  }
}

TEST_F(TempDir, FigureZeroSizeGrid) {
  EXPECT_EQ(invoke({"figure", "--name", "spider", "--grid", "-6:6:0", "--out", (dir / "x").string()}).code, 2);
}

TEST(Experiment, ConvergenceTable) {
  const auto r = invoke({"experiment", "--name", "convergence", "--a", "1", "--delta", "2", "--R", "5,10,20,40"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 6u);
  EXPECT_EQ(ls[0], "R,delta,t1,t2,t3,mean,target,abs_err");
  double prev = INFINITY;
  for (int i = 1; i <= 4; ++i) {
    const double e = std::stod(fields(ls[i])[7]);
    EXPECT_LT(e, prev);
    prev = e;
  }
  EXPECT_NE(ls[5].find("strictly_decreasing=true"), std::string::npos);
  EXPECT_EQ(invoke({"experiment", "--name", "convergence"}).code, 2);
}

TEST(Experiment, PdCheck) {
  const auto r = invoke({"experiment", "--name", "pdcheck", "--atoms", "1:1", "--grid", "-5:5:101"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto ls = lines(r.out);
  EXPECT_EQ(ls.front(), "t1,t2,t3,phi_value");
  EXPECT_NE(ls.back().find("violations=0"), std::string::npos);
  EXPECT_EQ(ls.size(), 101u * 101u + 2);
}

TEST(Experiment, PdCheckEmptyMeasure) {
  const auto r = invoke({"experiment", "--name", "pdcheck", "--atoms", "", "--grid", "-1:1:5"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto ls = lines(r.out);
  for (std::size_t i = 1; i + 1 < ls.size(); ++i) EXPECT_EQ(fields(ls[i])[3], "0");
  EXPECT_EQ(invoke({"experiment", "--name", "pdcheck", "--atoms", "1"}).code, 2);
}

}  // namespace
}  // namespace hexfourier::cli
