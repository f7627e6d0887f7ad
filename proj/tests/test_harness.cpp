#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "superpluecker/harness.hpp"
#include "superpluecker/serialize.hpp"

using namespace superpluecker;
using nlohmann::json;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

RunConfig verify(const std::string& suite, std::size_t trials, std::uint64_t seed = 0) {
  RunConfig c;
  c.command = "verify";
  c.suite = suite;
  c.trials = trials;
  c.seed = seed;
  return c;
}

}  // namespace

TEST(Serialize, ElementRoundTrip) {
  Rng rng(1);
  GeneratorPool pool(6);
  const auto x = sample_even(rng, pool, SampleProfile{}) + sample_odd(rng, pool, SampleProfile{});
  const auto text = to_json(x);
  EXPECT_EQ(element_from_json(text, 6), x);
  const auto j = json::parse(to_json(GrassmannElement::monomial(4, {2, 1}, Rational(3, 2))));
  EXPECT_EQ(j, json::parse(R"([{"subset":[1,2],"coeff":"-3/2"}])"));
  EXPECT_EQ(json::parse(to_json(GrassmannElement(4, 5))), json::parse(R"([{"subset":[],"coeff":"5/1"}])"));
}

TEST(Serialize, SuperMatrixRoundTrip) {
  Rng rng(2);
  GeneratorPool pool(6);
  const std::vector<Parity> l{Parity::Even, Parity::Odd};
  const auto m = sample_supermatrix(rng, pool, SampleProfile{}, l, l, {}, {1});
  EXPECT_EQ(supermatrix_from_json(to_json(m), 6), m);
}

TEST(Serialize, ExchangeGraphJson) {
  const auto j = json::parse(to_json(exchange_graph(5)));
  EXPECT_EQ(j["n"], 5);
  EXPECT_EQ(j["vertices"].size(), 10U);
  EXPECT_EQ(j["edges"].size(), 10U);
}

TEST(Harness, TriangulationCount) {
  RunConfig c;
  c.command = "triangulations";
  c.n = 6;
  const auto r = run(c);
  EXPECT_EQ(r.exit_code(), 0);
  EXPECT_EQ(json::parse(r.details)["count"], 14);
}

TEST(Harness, ExchangeGraphVertices) {
  RunConfig c;
  c.command = "exchange-graph";
  c.n = 5;
  const auto r = run(c);
  EXPECT_EQ(r.exit_code(), 0);
  EXPECT_EQ(json::parse(r.details)["vertices"], 10);
}

TEST(Harness, PtolemySuite) {
  const auto r = run(verify("ptolemy", 100, 7));
  EXPECT_TRUE(r.failures.empty());
  EXPECT_EQ(r.exit_code(), 0);
  const auto j = json::parse(report_to_json(r));
  EXPECT_EQ(j["failures"].size(), 0U);
  EXPECT_EQ(j["details"]["trials"].size(), 100U);
  EXPECT_EQ(j["seed"], 7);
}

TEST(Harness, UsageErrors) {
  EXPECT_THROW(run(verify("nonsense", 1)), UsageError);
  EXPECT_THROW(run(verify("ptolemy", 0)), UsageError);
  RunConfig big;
  big.command = "exchange-graph";
  big.n = 13;
  EXPECT_THROW(run(big), UsageError);
  RunConfig wide = verify("wrong-matrix", 1);
  wide.r = 5;
  EXPECT_THROW(run(wide), UsageError);
  RunConfig bad_case = verify("pluecker", 1);
  bad_case.case_ = "3|3";
  EXPECT_THROW(run(bad_case), UsageError);
  RunConfig fmt;
  fmt.command = "exchange-graph";
  fmt.format = "png";
  EXPECT_THROW(run(fmt), UsageError);
}

TEST(Harness, ReportsAreDeterministic) {
  auto a = run(verify("berezinian", 3, 5));
  auto b = run(verify("berezinian", 3, 5));
  EXPECT_EQ(report_to_json(a, false), report_to_json(b, false));
  auto c = run(verify("berezinian", 3, 6));
  EXPECT_NE(report_to_json(a, false), report_to_json(c, false));
}

TEST(Harness, ExportFiles) {
  const std::string path = ::testing::TempDir() + "exchange5.dot";
  RunConfig c;
  c.command = "exchange-graph";
  c.n = 5;
  c.format = "dot";
  c.out = path;
  run(c);
  const auto first = slurp(path);
  EXPECT_EQ(first.rfind("graph exchange_5 {", 0), 0U);
  run(c);
  EXPECT_EQ(slurp(path), first);
  std::remove(path.c_str());
}

TEST(Harness, SmallSuitesPass) {
  EXPECT_EQ(run(verify("wrong-matrix", 3)).exit_code(), 0);
  auto walk = verify("cluster-walk", 2);
  walk.steps = 100;
  EXPECT_EQ(run(walk).exit_code(), 0);
  auto p = verify("pluecker", 1);
  p.case_ = "2|0";
  EXPECT_EQ(run(p).exit_code(), 0);
}
