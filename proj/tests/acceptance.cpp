// Acceptance run: one PASS/FAIL line per criterion, exact arithmetic throughout.

#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "superpluecker/harness.hpp"

using namespace superpluecker;
using nlohmann::json;

namespace {

struct Outcome {
  bool pass = true;
  std::string note;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      note += (note.empty() ? "" : "; ") + what;
    }
  }
};

RunConfig verify(const std::string& suite, std::size_t trials, std::uint64_t seed = 0) {
  RunConfig c;
  c.command = "verify";
  c.suite = suite;
  c.trials = trials;
  c.seed = seed;
  return c;
}

std::size_t count(const VerificationReport& r, const std::string& id) {
  auto it = r.checks.find(id);
  return it == r.checks.end() ? 0 : it->second;
}

void clean(Outcome& o, const VerificationReport& r, double budget_ms = 0) {
  o.require(r.failures.empty(), std::to_string(r.failures.size()) + " failures in '" + r.command +
                                    "'" + (r.failures.empty() ? "" : " first " + r.failures.front().check_id));
  if (budget_ms > 0) {
    o.require(r.elapsed_ms < budget_ms, r.command + " took " + std::to_string(r.elapsed_ms) + " ms");
  }
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

Outcome berezinian() {
  Outcome o;
  const auto r = run(verify("berezinian", 100));
  clean(o, r, 10000);
  const std::size_t formats = 11;  // p|q with p <= 3, q <= 2, p + q >= 1
  for (const char* id : {"berezinian/multiplicativity", "berezinian/reciprocal",
                         "berezinian/homogeneity_row", "berezinian/homogeneity_col",
                         "berezinian/parity_reverse"}) {
    o.require(count(r, id) == 100 * formats, std::string(id) + " count");
  }
  o.require(count(r, "berezinian/elementary_row") >= 100 * (formats - 2), "elementary count");
  o.note += (o.note.empty() ? "" : "; ") + std::to_string(static_cast<long>(r.elapsed_ms)) + " ms";
  return o;
}

Outcome wrong_matrix() {
  Outcome o;
  const auto r = run(verify("wrong-matrix", 100));
  clean(o, r, 20000);
  o.require(count(r, "wrong/ber_star_odd_column") == 400, "ber_star identity count");
  o.require(count(r, "wrong/ber_even_column") == 400, "ber identity count");
  o.require(count(r, "wrong/column_antisymmetry") > 0, "antisymmetry checked");
  const auto d = json::parse(r.details);
  for (const auto& t : d["theta"]) o.require(t["compared"].get<std::size_t>() > 0, "theta compared");
  o.require(d["theta"].size() == 2, "theta for r = 2, 3");
  o.note += (o.note.empty() ? "" : "; ") + std::to_string(static_cast<long>(r.elapsed_ms)) + " ms";
  return o;
}

Outcome gr2_0() {
  Outcome o;
  auto c = verify("pluecker", 20);
  c.case_ = "2|0";
  const auto r = run(c);
  clean(o, r);
  for (const auto& e : json::parse(r.details)["2|0"]) o.require(e["planes"] == 20, "20 planes per n");
  auto ess = verify("pluecker", 2);
  ess.case_ = "r|0";
  const auto re = run(ess);
  clean(o, re);
  o.require(count(re, "pluecker/ess") > 0, "ess checked");
  const auto cases = json::parse(re.details)["r|0"];
  o.require(cases.size() == 2 && cases[0]["r"] == 2 && cases[1]["r"] == 3, "r = 2 (4|1), r = 3 (5|1)");
  return o;
}

Outcome gr_r_1() {
  Outcome o;
  auto c = verify("pluecker", 2);
  c.case_ = "r|1";
  const auto r = run(c);
  clean(o, r);
  for (const char* id : {"pluecker/r1", "pluecker/theta_antisymmetry", "pluecker/covariance",
                         "pluecker/theta_two_paths"}) {
    o.require(count(r, id) > 0, std::string(id) + " checked");
  }
  o.require(json::parse(r.details)["r|1"].size() == 3, "(2,4), (2,5), (3,5)");
  return o;
}

Outcome combinatorics() {
  Outcome o;
  const std::size_t expected[] = {0, 0, 0, 0, 2, 10, 42};
  for (int n = 4; n <= 8; ++n) {
    RunConfig c;
    c.command = "exchange-graph";
    c.n = n;
    const auto r = run(c);
    clean(o, r);
    const auto d = json::parse(r.details);
    if (n <= 6) o.require(d["vertices"] == expected[n], "vertex count n=" + std::to_string(n));
    o.require(d["connected"] == true, "connected n=" + std::to_string(n));
    o.require(count(r, "exchange/quotient_is_flip_graph") == 1, "quotient checked");
  }
  return o;
}

Outcome mutation() {
  Outcome o;
  auto c = verify("cluster-walk", 10);
  c.n = 6;
  c.steps = 1000;
  const auto r = run(c);
  clean(o, r, 60000);
  o.require(json::parse(r.details)["steps_applied"] == 10000, "all steps applied");
  o.require(count(r, "cluster/even_round_trip") > 0 && count(r, "cluster/odd_round_trip") > 0,
            "round trips");
  o.note += (o.note.empty() ? "" : "; ") + std::to_string(static_cast<long>(r.elapsed_ms)) + " ms";
  return o;
}

Outcome ptolemy() {
  Outcome o;
  const auto r = run(verify("ptolemy", 100, 7));
  clean(o, r, 5000);
  for (const auto& t : json::parse(r.details)["trials"]) {
    o.require(t["pass_sigma_theta"] == true && t["pass_bar_ptolemy"] == true, "per-trial flags");
  }
  o.require(count(r, "ptolemy/degenerate") == 100 && count(r, "ptolemy/classical_pluecker") == 100,
            "degeneration checked");
  return o;
}

Outcome determinism() {
  Outcome o;
  auto same = [&](const RunConfig& c) {
    const auto a = report_to_json(run(c), false);
    const auto b = report_to_json(run(c), false);
    o.require(a == b, "report differs: " + c.suite);
  };
  same(verify("ptolemy", 30, 7));
  same(verify("berezinian", 3, 11));
  same(verify("wrong-matrix", 3, 11));
  auto walk = verify("cluster-walk", 2, 3);
  walk.steps = 200;
  same(walk);
  for (const char* fmt : {"dot", "json"}) {
    RunConfig c;
    c.command = "exchange-graph";
    c.n = 6;
    c.format = fmt;
    c.out = "acceptance_exchange_6." + std::string(fmt);
    run(c);
    const auto first = slurp(c.out);
    run(c);
    o.require(!first.empty() && slurp(c.out) == first, std::string(fmt) + " export differs");
    std::remove(c.out.c_str());
  }
  return o;
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"Berezinian core", berezinian},
      {"wrong-matrix identities", wrong_matrix},
      {"Gr_{2|0}(n|1) and essential relations", gr2_0},
      {"Gr_{r|1}(n|1) reduced relations", gr_r_1},
      {"cluster combinatorics", combinatorics},
      {"mutation exactness", mutation},
      {"super Ptolemy", ptolemy},
      {"determinism", determinism},
  };
  int failed = 0;
  int k = 0;
  for (const auto& [name, fn] : criteria) {
    ++k;
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o.pass = false;
      o.note = std::string("exception: ") + e.what();
    }
    failed += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << k << " (" << name << ")"
              << (o.note.empty() ? "" : ": " + o.note) << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
