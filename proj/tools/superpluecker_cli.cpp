// superpluecker: runs the verification suites and exports exchange graphs.
//
//   superpluecker verify ptolemy --trials 100 --seed 7
//   superpluecker verify pluecker --case "r|1" --trials 5
//   superpluecker exchange-graph --n 5 --format dot --out g5.dot
//   superpluecker triangulations --n 6
//
// The JSON report goes to stdout. Exit code 0 = all checks passed, 1 = some
// check failed, 2 = usage error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "superpluecker/harness.hpp"

namespace {

using superpluecker::RunConfig;

void add_dimensions(CLI::App* app, RunConfig& c) {
  app->add_option("--n", c.n, "even dimension / polygon size");
  app->add_option("--r", c.r, "even rank");
  app->add_option("--s", c.s, "odd rank");
  app->add_option("--m", c.m, "odd dimension");
  app->add_flag("--unsafe", c.unsafe, "allow n > 12 and r > 4");
}

void add_sampling(CLI::App* app, RunConfig& c, bool& seed_given) {
  app->add_option("--trials", c.trials, "trials per check (default 100)")
      ->check(CLI::PositiveNumber);
  app->add_option_function<std::uint64_t>(
      "--seed",
      [&](std::uint64_t s) {
        c.seed = s;
        seed_given = true;
      },
      "master seed (default: $SUPERPLUECKER_SEED or 0)");
  app->add_option("--generators", c.generators, "override the Grassmann generator count N");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact checks for super Pluecker coordinates and super cluster mutations"};
  app.require_subcommand(1);

  RunConfig config;
  bool seed_given = false;
  std::string report_path;

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("suite", config.suite, "berezinian | wrong-matrix | pluecker | cluster-walk | ptolemy")
      ->required()
      ->check(CLI::IsMember({"berezinian", "wrong-matrix", "pluecker", "cluster-walk", "ptolemy"}));
  add_dimensions(verify, config);
  add_sampling(verify, config, seed_given);
  verify->add_option("--case", config.case_, "pluecker family: 2|0, r|0 or r|1 (default all)");
  verify->add_option("--steps", config.steps, "cluster-walk length (default 1000)");
  verify->add_option("--out", report_path, "also write the JSON report here");

  auto* graph = app.add_subcommand("exchange-graph", "enumerate the exchange graph of decorated triangulations");
  add_dimensions(graph, config);
  graph->add_option("--out", config.out, "export file");
  graph->add_option("--format", config.format, "export format")
      ->check(CLI::IsMember({"dot", "json"}));

  auto* tri = app.add_subcommand("triangulations", "count triangulations of the n-gon");
  add_dimensions(tri, config);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  config.command = app.get_subcommands().front()->get_name();
  if (!seed_given) {
    if (const char* env = std::getenv("SUPERPLUECKER_SEED"); env && *env) {
      try {
        std::size_t used = 0;
        config.seed = std::stoull(env, &used);
        if (used != std::string(env).size()) throw std::invalid_argument(env);
      } catch (const std::exception&) {
        std::cerr << "error: SUPERPLUECKER_SEED is not an unsigned integer\n";
        return 2;
      }
    }
  }

  try {
    const auto report = superpluecker::run(config);
    const auto text = superpluecker::report_to_json(report);
    std::cout << text << '\n';
    if (!report_path.empty()) {
      std::ofstream f(report_path, std::ios::binary);
      f << text << '\n';
      if (!f) {
        std::cerr << "error: cannot write " << report_path << '\n';
        return 2;
      }
    }
    if (report.exit_code() != 0) {
      std::cerr << report.failures.size() << " check(s) failed\n";
    }
    return report.exit_code();
  } catch (const superpluecker::UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
