#include <CLI11.hpp>
#include <iostream>

#include "commands.hpp"

int main(int argc, char** argv) {
  using steiner::cli::RunConfig;
  RunConfig cfg;
  CLI::App app{"Sieve for block-transitive Steiner 3-designs with exceptional socle"};
  app.require_subcommand(1);
  app.fallthrough();

  std::uint64_t seed = cfg.seed;
  unsigned workers = 0;
  app.add_option("--seed", seed, "Seed for randomized primality rounds");
  app.add_option("--workers", workers, "OpenMP worker threads")->check(CLI::PositiveNumber);

  auto* xgcd = app.add_subcommand("xgcd-cert", "Print the gcd certificates of a candidate");
  xgcd->add_option("--candidate", cfg.candidate, "Catalog id")->required();
  xgcd->add_option("--out", cfg.out, "Write the certificates as JSON");

  auto* sieve = app.add_subcommand("sieve", "Sieve one candidate or all of them");
  sieve->add_option("--candidate", cfg.candidate, "Catalog id or 'all'")->capture_default_str();
  sieve->add_option("--qcap", cfg.qcap, "Largest q examined");
  sieve->add_option("--out", cfg.out, "Report path (default sieve-report.json)");
  sieve->add_flag("--long", cfg.long_run, "Default qcap 100000 instead of 1000");

  auto* plane = app.add_subcommand("build-plane", "Build and verify the Suzuki-Tits inversive plane");
  plane->add_option("--e", cfg.e, "Odd field exponent, q = 2^e")->required();
  plane->add_option("--out", cfg.out, "Design path (default inversive-plane-e<e>.txt)");
  plane->add_option("--emit-group", cfg.emit_group, "Also write the Sz(q) generators");
  plane->add_flag("--long", cfg.long_run, "Allow e = 5");

  auto* verify = app.add_subcommand("verify", "Check a design file, optionally against a group");
  verify->add_option("design", cfg.design_path, "Design file")->required();
  verify->add_option("--group", cfg.group_path, "Group file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : steiner::cli::kUsage;
  }
  cfg.command = app.get_subcommands().front()->get_name();
  cfg.seed = seed;
  if (workers > 0) cfg.workers = workers;
  return steiner::cli::run(cfg, std::cout, std::cerr);
}
