#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "sticky_manet/cli.hpp"

namespace cli = sticky_manet::cli;

int main(int argc, char** argv) {
  CLI::App app{"Sticky-policy MANET dissemination simulator"};
  app.require_subcommand(1);

  cli::RunConfig run_config;
  std::string trace_out;
  auto* run = app.add_subcommand("run", "Run a scenario file, write its trace, report and audit");
  run->add_option("scenario", run_config.scenario_path, "Scenario file")->required();
  run->add_option("--trace-out", trace_out, "Trace output path");
  run->add_option("--report", run_config.report_format, "Report format")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, cli::ReportFormat>{{"text", cli::ReportFormat::kText},
                                                   {"csv", cli::ReportFormat::kCsv}}));
  run->add_option("--seed", run_config.seed, "Run seed");
  run->add_flag("--quiet", run_config.quiet, "Only print the audit verdict");

  std::string gen_name, gen_out;
  auto* gen = app.add_subcommand("gen", "Write a built-in scenario (fig5, scenario3node, delay_sweep)");
  gen->add_option("name", gen_name, "Scenario name")->required();
  gen->add_option("out", gen_out, "Output file (directory for delay_sweep)")->required();

  std::size_t fuzz_count = 0, fuzz_nodes = 0;
  std::uint64_t fuzz_seed = 0;
  auto* fuzz = app.add_subcommand("fuzz", "Check random scenarios against the reachability oracle");
  fuzz->add_option("count", fuzz_count, "Number of scenarios")->required();
  fuzz->add_option("max_nodes", fuzz_nodes, "Upper bound on nodes per scenario")->required();
  fuzz->add_option("seed", fuzz_seed, "Campaign seed")->required();

  std::string audit_trace, audit_scenario;
  auto* audit = app.add_subcommand("audit", "Audit a trace file against a scenario's policies");
  audit->add_option("trace", audit_trace, "Trace file")->required();
  audit->add_option("scenario", audit_scenario, "Scenario file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? cli::kExitOk : cli::kExitError;
  }

  if (run->parsed()) {
    if (!trace_out.empty()) run_config.trace_out_path = trace_out;
    return cli::cmd_run(run_config, std::cout, std::cerr);
  }
  if (gen->parsed()) return cli::cmd_gen(gen_name, gen_out, std::cout, std::cerr);
  if (fuzz->parsed()) return cli::cmd_fuzz(fuzz_count, fuzz_nodes, fuzz_seed, std::cout, std::cerr);
  return cli::cmd_audit(audit_trace, audit_scenario, std::cout, std::cerr);
}
