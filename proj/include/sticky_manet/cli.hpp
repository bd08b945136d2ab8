#pragma once

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>

#include "sticky_manet/metrics.hpp"
#include "sticky_manet/scenario.hpp"
#include "sticky_manet/scenarios.hpp"
#include "sticky_manet/simulator.hpp"
#include "sticky_manet/trace.hpp"
#include "sticky_manet/verify.hpp"

namespace sticky_manet::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitViolation = 2;

inline constexpr const char* kTraceDirEnv = "STICKY_MANET_TRACE_DIR";

enum class ReportFormat { kText, kCsv };

struct RunConfig {
  std::string scenario_path;
  std::optional<std::string> trace_out_path;
  ReportFormat report_format = ReportFormat::kText;
  std::uint64_t seed = 0;
  bool quiet = false;
};

// <trace dir>/<scenario stem>.tr, where the directory defaults to the
// working directory unless STICKY_MANET_TRACE_DIR is set.
inline std::filesystem::path default_trace_path(const std::string& scenario_path) {
  std::filesystem::path dir = ".";
  if (const char* env = std::getenv(kTraceDirEnv); env && *env) dir = env;
  return dir / (std::filesystem::path(scenario_path).stem().string() + ".tr");
}

inline std::string format_node_set(const std::set<NodeId>& nodes) {
  std::string out = "{";
  for (NodeId n : nodes) out += (out.size() > 1 ? "," : "") + std::to_string(n.value);
  return out + "}";
}

inline int cmd_run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    const Scenario scenario = load_scenario(config.scenario_path);
    const Trace trace = run(scenario, config.seed);
    const std::filesystem::path trace_path =
        config.trace_out_path ? std::filesystem::path(*config.trace_out_path)
                              : default_trace_path(config.scenario_path);
    if (trace_path.has_parent_path()) std::filesystem::create_directories(trace_path.parent_path());
    save_trace(trace_path.string(), trace);

    const AuditResult audit = audit_confidentiality(trace, scenario);
    if (!config.quiet) {
      out << "trace: " << trace_path.string() << " (" << trace.records.size() << " records)\n";
      const auto delivered = delivered_sets(trace.records);
      for (const auto& [id, info] : trace.messages) {
        if (info.flow) continue;
        auto it = delivered.find(id);
        out << "delivered " << to_string(id) << " -> "
            << format_node_set(it == delivered.end() ? std::set<NodeId>{} : it->second) << '\n';
      }
      const DelayReport report = delay_report(trace);
      out << (config.report_format == ReportFormat::kCsv ? format_report_csv(report)
                                                          : format_report_text(report));
    }
    out << format_audit(audit);
    return audit.pass() ? kExitOk : kExitViolation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
}

inline void write_text_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot write '" + path.string() + "'");
  f << text;
  if (!f) throw Error("error while writing '" + path.string() + "'");
}

// Writes a built-in scenario. delay_sweep treats out_path as a directory and
// fills it with one file per (flow count, variant) pair.
inline int cmd_gen(const std::string& name, const std::string& out_path, std::ostream& out,
                   std::ostream& err) {
  try {
    if (name == "fig5") {
      write_text_file(out_path, write_scenario(scenarios::fig5()));
      out << out_path << '\n';
    } else if (name == "scenario3node") {
      write_text_file(out_path, write_scenario(scenarios::three_node()));
      out << out_path << '\n';
    } else if (name == "delay_sweep") {
      for (std::size_t flows = 1; flows <= scenarios::kSweepMaxFlows; ++flows) {
        for (bool policied : {true, false}) {
          const auto path = std::filesystem::path(out_path) /
                            (scenarios::delay_sweep_name(flows, policied) + ".scn");
          write_text_file(path, write_scenario(scenarios::delay_sweep(flows, policied)));
          out << path.string() << '\n';
        }
      }
    } else {
      err << "error: unknown scenario '" << name << "' (expected fig5, scenario3node or delay_sweep)\n";
      return kExitError;
    }
    return kExitOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
}

inline int cmd_fuzz(std::size_t n_scenarios, std::size_t max_nodes, std::uint64_t seed,
                    std::ostream& out, std::ostream& err) {
  if (n_scenarios == 0 || max_nodes == 0) {
    err << "error: scenario count and node bound must be positive\n";
    return kExitError;
  }
  std::size_t messages = 0;
  for (std::size_t i = 0; i < n_scenarios; ++i) {
    const std::uint64_t scenario_seed = fuzz_scenario_seed(seed, i);
    const Scenario s = scenarios::random_scenario(scenario_seed, max_nodes);
    if (auto failure = check_scenario(s, &messages)) {
      out << "FAIL scenario " << i << " (scenario seed " << scenario_seed
          << "): " << failure->reason << '\n';
      out << "--- reproduction scenario ---\n" << write_scenario(s);
      return kExitViolation;
    }
  }
  out << "fuzz: " << n_scenarios << " scenarios, " << messages
      << " messages; delivery sets match the oracle, audit PASS\n";
  return kExitOk;
}

inline int cmd_audit(const std::string& trace_path, const std::string& scenario_path,
                     std::ostream& out, std::ostream& err) {
  try {
    const Scenario scenario = load_scenario(scenario_path);
    const auto records = load_trace_records(trace_path);
    const AuditResult audit = audit_confidentiality(records, scenario);
    out << format_audit(audit);
    return audit.pass() ? kExitOk : kExitViolation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
}

}  // namespace sticky_manet::cli
