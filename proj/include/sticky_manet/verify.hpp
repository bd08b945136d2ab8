#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>

#include "sticky_manet/metrics.hpp"
#include "sticky_manet/scenarios.hpp"
#include "sticky_manet/simulator.hpp"

namespace sticky_manet {

struct CheckFailure {
  std::string reason;
};

// Runs a scenario and compares every message's delivery set with the BFS
// oracle, then audits the trace. Returns the first discrepancy, if any.
inline std::optional<CheckFailure> check_scenario(const Scenario& scenario,
                                                  std::size_t* messages_checked = nullptr) {
  const Trace trace = run(scenario);
  const auto delivered = delivered_sets(trace.records);
  const auto groups = scenario.groups();
  for (const auto& [id, info] : message_catalog(scenario)) {
    const std::set<GroupId> permitted = info.permitted.value_or(groups);
    const auto expected = oracle_delivery_set(scenario, id.originator, permitted);
    auto it = delivered.find(id);
    const std::set<NodeId> got = it == delivered.end() ? std::set<NodeId>{} : it->second;
    if (got != expected) {
      auto list = [](const std::set<NodeId>& s) {
        std::string out = "{";
        for (NodeId n : s) out += (out.size() > 1 ? "," : "") + std::to_string(n.value);
        return out + "}";
      };
      return CheckFailure{"message " + to_string(id) + " delivered to " + list(got) +
                          ", oracle expects " + list(expected)};
    }
    if (messages_checked) ++*messages_checked;
  }
  const AuditResult audit = audit_confidentiality(trace, scenario);
  if (!audit.pass()) return CheckFailure{"audit: " + audit.violations.front().reason};
  return std::nullopt;
}

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Seed of the i-th scenario in a fuzz campaign.
inline std::uint64_t fuzz_scenario_seed(std::uint64_t campaign_seed, std::uint64_t index) {
  return splitmix64(campaign_seed ^ splitmix64(index));
}

}  // namespace sticky_manet
