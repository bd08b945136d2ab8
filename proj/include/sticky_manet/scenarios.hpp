#pragma once

#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "sticky_manet/scenario.hpp"

namespace sticky_manet::scenarios {

// Six nodes in three groups. Node 0 (G1) floods a message permitted to G1
// only. Fixed coordinates give the adjacency 0-1, 0-2, 2-4, 4-3, 4-5, so
// G1 members 2, 4 and 5 must receive it and nodes 1 (G2) and 3 (G3) not.
inline Scenario fig5() {
  Scenario s;
  s.comments = {
      "Six-node, three-group dissemination example.",
      "G1 = {0, 2, 4, 5}, G2 = {1}, G3 = {3}; every radio reaches 250 m.",
      "Links (<= 250 m): 0-1, 0-2, 2-4, 4-3, 4-5. Node 0 originates under 'permit 1'.",
      "Expected delivery set: {2, 4, 5}.",
  };
  const double r = 250.0;
  s.nodes = {
      {NodeId{0}, GroupId{1}, {0.0, 0.0}, r},     {NodeId{1}, GroupId{2}, {0.0, 200.0}, r},
      {NodeId{2}, GroupId{1}, {200.0, 0.0}, r},   {NodeId{3}, GroupId{3}, {400.0, 200.0}, r},
      {NodeId{4}, GroupId{1}, {400.0, 0.0}, r},   {NodeId{5}, GroupId{1}, {600.0, 0.0}, r},
  };
  s.policies[NodeId{0}] = {GroupId{1}};
  s.originations = {{NodeId{0}, 0.0, 64}};
  return s;
}

// A (British, G1) and B (US, G2) share a mission message that C (Afghan,
// G3) must never see. A's policy permits groups 1 and 2.
inline Scenario three_node() {
  Scenario s;
  s.comments = {
      "Three-node coalition example: A = node 0 (G1), B = node 1 (G2), C = node 2 (G3).",
      "A permits groups 1 and 2; B is in range of both A and C, A and C are not in range.",
      "Expected: B receives, C never does, B forwards to nobody.",
  };
  const double r = 250.0;
  s.nodes = {
      {NodeId{0}, GroupId{1}, {0.0, 0.0}, r},
      {NodeId{1}, GroupId{2}, {200.0, 0.0}, r},
      {NodeId{2}, GroupId{3}, {400.0, 0.0}, r},
  };
  s.policies[NodeId{0}] = {GroupId{1}, GroupId{2}};
  s.originations = {{NodeId{0}, 0.0, 64}};
  return s;
}

inline constexpr std::size_t kSweepMaxFlows = 4;

// Delay experiment: a cross of G1 nodes (a hub, four inner and four outer
// arm nodes, 200 m spacing, 250 m range) carrying 1..4 CBR flows between
// opposite arm tips, either policied or plain. Every flow floods through the
// hub, so added flows queue behind each other there.
//
// Forwarding is immediate and ticks are 100 ms apart, long enough for each
// tick's copies to drain. Event times are then whole multiples of one frame
// airtime plus microsecond-scale propagation, so both variants execute the
// same event order and differ only in airtime.
inline Scenario delay_sweep(std::size_t flow_count, bool policied) {
  Scenario s;
  s.comments = {
      "Delay sweep: " + std::to_string(flow_count) + " CBR flow(s), " +
          (policied ? "policied" : "plain") + " traffic.",
      "Hub 0; inner ring 1-4 at 200 m; outer tips 5-8 at 400 m (E, N, W, S). All G1.",
      "Flows run tip to opposite tip: 5->7, 6->8, 7->5, 8->6 (first N used).",
  };
  const double spacing = 200.0;
  const double dx[4] = {1.0, 0.0, -1.0, 0.0};
  const double dy[4] = {0.0, 1.0, 0.0, -1.0};
  s.nodes.push_back({NodeId{0}, GroupId{1}, {0.0, 0.0}, 250.0});
  for (std::uint32_t ring = 1; ring <= 2; ++ring) {
    for (std::uint32_t arm = 0; arm < 4; ++arm) {
      s.nodes.push_back({NodeId{4 * (ring - 1) + arm + 1}, GroupId{1},
                         {spacing * ring * dx[arm], spacing * ring * dy[arm]}, 250.0});
    }
  }
  for (const NodeSpec& n : s.nodes) s.policies[n.id] = {GroupId{1}};
  s.forward_delay = 0.0;
  const std::pair<std::uint32_t, std::uint32_t> endpoints[kSweepMaxFlows] = {
      {5, 7}, {6, 8}, {7, 5}, {8, 6}};
  for (std::size_t f = 0; f < flow_count && f < kSweepMaxFlows; ++f) {
    s.flows.push_back(CbrFlow{NodeId{endpoints[f].first}, NodeId{endpoints[f].second}, 512, 0.1,
                              1.0, 2.0, policied});
  }
  return s;
}

inline std::string delay_sweep_name(std::size_t flow_count, bool policied) {
  return "delay_sweep_" + std::to_string(flow_count) + "flow_" + (policied ? "policied" : "plain");
}

// Random static topology for property checks. Coordinates and ranges are
// whole meters so the range test has no rounding ambiguity after a round
// trip through the text format.
inline Scenario random_scenario(std::uint64_t seed, std::size_t max_nodes) {
  std::mt19937_64 rng(seed);
  auto uniform = [&](std::uint64_t lo, std::uint64_t hi) {
    return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng);
  };

  Scenario s;
  s.comments = {"Random scenario, seed " + std::to_string(seed) + ", up to " +
                std::to_string(max_nodes) + " nodes."};
  const std::size_t n = uniform(1, std::max<std::size_t>(max_nodes, 1));
  const std::uint16_t groups = static_cast<std::uint16_t>(uniform(1, 5));
  for (std::uint32_t i = 0; i < n; ++i) {
    s.nodes.push_back({NodeId{i}, GroupId{static_cast<std::uint16_t>(uniform(1, groups))},
                       {static_cast<double>(uniform(0, 1000)), static_cast<double>(uniform(0, 1000))},
                       static_cast<double>(uniform(50, 400))});
  }
  for (std::uint32_t i = 0; i < n; ++i) {
    if (uniform(0, 9) < 2) continue;  // keeps the own-group default
    std::set<GroupId> permitted;
    for (std::uint16_t g = 1; g <= groups; ++g) {
      if (uniform(0, 1)) permitted.insert(GroupId{g});
    }
    s.policies[NodeId{i}] = std::move(permitted);
  }
  const std::size_t origins = uniform(1, 3);
  for (std::size_t k = 0; k < origins; ++k) {
    s.originations.push_back({NodeId{static_cast<std::uint32_t>(uniform(0, n - 1))},
                              static_cast<double>(uniform(0, 1000)) / 1000.0,
                              static_cast<std::uint32_t>(uniform(0, 256))});
  }
  if (uniform(0, 2) == 0) {
    s.flows.push_back(CbrFlow{NodeId{static_cast<std::uint32_t>(uniform(0, n - 1))},
                              NodeId{static_cast<std::uint32_t>(uniform(0, n - 1))},
                              static_cast<std::uint32_t>(uniform(16, 512)), 0.05, 0.5, 0.6,
                              uniform(0, 1) == 1});
  }
  return s;
}

}  // namespace sticky_manet::scenarios
