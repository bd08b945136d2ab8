#include <set>

#include <gtest/gtest.h>

#include "sticky_manet/metrics.hpp"
#include "sticky_manet/radio.hpp"
#include "sticky_manet/scenarios.hpp"
#include "sticky_manet/simulator.hpp"
#include "sticky_manet/verify.hpp"

namespace sticky_manet {
namespace {

std::set<NodeId> node_set(std::initializer_list<std::uint32_t> v) {
  std::set<NodeId> out;
  for (auto i : v) out.insert(NodeId{i});
  return out;
}

TEST(Audit, GoldenTracePasses) {
  const Scenario s = scenarios::fig5();
  EXPECT_TRUE(audit_confidentiality(run(s), s).pass());
}

TEST(Audit, ForgedDeliveryToForeignGroup) {
  const Scenario s = scenarios::fig5();
  Trace t = run(s);
  t.records.push_back(TraceRecord{0.01, TraceEvent::kDeliver, NodeId{3}, NodeId{4},
                                  MessageId{NodeId{0}, 0}, 64, GroupId{3}});
  const AuditResult a = audit_confidentiality(t, s);
  ASSERT_EQ(a.violations.size(), 1u);
  EXPECT_EQ(a.violations[0].node, NodeId{3});
  EXPECT_EQ(a.violations[0].msg, (MessageId{NodeId{0}, 0}));
}

TEST(Audit, ForgedSendToOriginator) {
  const Scenario s = scenarios::fig5();
  const TraceRecord r{0.01, TraceEvent::kSend, NodeId{2}, NodeId{0}, MessageId{NodeId{0}, 0}, 96, GroupId{1}};
  EXPECT_EQ(audit_confidentiality(std::span(&r, 1), s).violations.size(), 1u);
}

TEST(Audit, EmptyTracePasses) {
  EXPECT_TRUE(audit_confidentiality(std::span<const TraceRecord>{}, scenarios::fig5()).pass());
}

TEST(Audit, PlainTrafficIsUnrestricted) {
  Scenario s = scenarios::fig5();
  s.originations.clear();
  s.flows.push_back(CbrFlow{NodeId{0}, NodeId{5}, 32, 0.1, 0.0, 0.0, false});
  const Trace t = run(s);
  EXPECT_EQ(delivered_sets(t.records).begin()->second, node_set({1, 2, 3, 4, 5}));
  EXPECT_TRUE(audit_confidentiality(t, s).pass());
}

// By hand on the golden layout: 0 reaches {1, 2}; only 2 is G1. 2 reaches
// {0, 4}; 0 is the originator. 4 reaches {2, 3, 5}; 3 is G3. 5 reaches {4}.
TEST(Oracle, GoldenScenario) {
  EXPECT_EQ(oracle_delivery_set(scenarios::fig5(), NodeId{0}, {GroupId{1}}), node_set({2, 4, 5}));
}

TEST(Oracle, EmptyPermittedSet) {
  EXPECT_TRUE(oracle_delivery_set(scenarios::fig5(), NodeId{0}, {}).empty());
}

TEST(Oracle, CompleteGraphReachesEveryone) {
  Scenario s;
  for (std::uint32_t i = 0; i < 7; ++i) {
    s.nodes.push_back({NodeId{i}, GroupId{static_cast<std::uint16_t>(i % 3)}, {double(i), 0.0}, 100.0});
  }
  EXPECT_EQ(oracle_delivery_set(s, NodeId{4}, s.groups()), node_set({0, 1, 2, 3, 5, 6}));
}

TEST(Oracle, MatchesSimulationOnRandomScenarios) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto failure = check_scenario(scenarios::random_scenario(fuzz_scenario_seed(7, seed), 50));
    EXPECT_FALSE(failure) << seed << ": " << failure->reason;
  }
}

TEST(Catalog, MatchesWhatTheSimulatorOriginated) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Scenario s = scenarios::random_scenario(seed, 20);
    EXPECT_EQ(run(s).messages, message_catalog(s)) << seed;
  }
  const Scenario sweep = scenarios::delay_sweep(4, true);
  EXPECT_EQ(run(sweep).messages, message_catalog(sweep));
}

TEST(DelayReport, SingleHop) {
  const Scenario s = scenarios::three_node();
  const DelayReport r = delay_report(run(s));
  const double d = hop_delay(8.0 * (20 + 14 + 64), 200.0, s.radio);
  EXPECT_EQ(r.overall.delivered, 1u);
  EXPECT_DOUBLE_EQ(*r.overall.mean, d);
  EXPECT_DOUBLE_EQ(*r.overall.min, d);
  EXPECT_DOUBLE_EQ(*r.overall.max, d);
}

// 0 --150 m-- 1 --150 m-- 2, range 200: delivery at 2 is hop + wait + hop.
TEST(DelayReport, TwoHopChain) {
  const Scenario s = parse_scenario(
      "node 0 1 0 0 200\nnode 1 1 150 0 200\nnode 2 1 300 0 200\n"
      "policy 0 permit 1\noriginate 0 0 100\n");
  const double frame_bits = 8.0 * (20 + 12 + 100);
  const double d = frame_bits / 2e6 + 150.0 / 3e8;
  const Trace t = run(s);
  for (const auto& r : t.records) {
    if (r.event == TraceEvent::kDeliver && r.node == NodeId{2}) {
      EXPECT_NEAR(r.time, d + 1e-3 + d, 1e-15);
    }
  }
  const DelayReport rep = delay_report(t);
  EXPECT_EQ(rep.overall.delivered, 2u);
  EXPECT_NEAR(*rep.overall.max, 2 * d + 1e-3, 1e-15);
  EXPECT_NEAR(*rep.overall.mean, (d + 2 * d + 1e-3) / 2, 1e-15);
}

TEST(DelayReport, EmptyTraceHasNoDelays) {
  const DelayReport r = delay_report(Trace{});
  EXPECT_EQ(r.overall.originated, 0u);
  EXPECT_EQ(r.overall.delivered, 0u);
  EXPECT_FALSE(r.overall.mean);
  EXPECT_FALSE(r.overall.min);
  EXPECT_FALSE(r.overall.max);
  EXPECT_NE(format_report_text(r).find("mean=-"), std::string::npos);
}

TEST(DelayReport, PerFlowCountsAndBounds) {
  const Scenario s = scenarios::delay_sweep(4, true);
  const DelayReport r = delay_report(run(s));
  ASSERT_EQ(r.flows.size(), 4u);
  for (const FlowDelay& f : r.flows) {
    EXPECT_EQ(f.stats.originated, 11u);
    EXPECT_EQ(f.stats.delivered, 11u);
    EXPECT_LE(*f.stats.min, *f.stats.mean);
    EXPECT_LE(*f.stats.mean, *f.stats.max);
    EXPECT_GT(*f.stats.min, 0.0);
  }
  EXPECT_EQ(r.flows[0].src, NodeId{5});
  EXPECT_EQ(r.flows[0].dst, NodeId{7});
  EXPECT_EQ(r.overall.delivered, 44u * 8u);
}

TEST(TraceFormat, ParseRoundTrip) {
  const Trace t = run(scenarios::random_scenario(5, 30));
  std::istringstream in(trace_text(t));
  const auto parsed = parse_trace(in);
  ASSERT_EQ(parsed.size(), t.records.size());
  for (std::size_t i = 0; i < parsed.size(); ++i) {
    EXPECT_EQ(format_record(parsed[i]), format_record(t.records[i]));
  }
}

TEST(TraceFormat, RejectsGarbage) {
  EXPECT_THROW(parse_record("0.1 SEND 0 1 0:0 10"), Error);
  EXPECT_THROW(parse_record("0.1 SHOUT 0 1 0:0 10 1"), Error);
  EXPECT_THROW(parse_record("0.1 SEND 0 1 00 10 1"), Error);
}

}  // namespace
}  // namespace sticky_manet
