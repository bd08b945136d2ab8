#pragma once

#include <algorithm>
#include <cstdio>
#include <deque>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "sticky_manet/scenario.hpp"
#include "sticky_manet/trace.hpp"

namespace sticky_manet {

// ---------------------------------------------------------------------------
// Confidentiality audit

struct Violation {
  double time = 0.0;
  NodeId node;
  MessageId msg;
  std::string reason;
};

struct AuditResult {
  std::vector<Violation> violations;

  bool pass() const { return violations.empty(); }
};

// Checks a trace against the policies the scenario's originators attached:
// every delivery lands in a permitted group and nothing is sent back to a
// message's originator. Plain traffic is unrestricted by group.
inline AuditResult audit_confidentiality(std::span<const TraceRecord> records,
                                         const Scenario& scenario) {
  const MessageCatalog catalog = message_catalog(scenario);
  AuditResult result;
  for (const TraceRecord& r : records) {
    if (r.event == TraceEvent::kSend && r.peer && *r.peer == r.msg.originator) {
      result.violations.push_back({r.time, r.node, r.msg, "sent back to originator " +
                                                              std::to_string(r.peer->value)});
    }
    if (r.event != TraceEvent::kDeliver) continue;
    auto info = catalog.find(r.msg);
    if (info == catalog.end()) {
      result.violations.push_back({r.time, r.node, r.msg, "delivery of a message the scenario never originates"});
      continue;
    }
    const NodeSpec* node = scenario.find_node(r.node);
    if (!node) {
      result.violations.push_back({r.time, r.node, r.msg, "delivery at a node outside the scenario"});
      continue;
    }
    if (info->second.permitted && !info->second.permitted->contains(node->group)) {
      result.violations.push_back({r.time, r.node, r.msg,
                                   "group " + std::to_string(node->group.value) +
                                       " is not permitted by the originator"});
    }
  }
  return result;
}

inline AuditResult audit_confidentiality(const Trace& trace, const Scenario& scenario) {
  return audit_confidentiality(trace.records, scenario);
}

// ---------------------------------------------------------------------------
// Reachability oracle

// Nodes a group-restricted flood from `originator` must reach, computed by
// plain breadth-first search over the static topology. Shares nothing with
// the protocol agents.
inline std::set<NodeId> oracle_delivery_set(const Scenario& scenario, NodeId originator,
                                            const std::set<GroupId>& permitted) {
  const auto& nodes = scenario.nodes;
  std::vector<bool> reached(nodes.size(), false);
  std::deque<std::size_t> frontier;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].id == originator) {
      reached[i] = true;
      frontier.push_back(i);
    }
  }
  while (!frontier.empty()) {
    const NodeSpec& from = nodes[frontier.front()];
    frontier.pop_front();
    for (std::size_t j = 0; j < nodes.size(); ++j) {
      const NodeSpec& to = nodes[j];
      if (reached[j] || to.id == originator || !permitted.contains(to.group)) continue;
      const double dx = to.position.x - from.position.x;
      const double dy = to.position.y - from.position.y;
      if (dx * dx + dy * dy <= from.range * from.range) {
        reached[j] = true;
        frontier.push_back(j);
      }
    }
  }
  std::set<NodeId> out;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (reached[i] && nodes[i].id != originator) out.insert(nodes[i].id);
  }
  return out;
}

// Nodes with a DELIVER record, per message.
inline std::map<MessageId, std::set<NodeId>> delivered_sets(std::span<const TraceRecord> records) {
  std::map<MessageId, std::set<NodeId>> out;
  for (const TraceRecord& r : records) {
    if (r.event == TraceEvent::kDeliver) out[r.msg].insert(r.node);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Delay report

struct DelayStats {
  std::size_t originated = 0;
  std::size_t delivered = 0;
  std::optional<double> mean;
  std::optional<double> min;
  std::optional<double> max;
};

struct FlowDelay {
  std::size_t flow = 0;
  NodeId src;
  NodeId dst;
  DelayStats stats;
};

struct DelayReport {
  DelayStats overall;  // one sample per delivered copy, any node
  std::vector<FlowDelay> flows;  // samples only at each flow's destination
};

namespace detail {

class DelayAccumulator {
 public:
  void add(double d) {
    sum_ += d;
    min_ = std::min(min_, d);
    max_ = std::max(max_, d);
    ++n_;
  }

  void fill(DelayStats& s) const {
    s.delivered = n_;
    if (n_ == 0) return;
    s.mean = sum_ / static_cast<double>(n_);
    s.min = min_;
    s.max = max_;
  }

 private:
  double sum_ = 0.0;
  double min_ = std::numeric_limits<double>::infinity();
  double max_ = -std::numeric_limits<double>::infinity();
  std::size_t n_ = 0;
};

}  // namespace detail

inline DelayReport delay_report(std::span<const TraceRecord> records, const MessageCatalog& messages) {
  DelayReport report;
  std::size_t flow_count = 0;
  for (const auto& [id, info] : messages) {
    if (info.flow) flow_count = std::max(flow_count, *info.flow + 1);
  }
  report.flows.resize(flow_count);
  for (std::size_t i = 0; i < flow_count; ++i) report.flows[i].flow = i;
  for (const auto& [id, info] : messages) {
    if (!info.flow) continue;
    FlowDelay& f = report.flows[*info.flow];
    f.src = id.originator;
    f.dst = info.flow_dst.value_or(NodeId{});
    ++f.stats.originated;
  }
  report.overall.originated = messages.size();

  detail::DelayAccumulator overall;
  std::vector<detail::DelayAccumulator> per_flow(flow_count);
  for (const TraceRecord& r : records) {
    if (r.event != TraceEvent::kDeliver) continue;
    auto info = messages.find(r.msg);
    if (info == messages.end()) continue;
    const double delay = r.time - info->second.created_at;
    overall.add(delay);
    if (info->second.flow && info->second.flow_dst == r.node) per_flow[*info->second.flow].add(delay);
  }
  overall.fill(report.overall);
  for (std::size_t i = 0; i < flow_count; ++i) per_flow[i].fill(report.flows[i].stats);
  return report;
}

inline DelayReport delay_report(const Trace& trace) {
  return delay_report(trace.records, trace.messages);
}

// ---------------------------------------------------------------------------
// Rendering

namespace detail {

inline std::string seconds_or_dash(const std::optional<double>& v) {
  if (!v) return "-";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9f", *v);
  return buf;
}

}  // namespace detail

inline std::string format_report_text(const DelayReport& r) {
  using detail::seconds_or_dash;
  std::ostringstream out;
  auto line = [&](const std::string& label, const DelayStats& s) {
    out << label << ": originated=" << s.originated << " delivered=" << s.delivered
        << " mean=" << seconds_or_dash(s.mean) << " min=" << seconds_or_dash(s.min)
        << " max=" << seconds_or_dash(s.max) << '\n';
  };
  line("all copies", r.overall);
  for (const FlowDelay& f : r.flows) {
    line("flow " + std::to_string(f.flow) + " (" + std::to_string(f.src.value) + "->" +
             std::to_string(f.dst.value) + ")",
         f.stats);
  }
  return out.str();
}

inline std::string format_report_csv(const DelayReport& r) {
  using detail::seconds_or_dash;
  std::ostringstream out;
  out << "scope,src,dst,originated,delivered,mean_s,min_s,max_s\n";
  auto row = [&](const std::string& scope, const std::string& src, const std::string& dst,
                 const DelayStats& s) {
    auto cell = [](const std::optional<double>& v) {
      return v ? seconds_or_dash(v) : std::string();
    };
    out << scope << ',' << src << ',' << dst << ',' << s.originated << ',' << s.delivered << ','
        << cell(s.mean) << ',' << cell(s.min) << ',' << cell(s.max) << '\n';
  };
  row("all", "", "", r.overall);
  for (const FlowDelay& f : r.flows) {
    row("flow" + std::to_string(f.flow), std::to_string(f.src.value), std::to_string(f.dst.value),
        f.stats);
  }
  return out.str();
}

inline std::string format_audit(const AuditResult& a) {
  if (a.pass()) return "audit: PASS\n";
  std::ostringstream out;
  out << "audit: FAIL (" << a.violations.size() << " violations)\n";
  for (const Violation& v : a.violations) {
    char time[64];
    std::snprintf(time, sizeof time, "%.9f", v.time);
    out << "  " << time << " node " << v.node.value << " msg " << to_string(v.msg) << ": "
        << v.reason << '\n';
  }
  return out.str();
}

}  // namespace sticky_manet
