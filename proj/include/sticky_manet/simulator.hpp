#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <queue>
#include <variant>
#include <vector>

#include "sticky_manet/node_agent.hpp"
#include "sticky_manet/packet.hpp"
#include "sticky_manet/radio.hpp"
#include "sticky_manet/scenario.hpp"
#include "sticky_manet/trace.hpp"

namespace sticky_manet {

enum class EventKind { kOriginate, kCbrTick, kTransmit, kReceive, kForwardDue };

struct OriginateTask {
  std::uint32_t payload_bytes = 0;
  bool policied = true;
  std::optional<std::size_t> flow;
};

struct FrameTask {
  std::shared_ptr<const wire::Bytes> frame;
  MessageId msg;
  NodeId from;
  NodeId to;
  bool policied = true;
};

struct Event {
  double time = 0.0;
  std::uint64_t seq = 0;
  EventKind kind = EventKind::kOriginate;
  NodeId subject;
  std::variant<OriginateTask, FrameTask, MessageId> task;
};

// Single-threaded discrete-event run of one scenario.
//
// Events fire in (time, seq) order where seq is the scheduling order, so a
// run is a pure function of the scenario. Each node owns one transmitter:
// frames queue behind each other and never overlap on the air.
class Simulator {
 public:
  explicit Simulator(Scenario scenario, std::uint64_t seed = 0)
      : scenario_(std::move(scenario)), seed_(seed) {
    validate(scenario_);
    nodes_.reserve(scenario_.nodes.size());
    for (const NodeSpec& spec : scenario_.nodes) {
      index_.emplace(spec.id, nodes_.size());
      NodeState& n = nodes_.emplace_back(spec.id, spec.group, spec.position, spec.range);
      n.default_policy = scenario_.policy_for(spec.id);
      neighbors_.push_back(neighbors_of(spec.id, scenario_.nodes));
    }
    tx_free_at_.assign(nodes_.size(), 0.0);
  }

  Trace run() {
    for (const ScheduledOrigination& o : origination_schedule(scenario_)) {
      schedule(o.time, o.flow ? EventKind::kCbrTick : EventKind::kOriginate, o.node,
               OriginateTask{o.payload_bytes, o.policied, o.flow});
    }
    while (!queue_.empty()) {
      if (scenario_.end_time && queue_.top().time > *scenario_.end_time) break;
      Event ev = queue_.top();
      queue_.pop();
      dispatch(ev);
    }
    return std::move(trace_);
  }

  const NodeState& node(NodeId id) const { return nodes_.at(index_.at(id)); }
  std::uint64_t seed() const { return seed_; }

 private:
  struct Later {
    bool operator()(const Event& a, const Event& b) const {
      if (a.time != b.time) return a.time > b.time;
      return a.seq > b.seq;
    }
  };

  template <typename Task>
  void schedule(double time, EventKind kind, NodeId subject, Task task) {
    queue_.push(Event{time, next_seq_++, kind, subject, std::move(task)});
  }

  NodeState& state(NodeId id) { return nodes_[index_.at(id)]; }
  std::size_t index(NodeId id) const { return index_.at(id); }

  void record(double time, TraceEvent event, NodeId node, std::optional<NodeId> peer,
              MessageId msg, std::size_t size) {
    trace_.records.push_back(TraceRecord{time, event, node, peer, msg,
                                         static_cast<std::uint32_t>(size), state(node).group});
  }

  void dispatch(const Event& ev) {
    switch (ev.kind) {
      case EventKind::kOriginate:
      case EventKind::kCbrTick:
        on_originate(ev.time, ev.subject, std::get<OriginateTask>(ev.task));
        break;
      case EventKind::kTransmit:
        on_transmit(ev.time, std::get<FrameTask>(ev.task));
        break;
      case EventKind::kReceive:
        on_receive(ev.time, std::get<FrameTask>(ev.task));
        break;
      case EventKind::kForwardDue:
        on_forward(ev.time, ev.subject, std::get<MessageId>(ev.task));
        break;
    }
  }

  void on_originate(double now, NodeId id, const OriginateTask& task) {
    NodeState& n = state(id);
    wire::Bytes payload(task.payload_bytes);
    for (std::size_t i = 0; i < payload.size(); ++i) {
      payload[i] = static_cast<std::uint8_t>((n.next_seq + i) & 0xff);
    }
    std::optional<Policy> policy;
    if (task.policied) policy = n.default_policy;
    Packet p = originate(n, std::move(payload), std::move(policy), now);

    MessageInfo info;
    info.created_at = now;
    if (p.policy) info.permitted = p.policy->permitted;
    info.flow = task.flow;
    if (task.flow) info.flow_dst = scenario_.flows[*task.flow].dst;
    trace_.messages.emplace(p.id, std::move(info));

    disseminate(now, n, p);
  }

  void on_forward(double now, NodeId id, const MessageId& msg) {
    NodeState& n = state(id);
    disseminate(now, n, forward(n, msg));
  }

  // Queues one unicast frame per destination selected by pep_out.
  void disseminate(double now, const NodeState& n, const Packet& p) {
    const auto targets = pep_out(n, p, neighbors_[index(n.id)]);
    if (targets.empty()) return;
    auto frame = std::make_shared<const wire::Bytes>(encode_frame(p));
    const double airtime = transmission_time(8.0 * static_cast<double>(frame->size()), scenario_.radio);
    double& free_at = tx_free_at_[index(n.id)];
    for (NodeId to : targets) {
      const double start = std::max(now, free_at);
      free_at = start + airtime;
      schedule(start, EventKind::kTransmit, n.id,
               FrameTask{frame, p.id, n.id, to, p.policy.has_value()});
    }
  }

  void on_transmit(double now, const FrameTask& f) {
    record(now, TraceEvent::kSend, f.from, f.to, f.msg, f.frame->size());
    const NodeSpec& a = scenario_.nodes[index(f.from)];
    const NodeSpec& b = scenario_.nodes[index(f.to)];
    const double dist = std::sqrt(squared_distance(a.position, b.position));
    const double delay = hop_delay(8.0 * static_cast<double>(f.frame->size()), dist, scenario_.radio);
    schedule(now + delay, EventKind::kReceive, f.to, f);
  }

  void on_receive(double now, const FrameTask& f) {
    record(now, TraceEvent::kRecv, f.to, f.from, f.msg, f.frame->size());
    NodeState& n = state(f.to);
    DeliveryOutcome outcome = pep_in(n, *f.frame, LinkInfo{f.from, f.policied});
    if (auto* d = std::get_if<Delivered>(&outcome)) {
      record(now, TraceEvent::kDeliver, f.to, f.from, f.msg, d->packet.payload.size());
      schedule(now + scenario_.forward_delay, EventKind::kForwardDue, f.to, f.msg);
    } else if (std::holds_alternative<Duplicate>(outcome)) {
      record(now, TraceEvent::kDropDup, f.to, f.from, f.msg, f.frame->size());
    } else {
      record(now, TraceEvent::kDropMalformed, f.to, f.from, f.msg, f.frame->size());
    }
  }

  Scenario scenario_;
  std::uint64_t seed_;
  std::vector<NodeState> nodes_;
  std::map<NodeId, std::size_t> index_;
  std::vector<std::vector<Neighbor>> neighbors_;
  std::vector<double> tx_free_at_;
  std::priority_queue<Event, std::vector<Event>, Later> queue_;
  std::uint64_t next_seq_ = 0;
  Trace trace_;
};

// Seed is accepted for interface symmetry with the scenario generators; the
// event loop itself draws no randomness.
inline Trace run(const Scenario& scenario, std::uint64_t seed = 0) {
  return Simulator(scenario, seed).run();
}

}  // namespace sticky_manet
