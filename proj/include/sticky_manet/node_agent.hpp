#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "sticky_manet/packet.hpp"
#include "sticky_manet/policy.hpp"
#include "sticky_manet/types.hpp"

namespace sticky_manet {

struct Position {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Position&, const Position&) = default;
};

struct Neighbor {
  NodeId id;
  GroupId group;

  friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

struct StoredMessage {
  wire::Bytes payload;
  double created_at = 0.0;
};

// Per-node memory for delivered messages and the policies that govern them.
// Both maps always hold the same keys. A nullopt policy marks plain traffic.
struct Controller {
  std::map<MessageId, std::optional<Policy>> policies;
  std::map<MessageId, StoredMessage> messages;
};

struct NodeState {
  NodeId id;
  GroupId group;
  Position position;
  double range = 0.0;  // meters
  Policy default_policy;
  Controller controller;
  std::set<MessageId> seen;
  std::uint32_t next_seq = 0;

  NodeState() = default;
  NodeState(NodeId node, GroupId g, Position pos, double r)
      : id(node), group(g), position(pos), range(r), default_policy{node, {g}, 0} {}
};

// Shared decision primitive: may a copy governed by `policy` go to `dest`?
inline Decision pdp_decide(const Policy& policy, NodeId dest, GroupId dest_group,
                           NodeId originator) {
  if (dest == originator) return Decision::kDeny;
  return evaluate_policy(policy, dest_group);
}

// Outbound enforcement: selects which neighbors receive this copy.
// Plain packets skip the group check but still never return to the
// originator. The result is ascending and duplicate-free.
inline std::vector<NodeId> pep_out(const NodeState& node, const Packet& packet,
                                   std::span<const Neighbor> neighbors) {
  std::vector<NodeId> out;
  for (const Neighbor& n : neighbors) {
    if (n.id == node.id) continue;
    if (packet.policy) {
      if (pdp_decide(*packet.policy, n.id, n.group, packet.originator()) != Decision::kAllow) {
        continue;
      }
    } else if (n.id == packet.originator()) {
      continue;
    }
    out.push_back(n.id);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Link-layer facts about a received frame.
struct LinkInfo {
  NodeId from;
  bool policied = true;
};

struct Delivered {
  Packet packet;
};

struct Duplicate {
  MessageId id;
};

struct Malformed {
  std::string reason;
};

using DeliveryOutcome = std::variant<Delivered, Duplicate, Malformed>;

// Inbound enforcement: splits policy from payload and updates the Controller.
// A frame that fails to decode is dropped without storing anything.
inline DeliveryOutcome pep_in(NodeState& node, std::span<const std::uint8_t> frame,
                              const LinkInfo& link) {
  Packet packet;
  try {
    packet = decode_frame(frame, link.policied);
  } catch (const Error& e) {
    return Malformed{e.what()};
  }

  auto stored = node.controller.policies.find(packet.id);
  if (node.seen.contains(packet.id)) {
    if (stored != node.controller.policies.end() && stored->second && packet.policy) {
      stored->second = merge_policy(*stored->second, *packet.policy);
    }
    return Duplicate{packet.id};
  }

  node.seen.insert(packet.id);
  std::optional<Policy> installed;
  if (packet.policy) installed = merge_policy(*packet.policy, *packet.policy);
  node.controller.policies[packet.id] = installed;
  node.controller.messages[packet.id] = StoredMessage{packet.payload, packet.created_at};
  return Delivered{std::move(packet)};
}

// Authors a new message. Does not transmit; the caller runs pep_out.
inline Packet originate(NodeState& node, wire::Bytes payload, std::optional<Policy> policy,
                        double now) {
  if (policy && policy->originator != node.id) {
    throw InvalidScenario("node " + std::to_string(node.id.value) +
                          " cannot originate under a policy authored by node " +
                          std::to_string(policy->originator.value));
  }
  Packet p;
  p.id = MessageId{node.id, node.next_seq++};
  p.sender = node.id;
  p.created_at = now;
  p.policy = std::move(policy);
  p.payload = std::move(payload);
  node.seen.insert(p.id);
  return p;
}

// Rebuilds a stored message for relaying, carrying the locally merged policy.
inline Packet forward(const NodeState& node, const MessageId& id) {
  auto msg = node.controller.messages.find(id);
  if (msg == node.controller.messages.end()) {
    throw UnknownMessage("node " + std::to_string(node.id.value) + " holds no message " +
                         to_string(id));
  }
  Packet p;
  p.id = id;
  p.sender = node.id;
  p.created_at = msg->second.created_at;
  p.policy = node.controller.policies.at(id);
  p.payload = msg->second.payload;
  return p;
}

}  // namespace sticky_manet
