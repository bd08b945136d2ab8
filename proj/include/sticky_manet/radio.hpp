#pragma once

#include <algorithm>
#include <vector>

#include "sticky_manet/node_agent.hpp"
#include "sticky_manet/scenario.hpp"

namespace sticky_manet {

inline double squared_distance(const Position& a, const Position& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

// Unit-disk reachability: closed ball of the sender's radius.
inline bool in_range(const Position& from, double range, const Position& to) {
  return squared_distance(from, to) <= range * range;
}

// Nodes the given node can reach, ascending by id. Links may be one-way.
inline std::vector<Neighbor> neighbors_of(NodeId node, const std::vector<NodeSpec>& topology) {
  std::vector<Neighbor> out;
  auto self = std::find_if(topology.begin(), topology.end(),
                           [node](const NodeSpec& n) { return n.id == node; });
  if (self == topology.end()) return out;
  for (const NodeSpec& other : topology) {
    if (other.id == node) continue;
    if (in_range(self->position, self->range, other.position)) {
      out.push_back(Neighbor{other.id, other.group});
    }
  }
  std::sort(out.begin(), out.end(), [](const Neighbor& a, const Neighbor& b) { return a.id < b.id; });
  return out;
}

inline double transmission_time(double bits, const RadioModel& model) {
  return bits / model.bandwidth_bps;
}

// Time from the first bit leaving the sender to the frame being handed to
// the receiver's agent. Queueing is accounted for by the scheduler.
inline double hop_delay(double bits, double distance_m, const RadioModel& model) {
  return transmission_time(bits, model) + distance_m / model.propagation_mps + model.processing_s;
}

}  // namespace sticky_manet
