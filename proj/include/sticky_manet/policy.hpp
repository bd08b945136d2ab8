#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <limits>
#include <set>
#include <span>
#include <string>

#include "sticky_manet/byte_io.hpp"
#include "sticky_manet/types.hpp"

namespace sticky_manet {

// A sticky policy: the originator's list of groups allowed to hold a message.
//
// An empty permitted set is legal and forbids all further dissemination.
// version counts local merges and is bookkeeping only; it never takes part
// in a decision.
struct Policy {
  NodeId originator;
  std::set<GroupId> permitted;
  std::uint16_t version = 0;

  friend bool operator==(const Policy&, const Policy&) = default;
};

inline Decision evaluate_policy(const Policy& policy, GroupId dest_group) {
  return policy.permitted.contains(dest_group) ? Decision::kAllow : Decision::kDeny;
}

// Combines a locally held policy with a freshly received one. The permitted
// set can only shrink, so repeated merges never widen disclosure.
inline Policy merge_policy(const Policy& local, const Policy& received) {
  Policy out;
  out.originator = received.originator;
  std::set_intersection(local.permitted.begin(), local.permitted.end(),
                        received.permitted.begin(), received.permitted.end(),
                        std::inserter(out.permitted, out.permitted.end()));
  const std::uint16_t newest = std::max(local.version, received.version);
  // Saturates: the wire field is 16 bits wide.
  out.version = newest == std::numeric_limits<std::uint16_t>::max()
                    ? newest
                    : static_cast<std::uint16_t>(newest + 1);
  return out;
}

// Encoded block layout, big-endian:
//   [0,2)  total block length
//   [2,6)  originator
//   [6,8)  version
//   [8,10) group count n
//   [10, 10 + 2n) group ids, ascending
inline constexpr std::size_t kPolicyHeaderSize = 10;

// Largest permitted set whose block length still fits the 16-bit length field.
inline constexpr std::size_t kMaxPermittedGroups =
    (std::numeric_limits<std::uint16_t>::max() - kPolicyHeaderSize) / 2;

inline std::size_t encoded_policy_size(const Policy& policy) {
  return kPolicyHeaderSize + 2 * policy.permitted.size();
}

inline void encode_policy_into(const Policy& policy, wire::Bytes& out) {
  if (policy.permitted.size() > kMaxPermittedGroups) {
    throw CapacityExceeded("policy lists " + std::to_string(policy.permitted.size()) +
                           " groups, at most " + std::to_string(kMaxPermittedGroups) +
                           " fit in one block");
  }
  wire::Writer w(out);
  w.u16(static_cast<std::uint16_t>(encoded_policy_size(policy)));
  w.u32(policy.originator.value);
  w.u16(policy.version);
  w.u16(static_cast<std::uint16_t>(policy.permitted.size()));
  for (GroupId g : policy.permitted) w.u16(g.value);
}

inline wire::Bytes encode_policy(const Policy& policy) {
  wire::Bytes out;
  out.reserve(encoded_policy_size(policy));
  encode_policy_into(policy, out);
  return out;
}

inline Policy decode_policy(std::span<const std::uint8_t> bytes) {
  wire::Reader r(bytes);
  auto length = r.u16();
  auto originator = r.u32();
  auto version = r.u16();
  auto count = r.u16();
  if (!count) {
    throw MalformedPolicy("policy block shorter than its " +
                          std::to_string(kPolicyHeaderSize) + "-byte header");
  }
  if (*length != bytes.size()) {
    throw MalformedPolicy("policy length prefix " + std::to_string(*length) +
                          " disagrees with buffer size " + std::to_string(bytes.size()));
  }
  if (kPolicyHeaderSize + 2 * std::size_t{*count} > bytes.size()) {
    throw MalformedPolicy("group count " + std::to_string(*count) + " overruns the block");
  }
  Policy p;
  p.originator = NodeId{*originator};
  p.version = *version;
  for (std::uint16_t i = 0; i < *count; ++i) {
    GroupId g{*r.u16()};
    if (!p.permitted.empty() && !(*p.permitted.rbegin() < g)) {
      throw MalformedPolicy("group ids are not strictly ascending");
    }
    p.permitted.insert(p.permitted.end(), g);
  }
  if (r.remaining() != 0) {
    throw MalformedPolicy(std::to_string(r.remaining()) + " trailing bytes after group list");
  }
  return p;
}

}  // namespace sticky_manet
