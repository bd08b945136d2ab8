#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>

#include "sticky_manet/byte_io.hpp"
#include "sticky_manet/policy.hpp"
#include "sticky_manet/types.hpp"

namespace sticky_manet {

// One copy of a message in flight.
//
// policy is empty for plain (unpolicied) traffic; such frames carry no
// policy block at all. When present, policy->originator == id.originator.
struct Packet {
  MessageId id;
  NodeId sender;
  double created_at = 0.0;  // seconds
  std::optional<Policy> policy;
  wire::Bytes payload;

  NodeId originator() const { return id.originator; }

  friend bool operator==(const Packet&, const Packet&) = default;
};

// Frame header: seq u32, originator u32, sender u32, created_at u64 (microseconds).
inline constexpr std::size_t kFrameHeaderSize = 20;

inline std::uint64_t to_microseconds(double seconds) {
  return static_cast<std::uint64_t>(std::llround(seconds * 1e6));
}

inline std::size_t frame_size(const Packet& p) {
  return kFrameHeaderSize + (p.policy ? encoded_policy_size(*p.policy) : 0) + p.payload.size();
}

inline wire::Bytes encode_frame(const Packet& p) {
  wire::Bytes out;
  out.reserve(frame_size(p));
  wire::Writer w(out);
  w.u32(p.id.seq);
  w.u32(p.id.originator.value);
  w.u32(p.sender.value);
  w.u64(to_microseconds(p.created_at));
  if (p.policy) encode_policy_into(*p.policy, out);
  w.raw(p.payload);
  return out;
}

// Whether a frame carries a policy block is link metadata, not part of the
// frame itself. Throws MalformedPacket on a short header, MalformedPolicy
// on a bad policy block.
inline Packet decode_frame(std::span<const std::uint8_t> frame, bool policied) {
  wire::Reader r(frame);
  auto seq = r.u32();
  auto originator = r.u32();
  auto sender = r.u32();
  auto created_us = r.u64();
  if (!created_us) throw MalformedPacket("frame shorter than its header");

  Packet p;
  p.id = MessageId{NodeId{*originator}, *seq};
  p.sender = NodeId{*sender};
  p.created_at = static_cast<double>(*created_us) / 1e6;
  if (policied) {
    auto rest = frame.subspan(r.position());
    if (rest.size() < 2) throw MalformedPolicy("policy length prefix missing");
    const std::size_t block_len = (std::size_t{rest[0]} << 8) | rest[1];
    if (block_len > rest.size()) {
      throw MalformedPolicy("policy block length " + std::to_string(block_len) +
                            " runs past end of frame");
    }
    p.policy = decode_policy(*r.take(block_len));
    if (p.policy->originator != p.id.originator) {
      throw MalformedPolicy("policy originator does not match message originator");
    }
  }
  auto payload = *r.take(r.remaining());
  p.payload.assign(payload.begin(), payload.end());
  return p;
}

}  // namespace sticky_manet
