#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

namespace sticky_manet {

// Identity of a simulated node. Unique within a scenario.
struct NodeId {
  std::uint32_t value = 0;

  friend constexpr auto operator<=>(NodeId, NodeId) = default;
};

// Coalition group label; 1 corresponds to "G1".
struct GroupId {
  std::uint16_t value = 0;

  friend constexpr auto operator<=>(GroupId, GroupId) = default;
};

// A logical message: originator plus its per-originator sequence number.
struct MessageId {
  NodeId originator;
  std::uint32_t seq = 0;

  friend constexpr auto operator<=>(const MessageId&, const MessageId&) = default;
};

inline std::string to_string(const MessageId& id) {
  return std::to_string(id.originator.value) + ":" + std::to_string(id.seq);
}

enum class Decision { kAllow, kDeny };

// Base of every error the library raises.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MalformedPolicy : public Error {
 public:
  using Error::Error;
};

class MalformedPacket : public Error {
 public:
  using Error::Error;
};

class CapacityExceeded : public Error {
 public:
  using Error::Error;
};

class InvalidScenario : public Error {
 public:
  using Error::Error;
};

class UnknownMessage : public Error {
 public:
  using Error::Error;
};

}  // namespace sticky_manet

template <>
struct std::hash<sticky_manet::NodeId> {
  std::size_t operator()(sticky_manet::NodeId id) const noexcept {
    return std::hash<std::uint32_t>{}(id.value);
  }
};

template <>
struct std::hash<sticky_manet::MessageId> {
  std::size_t operator()(const sticky_manet::MessageId& id) const noexcept {
    return std::hash<std::uint64_t>{}((std::uint64_t{id.originator.value} << 32) | id.seq);
  }
};
