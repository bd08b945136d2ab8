#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "sticky_manet/node_agent.hpp"
#include "sticky_manet/policy.hpp"
#include "sticky_manet/types.hpp"

namespace sticky_manet {

struct RadioModel {
  double bandwidth_bps = 2e6;
  double propagation_mps = 3e8;
  double processing_s = 0.0;

  friend bool operator==(const RadioModel&, const RadioModel&) = default;
};

struct NodeSpec {
  NodeId id;
  GroupId group;
  Position position;
  double range = 0.0;

  friend bool operator==(const NodeSpec&, const NodeSpec&) = default;
};

struct OriginateSpec {
  NodeId node;
  double time = 0.0;
  std::uint32_t payload_bytes = 0;

  friend bool operator==(const OriginateSpec&, const OriginateSpec&) = default;
};

struct CbrFlow {
  NodeId src;
  NodeId dst;
  std::uint32_t packet_bytes = 0;  // payload size, excluding header and policy
  double interval = 0.0;
  double start = 0.0;
  double stop = 0.0;
  bool policied = true;

  friend bool operator==(const CbrFlow&, const CbrFlow&) = default;
};

struct Scenario {
  std::vector<std::string> comments;  // emitted as a header by write_scenario
  std::vector<NodeSpec> nodes;
  RadioModel radio;
  std::map<NodeId, std::set<GroupId>> policies;
  std::vector<OriginateSpec> originations;
  std::vector<CbrFlow> flows;
  std::optional<double> end_time;
  double forward_delay = 1e-3;

  const NodeSpec* find_node(NodeId id) const {
    auto it = std::find_if(nodes.begin(), nodes.end(),
                           [id](const NodeSpec& n) { return n.id == id; });
    return it == nodes.end() ? nullptr : &*it;
  }

  // A node without a policy directive permits only its own group.
  Policy policy_for(NodeId id) const {
    if (auto it = policies.find(id); it != policies.end()) return Policy{id, it->second, 0};
    const NodeSpec* n = find_node(id);
    return Policy{id, n ? std::set<GroupId>{n->group} : std::set<GroupId>{}, 0};
  }

  std::set<GroupId> groups() const {
    std::set<GroupId> out;
    for (const auto& n : nodes) out.insert(n.group);
    return out;
  }

  friend bool operator==(const Scenario& a, const Scenario& b) {
    return a.nodes == b.nodes && a.radio == b.radio && a.policies == b.policies &&
           a.originations == b.originations && a.flows == b.flows &&
           a.end_time == b.end_time && a.forward_delay == b.forward_delay;
  }
};

inline void validate(const Scenario& s) {
  auto fail = [](const std::string& why) { throw InvalidScenario(why); };
  auto finite_nonneg = [](double v) { return std::isfinite(v) && v >= 0.0; };

  std::set<NodeId> ids;
  for (const auto& n : s.nodes) {
    if (!ids.insert(n.id).second) fail("duplicate node id " + std::to_string(n.id.value));
    if (!(std::isfinite(n.range) && n.range > 0.0)) {
      fail("node " + std::to_string(n.id.value) + " needs a positive range");
    }
    if (!std::isfinite(n.position.x) || !std::isfinite(n.position.y)) {
      fail("node " + std::to_string(n.id.value) + " has a non-finite position");
    }
  }
  auto known = [&](NodeId id, const char* what) {
    if (!ids.contains(id)) fail(std::string(what) + " references unknown node " +
                                std::to_string(id.value));
  };
  const RadioModel& r = s.radio;
  if (!(std::isfinite(r.bandwidth_bps) && r.bandwidth_bps > 0.0)) fail("radio bandwidth must be positive");
  if (!(std::isfinite(r.propagation_mps) && r.propagation_mps > 0.0)) fail("propagation speed must be positive");
  if (!finite_nonneg(r.processing_s)) fail("per-hop processing time must be non-negative");
  if (!finite_nonneg(s.forward_delay)) fail("forwarding delay must be non-negative");
  if (s.end_time && !finite_nonneg(*s.end_time)) fail("end time must be non-negative");

  for (const auto& [id, groups] : s.policies) {
    known(id, "policy");
    if (groups.size() > kMaxPermittedGroups) fail("policy permits too many groups");
  }
  for (const auto& o : s.originations) {
    known(o.node, "originate");
    if (!finite_nonneg(o.time)) fail("originate time must be non-negative");
  }
  for (const auto& f : s.flows) {
    known(f.src, "cbr");
    known(f.dst, "cbr");
    if (!(std::isfinite(f.interval) && f.interval > 0.0)) fail("cbr interval must be positive");
    if (!finite_nonneg(f.start) || !std::isfinite(f.stop) || f.start > f.stop) {
      fail("cbr needs 0 <= start <= stop");
    }
  }
}

// ---------------------------------------------------------------------------
// Text format

namespace detail {

inline std::vector<std::string_view> split_words(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

template <typename T>
std::optional<T> parse_number(std::string_view s) {
  T v{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

inline std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

}  // namespace detail

// Parses the line-oriented scenario format. Throws InvalidScenario with the
// offending line number. The result is validated.
inline Scenario parse_scenario(std::istream& in) {
  Scenario s;
  std::string raw;
  int lineno = 0;
  bool seen_radio = false;

  while (std::getline(in, raw)) {
    ++lineno;
    std::string_view line = raw;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto w = detail::split_words(line);
    if (w.empty()) continue;

    auto fail = [&](const std::string& why) -> void {
      throw InvalidScenario("line " + std::to_string(lineno) + ": " + why);
    };
    auto arity = [&](std::size_t lo, std::size_t hi) {
      if (w.size() < lo || w.size() > hi) fail("wrong number of fields for '" + std::string(w[0]) + "'");
    };
    auto node = [&](std::string_view t) {
      auto v = detail::parse_number<std::uint32_t>(t);
      if (!v) fail("bad node id '" + std::string(t) + "'");
      return NodeId{*v};
    };
    auto group = [&](std::string_view t) {
      auto v = detail::parse_number<std::uint16_t>(t);
      if (!v) fail("bad group id '" + std::string(t) + "'");
      return GroupId{*v};
    };
    auto real = [&](std::string_view t) {
      auto v = detail::parse_number<double>(t);
      if (!v) fail("bad number '" + std::string(t) + "'");
      return *v;
    };
    auto bytes = [&](std::string_view t) {
      auto v = detail::parse_number<std::uint32_t>(t);
      if (!v) fail("bad byte count '" + std::string(t) + "'");
      return *v;
    };

    const std::string_view kw = w[0];
    if (kw == "node") {
      arity(6, 6);
      s.nodes.push_back(NodeSpec{node(w[1]), group(w[2]), Position{real(w[3]), real(w[4])}, real(w[5])});
    } else if (kw == "radio") {
      arity(4, 4);
      if (seen_radio) fail("radio given twice");
      seen_radio = true;
      s.radio = RadioModel{real(w[1]), real(w[2]), real(w[3])};
    } else if (kw == "policy") {
      arity(3, 4);
      if (w[2] != "permit") fail("expected 'permit'");
      NodeId id = node(w[1]);
      if (s.policies.contains(id)) fail("policy for node " + std::to_string(id.value) + " given twice");
      std::set<GroupId> groups;
      if (w.size() == 4 && w[3] != "-") {
        std::string_view list = w[3];
        while (true) {
          auto comma = list.find(',');
          groups.insert(group(list.substr(0, comma)));
          if (comma == std::string_view::npos) break;
          list.remove_prefix(comma + 1);
        }
      }
      s.policies[id] = std::move(groups);
    } else if (kw == "originate") {
      arity(4, 4);
      s.originations.push_back(OriginateSpec{node(w[1]), real(w[2]), bytes(w[3])});
    } else if (kw == "cbr") {
      arity(8, 8);
      CbrFlow f{node(w[1]), node(w[2]), bytes(w[3]), real(w[4]), real(w[5]), real(w[6]), true};
      if (w[7] == "plain") {
        f.policied = false;
      } else if (w[7] != "policied") {
        fail("cbr mode must be 'policied' or 'plain'");
      }
      s.flows.push_back(f);
    } else if (kw == "end") {
      arity(2, 2);
      s.end_time = real(w[1]);
    } else if (kw == "forward_delay") {
      arity(2, 2);
      s.forward_delay = real(w[1]);
    } else {
      fail("unknown directive '" + std::string(kw) + "'");
    }
  }
  validate(s);
  return s;
}

inline Scenario parse_scenario(const std::string& text) {
  std::istringstream in(text);
  return parse_scenario(in);
}

inline Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidScenario("cannot open scenario file '" + path + "'");
  return parse_scenario(in);
}

inline std::string write_scenario(const Scenario& s) {
  using detail::format_double;
  std::ostringstream out;
  for (const auto& c : s.comments) out << "# " << c << '\n';
  out << "radio " << format_double(s.radio.bandwidth_bps) << ' '
      << format_double(s.radio.propagation_mps) << ' ' << format_double(s.radio.processing_s)
      << '\n';
  out << "forward_delay " << format_double(s.forward_delay) << '\n';
  for (const auto& n : s.nodes) {
    out << "node " << n.id.value << ' ' << n.group.value << ' ' << format_double(n.position.x)
        << ' ' << format_double(n.position.y) << ' ' << format_double(n.range) << '\n';
  }
  for (const auto& [id, groups] : s.policies) {
    out << "policy " << id.value << " permit ";
    if (groups.empty()) out << '-';
    bool first = true;
    for (GroupId g : groups) {
      out << (first ? "" : ",") << g.value;
      first = false;
    }
    out << '\n';
  }
  for (const auto& o : s.originations) {
    out << "originate " << o.node.value << ' ' << format_double(o.time) << ' ' << o.payload_bytes
        << '\n';
  }
  for (const auto& f : s.flows) {
    out << "cbr " << f.src.value << ' ' << f.dst.value << ' ' << f.packet_bytes << ' '
        << format_double(f.interval) << ' ' << format_double(f.start) << ' '
        << format_double(f.stop) << ' ' << (f.policied ? "policied" : "plain") << '\n';
  }
  if (s.end_time) out << "end " << format_double(*s.end_time) << '\n';
  return out.str();
}

// ---------------------------------------------------------------------------
// Origination schedule

struct ScheduledOrigination {
  double time = 0.0;
  NodeId node;
  std::uint32_t payload_bytes = 0;
  bool policied = true;
  std::optional<std::size_t> flow;  // index into Scenario::flows
};

inline std::size_t cbr_tick_count(const CbrFlow& f) {
  return static_cast<std::size_t>(std::floor((f.stop - f.start) / f.interval + 1e-9)) + 1;
}

// Every message the scenario will author, in execution order: ascending
// time, ties broken by directive order (originate lines first, then flows).
inline std::vector<ScheduledOrigination> origination_schedule(const Scenario& s) {
  std::vector<ScheduledOrigination> out;
  for (const auto& o : s.originations) out.push_back({o.time, o.node, o.payload_bytes, true, {}});
  for (std::size_t i = 0; i < s.flows.size(); ++i) {
    const CbrFlow& f = s.flows[i];
    const std::size_t ticks = cbr_tick_count(f);
    for (std::size_t k = 0; k < ticks; ++k) {
      out.push_back({f.start + static_cast<double>(k) * f.interval, f.src, f.packet_bytes,
                     f.policied, i});
    }
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const auto& a, const auto& b) { return a.time < b.time; });
  return out;
}

// What is known about a message independently of how it travelled.
struct MessageInfo {
  double created_at = 0.0;
  std::optional<std::set<GroupId>> permitted;  // nullopt for plain traffic
  std::optional<std::size_t> flow;
  std::optional<NodeId> flow_dst;

  friend bool operator==(const MessageInfo&, const MessageInfo&) = default;
};

using MessageCatalog = std::map<MessageId, MessageInfo>;

// Message ids as the simulator assigns them: per originator, numbered in
// schedule order starting from zero.
inline MessageCatalog message_catalog(const Scenario& s) {
  MessageCatalog out;
  std::map<NodeId, std::uint32_t> next;
  for (const auto& o : origination_schedule(s)) {
    MessageInfo info;
    info.created_at = o.time;
    if (o.policied) info.permitted = s.policy_for(o.node).permitted;
    info.flow = o.flow;
    if (o.flow) info.flow_dst = s.flows[*o.flow].dst;
    out.emplace(MessageId{o.node, next[o.node]++}, std::move(info));
  }
  return out;
}

}  // namespace sticky_manet
