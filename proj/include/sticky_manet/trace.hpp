#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "sticky_manet/scenario.hpp"
#include "sticky_manet/types.hpp"

namespace sticky_manet {

enum class TraceEvent { kSend, kRecv, kDropDup, kDropMalformed, kDeliver };

inline std::string_view to_string(TraceEvent e) {
  switch (e) {
    case TraceEvent::kSend: return "SEND";
    case TraceEvent::kRecv: return "RECV";
    case TraceEvent::kDropDup: return "DROP_DUP";
    case TraceEvent::kDropMalformed: return "DROP_MALFORMED";
    case TraceEvent::kDeliver: return "DELIVER";
  }
  return "?";
}

inline std::optional<TraceEvent> parse_trace_event(std::string_view s) {
  for (auto e : {TraceEvent::kSend, TraceEvent::kRecv, TraceEvent::kDropDup,
                 TraceEvent::kDropMalformed, TraceEvent::kDeliver}) {
    if (to_string(e) == s) return e;
  }
  return std::nullopt;
}

// For SEND, node is the transmitter and peer the addressee. For the other
// events node is the receiver and peer the previous hop. size is the frame
// size, except DELIVER which records the payload size. group is node's.
struct TraceRecord {
  double time = 0.0;
  TraceEvent event = TraceEvent::kSend;
  NodeId node;
  std::optional<NodeId> peer;
  MessageId msg;
  std::uint32_t size = 0;
  GroupId group;

  friend bool operator==(const TraceRecord&, const TraceRecord&) = default;
};

struct Trace {
  std::vector<TraceRecord> records;
  MessageCatalog messages;  // every message originated during the run
};

inline std::string format_record(const TraceRecord& r) {
  char time[64];
  std::snprintf(time, sizeof time, "%.9f", r.time);
  std::string out = time;
  out += ' ';
  out += to_string(r.event);
  out += ' ' + std::to_string(r.node.value);
  out += ' ' + (r.peer ? std::to_string(r.peer->value) : std::string("-"));
  out += ' ' + to_string(r.msg);
  out += ' ' + std::to_string(r.size);
  out += ' ' + std::to_string(r.group.value);
  return out;
}

inline void write_trace(std::ostream& out, const Trace& trace) {
  for (const auto& r : trace.records) out << format_record(r) << '\n';
}

inline std::string trace_text(const Trace& trace) {
  std::ostringstream out;
  write_trace(out, trace);
  return out.str();
}

inline void save_trace(const std::string& path, const Trace& trace) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write trace file '" + path + "'");
  write_trace(out, trace);
  if (!out) throw Error("error while writing trace file '" + path + "'");
}

inline TraceRecord parse_record(std::string_view line) {
  auto w = detail::split_words(line);
  auto fail = [&](const std::string& why) -> void {
    throw Error("bad trace record '" + std::string(line) + "': " + why);
  };
  if (w.size() != 7) fail("expected 7 fields");

  TraceRecord r;
  auto time = detail::parse_number<double>(w[0]);
  auto event = parse_trace_event(w[1]);
  auto node = detail::parse_number<std::uint32_t>(w[2]);
  auto size = detail::parse_number<std::uint32_t>(w[5]);
  auto group = detail::parse_number<std::uint16_t>(w[6]);
  if (!time || !event || !node || !size || !group) fail("unparseable field");
  r.time = *time;
  r.event = *event;
  r.node = NodeId{*node};
  r.size = *size;
  r.group = GroupId{*group};
  if (w[3] != "-") {
    auto peer = detail::parse_number<std::uint32_t>(w[3]);
    if (!peer) fail("bad peer");
    r.peer = NodeId{*peer};
  }
  auto colon = w[4].find(':');
  if (colon == std::string_view::npos) fail("message id must be orig:seq");
  auto orig = detail::parse_number<std::uint32_t>(w[4].substr(0, colon));
  auto seq = detail::parse_number<std::uint32_t>(w[4].substr(colon + 1));
  if (!orig || !seq) fail("bad message id");
  r.msg = MessageId{NodeId{*orig}, *seq};
  return r;
}

// Reads trace records only; the message catalog must come from the scenario.
inline std::vector<TraceRecord> parse_trace(std::istream& in) {
  std::vector<TraceRecord> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    out.push_back(parse_record(line));
  }
  return out;
}

inline std::vector<TraceRecord> load_trace_records(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open trace file '" + path + "'");
  return parse_trace(in);
}

}  // namespace sticky_manet
