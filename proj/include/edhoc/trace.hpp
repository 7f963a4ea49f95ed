// Trace events: the observable record of a simulation run. Protocol steps,
// running/commit declarations, key reveals, channel actions and attacker
// knowledge growth all land here, in order. Traces serialize to JSON lines
// with deterministic key order so byte comparison is meaningful.

#pragma once

#include <json.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace edhoc {

enum class EventKind : std::uint8_t {
  I1,
  R2,
  I3,
  R4,
  RunningI,
  ExpRunningR,
  CommitI,
  ExpCommitI,
  CommitR,
  LTKRev,
  SKRev,
  AttackerKnows,
  Delivered,
  Dropped,
  Injected,
};

const char* event_kind_name(EventKind k);
std::optional<EventKind> parse_event_kind(std::string_view name);

struct Event {
  EventKind kind;
  nlohmann::json payload;
};

struct Trace {
  std::vector<Event> events;

  void emit(EventKind kind, nlohmann::json payload) {
    events.push_back({kind, std::move(payload)});
  }
};

// One {"i": n, "kind": ..., "payload": ...} object per line.
std::string trace_to_jsonl(const Trace& t);
void write_trace(std::ostream& out, const Trace& t);

// Throws std::runtime_error on malformed input.
Trace trace_from_jsonl(std::istream& in);
Trace trace_from_jsonl_string(const std::string& text);

} // namespace edhoc
