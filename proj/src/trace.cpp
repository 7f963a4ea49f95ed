#include "edhoc/trace.hpp"

#include <sstream>
#include <stdexcept>

namespace edhoc {

namespace {

constexpr const char* kNames[] = {
    "I1",        "R2",     "I3",          "R4",        "RunningI",
    "ExpRunningR", "CommitI", "ExpCommitI", "CommitR",  "LTKRev",
    "SKRev",     "AttackerKnows", "Delivered", "Dropped", "Injected",
};

} // namespace

const char* event_kind_name(EventKind k) {
  return kNames[static_cast<std::size_t>(k)];
}

std::optional<EventKind> parse_event_kind(std::string_view name) {
  for (std::size_t i = 0; i < std::size(kNames); ++i)
    if (name == kNames[i]) return static_cast<EventKind>(i);
  return std::nullopt;
}

std::string trace_to_jsonl(const Trace& t) {
  std::ostringstream out;
  write_trace(out, t);
  return out.str();
}

void write_trace(std::ostream& out, const Trace& t) {
  for (std::size_t i = 0; i < t.events.size(); ++i) {
    nlohmann::json line;
    line["i"] = i;
    line["kind"] = event_kind_name(t.events[i].kind);
    line["payload"] = t.events[i].payload;
    out << line.dump() << "\n";
  }
}

Trace trace_from_jsonl(std::istream& in) {
  Trace t;
  std::string line;
  std::size_t expect = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object() || !j.contains("kind") ||
        !j.contains("payload") || !j.contains("i"))
      throw std::runtime_error("malformed trace line: " + line);
    if (j["i"].get<std::size_t>() != expect)
      throw std::runtime_error("trace indices out of order");
    auto kind = parse_event_kind(j["kind"].get<std::string>());
    if (!kind)
      throw std::runtime_error("unknown event kind: " +
                               j["kind"].get<std::string>());
    t.events.push_back({*kind, j["payload"]});
    ++expect;
  }
  return t;
}

Trace trace_from_jsonl_string(const std::string& text) {
  std::istringstream in(text);
  return trace_from_jsonl(in);
}

} // namespace edhoc
