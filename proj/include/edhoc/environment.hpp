// World model: registered identities with unique long-term keys, the
// adversary-controlled channel, reveal actions, and deterministic
// schedule execution. Every run registers the standard parties A, B, C
// (both credential kinds each, one psk for the A-B pair), publishes the
// public halves to the adversary, then executes the schedule's actions in
// order. Replaying a schedule reproduces the trace byte for byte.

#pragma once

#include "edhoc/attacker.hpp"
#include "edhoc/roles.hpp"
#include "edhoc/trace.hpp"
#include "edhoc/wire.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace edhoc {

// Long-term key material per identity and kind, psks per ordered pair.
// Registration enforces key uniqueness per (identity, kind) and publishes
// the public half (credential, id_cred, or psk identifier) to the
// adversary, recording AttackerKnows events.
class Registry {
 public:
  Registry(FreshSource& fs, KnowledgeBase& kb, Trace& tr)
      : fs_(&fs), kb_(&kb), tr_(&tr) {}

  // returns the public credential; throws std::invalid_argument on a
  // duplicate (identity, kind) registration or a psk kind
  Term register_identity(const std::string& id, Auth kind);
  // returns the psk identifier; throws on duplicate pair
  Term register_psk(const std::string& initiator, const std::string& responder);

  const OwnAuth* credentials(const std::string& id, Auth kind) const;
  const PskEntry* psk(const std::string& initiator,
                      const std::string& responder) const;
  Term psk_id(const std::string& initiator, const std::string& responder) const;
  // entries this identity would accept as responder, keyed by rendered id
  std::map<std::string, PskEntry> psks_for_responder(
      const std::string& responder) const;
  const CredDirectory& directory() const { return dir_; }
  std::vector<std::string> identities() const;

 private:
  FreshSource* fs_;
  KnowledgeBase* kb_;
  Trace* tr_;
  std::map<std::string, std::map<Auth, OwnAuth>> keys_;
  std::map<std::string, PskEntry> psks_; // "I|R" -> entry
  std::map<std::string, Term> psk_ids_;
  CredDirectory dir_;
};

// Schedule actions. A schedule together with the fixed registration
// preamble determines the whole run; anything the adversary contributes
// (fresh names, recorded deductions, injected bytes) is spelled out so a
// replay needs no other input.
struct ActNewSession {
  std::string role;          // "initiator" | "responder"
  std::string self;
  std::string peer;          // initiator: intended responder identity
  std::string method;        // initiator: method pair name, e.g. "sig-stat"
  std::vector<int> suites = {0};
  bool mitigation = false;   // initiator pins the expected peer credential
};
struct ActDeliver {
  std::size_t index; // into the emitted-message list
  std::uint64_t to;  // session tid
};
struct ActDrop {
  std::size_t index;
};
struct ActInject {
  std::uint64_t to;
  Bytes message;
};
struct ActRevealLtk {
  std::string id; // reveals every long-term key the identity holds
};
struct ActRevealPsk {
  std::string initiator, responder;
};
struct ActRevealSk {
  std::uint64_t tid; // session must have committed
};
struct ActDeduce {
  std::string term; // canonical rendering; must be derivable
};
struct ActAttackerFresh {
  std::string base; // adversary mints its own fresh name
};

using Action =
    std::variant<ActNewSession, ActDeliver, ActDrop, ActInject, ActRevealLtk,
                 ActRevealPsk, ActRevealSk, ActDeduce, ActAttackerFresh>;

struct Schedule {
  std::uint64_t seed = 0; // provenance only; execution never reads it
  std::vector<Action> steps;
};

std::string schedule_to_json(const Schedule& s);
Schedule schedule_from_json(const std::string& text); // throws runtime_error

struct Bounds {
  std::size_t max_sessions = 3;
  std::size_t max_steps = 40;
};

struct SessionSummary {
  std::uint64_t tid = 0;
  std::string role;
  std::string self;
  Step step = Step::Start;
  AbortReason abort = AbortReason::None;
};

struct RunResult {
  Trace trace;
  KnowledgeBase kb; // final adversary knowledge
  std::vector<Bytes> outbox;
  std::vector<SessionSummary> sessions;
};

// Executes the schedule against fresh world state. Throws
// std::runtime_error on schedule errors: unknown tids or message indices,
// role/message mismatches, bounds violations, injections or deductions
// outside the derivable closure, reveals of unknown identities, session
// key reveals before commit.
RunResult run_schedule(const Schedule& s, const Bounds& bounds = Bounds{});

// Randomized bounded exploration: pseudorandom schedules mixing honest
// delivery, drops, replays, derivable injections, and reveals.
struct ExploreOutcome {
  std::uint64_t seed = 0;
  Schedule schedule;
  Trace trace;
};

std::vector<ExploreOutcome> explore_serial(MethodPair method,
                                           std::size_t n_seeds,
                                           const Bounds& bounds = Bounds{},
                                           std::uint64_t base_seed = 0);
// Same outcomes, seeds fanned out across OpenMP threads.
std::vector<ExploreOutcome> explore_parallel(MethodPair method,
                                             std::size_t n_seeds,
                                             const Bounds& bounds = Bounds{},
                                             std::uint64_t base_seed = 0);

} // namespace edhoc
