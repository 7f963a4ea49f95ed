// Named scenario scripts: each one assembles a schedule (sometimes
// against a live run, to forge messages from observed material), runs it
// through the simulator, evaluates the property checkers, and compares
// the verdicts against the scenario's expected-verdict table. A verdict
// the table predicts as Fail is a demonstration, not a defect; it lands
// in `findings` and leaves `as_expected` true.

#pragma once

#include "edhoc/environment.hpp"
#include "edhoc/properties.hpp"
#include "edhoc/roles.hpp"

#include <set>
#include <string>
#include <vector>

namespace edhoc {

struct ExpectedVerdict {
  std::string lemma;
  LemmaResult result;
};

struct ScenarioOutcome {
  std::string name;
  std::string description;
  Schedule schedule; // replays to the same trace under `bounds`
  Bounds bounds;
  RunResult run;
  std::vector<Verdict> verdicts;
  std::vector<ExpectedVerdict> expected;
  std::vector<std::string> findings; // predicted violations, demonstrated
  bool as_expected = false;          // every verdict matches the table
};

// Clean three-message run. All four properties hold; the full-key
// agreement probe is also evaluated and is expected to fail exactly when
// the initiator authenticates statically.
ScenarioOutcome scenario_honest(MethodPair m);

// Honest run, then every long-term credential of both peers is revealed.
// The session key must stay underivable: forward secrecy.
ScenarioOutcome scenario_pfs(MethodPair m);

// Two back-to-back runs, then the first session's key is revealed. The
// second session's key must stay underivable: key independence.
ScenarioOutcome scenario_sk_independence(MethodPair m);

// B starts a run intending C. The attacker silences C, reveals A's
// long-term key, and answers as A with a fully forged second message.
// Without mitigation B completes and commits to A; with the mitigation
// flag B matches the received credential against the intended identity
// and aborts. The unmitigated commit is a policy finding; all four
// properties still hold because the reveal excuses them.
ScenarioOutcome scenario_unintended_peer(bool mitigation);

// Suite negotiation meta-sessions: drives repeated runs until initiator
// preferences and responder support converge, twice in a row, with or
// without cross-meta-session cache retention.
struct NegotiationScenario {
  std::vector<int> preferences;
  std::set<int> responder_suites;
  bool retain_cache = false;
  MetaResult first;
  MetaResult second; // repeat meta-session against the same cache
  Trace trace;       // protocol events of every run, in order
};
NegotiationScenario scenario_negotiation(const std::vector<int>& preferences,
                                         const std::set<int>& responder_suites,
                                         bool retain_cache);

} // namespace edhoc
