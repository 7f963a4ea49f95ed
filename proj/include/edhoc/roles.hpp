// Initiator and responder state machines for the three-message handshake,
// covering all five authentication method pairs, plus the cipher-suite
// negotiation driver that spans multiple runs of the protocol.
//
// Sessions are plain values driven by an external scheduler. Every step
// appends its protocol events to a Trace; security checkers later read
// only that trace.

#pragma once

#include "edhoc/key_schedule.hpp"
#include "edhoc/term.hpp"
#include "edhoc/trace.hpp"
#include "edhoc/wire.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace edhoc {

struct PeerCred {
  std::string name;
  Term cred;
};

// Maps credential identifiers (rendered) to public credentials. Unknown
// identifiers abort the handshake.
struct CredDirectory {
  std::map<std::string, PeerCred> by_id_cred;
  const PeerCred* lookup(const Term& id_cred) const;
};

// Authentication material one party holds for one method kind. For psk the
// secret is the pair key, id_cred is the psk identifier and cred is null.
struct OwnAuth {
  Term secret;
  Term cred;
  Term id_cred;
};

enum class Step : std::uint8_t { Start, SentM1, SentM2, Done, Aborted };

enum class AbortReason : std::uint8_t {
  None,
  AuthFailure,     // MAC, signature or AEAD check failed
  UnknownCred,     // credential identifier not in the directory
  UnintendedPeer,  // mitigation enabled and ID_CRED_R is not the intended peer
  BadMessage,      // shape violation (wrong ciphertext structure)
  Rejected,        // responder rejected m1 (negotiation or method policy)
  OutOfOrder,      // message delivered in the wrong session state
};

const char* abort_reason_name(AbortReason r);

// Responder's negotiation verdict when it does not continue with m2.
struct Rejection {
  std::optional<int> counter_suite; // nullopt: final, protocol cannot go on
  std::string reason;
};

struct SessionKeyMaterial {
  Term exp_sk; // tuple <G_XY[, G_RX]>
  Term imp_sk; // exp_sk plus G_IY when the initiator authenticates statically
};

struct InitiatorConfig {
  std::uint64_t tid = 0;
  std::string own_identity;
  std::string intended_peer;
  MethodPair method{Auth::Sig, Auth::Sig};
  std::vector<int> suites; // ordered preference list, head is proposed
  OwnAuth auth;            // material for method.initiator
  // mitigation: require the responder's ID_CRED to match the intended peer
  bool mitigation = false;
  std::optional<Term> expected_peer_id_cred;
  std::optional<Term> ad_1;
  std::optional<Term> ad_3;
};

struct PskEntry {
  Term psk;
  std::string initiator;
  std::string responder;
};

struct ResponderConfig {
  std::uint64_t tid = 0;
  std::string own_identity;
  std::set<int> supported_suites;
  std::vector<MethodPair> accepted_methods;
  std::map<Auth, OwnAuth> creds;             // sig/stat material held
  std::map<std::string, PskEntry> psks_by_id; // keyed by render(id_psk)
  std::optional<Term> ad_2;
};

class InitiatorSession {
 public:
  InitiatorSession(InitiatorConfig cfg, const CredDirectory* dir);

  // Emits m1 and the I1 event. Throws std::logic_error off Start.
  Message1 i1(FreshSource& fs, Trace& tr);

  struct I3Outcome {
    std::optional<Message3> m3;
    AbortReason abort = AbortReason::None;
  };
  // Verifies m2, derives the key schedule, builds m3, emits RunningI,
  // ExpCommitI, CommitI and I3. Any failure aborts the session.
  I3Outcome i3(const Message2& m2, Trace& tr);

  // A rejection ends the session; the caller forwards the verdict to the
  // negotiation driver.
  void on_rejection(const Rejection& r, Trace& tr);

  Step step() const { return step_; }
  AbortReason abort_reason() const { return abort_; }
  const InitiatorConfig& config() const { return cfg_; }
  // Defined once Done:
  const SessionKeyMaterial& key_material() const;
  const KeySchedule& schedule() const;
  const TranscriptHashes& transcripts() const;
  Term exporter_output(std::string_view label) const;
  const std::string& resolved_peer() const; // identity behind ID_CRED_R

 private:
  InitiatorConfig cfg_;
  const CredDirectory* dir_;
  Step step_ = Step::Start;
  AbortReason abort_ = AbortReason::None;
  Term x_;
  Message1 m1_;
  std::optional<KeySchedule> ks_;
  std::optional<TranscriptHashes> th_;
  std::optional<SessionKeyMaterial> sk_;
  std::string peer_;

  I3Outcome fail(AbortReason r);
};

class ResponderSession {
 public:
  ResponderSession(ResponderConfig cfg, const CredDirectory* dir);

  struct R2Outcome {
    std::optional<Message2> m2;
    std::optional<Rejection> rejection;
  };
  // Suite negotiation, method policy, key derivation and m2 construction.
  // Emits ExpRunningR and R2 (the R2 event carries the rejection if any).
  R2Outcome r2(const Message1& m1, FreshSource& fs, Trace& tr);

  struct R4Outcome {
    bool completed = false;
    AbortReason abort = AbortReason::None;
  };
  // Opens ciphertext_3, authenticates the initiator, emits CommitR and R4.
  R4Outcome r4(const Message3& m3, Trace& tr);

  Step step() const { return step_; }
  AbortReason abort_reason() const { return abort_; }
  const ResponderConfig& config() const { return cfg_; }
  const SessionKeyMaterial& key_material() const;
  const KeySchedule& schedule() const;
  const TranscriptHashes& transcripts() const;
  Term exporter_output(std::string_view label) const;
  const std::string& resolved_peer() const; // identity behind ID_CRED_I

 private:
  ResponderConfig cfg_;
  const CredDirectory* dir_;
  Step step_ = Step::Start;
  AbortReason abort_ = AbortReason::None;
  MethodPair method_{Auth::Sig, Auth::Sig};
  int suite_ = 0;
  Term y_;
  Term c_r_;
  Term g_xy_;
  std::optional<Term> g_rx_;
  std::optional<PskEntry> psk_;
  OwnAuth auth_;
  Term exp_sk_;
  std::optional<KeySchedule> ks_;  // prk_4x3m filled at r4 for stat initiators
  std::optional<TranscriptHashes> th_;
  std::optional<SessionKeyMaterial> sk_;
  std::string peer_;

  R4Outcome fail(AbortReason r);
};

// ---------------------------------------------------------------------------
// Cipher-suite negotiation across protocol runs

struct SuiteCache {
  struct PerPeer {
    std::set<int> unsupported;
    std::optional<int> selected;
  };
  std::map<std::string, PerPeer> peers;
  bool retain_across_meta_sessions = false;

  // Called between meta-sessions; forgets everything unless retention is on.
  void end_meta_session() {
    if (!retain_across_meta_sessions) peers.clear();
  }
};

struct RunOutcome {
  bool accepted = false;
  std::optional<int> counter;
  bool final_reject = false;
};

struct MetaRun {
  std::vector<int> proposed;
  RunOutcome outcome;
};

struct MetaResult {
  std::vector<MetaRun> runs;
  std::optional<int> agreed_suite; // nullopt: negotiation-failed
};

// Drives repeated protocol runs until a suite is agreed or negotiation
// fails. run_once executes one full run proposing the given ordered list
// and reports the responder's verdict. The counter-proposal in a rejection
// always names an entry of the proposed list, so the driver converges.
MetaResult negotiate_meta(
    const std::vector<int>& preferences, const std::string& responder_identity,
    SuiteCache& cache,
    const std::function<RunOutcome(const std::vector<int>&)>& run_once,
    int max_runs = 8);

} // namespace edhoc
