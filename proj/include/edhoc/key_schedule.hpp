// Joint key hierarchy shared by all five authentication method pairs:
// three chained PRKs (the extract chain collapses when a side does not
// authenticate statically), per-message keys, and the exporter.

#pragma once

#include "edhoc/term.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace edhoc {

enum class Auth : std::uint8_t { Sig, Stat, Psk };

// PSK authentication is symmetric: it is only valid on both sides at once.
struct MethodPair {
  Auth initiator;
  Auth responder;
};

bool valid_method(MethodPair m);
std::string method_name(MethodPair m); // e.g. "stat-sig"
std::optional<MethodPair> parse_method(std::string_view name);
const std::vector<MethodPair>& all_methods();

// Cipher suite k contributes two public algorithm identifiers.
struct SuiteAlgs {
  Term aead;
  Term hash;
};
SuiteAlgs suite_algs(int suite);

// PRK chain. seed is the PSK for psk-psk, $emptyStr otherwise. The
// conditional extracts take the static-DH contribution exactly when the
// corresponding side authenticates statically.
Term derive_prk_2e(const Term& seed, const Term& g_xy);
Term derive_prk_3e2m(const Term& prk_2e, bool responder_uses_stat,
                     const std::optional<Term>& g_rx);
Term derive_prk_4x3m(const Term& prk_3e2m, bool initiator_uses_stat,
                     const std::optional<Term>& g_iy);

// Message keys: expand(<aead_alg, th, label[, slot]>, prk). label is one of
// K_2e, K_2m, K_3ae, K_3m, K_2ae; slot is used only for K_2e keystream
// words. Unknown labels and misplaced slots throw.
Term derive_key(const Term& prk, const Term& th, std::string_view label,
                std::optional<int> slot, const Term& aead_alg);

// expand(<th_4, label>, prk_4x3m); th_4 binds suite and transcript.
Term exporter(const Term& prk_4x3m, const Term& th_4,
              std::string_view export_label);

struct KeySchedule {
  Term g_xy;
  std::optional<Term> g_rx; // present iff responder uses STAT
  std::optional<Term> g_iy; // present iff initiator uses STAT
  Term prk_2e;
  Term prk_3e2m;
  Term prk_4x3m;
  Term aead_alg;
  Term hash_alg;
};

// Assembles the PRK chain for one session. psk required exactly for
// psk-psk, g_rx/g_iy exactly for the static sides.
KeySchedule build_key_schedule(MethodPair m, const Term& g_xy,
                               const std::optional<Term>& g_rx,
                               const std::optional<Term>& g_iy,
                               const std::optional<Term>& psk,
                               const SuiteAlgs& algs);

struct MessageKeys {
  Term k_2e;
  Term k_2e_1;
  Term k_2e_2;
  Term k_2m;
  Term k_3ae;
  Term k_3m;
  std::optional<Term> k_2ae; // psk-psk only
};

MessageKeys derive_message_keys(const KeySchedule& ks, MethodPair m,
                                const Term& th_2, const Term& th_3);

} // namespace edhoc
