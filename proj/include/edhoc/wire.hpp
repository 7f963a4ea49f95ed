// Wire-level message structs for the three-flight handshake, their
// deterministic byte encoding, and the lagging transcript-hash chain.
// Encoding: one type byte, then the fields in declaration order, each
// length-prefixed; term fields carry the canonical text rendering. The
// decoder accepts attacker-supplied bytes and reports distinct error codes
// instead of throwing.

#pragma once

#include "edhoc/key_schedule.hpp"
#include "edhoc/term.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace edhoc {

using Bytes = std::vector<std::uint8_t>;

std::string to_hex(const Bytes& b);
std::optional<Bytes> from_hex(std::string_view hex);

// Suites are small integer labels; only 0..3 are registered.
constexpr int kMaxSuite = 3;

struct Message1 {
  Auth method_i = Auth::Sig;
  Auth method_r = Auth::Sig;
  std::vector<int> suites_i; // ordered: head is the proposed suite
  Term g_x;
  Term c_i;
  std::optional<Term> id_psk; // present iff psk-psk
  std::optional<Term> ad_1;
};

struct Message2 {
  Term c_i;
  Term g_y;
  Term c_r;
  // tuple of per-slot xor terms for sig/stat methods, a single aenc term
  // for psk-psk; the shape is checked by the roles, not the codec
  Term ciphertext_2;
};

struct Message3 {
  Term c_r;
  Term ciphertext_3; // aenc under K_3ae whose ad slot is TH_3
};

bool operator==(const Message1& a, const Message1& b);
bool operator==(const Message2& a, const Message2& b);
bool operator==(const Message3& a, const Message3& b);

using AnyMessage = std::variant<Message1, Message2, Message3>;

// Validates type invariants (suite range, id_psk presence) and throws
// std::invalid_argument on violation; callers build messages from checked
// role state, so a throw is a programming error.
Bytes encode(const Message1& m);
Bytes encode(const Message2& m);
Bytes encode(const Message3& m);
Bytes encode(const AnyMessage& m);

enum class WireError {
  None,
  Truncated,
  UnknownType,
  InvariantViolation,
  BadTerm,
  TrailingBytes,
};

const char* wire_error_name(WireError e);

struct DecodeOutcome {
  std::optional<AnyMessage> message; // set iff error == None
  WireError error = WireError::None;
};

DecodeOutcome decode(const Bytes& bytes);

// Transcript chain. th_2 covers m1 by embedding its exact encoding as a
// public name, plus data_2 = <c_i, g_y, c_r>; each later hash covers the
// previous hash and the ciphertext it lags behind.
Term data_2(const Term& c_i, const Term& g_y, const Term& c_r);
Term term_of_bytes(const Bytes& b); // $<hex>
Term compute_th2(const Term& hash_alg, const Message1& m1,
                 const Term& data2);
Term compute_th3(const Term& th_2, const Term& ciphertext_2, const Term& c_r);
Term compute_th4(const Term& th_3, const Term& ciphertext_3);

// MAC associated data <id_cred, th, cred[, ad]> and the MAC itself: an AEAD
// over the empty string, keyed by the mac key. Both roles and any forger
// must agree on these shapes byte for byte.
Term assoc_data(const Term& id_cred, const Term& th, const Term& cred,
                const std::optional<Term>& ad);
Term mac_term(const Term& k_m, const Term& assoc, const Term& alg);

struct TranscriptHashes {
  Term th_2;
  Term th_3;
  Term th_4;
  Term hash_alg;
};

} // namespace edhoc
