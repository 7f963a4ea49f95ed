// Bounded Dolev-Yao deduction over the term algebra. The knowledge base
// holds every term the network adversary has observed, kept saturated
// under destructors; derivability of new terms is decided goal-directed
// up to a constructor depth bound.

#pragma once

#include "edhoc/term.hpp"
#include "edhoc/wire.hpp"

#include <optional>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace edhoc {

// Saturation invariant on the stored set: components of known tuples;
// bodies of known aenc blobs whose key is derivable within the depth
// bound; residuals of known xor blobs after cancelling a known or public
// element. Signatures never give up their content. Public names count as
// known without being stored.
//
// can_derive(t, d) is construction above the saturated set, one depth
// unit per applied symbol: free symbols and tuples from derivable
// arguments; exp by extending a derivable prefix with one derivable
// exponent; an xor-shaped target from any split of its elements into two
// derivable halves; and, for a target of any shape, xor-cancellation
// against a stored xor blob whose difference from the target is
// derivable. Cancellation is modeled only against stored blobs, one per
// depth unit: elimination chains work, but solving for a term by xoring
// two derived combinations against each other is out of scope (no xor
// Gaussian elimination).
class KnowledgeBase {
 public:
  int construction_depth_bound = 4;

  // Normalizes, stores, saturates. Returns the terms actually added, in
  // deterministic insertion order, so callers can record them as
  // attacker-knowledge events.
  std::vector<Term> observe(const Term& t);

  bool contains(const Term& t) const; // stored membership, post-normalize
  bool can_derive(const Term& t) const {
    return can_derive(t, construction_depth_bound);
  }
  bool can_derive(const Term& t, int depth) const;

  const std::vector<Term>& items() const { return items_; }
  std::size_t size() const { return items_.size(); }

 private:
  std::vector<Term> items_; // insertion order, all normalized
  std::unordered_set<Term, TermHash, TermEq> index_;

  bool add(const Term& normalized, std::vector<Term>& added);
  void saturate(std::vector<Term>& added);

  // memo: term -> per-depth verdicts for the current derivation query;
  // cleared whenever the base grows, since verdicts only ever improve
  mutable std::unordered_map<Term, std::vector<signed char>, TermHash, TermEq>
      memo_;
  bool derive_impl(const Term& t, int depth) const;
};

// Plan for forging one wire message: the terms the adversary must first
// construct and record (each derivable from the base plus its
// predecessors), then the encoded bytes. Empty deductions means every
// field was already derivable.
struct SynthesisPlan {
  std::vector<Term> deductions;
  Bytes message;
};

// Attempts to realize the message shape from the knowledge base. Fails
// (nullopt) when some field, or a subterm needed to build it, is neither
// derivable nor constructible from derivable parts.
std::optional<SynthesisPlan> synthesize(const KnowledgeBase& kb,
                                        const AnyMessage& shape);

} // namespace edhoc
