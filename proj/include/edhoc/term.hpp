// Symbolic term language and equational theory. Every protocol value and
// every piece of attacker knowledge is a ground Term. Equality modulo the
// theory is decided by rewriting to a canonical normal form: DH exponents
// become a sorted multiset over a non-exp base, XOR becomes a sorted
// multiset with pair cancellation and an explicit zero unit. All other
// symbols are free.

#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace edhoc {

enum class Kind : std::uint8_t { Fresh, Pub, Tuple, App };

// Fixed arities: h/1, extract/2, expand/2, aenc/4 (key, msg, ad, alg),
// sign/2 (msg, key), pk/1, exp/2 in the source algebra, xor/>=2.
// In normal form exp is variadic: exp(base, e1, ..., ek) with the
// exponents a sorted multiset and base itself never an exp.
enum class Fun : std::uint8_t { H, Extract, Expand, AeadEnc, Sign, Pk, Exp, Xor };

struct MalformedTerm : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

class Node;
using Term = std::shared_ptr<const Node>;

class Node {
 public:
  Node(Kind k, Fun f, std::uint64_t serial, std::string label,
       std::vector<Term> args);

  Node(const Node&) = delete;
  Node& operator=(const Node&) = delete;

  Kind kind;
  Fun fun;                // App only
  std::uint64_t serial;   // Fresh only
  std::string label;      // Fresh base name or Pub label
  std::vector<Term> args; // Tuple elements or App arguments
  std::size_t hash;       // structural, computed once

  bool known_normal() const { return normal_; }
  void mark_normal() const { normal_ = true; }

 private:
  mutable bool normal_ = false;
};

// Construction. Factories arity-check and validate labels but never
// normalize; call normalize() explicitly. Labels are [A-Za-z0-9_]+ so the
// textual rendering stays unambiguous.
Term fresh(std::string_view base, std::uint64_t serial);
Term pub(std::string_view label);
Term tuple(std::vector<Term> elems);
Term app(Fun f, std::vector<Term> args);

Term h1(Term t);
Term extract(Term salt, Term ikm);
Term expand(Term info, Term prk);
Term aead_encrypt(Term key, Term msg, Term ad, Term alg);
Term sign(Term msg, Term key);
Term pk(Term key);
Term dh(Term base, Term exponent);
Term xor2(Term a, Term b);

Term zero();      // XOR unit, the public name $zero
Term empty_str(); // $emptyStr
Term gen();       // DH base $g

// Issues fresh-name serials, unique within one simulation run. Each run
// owns its own source so runs replay byte-identically.
class FreshSource {
 public:
  Term make(std::string_view base) { return fresh(base, next_++); }
  std::uint64_t issued() const { return next_; }

 private:
  std::uint64_t next_ = 0;
};

// Structural identity (exact tree equality, no theory).
bool struct_equal(const Term& a, const Term& b);

// Total order identical to lexicographic order of render(). Multisets in
// normal forms are sorted under this order.
int compare(const Term& a, const Term& b);

struct TermHash {
  std::size_t operator()(const Term& t) const { return t->hash; }
};
struct TermEq {
  bool operator()(const Term& a, const Term& b) const {
    return struct_equal(a, b);
  }
};

// Canonical representative under the theory. Idempotent.
Term normalize(const Term& t);

bool equal_mod_E(const Term& a, const Term& b);

// Checked AEAD opening: succeeds only when key, associated data and
// algorithm all match. Honest roles abort the handshake on nullopt.
std::optional<Term> aead_decrypt(const Term& key, const Term& c,
                                 const Term& ad, const Term& alg);

// Attacker destructor: ignores associated data.
std::optional<Term> decrypt_unchecked(const Term& key, const Term& c,
                                      const Term& alg);

bool verify_signature(const Term& sig, const Term& msg, const Term& pubkey);

// Canonical text, round-trip exact: fresh ~name#serial, public $name,
// tuples <a, b>, applications name(args). parse_term throws MalformedTerm
// on syntax or arity errors.
std::string render(const Term& t);
Term parse_term(std::string_view text);

} // namespace edhoc
