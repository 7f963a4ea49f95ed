#include "edhoc/term.hpp"

#include <algorithm>
#include <charconv>
#include <utility>

namespace edhoc {

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

std::size_t str_hash(const std::string& s) {
  return std::hash<std::string>{}(s);
}

bool label_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         (c >= '0' && c <= '9') || c == '_';
}

bool valid_label(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!label_char(c)) return false;
  return true;
}

const char* fun_name(Fun f) {
  switch (f) {
    case Fun::H: return "h";
    case Fun::Extract: return "extract";
    case Fun::Expand: return "expand";
    case Fun::AeadEnc: return "aenc";
    case Fun::Sign: return "sign";
    case Fun::Pk: return "pk";
    case Fun::Exp: return "exp";
    case Fun::Xor: return "xor";
  }
  return "?";
}

void check_arity(Fun f, std::size_t n) {
  bool ok = false;
  switch (f) {
    case Fun::H:
    case Fun::Pk: ok = (n == 1); break;
    case Fun::Extract:
    case Fun::Expand:
    case Fun::Sign: ok = (n == 2); break;
    case Fun::AeadEnc: ok = (n == 4); break;
    // exp is binary in the source algebra; the normal form carries the
    // whole exponent multiset, so >=2 total arguments are accepted.
    case Fun::Exp:
    case Fun::Xor: ok = (n >= 2); break;
  }
  if (!ok)
    throw MalformedTerm(std::string("bad arity for ") + fun_name(f) + ": " +
                        std::to_string(n));
}

} // namespace

Node::Node(Kind k, Fun f, std::uint64_t ser, std::string lab,
           std::vector<Term> a)
    : kind(k), fun(f), serial(ser), label(std::move(lab)), args(std::move(a)) {
  std::size_t h = mix(0x45444843u, static_cast<std::size_t>(kind));
  switch (kind) {
    case Kind::Fresh:
      h = mix(h, serial);
      h = mix(h, str_hash(label));
      normal_ = true;
      break;
    case Kind::Pub:
      h = mix(h, str_hash(label));
      normal_ = true;
      break;
    case Kind::Tuple:
    case Kind::App:
      if (kind == Kind::App) h = mix(h, static_cast<std::size_t>(fun));
      h = mix(h, args.size());
      for (const Term& t : args) h = mix(h, t->hash);
      break;
  }
  hash = h;
}

// ---------------------------------------------------------------------------
// Construction

Term fresh(std::string_view base, std::uint64_t serial) {
  if (!valid_label(base)) throw MalformedTerm("bad fresh-name label");
  return std::make_shared<Node>(Kind::Fresh, Fun::H, serial, std::string(base),
                                std::vector<Term>{});
}

Term pub(std::string_view label) {
  if (!valid_label(label)) throw MalformedTerm("bad public-name label");
  return std::make_shared<Node>(Kind::Pub, Fun::H, 0, std::string(label),
                                std::vector<Term>{});
}

Term tuple(std::vector<Term> elems) {
  for (const Term& t : elems)
    if (!t) throw MalformedTerm("null tuple element");
  return std::make_shared<Node>(Kind::Tuple, Fun::H, 0, std::string(),
                                std::move(elems));
}

Term app(Fun f, std::vector<Term> args) {
  check_arity(f, args.size());
  for (const Term& t : args)
    if (!t) throw MalformedTerm("null argument");
  return std::make_shared<Node>(Kind::App, f, 0, std::string(),
                                std::move(args));
}

Term h1(Term t) { return app(Fun::H, {std::move(t)}); }
Term extract(Term salt, Term ikm) {
  return app(Fun::Extract, {std::move(salt), std::move(ikm)});
}
Term expand(Term info, Term prk) {
  return app(Fun::Expand, {std::move(info), std::move(prk)});
}
Term aead_encrypt(Term key, Term msg, Term ad, Term alg) {
  return app(Fun::AeadEnc,
             {std::move(key), std::move(msg), std::move(ad), std::move(alg)});
}
Term sign(Term msg, Term key) {
  return app(Fun::Sign, {std::move(msg), std::move(key)});
}
Term pk(Term key) { return app(Fun::Pk, {std::move(key)}); }
Term dh(Term base, Term exponent) {
  return app(Fun::Exp, {std::move(base), std::move(exponent)});
}
Term xor2(Term a, Term b) {
  return app(Fun::Xor, {std::move(a), std::move(b)});
}

Term zero() { return pub("zero"); }
Term empty_str() { return pub("emptyStr"); }
Term gen() { return pub("g"); }

// ---------------------------------------------------------------------------
// Identity and ordering

bool struct_equal(const Term& a, const Term& b) {
  if (a.get() == b.get()) return true;
  if (a->hash != b->hash || a->kind != b->kind) return false;
  switch (a->kind) {
    case Kind::Fresh: return a->serial == b->serial && a->label == b->label;
    case Kind::Pub: return a->label == b->label;
    case Kind::Tuple: break;
    case Kind::App:
      if (a->fun != b->fun) return false;
      break;
  }
  if (a->args.size() != b->args.size()) return false;
  for (std::size_t i = 0; i < a->args.size(); ++i)
    if (!struct_equal(a->args[i], b->args[i])) return false;
  return true;
}

int compare(const Term& a, const Term& b) {
  if (struct_equal(a, b)) return 0;
  // Rendering is injective, so string order is a total order on terms.
  return render(a).compare(render(b)) < 0 ? -1 : 1;
}

// ---------------------------------------------------------------------------
// Normalization

namespace {

void sort_by_render(std::vector<Term>& ts) {
  std::vector<std::pair<std::string, Term>> keyed;
  keyed.reserve(ts.size());
  for (Term& t : ts) keyed.emplace_back(render(t), std::move(t));
  std::stable_sort(keyed.begin(), keyed.end(),
                   [](const auto& x, const auto& y) { return x.first < y.first; });
  ts.clear();
  for (auto& kv : keyed) ts.push_back(std::move(kv.second));
}

// base comes in normalized; splice one nested level (a normal exp base is
// itself flat, so one level suffices) and sort the exponent multiset.
Term normal_exp(std::vector<Term> kids) {
  Term base = kids[0];
  std::vector<Term> exps(kids.begin() + 1, kids.end());
  if (base->kind == Kind::App && base->fun == Fun::Exp) {
    std::vector<Term> merged(base->args.begin() + 1, base->args.end());
    merged.insert(merged.end(), exps.begin(), exps.end());
    exps = std::move(merged);
    base = base->args[0];
  }
  sort_by_render(exps);
  std::vector<Term> out;
  out.reserve(1 + exps.size());
  out.push_back(std::move(base));
  for (Term& e : exps) out.push_back(std::move(e));
  return app(Fun::Exp, std::move(out));
}

// Flatten nested xors, drop the unit, sort, cancel equal pairs. Empty
// result collapses to zero, a singleton to its element.
Term normal_xor(std::vector<Term> kids) {
  const Term z = zero();
  std::vector<Term> flat;
  flat.reserve(kids.size());
  for (Term& k : kids) {
    if (k->kind == Kind::App && k->fun == Fun::Xor)
      for (const Term& inner : k->args) flat.push_back(inner);
    else
      flat.push_back(std::move(k));
  }
  std::erase_if(flat, [&](const Term& t) { return struct_equal(t, z); });
  sort_by_render(flat);
  std::vector<Term> kept;
  std::size_t i = 0;
  while (i < flat.size()) {
    std::size_t j = i + 1;
    while (j < flat.size() && struct_equal(flat[i], flat[j])) ++j;
    if ((j - i) % 2 == 1) kept.push_back(flat[i]);
    i = j;
  }
  if (kept.empty()) return z;
  if (kept.size() == 1) return kept[0];
  return app(Fun::Xor, std::move(kept));
}

} // namespace

Term normalize(const Term& t) {
  if (!t) throw MalformedTerm("null term");
  if (t->known_normal()) return t;
  std::vector<Term> kids;
  kids.reserve(t->args.size());
  for (const Term& a : t->args) kids.push_back(normalize(a));

  Term out;
  switch (t->kind) {
    case Kind::Fresh:
    case Kind::Pub:
      out = t;
      break;
    case Kind::Tuple:
      out = tuple(std::move(kids));
      break;
    case Kind::App:
      if (t->fun == Fun::Exp)
        out = normal_exp(std::move(kids));
      else if (t->fun == Fun::Xor)
        out = normal_xor(std::move(kids));
      else
        out = app(t->fun, std::move(kids));
      break;
  }
  if (struct_equal(out, t)) out = t;
  out->mark_normal();
  return out;
}

bool equal_mod_E(const Term& a, const Term& b) {
  return struct_equal(normalize(a), normalize(b));
}

// ---------------------------------------------------------------------------
// Destructors

std::optional<Term> aead_decrypt(const Term& key, const Term& c,
                                 const Term& ad, const Term& alg) {
  Term n = normalize(c);
  if (n->kind != Kind::App || n->fun != Fun::AeadEnc) return std::nullopt;
  if (!equal_mod_E(n->args[0], key)) return std::nullopt;
  if (!equal_mod_E(n->args[2], ad)) return std::nullopt;
  if (!equal_mod_E(n->args[3], alg)) return std::nullopt;
  return n->args[1];
}

std::optional<Term> decrypt_unchecked(const Term& key, const Term& c,
                                      const Term& alg) {
  Term n = normalize(c);
  if (n->kind != Kind::App || n->fun != Fun::AeadEnc) return std::nullopt;
  if (!equal_mod_E(n->args[0], key)) return std::nullopt;
  if (!equal_mod_E(n->args[3], alg)) return std::nullopt;
  return n->args[1];
}

bool verify_signature(const Term& sig, const Term& msg, const Term& pubkey) {
  Term n = normalize(sig);
  if (n->kind != Kind::App || n->fun != Fun::Sign) return false;
  return equal_mod_E(n->args[0], msg) &&
         equal_mod_E(pk(n->args[1]), pubkey);
}

// ---------------------------------------------------------------------------
// Rendering

namespace {

void render_into(const Term& t, std::string& out) {
  switch (t->kind) {
    case Kind::Fresh:
      out += '~';
      out += t->label;
      out += '#';
      out += std::to_string(t->serial);
      return;
    case Kind::Pub:
      out += '$';
      out += t->label;
      return;
    case Kind::Tuple:
      out += '<';
      for (std::size_t i = 0; i < t->args.size(); ++i) {
        if (i) out += ", ";
        render_into(t->args[i], out);
      }
      out += '>';
      return;
    case Kind::App:
      out += fun_name(t->fun);
      out += '(';
      for (std::size_t i = 0; i < t->args.size(); ++i) {
        if (i) out += ", ";
        render_into(t->args[i], out);
      }
      out += ')';
      return;
  }
}

} // namespace

std::string render(const Term& t) {
  std::string out;
  render_into(t, out);
  return out;
}

// ---------------------------------------------------------------------------
// Parsing (exact inverse of render)

namespace {

struct Parser {
  std::string_view s;
  std::size_t pos = 0;

  [[noreturn]] void fail(const std::string& why) const {
    throw MalformedTerm("parse error at offset " + std::to_string(pos) + ": " +
                        why);
  }

  bool eof() const { return pos >= s.size(); }
  char peek() const { return eof() ? '\0' : s[pos]; }

  void skip_ws() {
    while (!eof() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
  }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos;
  }

  std::string_view ident() {
    std::size_t start = pos;
    while (!eof() && label_char(s[pos])) ++pos;
    if (pos == start) fail("expected identifier");
    return s.substr(start, pos - start);
  }

  std::uint64_t number() {
    std::size_t start = pos;
    while (!eof() && s[pos] >= '0' && s[pos] <= '9') ++pos;
    if (pos == start) fail("expected number");
    std::uint64_t v = 0;
    auto r = std::from_chars(s.data() + start, s.data() + pos, v);
    if (r.ec != std::errc()) fail("bad number");
    return v;
  }

  std::vector<Term> arg_list(char close) {
    std::vector<Term> args;
    skip_ws();
    if (peek() == close) {
      ++pos;
      return args;
    }
    while (true) {
      args.push_back(term());
      skip_ws();
      if (peek() == ',') {
        ++pos;
        skip_ws();
        continue;
      }
      expect(close);
      return args;
    }
  }

  Term term() {
    skip_ws();
    char c = peek();
    if (c == '~') {
      ++pos;
      std::string_view base = ident();
      expect('#');
      return fresh(base, number());
    }
    if (c == '$') {
      ++pos;
      return pub(ident());
    }
    if (c == '<') {
      ++pos;
      return tuple(arg_list('>'));
    }
    if (label_char(c)) {
      std::string_view name = ident();
      Fun f;
      if (name == "h") f = Fun::H;
      else if (name == "extract") f = Fun::Extract;
      else if (name == "expand") f = Fun::Expand;
      else if (name == "aenc") f = Fun::AeadEnc;
      else if (name == "sign") f = Fun::Sign;
      else if (name == "pk") f = Fun::Pk;
      else if (name == "exp") f = Fun::Exp;
      else if (name == "xor") f = Fun::Xor;
      else fail("unknown function symbol '" + std::string(name) + "'");
      expect('(');
      return app(f, arg_list(')'));
    }
    fail("expected term");
  }
};

} // namespace

Term parse_term(std::string_view text) {
  Parser p{text};
  Term t = p.term();
  p.skip_ws();
  if (!p.eof()) p.fail("trailing input");
  return t;
}

} // namespace edhoc
