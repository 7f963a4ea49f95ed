#include "edhoc/wire.hpp"

#include <stdexcept>

namespace edhoc {

std::string to_hex(const Bytes& b) {
  static const char* digits = "0123456789abcdef";
  std::string out;
  out.reserve(b.size() * 2);
  for (std::uint8_t v : b) {
    out += digits[v >> 4];
    out += digits[v & 0xf];
  }
  return out;
}

std::optional<Bytes> from_hex(std::string_view hex) {
  if (hex.size() % 2) return std::nullopt;
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
  };
  Bytes out;
  out.reserve(hex.size() / 2);
  for (std::size_t i = 0; i < hex.size(); i += 2) {
    int hi = nibble(hex[i]), lo = nibble(hex[i + 1]);
    if (hi < 0 || lo < 0) return std::nullopt;
    out.push_back(static_cast<std::uint8_t>(hi << 4 | lo));
  }
  return out;
}

bool operator==(const Message1& a, const Message1& b) {
  auto opt_eq = [](const std::optional<Term>& x, const std::optional<Term>& y) {
    if (x.has_value() != y.has_value()) return false;
    return !x || struct_equal(*x, *y);
  };
  return a.method_i == b.method_i && a.method_r == b.method_r &&
         a.suites_i == b.suites_i && struct_equal(a.g_x, b.g_x) &&
         struct_equal(a.c_i, b.c_i) && opt_eq(a.id_psk, b.id_psk) &&
         opt_eq(a.ad_1, b.ad_1);
}

bool operator==(const Message2& a, const Message2& b) {
  return struct_equal(a.c_i, b.c_i) && struct_equal(a.g_y, b.g_y) &&
         struct_equal(a.c_r, b.c_r) &&
         struct_equal(a.ciphertext_2, b.ciphertext_2);
}

bool operator==(const Message3& a, const Message3& b) {
  return struct_equal(a.c_r, b.c_r) &&
         struct_equal(a.ciphertext_3, b.ciphertext_3);
}

// ---------------------------------------------------------------------------
// Encoding

namespace {

void put_u16(Bytes& out, std::size_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v & 0xff));
}

void put_u32(Bytes& out, std::size_t v) {
  for (int shift = 24; shift >= 0; shift -= 8)
    out.push_back(static_cast<std::uint8_t>((v >> shift) & 0xff));
}

void put_term(Bytes& out, const Term& t) {
  std::string s = render(t);
  put_u32(out, s.size());
  out.insert(out.end(), s.begin(), s.end());
}

std::uint8_t auth_byte(Auth a) { return static_cast<std::uint8_t>(a); }

void check_m1(const Message1& m) {
  if (m.suites_i.empty())
    throw std::invalid_argument("m1 needs a non-empty suite list");
  for (int s : m.suites_i)
    if (s < 0 || s > kMaxSuite)
      throw std::invalid_argument("unregistered cipher suite");
  bool psk = m.method_i == Auth::Psk && m.method_r == Auth::Psk;
  if (!valid_method({m.method_i, m.method_r}))
    throw std::invalid_argument("invalid method pair");
  if (psk != m.id_psk.has_value())
    throw std::invalid_argument("id_psk present iff method is psk-psk");
  if (!m.g_x || !m.c_i) throw std::invalid_argument("missing m1 field");
}

} // namespace

Bytes encode(const Message1& m) {
  check_m1(m);
  Bytes out{0x01};
  out.push_back(auth_byte(m.method_i));
  out.push_back(auth_byte(m.method_r));
  put_u16(out, m.suites_i.size());
  for (int s : m.suites_i) out.push_back(static_cast<std::uint8_t>(s));
  put_term(out, m.g_x);
  put_term(out, m.c_i);
  out.push_back(m.id_psk ? 1 : 0);
  if (m.id_psk) put_term(out, *m.id_psk);
  out.push_back(m.ad_1 ? 1 : 0);
  if (m.ad_1) put_term(out, *m.ad_1);
  return out;
}

Bytes encode(const Message2& m) {
  if (!m.c_i || !m.g_y || !m.c_r || !m.ciphertext_2)
    throw std::invalid_argument("missing m2 field");
  Bytes out{0x02};
  put_term(out, m.c_i);
  put_term(out, m.g_y);
  put_term(out, m.c_r);
  put_term(out, m.ciphertext_2);
  return out;
}

Bytes encode(const Message3& m) {
  if (!m.c_r || !m.ciphertext_3)
    throw std::invalid_argument("missing m3 field");
  Bytes out{0x03};
  put_term(out, m.c_r);
  put_term(out, m.ciphertext_3);
  return out;
}

Bytes encode(const AnyMessage& m) {
  return std::visit([](const auto& v) { return encode(v); }, m);
}

// ---------------------------------------------------------------------------
// Decoding

const char* wire_error_name(WireError e) {
  switch (e) {
    case WireError::None: return "none";
    case WireError::Truncated: return "truncated";
    case WireError::UnknownType: return "unknown-type";
    case WireError::InvariantViolation: return "invariant-violation";
    case WireError::BadTerm: return "bad-term";
    case WireError::TrailingBytes: return "trailing-bytes";
  }
  return "?";
}

namespace {

struct Reader {
  const Bytes& b;
  std::size_t pos = 0;
  WireError err = WireError::None;

  bool fail(WireError e) {
    if (err == WireError::None) err = e;
    return false;
  }

  bool take_u8(std::uint8_t& v) {
    if (pos + 1 > b.size()) return fail(WireError::Truncated);
    v = b[pos++];
    return true;
  }

  bool take_u16(std::size_t& v) {
    if (pos + 2 > b.size()) return fail(WireError::Truncated);
    v = (static_cast<std::size_t>(b[pos]) << 8) | b[pos + 1];
    pos += 2;
    return true;
  }

  bool take_u32(std::size_t& v) {
    if (pos + 4 > b.size()) return fail(WireError::Truncated);
    v = 0;
    for (int i = 0; i < 4; ++i) v = (v << 8) | b[pos + i];
    pos += 4;
    return true;
  }

  bool take_term(Term& t) {
    std::size_t n = 0;
    if (!take_u32(n)) return false;
    if (pos + n > b.size()) return fail(WireError::Truncated);
    std::string_view text(reinterpret_cast<const char*>(b.data()) + pos, n);
    pos += n;
    try {
      t = parse_term(text);
    } catch (const MalformedTerm&) {
      return fail(WireError::BadTerm);
    }
    return true;
  }

  bool take_auth(Auth& a) {
    std::uint8_t v = 0;
    if (!take_u8(v)) return false;
    if (v > 2) return fail(WireError::InvariantViolation);
    a = static_cast<Auth>(v);
    return true;
  }

  bool take_optional_term(std::optional<Term>& t) {
    std::uint8_t present = 0;
    if (!take_u8(present)) return false;
    if (present > 1) return fail(WireError::InvariantViolation);
    if (!present) {
      t.reset();
      return true;
    }
    Term inner;
    if (!take_term(inner)) return false;
    t = inner;
    return true;
  }
};

DecodeOutcome fail_with(WireError e) { return {std::nullopt, e}; }

} // namespace

DecodeOutcome decode(const Bytes& bytes) {
  Reader r{bytes};
  std::uint8_t type = 0;
  if (!r.take_u8(type)) return fail_with(r.err);
  AnyMessage out;
  switch (type) {
    case 0x01: {
      Message1 m;
      std::size_t n = 0;
      if (!r.take_auth(m.method_i) || !r.take_auth(m.method_r) ||
          !r.take_u16(n))
        return fail_with(r.err);
      if (!valid_method({m.method_i, m.method_r}))
        return fail_with(WireError::InvariantViolation);
      if (n == 0) return fail_with(WireError::InvariantViolation);
      for (std::size_t i = 0; i < n; ++i) {
        std::uint8_t s = 0;
        if (!r.take_u8(s)) return fail_with(r.err);
        if (s > kMaxSuite) return fail_with(WireError::InvariantViolation);
        m.suites_i.push_back(s);
      }
      if (!r.take_term(m.g_x) || !r.take_term(m.c_i) ||
          !r.take_optional_term(m.id_psk) || !r.take_optional_term(m.ad_1))
        return fail_with(r.err);
      bool psk = m.method_i == Auth::Psk;
      if (psk != m.id_psk.has_value())
        return fail_with(WireError::InvariantViolation);
      out = std::move(m);
      break;
    }
    case 0x02: {
      Message2 m;
      if (!r.take_term(m.c_i) || !r.take_term(m.g_y) || !r.take_term(m.c_r) ||
          !r.take_term(m.ciphertext_2))
        return fail_with(r.err);
      out = std::move(m);
      break;
    }
    case 0x03: {
      Message3 m;
      if (!r.take_term(m.c_r) || !r.take_term(m.ciphertext_3))
        return fail_with(r.err);
      out = std::move(m);
      break;
    }
    default:
      return fail_with(WireError::UnknownType);
  }
  if (r.pos != bytes.size()) return fail_with(WireError::TrailingBytes);
  return {std::move(out), WireError::None};
}

// ---------------------------------------------------------------------------
// Transcript chain

Term data_2(const Term& c_i, const Term& g_y, const Term& c_r) {
  return normalize(tuple({c_i, g_y, c_r}));
}

Term term_of_bytes(const Bytes& b) { return pub(to_hex(b)); }

Term compute_th2(const Term& hash_alg, const Message1& m1,
                 const Term& data2) {
  return normalize(h1(tuple({hash_alg, term_of_bytes(encode(m1)), data2})));
}

Term compute_th3(const Term& th_2, const Term& ciphertext_2,
                 const Term& c_r) {
  return normalize(h1(tuple({th_2, ciphertext_2, c_r})));
}

Term compute_th4(const Term& th_3, const Term& ciphertext_3) {
  return normalize(h1(tuple({th_3, ciphertext_3})));
}

Term assoc_data(const Term& id_cred, const Term& th, const Term& cred,
                const std::optional<Term>& ad) {
  std::vector<Term> parts = {id_cred, th, cred};
  if (ad) parts.push_back(*ad);
  return normalize(tuple(std::move(parts)));
}

Term mac_term(const Term& k_m, const Term& assoc, const Term& alg) {
  return normalize(aead_encrypt(k_m, empty_str(), assoc, alg));
}

} // namespace edhoc
