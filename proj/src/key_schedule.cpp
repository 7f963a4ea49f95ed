#include "edhoc/key_schedule.hpp"

#include <stdexcept>

namespace edhoc {

bool valid_method(MethodPair m) {
  return (m.initiator == Auth::Psk) == (m.responder == Auth::Psk);
}

namespace {

const char* auth_name(Auth a) {
  switch (a) {
    case Auth::Sig: return "sig";
    case Auth::Stat: return "stat";
    case Auth::Psk: return "psk";
  }
  return "?";
}

} // namespace

std::string method_name(MethodPair m) {
  return std::string(auth_name(m.initiator)) + "-" + auth_name(m.responder);
}

std::optional<MethodPair> parse_method(std::string_view name) {
  for (MethodPair m : all_methods())
    if (method_name(m) == name) return m;
  return std::nullopt;
}

const std::vector<MethodPair>& all_methods() {
  static const std::vector<MethodPair> ms = {
      {Auth::Sig, Auth::Sig},   {Auth::Sig, Auth::Stat},
      {Auth::Stat, Auth::Sig},  {Auth::Stat, Auth::Stat},
      {Auth::Psk, Auth::Psk},
  };
  return ms;
}

SuiteAlgs suite_algs(int suite) {
  if (suite < 0) throw std::invalid_argument("negative cipher suite");
  return {pub("cAEAD" + std::to_string(suite)),
          pub("cHash" + std::to_string(suite))};
}

Term derive_prk_2e(const Term& seed, const Term& g_xy) {
  return normalize(extract(seed, g_xy));
}

Term derive_prk_3e2m(const Term& prk_2e, bool responder_uses_stat,
                     const std::optional<Term>& g_rx) {
  if (!responder_uses_stat) return normalize(prk_2e);
  if (!g_rx) throw std::invalid_argument("static responder needs g_rx");
  return normalize(extract(prk_2e, *g_rx));
}

Term derive_prk_4x3m(const Term& prk_3e2m, bool initiator_uses_stat,
                     const std::optional<Term>& g_iy) {
  if (!initiator_uses_stat) return normalize(prk_3e2m);
  if (!g_iy) throw std::invalid_argument("static initiator needs g_iy");
  return normalize(extract(prk_3e2m, *g_iy));
}

Term derive_key(const Term& prk, const Term& th, std::string_view label,
                std::optional<int> slot, const Term& aead_alg) {
  bool known = label == "K_2e" || label == "K_2m" || label == "K_3ae" ||
               label == "K_3m" || label == "K_2ae";
  if (!known)
    throw std::invalid_argument("unknown key label: " + std::string(label));
  if (slot && label != "K_2e")
    throw std::invalid_argument("keystream slot only applies to K_2e");
  std::vector<Term> info = {aead_alg, th, pub(label)};
  if (slot) info.push_back(pub(std::to_string(*slot)));
  return normalize(expand(tuple(std::move(info)), prk));
}

Term exporter(const Term& prk_4x3m, const Term& th_4,
              std::string_view export_label) {
  return normalize(expand(tuple({th_4, pub(export_label)}), prk_4x3m));
}

KeySchedule build_key_schedule(MethodPair m, const Term& g_xy,
                               const std::optional<Term>& g_rx,
                               const std::optional<Term>& g_iy,
                               const std::optional<Term>& psk,
                               const SuiteAlgs& algs) {
  if (!valid_method(m)) throw std::invalid_argument("invalid method pair");
  bool is_psk = m.initiator == Auth::Psk;
  if (is_psk != psk.has_value())
    throw std::invalid_argument("psk present iff method is psk-psk");
  bool r_stat = m.responder == Auth::Stat;
  bool i_stat = m.initiator == Auth::Stat;
  if (r_stat != g_rx.has_value())
    throw std::invalid_argument("g_rx present iff responder uses stat");
  if (i_stat != g_iy.has_value())
    throw std::invalid_argument("g_iy present iff initiator uses stat");

  KeySchedule ks;
  ks.g_xy = normalize(g_xy);
  ks.g_rx = g_rx ? std::optional<Term>(normalize(*g_rx)) : std::nullopt;
  ks.g_iy = g_iy ? std::optional<Term>(normalize(*g_iy)) : std::nullopt;
  ks.prk_2e = derive_prk_2e(is_psk ? *psk : empty_str(), ks.g_xy);
  ks.prk_3e2m = derive_prk_3e2m(ks.prk_2e, r_stat, ks.g_rx);
  ks.prk_4x3m = derive_prk_4x3m(ks.prk_3e2m, i_stat, ks.g_iy);
  ks.aead_alg = algs.aead;
  ks.hash_alg = algs.hash;
  return ks;
}

MessageKeys derive_message_keys(const KeySchedule& ks, MethodPair m,
                                const Term& th_2, const Term& th_3) {
  MessageKeys mk;
  mk.k_2e = derive_key(ks.prk_2e, th_2, "K_2e", std::nullopt, ks.aead_alg);
  mk.k_2e_1 = derive_key(ks.prk_2e, th_2, "K_2e", 1, ks.aead_alg);
  mk.k_2e_2 = derive_key(ks.prk_2e, th_2, "K_2e", 2, ks.aead_alg);
  mk.k_2m = derive_key(ks.prk_3e2m, th_2, "K_2m", std::nullopt, ks.aead_alg);
  mk.k_3ae = derive_key(ks.prk_3e2m, th_3, "K_3ae", std::nullopt, ks.aead_alg);
  mk.k_3m = derive_key(ks.prk_4x3m, th_3, "K_3m", std::nullopt, ks.aead_alg);
  if (m.initiator == Auth::Psk)
    mk.k_2ae =
        derive_key(ks.prk_3e2m, th_2, "K_2ae", std::nullopt, ks.aead_alg);
  return mk;
}

} // namespace edhoc
