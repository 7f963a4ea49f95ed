#include "edhoc/roles.hpp"

#include <algorithm>
#include <stdexcept>

namespace edhoc {

const PeerCred* CredDirectory::lookup(const Term& id_cred) const {
  auto it = by_id_cred.find(render(normalize(id_cred)));
  return it == by_id_cred.end() ? nullptr : &it->second;
}

const char* abort_reason_name(AbortReason r) {
  switch (r) {
    case AbortReason::None: return "none";
    case AbortReason::AuthFailure: return "auth-failure";
    case AbortReason::UnknownCred: return "unknown-cred";
    case AbortReason::UnintendedPeer: return "unintended-peer";
    case AbortReason::BadMessage: return "bad-message";
    case AbortReason::Rejected: return "rejected";
    case AbortReason::OutOfOrder: return "out-of-order";
  }
  return "?";
}

namespace {

Term sk_tuple(const Term& g_xy, const std::optional<Term>& g_rx,
              const std::optional<Term>& g_iy) {
  std::vector<Term> parts = {g_xy};
  if (g_rx) parts.push_back(*g_rx);
  if (g_iy) parts.push_back(*g_iy);
  return normalize(tuple(std::move(parts)));
}

} // namespace

// ---------------------------------------------------------------------------
// Initiator

InitiatorSession::InitiatorSession(InitiatorConfig cfg,
                                   const CredDirectory* dir)
    : cfg_(std::move(cfg)), dir_(dir) {
  if (!valid_method(cfg_.method))
    throw std::invalid_argument("invalid method pair");
  if (cfg_.suites.empty())
    throw std::invalid_argument("initiator needs a suite preference list");
}

Message1 InitiatorSession::i1(FreshSource& fs, Trace& tr) {
  if (step_ != Step::Start) throw std::logic_error("i1 called twice");
  x_ = fs.make("x");
  m1_.method_i = cfg_.method.initiator;
  m1_.method_r = cfg_.method.responder;
  m1_.suites_i = cfg_.suites;
  m1_.g_x = normalize(dh(gen(), x_));
  m1_.c_i = fs.make("cI");
  if (cfg_.method.initiator == Auth::Psk) m1_.id_psk = cfg_.auth.id_cred;
  m1_.ad_1 = cfg_.ad_1;

  tr.emit(EventKind::I1,
          {{"tid", cfg_.tid},
           {"u", cfg_.own_identity},
           {"intended_peer", cfg_.intended_peer},
           {"method", method_name(cfg_.method)},
           {"suites", cfg_.suites},
           {"m1", to_hex(encode(m1_))}});
  step_ = Step::SentM1;
  return m1_;
}

InitiatorSession::I3Outcome InitiatorSession::fail(AbortReason r) {
  step_ = Step::Aborted;
  abort_ = r;
  return {std::nullopt, r};
}

InitiatorSession::I3Outcome InitiatorSession::i3(const Message2& m2,
                                                 Trace& tr) {
  if (step_ != Step::SentM1) return {std::nullopt, AbortReason::OutOfOrder};

  const int suite = m1_.suites_i.front();
  const SuiteAlgs algs = suite_algs(suite);
  const bool is_psk = cfg_.method.initiator == Auth::Psk;
  const bool i_stat = cfg_.method.initiator == Auth::Stat;
  const bool r_stat = cfg_.method.responder == Auth::Stat;

  // Transcript and ephemeral-ephemeral secret. data_2 is taken from the
  // received fields, so any in-transit change diverges the transcripts.
  const Term th_2 =
      compute_th2(algs.hash, m1_, data_2(m2.c_i, m2.g_y, m2.c_r));
  const Term g_xy = normalize(dh(m2.g_y, x_));
  const Term prk_2e =
      derive_prk_2e(is_psk ? cfg_.auth.secret : empty_str(), g_xy);

  Term prk_3e2m;
  std::optional<Term> g_rx;
  std::optional<Term> received_ad_2;
  Term id_cred_r; // as received (psk: unused)

  if (is_psk) {
    prk_3e2m = prk_2e;
    const Term k_2ae =
        derive_key(prk_3e2m, th_2, "K_2ae", std::nullopt, algs.aead);
    auto payload = aead_decrypt(k_2ae, m2.ciphertext_2, th_2, algs.aead);
    if (!payload) return fail(AbortReason::AuthFailure);
    if (!equal_mod_E(*payload, empty_str())) received_ad_2 = *payload;
    peer_ = cfg_.intended_peer; // authenticated implicitly by the pair key
  } else {
    const Term c2 = normalize(m2.ciphertext_2);
    if (c2->kind != Kind::Tuple || c2->args.size() < 2 || c2->args.size() > 3)
      return fail(AbortReason::BadMessage);

    auto keystream = [&](int slot) {
      return derive_key(prk_2e, th_2, "K_2e", slot, algs.aead);
    };
    id_cred_r = normalize(xor2(c2->args[0], keystream(1)));
    const Term auth2 = normalize(xor2(c2->args[1], keystream(2)));
    if (c2->args.size() == 3)
      received_ad_2 = normalize(xor2(c2->args[2], keystream(3)));

    const PeerCred* pc = dir_ ? dir_->lookup(id_cred_r) : nullptr;
    if (!pc) return fail(AbortReason::UnknownCred);
    peer_ = pc->name;
    const Term cred_r = pc->cred;

    if (r_stat) {
      g_rx = normalize(dh(cred_r, x_));
      prk_3e2m = derive_prk_3e2m(prk_2e, true, g_rx);
    } else {
      prk_3e2m = prk_2e;
    }

    const Term k_2m =
        derive_key(prk_3e2m, th_2, "K_2m", std::nullopt, algs.aead);
    const Term assoc2 = assoc_data(id_cred_r, th_2, cred_r, received_ad_2);
    const Term mac2 = mac_term(k_2m, assoc2, algs.aead);
    bool ok = r_stat
                  ? equal_mod_E(auth2, mac2)
                  : verify_signature(auth2, tuple({assoc2, mac2}), cred_r);
    if (!ok) return fail(AbortReason::AuthFailure);

    if (cfg_.mitigation) {
      if (!cfg_.expected_peer_id_cred ||
          !equal_mod_E(id_cred_r, *cfg_.expected_peer_id_cred))
        return fail(AbortReason::UnintendedPeer);
    }
  }

  std::optional<Term> g_iy;
  if (i_stat) g_iy = normalize(dh(m2.g_y, cfg_.auth.secret));
  const Term prk_4x3m = derive_prk_4x3m(prk_3e2m, i_stat, g_iy);

  const Term th_3 = compute_th3(th_2, m2.ciphertext_2, m2.c_r);
  const Term k_3ae =
      derive_key(prk_3e2m, th_3, "K_3ae", std::nullopt, algs.aead);

  Term ciphertext_3;
  if (is_psk) {
    ciphertext_3 = normalize(aead_encrypt(
        k_3ae, cfg_.ad_3 ? *cfg_.ad_3 : empty_str(), th_3, algs.aead));
  } else {
    const Term k_3m =
        derive_key(prk_4x3m, th_3, "K_3m", std::nullopt, algs.aead);
    const Term assoc3 =
        assoc_data(cfg_.auth.id_cred, th_3, cfg_.auth.cred, cfg_.ad_3);
    const Term mac3 = mac_term(k_3m, assoc3, algs.aead);
    const Term auth3 = i_stat
                           ? mac3
                           : normalize(sign(tuple({assoc3, mac3}),
                                            cfg_.auth.secret));
    std::vector<Term> plain = {cfg_.auth.id_cred, auth3};
    if (cfg_.ad_3) plain.push_back(*cfg_.ad_3);
    ciphertext_3 = normalize(
        aead_encrypt(k_3ae, tuple(std::move(plain)), th_3, algs.aead));
  }

  Message3 m3{m2.c_r, ciphertext_3};
  const Term th_4 = compute_th4(th_3, ciphertext_3);

  ks_ = KeySchedule{g_xy,     g_rx,     g_iy,     prk_2e,
                    prk_3e2m, prk_4x3m, algs.aead, algs.hash};
  th_ = TranscriptHashes{th_2, th_3, th_4, algs.hash};
  sk_ = SessionKeyMaterial{sk_tuple(g_xy, g_rx, std::nullopt),
                           sk_tuple(g_xy, g_rx, g_iy)};

  tr.emit(EventKind::RunningI,
          {{"tid", cfg_.tid},
           {"u", cfg_.own_identity},
           {"v", peer_},
           {"sk", render(sk_->imp_sk)}});
  tr.emit(EventKind::ExpCommitI,
          {{"tid", cfg_.tid},
           {"u", cfg_.own_identity},
           {"v", peer_},
           {"sk", render(sk_->exp_sk)}});
  tr.emit(EventKind::CommitI,
          {{"tid", cfg_.tid},
           {"u", cfg_.own_identity},
           {"v", peer_},
           {"sk", render(sk_->imp_sk)}});
  tr.emit(EventKind::I3,
          {{"tid", cfg_.tid},
           {"u", cfg_.own_identity},
           {"v", peer_},
           {"m3", to_hex(encode(m3))}});
  step_ = Step::Done;
  return {m3, AbortReason::None};
}

void InitiatorSession::on_rejection(const Rejection&, Trace&) {
  if (step_ != Step::SentM1) return;
  step_ = Step::Aborted;
  abort_ = AbortReason::Rejected;
}

const SessionKeyMaterial& InitiatorSession::key_material() const {
  if (!sk_) throw std::logic_error("session key material undefined");
  return *sk_;
}

const KeySchedule& InitiatorSession::schedule() const {
  if (!ks_) throw std::logic_error("key schedule undefined");
  return *ks_;
}

const TranscriptHashes& InitiatorSession::transcripts() const {
  if (!th_) throw std::logic_error("transcripts undefined");
  return *th_;
}

Term InitiatorSession::exporter_output(std::string_view label) const {
  return exporter(schedule().prk_4x3m, transcripts().th_4, label);
}

const std::string& InitiatorSession::resolved_peer() const {
  if (step_ != Step::Done) throw std::logic_error("peer not resolved");
  return peer_;
}

// ---------------------------------------------------------------------------
// Responder

ResponderSession::ResponderSession(ResponderConfig cfg,
                                   const CredDirectory* dir)
    : cfg_(std::move(cfg)), dir_(dir) {}

ResponderSession::R2Outcome ResponderSession::r2(const Message1& m1,
                                                 FreshSource& fs, Trace& tr) {
  if (step_ != Step::Start)
    return {std::nullopt, Rejection{std::nullopt, "out-of-order"}};

  auto reject = [&](std::optional<int> counter, const std::string& why) {
    step_ = Step::Aborted;
    abort_ = AbortReason::Rejected;
    nlohmann::json rj;
    if (counter)
      rj = {{"counter", *counter}};
    else
      rj = {{"final", why}};
    tr.emit(EventKind::R2, {{"tid", cfg_.tid},
                            {"v", cfg_.own_identity},
                            {"m1", to_hex(encode(m1))},
                            {"rejection", rj}});
    return R2Outcome{std::nullopt, Rejection{counter, why}};
  };

  // Suite negotiation: accept the proposed head, otherwise counter-propose
  // the topmost supported entry of the remainder, otherwise give up.
  if (!cfg_.supported_suites.count(m1.suites_i.front())) {
    for (std::size_t i = 1; i < m1.suites_i.size(); ++i)
      if (cfg_.supported_suites.count(m1.suites_i[i]))
        return reject(m1.suites_i[i], "unsupported-suite");
    return reject(std::nullopt, "unsupported-suite");
  }

  method_ = {m1.method_i, m1.method_r};
  bool method_ok = false;
  for (MethodPair mp : cfg_.accepted_methods)
    method_ok |= (mp.initiator == method_.initiator &&
                  mp.responder == method_.responder);
  if (!method_ok) return reject(std::nullopt, "unsupported-method");

  const bool is_psk = method_.responder == Auth::Psk;
  const bool r_stat = method_.responder == Auth::Stat;
  if (is_psk) {
    auto it = cfg_.psks_by_id.find(render(normalize(*m1.id_psk)));
    if (it == cfg_.psks_by_id.end())
      return reject(std::nullopt, "unknown-psk");
    psk_ = it->second;
  } else {
    auto it = cfg_.creds.find(method_.responder);
    if (it == cfg_.creds.end())
      return reject(std::nullopt, "unsupported-method");
    auth_ = it->second;
  }

  suite_ = m1.suites_i.front();
  const SuiteAlgs algs = suite_algs(suite_);
  y_ = fs.make("y");
  c_r_ = fs.make("cR");
  const Term g_y = normalize(dh(gen(), y_));
  const Term th_2 = compute_th2(algs.hash, m1, data_2(m1.c_i, g_y, c_r_));
  g_xy_ = normalize(dh(m1.g_x, y_));
  const Term prk_2e =
      derive_prk_2e(is_psk ? psk_->psk : empty_str(), g_xy_);

  Term prk_3e2m;
  Term ciphertext_2;
  if (is_psk) {
    prk_3e2m = prk_2e;
    const Term k_2ae =
        derive_key(prk_3e2m, th_2, "K_2ae", std::nullopt, algs.aead);
    ciphertext_2 = normalize(aead_encrypt(
        k_2ae, cfg_.ad_2 ? *cfg_.ad_2 : empty_str(), th_2, algs.aead));
  } else {
    if (r_stat) {
      g_rx_ = normalize(dh(m1.g_x, auth_.secret));
      prk_3e2m = derive_prk_3e2m(prk_2e, true, g_rx_);
    } else {
      prk_3e2m = prk_2e;
    }
    const Term k_2m =
        derive_key(prk_3e2m, th_2, "K_2m", std::nullopt, algs.aead);
    const Term assoc2 = assoc_data(auth_.id_cred, th_2, auth_.cred, cfg_.ad_2);
    const Term mac2 = mac_term(k_2m, assoc2, algs.aead);
    const Term auth2 =
        r_stat ? mac2
               : normalize(sign(tuple({assoc2, mac2}), auth_.secret));
    auto keystream = [&](int slot) {
      return derive_key(prk_2e, th_2, "K_2e", slot, algs.aead);
    };
    std::vector<Term> slots = {normalize(xor2(auth_.id_cred, keystream(1))),
                               normalize(xor2(auth2, keystream(2)))};
    if (cfg_.ad_2) slots.push_back(normalize(xor2(*cfg_.ad_2, keystream(3))));
    ciphertext_2 = normalize(tuple(std::move(slots)));
  }

  exp_sk_ = sk_tuple(g_xy_, g_rx_, std::nullopt);

  Message2 m2{m1.c_i, g_y, c_r_, ciphertext_2};
  const Term th_3 = compute_th3(th_2, ciphertext_2, c_r_);

  // prk_4x3m is only final here when the initiator does not authenticate
  // statically; otherwise r4 extends it once CRED_I is known.
  ks_ = KeySchedule{g_xy_,    g_rx_,    std::nullopt, prk_2e,
                    prk_3e2m, prk_3e2m, algs.aead,    algs.hash};
  th_ = TranscriptHashes{th_2, th_3, th_2 /*placeholder*/, algs.hash};

  tr.emit(EventKind::ExpRunningR, {{"tid", cfg_.tid},
                                   {"v", cfg_.own_identity},
                                   {"sk", render(exp_sk_)}});
  tr.emit(EventKind::R2, {{"tid", cfg_.tid},
                          {"v", cfg_.own_identity},
                          {"m1", to_hex(encode(m1))},
                          {"m2", to_hex(encode(m2))}});
  step_ = Step::SentM2;
  return {m2, std::nullopt};
}

ResponderSession::R4Outcome ResponderSession::fail(AbortReason r) {
  step_ = Step::Aborted;
  abort_ = r;
  return {false, r};
}

ResponderSession::R4Outcome ResponderSession::r4(const Message3& m3,
                                                 Trace& tr) {
  if (step_ != Step::SentM2) return {false, AbortReason::OutOfOrder};

  const SuiteAlgs algs{ks_->aead_alg, ks_->hash_alg};
  const bool is_psk = method_.initiator == Auth::Psk;
  const bool i_stat = method_.initiator == Auth::Stat;

  const Term k_3ae =
      derive_key(ks_->prk_3e2m, th_->th_3, "K_3ae", std::nullopt, algs.aead);
  auto plain = aead_decrypt(k_3ae, m3.ciphertext_3, th_->th_3, algs.aead);
  if (!plain) return fail(AbortReason::AuthFailure);

  std::optional<Term> g_iy;
  if (is_psk) {
    peer_ = psk_->initiator;
  } else {
    const Term p = normalize(*plain);
    if (p->kind != Kind::Tuple || p->args.size() < 2 || p->args.size() > 3)
      return fail(AbortReason::BadMessage);
    const Term id_cred_i = p->args[0];
    const Term auth3 = p->args[1];
    std::optional<Term> ad_3;
    if (p->args.size() == 3) ad_3 = p->args[2];

    const PeerCred* pc = dir_ ? dir_->lookup(id_cred_i) : nullptr;
    if (!pc) return fail(AbortReason::UnknownCred);
    const Term cred_i = pc->cred;

    if (i_stat) g_iy = normalize(dh(cred_i, y_));
    ks_->g_iy = g_iy;
    ks_->prk_4x3m = derive_prk_4x3m(ks_->prk_3e2m, i_stat, g_iy);

    const Term k_3m =
        derive_key(ks_->prk_4x3m, th_->th_3, "K_3m", std::nullopt, algs.aead);
    const Term assoc3 = assoc_data(id_cred_i, th_->th_3, cred_i, ad_3);
    const Term mac3 = mac_term(k_3m, assoc3, algs.aead);
    bool ok = i_stat
                  ? equal_mod_E(auth3, mac3)
                  : verify_signature(auth3, tuple({assoc3, mac3}), cred_i);
    if (!ok) return fail(AbortReason::AuthFailure);
    peer_ = pc->name;
  }

  th_->th_4 = compute_th4(th_->th_3, m3.ciphertext_3);
  const Term full_sk = sk_tuple(g_xy_, g_rx_, g_iy);
  sk_ = SessionKeyMaterial{exp_sk_, full_sk};

  tr.emit(EventKind::CommitR, {{"tid", cfg_.tid},
                               {"v", cfg_.own_identity},
                               {"u", peer_},
                               {"sk", render(full_sk)}});
  tr.emit(EventKind::R4, {{"tid", cfg_.tid},
                          {"v", cfg_.own_identity},
                          {"u", peer_}});
  step_ = Step::Done;
  return {true, AbortReason::None};
}

const SessionKeyMaterial& ResponderSession::key_material() const {
  if (!sk_) throw std::logic_error("session key material undefined");
  return *sk_;
}

const KeySchedule& ResponderSession::schedule() const {
  if (!ks_) throw std::logic_error("key schedule undefined");
  return *ks_;
}

const TranscriptHashes& ResponderSession::transcripts() const {
  if (!th_) throw std::logic_error("transcripts undefined");
  return *th_;
}

Term ResponderSession::exporter_output(std::string_view label) const {
  if (step_ != Step::Done) throw std::logic_error("handshake incomplete");
  return exporter(ks_->prk_4x3m, th_->th_4, label);
}

const std::string& ResponderSession::resolved_peer() const {
  if (step_ != Step::Done) throw std::logic_error("peer not resolved");
  return peer_;
}

// ---------------------------------------------------------------------------
// Negotiation driver

MetaResult negotiate_meta(
    const std::vector<int>& preferences, const std::string& responder_identity,
    SuiteCache& cache,
    const std::function<RunOutcome(const std::vector<int>&)>& run_once,
    int max_runs) {
  MetaResult result;
  for (int run = 0; run < max_runs; ++run) {
    SuiteCache::PerPeer& pp = cache.peers[responder_identity];
    std::vector<int> candidates;
    for (int s : preferences)
      if (!pp.unsupported.count(s)) candidates.push_back(s);
    if (pp.selected && !pp.unsupported.count(*pp.selected)) {
      auto it = std::find(candidates.begin(), candidates.end(), *pp.selected);
      if (it != candidates.end()) {
        candidates.erase(it);
        candidates.insert(candidates.begin(), *pp.selected);
      }
    }
    if (candidates.empty()) return result; // negotiation-failed

    RunOutcome out = run_once(candidates);
    result.runs.push_back({candidates, out});
    if (out.accepted) {
      pp.selected = candidates.front();
      result.agreed_suite = candidates.front();
      return result;
    }
    if (out.final_reject || !out.counter) return result;

    // Every entry the responder skipped over is unsupported on its side.
    for (int s : candidates) {
      if (s == *out.counter) break;
      pp.unsupported.insert(s);
    }
    if (!std::count(preferences.begin(), preferences.end(), *out.counter))
      return result; // counter-proposal outside our own support
    pp.selected = *out.counter;
  }
  return result;
}

} // namespace edhoc
