// Shared test fixture: three identities with signature and static-DH
// credentials, one psk pair, and a driver for honest in-order runs.

#pragma once

#include "edhoc/roles.hpp"

#include <map>
#include <string>
#include <vector>

namespace edhoc::testing {

struct Party {
  std::string name;
  OwnAuth sig;
  OwnAuth stat;
};

struct Fixture {
  FreshSource fs;
  std::map<std::string, Party> parties;
  CredDirectory dir;
  PskEntry psk_ab;

  Fixture() {
    for (const char* n : {"A", "B", "C"}) add_party(n);
    psk_ab.psk = fs.make(std::string("psk_A_B"));
    psk_ab.initiator = "A";
    psk_ab.responder = "B";
  }

  void add_party(const std::string& n) {
    Party p;
    p.name = n;
    p.sig.secret = fs.make("ltk_sig_" + n);
    p.sig.cred = normalize(pk(p.sig.secret));
    p.sig.id_cred = pub("idcred_sig_" + n);
    p.stat.secret = fs.make("ltk_stat_" + n);
    p.stat.cred = normalize(dh(gen(), p.stat.secret));
    p.stat.id_cred = pub("idcred_stat_" + n);
    dir.by_id_cred[render(p.sig.id_cred)] = {n, p.sig.cred};
    dir.by_id_cred[render(p.stat.id_cred)] = {n, p.stat.cred};
    parties[n] = p;
  }

  Term id_psk() const { return pub("idpsk_A_B"); }

  InitiatorConfig initiator_cfg(MethodPair m, const std::string& self,
                                const std::string& peer,
                                std::uint64_t tid = 1) {
    InitiatorConfig cfg;
    cfg.tid = tid;
    cfg.own_identity = self;
    cfg.intended_peer = peer;
    cfg.method = m;
    cfg.suites = {0};
    if (m.initiator == Auth::Psk) {
      cfg.auth.secret = psk_ab.psk;
      cfg.auth.id_cred = id_psk();
    } else {
      cfg.auth = m.initiator == Auth::Sig ? parties[self].sig
                                          : parties[self].stat;
    }
    const Party& pr = parties[peer];
    cfg.expected_peer_id_cred =
        m.responder == Auth::Sig ? pr.sig.id_cred
        : m.responder == Auth::Stat ? pr.stat.id_cred
                                    : id_psk();
    return cfg;
  }

  ResponderConfig responder_cfg(const std::string& self,
                                std::uint64_t tid = 2) {
    ResponderConfig cfg;
    cfg.tid = tid;
    cfg.own_identity = self;
    cfg.supported_suites = {0, 1};
    cfg.accepted_methods = all_methods();
    cfg.creds[Auth::Sig] = parties[self].sig;
    cfg.creds[Auth::Stat] = parties[self].stat;
    if (self == psk_ab.responder)
      cfg.psks_by_id[render(id_psk())] = psk_ab;
    return cfg;
  }
};

struct HonestRun {
  Trace tr;
  InitiatorSession initiator;
  ResponderSession responder;
  bool completed = false;

  HonestRun(InitiatorConfig icfg, ResponderConfig rcfg,
            const CredDirectory* dir, FreshSource& fs)
      : initiator(std::move(icfg), dir), responder(std::move(rcfg), dir) {
    Message1 m1 = initiator.i1(fs, tr);
    auto r2out = responder.r2(m1, fs, tr);
    if (!r2out.m2) return;
    auto i3out = initiator.i3(*r2out.m2, tr);
    if (!i3out.m3) return;
    auto r4out = responder.r4(*i3out.m3, tr);
    completed = r4out.completed;
  }
};

inline HonestRun run_honest(Fixture& fx, MethodPair m,
                            const std::string& i = "A",
                            const std::string& r = "B") {
  return HonestRun(fx.initiator_cfg(m, i, r), fx.responder_cfg(r), &fx.dir,
                   fx.fs);
}

} // namespace edhoc::testing
