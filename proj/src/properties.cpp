#include "edhoc/properties.hpp"

#include "edhoc/term.hpp"

#include <optional>

namespace edhoc {

namespace {

struct Ev {
  std::size_t i;
  const nlohmann::json* p;
};

std::vector<Ev> collect(const Trace& t, EventKind k) {
  std::vector<Ev> out;
  for (std::size_t i = 0; i < t.events.size(); ++i)
    if (t.events[i].kind == k) out.push_back({i, &t.events[i].payload});
  return out;
}

std::string sfield(const Ev& e, const char* key) {
  return e.p->at(key).get<std::string>();
}

// Earliest LTKRev of u, of v, or of the pair, strictly before `limit`.
// Pass the trace size for the untimed variant.
std::optional<std::size_t> ltk_reveal(const Trace& t, const std::string& u,
                                      const std::string& v,
                                      std::size_t limit) {
  for (std::size_t i = 0; i < limit && i < t.events.size(); ++i) {
    const Event& e = t.events[i];
    if (e.kind != EventKind::LTKRev) continue;
    if (e.payload.contains("id")) {
      const auto id = e.payload.at("id").get<std::string>();
      if (id == u || id == v) return i;
    } else if (e.payload.contains("pair")) {
      const auto pr = e.payload.at("pair").get<std::vector<std::string>>();
      if (pr.size() == 2 &&
          ((pr[0] == u && pr[1] == v) || (pr[0] == v && pr[1] == u)))
        return i;
    }
  }
  return std::nullopt;
}

std::optional<std::size_t> sk_reveal(const Trace& t, const std::string& sk) {
  for (std::size_t i = 0; i < t.events.size(); ++i)
    if (t.events[i].kind == EventKind::SKRev &&
        t.events[i].payload.at("sk").get<std::string>() == sk)
      return i;
  return std::nullopt;
}

KnowledgeBase knowledge_at_end(const Trace& t) {
  KnowledgeBase kb;
  for (const Event& e : t.events)
    if (e.kind == EventKind::AttackerKnows && e.payload.contains("term"))
      kb.observe(parse_term(e.payload.at("term").get<std::string>()));
  return kb;
}

std::string deduction_bounds(const KnowledgeBase& kb) {
  return "knowledge closure at trace end, construction depth <= " +
         std::to_string(kb.construction_depth_bound);
}

// Index of the AttackerKnows event whose observation first makes sk
// derivable. Only computed for failure witnesses; rebuilding the base
// step by step is fine at that rate.
std::optional<std::size_t> first_derivation(const Trace& t, const Term& sk) {
  KnowledgeBase kb;
  for (std::size_t i = 0; i < t.events.size(); ++i) {
    const Event& e = t.events[i];
    if (e.kind != EventKind::AttackerKnows || !e.payload.contains("term"))
      continue;
    kb.observe(parse_term(e.payload.at("term").get<std::string>()));
    if (kb.can_derive(sk)) return i;
  }
  return std::nullopt;
}

// Shared body of both agreement directions. For every commitment:
// either a strictly earlier running declaration matches (v and the key
// material always; u too when the running event names the peer) and no
// second commitment of the same kind carries the same key material, or a
// long-term key of u, v or the pair was revealed before the commitment.
Verdict agreement(const Trace& t, EventKind commit_kind,
                  EventKind running_kind, bool match_u, const char* lemma) {
  Verdict out{lemma, LemmaResult::Pass,
              "event correspondence; no deduction involved", {}, ""};
  const auto commits = collect(t, commit_kind);
  const auto runnings = collect(t, running_kind);
  for (const Ev& c : commits) {
    const std::string u = sfield(c, "u");
    const std::string v = sfield(c, "v");
    const std::string sk = sfield(c, "sk");

    if (auto rev = ltk_reveal(t, u, v, c.i)) {
      out.witness.push_back(c.i);
      out.witness.push_back(*rev);
      continue;
    }

    const Ev* match = nullptr;
    for (const Ev& r : runnings) {
      if (r.i >= c.i) break;
      if (sfield(r, "v") != v || sfield(r, "sk") != sk) continue;
      if (match_u && sfield(r, "u") != u) continue;
      match = &r;
      break;
    }
    if (!match) {
      out.result = LemmaResult::Fail;
      out.witness = {c.i};
      out.note = "commitment has no earlier matching running declaration "
                 "and no excusing reveal";
      return out;
    }
    for (const Ev& c2 : commits) {
      if (c2.i != c.i && sfield(c2, "sk") == sk) {
        out.result = LemmaResult::Fail;
        out.witness = {c.i, c2.i};
        out.note = "two commitments share the same key material";
        return out;
      }
    }
    out.witness.push_back(c.i);
    out.witness.push_back(match->i);
  }
  return out;
}

} // namespace

nlohmann::json verdict_to_json(const Verdict& v) {
  return {{"lemma", v.lemma},
          {"result", v.result == LemmaResult::Pass ? "pass" : "fail"},
          {"bounds", v.bounds},
          {"witness", v.witness},
          {"note", v.note}};
}

bool all_pass(const std::vector<Verdict>& vs) {
  for (const Verdict& v : vs)
    if (v.result != LemmaResult::Pass) return false;
  return true;
}

Verdict check_inj_agreement_for_I(const Trace& t) {
  return agreement(t, EventKind::ExpCommitI, EventKind::ExpRunningR, false,
                   "injective-agreement-initiator");
}

Verdict check_inj_agreement_for_I_on_full_sk(const Trace& t) {
  return agreement(t, EventKind::CommitI, EventKind::ExpRunningR, false,
                   "injective-agreement-initiator-full-key");
}

Verdict check_inj_agreement_for_R(const Trace& t) {
  return agreement(t, EventKind::CommitR, EventKind::RunningI, true,
                   "injective-agreement-responder");
}

Verdict check_implicit_auth_for_I(const Trace& t) {
  const KnowledgeBase kb = knowledge_at_end(t);
  Verdict out{"implicit-auth-initiator", LemmaResult::Pass,
              deduction_bounds(kb), {}, ""};
  const auto commits = collect(t, EventKind::CommitI);
  const auto rcommits = collect(t, EventKind::CommitR);
  for (const Ev& c : commits) {
    const std::string u = sfield(c, "u");
    const std::string v = sfield(c, "v");
    const std::string sk = sfield(c, "sk");

    // reveal disjuncts: not time-restricted for this property
    if (auto rev = ltk_reveal(t, u, v, t.events.size())) {
      out.witness.push_back(c.i);
      out.witness.push_back(*rev);
      continue;
    }
    if (auto srev = sk_reveal(t, sk)) {
      out.witness.push_back(c.i);
      out.witness.push_back(*srev);
      if (out.note.empty())
        out.note = "commitment excused by explicit session-key reveal; the "
                   "reveal capability is outside this property's model";
      continue;
    }

    // all responder commitments on this key material agree on identities
    for (const Ev& r : rcommits) {
      if (sfield(r, "sk") != sk) continue;
      if (sfield(r, "u") != u || sfield(r, "v") != v) {
        out.result = LemmaResult::Fail;
        out.witness = {c.i, r.i};
        out.note = "a responder commitment on the same key material names "
                   "different identities";
        return out;
      }
    }
    // the attacker never derives the key material
    const Term skt = parse_term(sk);
    if (kb.can_derive(skt)) {
      out.result = LemmaResult::Fail;
      out.witness = {c.i};
      if (auto fd = first_derivation(t, skt)) out.witness.push_back(*fd);
      out.note = "attacker derives the committed key material";
      return out;
    }
    // injective correspondence among responder commitments
    for (std::size_t a = 0; a < rcommits.size(); ++a) {
      if (sfield(rcommits[a], "sk") != sk) continue;
      for (std::size_t b = a + 1; b < rcommits.size(); ++b) {
        if (sfield(rcommits[b], "sk") != sk) continue;
        out.result = LemmaResult::Fail;
        out.witness = {c.i, rcommits[a].i, rcommits[b].i};
        out.note = "two responder commitments share the same key material";
        return out;
      }
    }
    out.witness.push_back(c.i);
  }
  return out;
}

Verdict check_secrecy_pfs(const Trace& t) {
  const KnowledgeBase kb = knowledge_at_end(t);
  Verdict out{"session-key-pfs-secrecy", LemmaResult::Pass,
              deduction_bounds(kb), {}, ""};
  for (EventKind kind : {EventKind::CommitI, EventKind::CommitR}) {
    for (const Ev& c : collect(t, kind)) {
      const std::string u = sfield(c, "u");
      const std::string v = sfield(c, "v");
      const std::string sk = sfield(c, "sk");
      const Term skt = parse_term(sk);
      if (!kb.can_derive(skt)) continue;

      // derivable key: a pre-commit long-term reveal or an explicit
      // session-key reveal must account for it
      if (auto rev = ltk_reveal(t, u, v, c.i)) {
        out.witness.push_back(c.i);
        out.witness.push_back(*rev);
        continue;
      }
      if (auto srev = sk_reveal(t, sk)) {
        out.witness.push_back(c.i);
        out.witness.push_back(*srev);
        continue;
      }
      out.result = LemmaResult::Fail;
      out.witness = {c.i};
      if (auto fd = first_derivation(t, skt)) out.witness.push_back(*fd);
      out.note = "attacker derives committed key material without a "
                 "pre-commit long-term reveal or a session-key reveal";
      return out;
    }
  }
  return out;
}

std::vector<Verdict> check_all(const Trace& t) {
  return {check_inj_agreement_for_I(t), check_inj_agreement_for_R(t),
          check_implicit_auth_for_I(t), check_secrecy_pfs(t)};
}

} // namespace edhoc
