#include "edhoc/environment.hpp"

#include "edhoc/key_schedule.hpp"

#include <json.hpp>

#include <memory>
#include <random>
#include <set>
#include <stdexcept>

namespace edhoc {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// kb growth is mirrored into the trace, one event per stored term, so a
// checker can rebuild the exact knowledge set from the record
void learn(KnowledgeBase& kb, Trace& tr, const Term& t) {
  for (const Term& got : kb.observe(t))
    tr.emit(EventKind::AttackerKnows, {{"term", render(got)}});
}

std::vector<Term> message_fields(const AnyMessage& m) {
  std::vector<Term> out;
  std::visit(overloaded{
                 [&](const Message1& v) {
                   out = {v.g_x, v.c_i};
                   if (v.id_psk) out.push_back(*v.id_psk);
                   if (v.ad_1) out.push_back(*v.ad_1);
                 },
                 [&](const Message2& v) {
                   out = {v.c_i, v.g_y, v.c_r, v.ciphertext_2};
                 },
                 [&](const Message3& v) { out = {v.c_r, v.ciphertext_3}; },
             },
             m);
  return out;
}

} // namespace

Term Registry::register_identity(const std::string& id, Auth kind) {
  if (kind == Auth::Psk)
    throw std::invalid_argument("psk material goes through register_psk");
  auto& slot = keys_[id];
  if (slot.count(kind))
    throw std::invalid_argument("duplicate long-term key for " + id);
  const char* kn = kind == Auth::Sig ? "sig" : "stat";
  OwnAuth own;
  own.secret = fs_->make(std::string("ltk_") + kn + "_" + id);
  own.cred = kind == Auth::Sig ? normalize(pk(own.secret))
                               : normalize(dh(gen(), own.secret));
  own.id_cred = pub(std::string("idcred_") + kn + "_" + id);
  slot[kind] = own;
  dir_.by_id_cred[render(own.id_cred)] = {id, own.cred};
  learn(*kb_, *tr_, pub(id));
  learn(*kb_, *tr_, own.cred);
  learn(*kb_, *tr_, own.id_cred);
  return own.cred;
}

Term Registry::register_psk(const std::string& initiator,
                            const std::string& responder) {
  const std::string key = initiator + "|" + responder;
  if (psks_.count(key))
    throw std::invalid_argument("duplicate psk for pair " + key);
  PskEntry entry;
  entry.psk = fs_->make("psk_" + initiator + "_" + responder);
  entry.initiator = initiator;
  entry.responder = responder;
  Term id = pub("idpsk_" + initiator + "_" + responder);
  psks_[key] = entry;
  psk_ids_[key] = id;
  learn(*kb_, *tr_, id);
  return id;
}

const OwnAuth* Registry::credentials(const std::string& id, Auth kind) const {
  auto it = keys_.find(id);
  if (it == keys_.end()) return nullptr;
  auto jt = it->second.find(kind);
  return jt == it->second.end() ? nullptr : &jt->second;
}

const PskEntry* Registry::psk(const std::string& initiator,
                              const std::string& responder) const {
  auto it = psks_.find(initiator + "|" + responder);
  return it == psks_.end() ? nullptr : &it->second;
}

Term Registry::psk_id(const std::string& initiator,
                      const std::string& responder) const {
  auto it = psk_ids_.find(initiator + "|" + responder);
  if (it == psk_ids_.end())
    throw std::invalid_argument("no psk registered for " + initiator + "|" +
                                responder);
  return it->second;
}

std::map<std::string, PskEntry> Registry::psks_for_responder(
    const std::string& responder) const {
  std::map<std::string, PskEntry> out;
  for (const auto& [key, entry] : psks_) {
    if (entry.responder == responder) out[render(psk_ids_.at(key))] = entry;
  }
  return out;
}

std::vector<std::string> Registry::identities() const {
  std::vector<std::string> out;
  for (const auto& [id, _] : keys_) out.push_back(id);
  return out;
}

// ---------------------------------------------------------------------
// schedule serialization

std::string schedule_to_json(const Schedule& s) {
  nlohmann::json steps = nlohmann::json::array();
  for (const Action& a : s.steps) {
    nlohmann::json j;
    std::visit(
        overloaded{
            [&](const ActNewSession& v) {
              j = {{"op", "new_session"},     {"role", v.role},
                   {"self", v.self},          {"peer", v.peer},
                   {"method", v.method},      {"suites", v.suites},
                   {"mitigation", v.mitigation}};
            },
            [&](const ActDeliver& v) {
              j = {{"op", "deliver"}, {"index", v.index}, {"to", v.to}};
            },
            [&](const ActDrop& v) { j = {{"op", "drop"}, {"index", v.index}}; },
            [&](const ActInject& v) {
              j = {{"op", "inject"}, {"to", v.to}, {"msg", to_hex(v.message)}};
            },
            [&](const ActRevealLtk& v) {
              j = {{"op", "reveal_ltk"}, {"id", v.id}};
            },
            [&](const ActRevealPsk& v) {
              j = {{"op", "reveal_psk"},
                   {"initiator", v.initiator},
                   {"responder", v.responder}};
            },
            [&](const ActRevealSk& v) {
              j = {{"op", "reveal_sk"}, {"tid", v.tid}};
            },
            [&](const ActDeduce& v) {
              j = {{"op", "deduce"}, {"term", v.term}};
            },
            [&](const ActAttackerFresh& v) {
              j = {{"op", "attacker_fresh"}, {"base", v.base}};
            },
        },
        a);
    steps.push_back(std::move(j));
  }
  nlohmann::json root = {{"seed", s.seed}, {"steps", steps}};
  return root.dump();
}

Schedule schedule_from_json(const std::string& text) {
  try {
    nlohmann::json root = nlohmann::json::parse(text);
    Schedule s;
    s.seed = root.at("seed").get<std::uint64_t>();
    for (const auto& j : root.at("steps")) {
      const std::string op = j.at("op").get<std::string>();
      if (op == "new_session") {
        ActNewSession v;
        v.role = j.at("role").get<std::string>();
        v.self = j.at("self").get<std::string>();
        v.peer = j.at("peer").get<std::string>();
        v.method = j.at("method").get<std::string>();
        v.suites = j.at("suites").get<std::vector<int>>();
        v.mitigation = j.at("mitigation").get<bool>();
        s.steps.emplace_back(std::move(v));
      } else if (op == "deliver") {
        s.steps.emplace_back(ActDeliver{j.at("index").get<std::size_t>(),
                                        j.at("to").get<std::uint64_t>()});
      } else if (op == "drop") {
        s.steps.emplace_back(ActDrop{j.at("index").get<std::size_t>()});
      } else if (op == "inject") {
        auto bytes = from_hex(j.at("msg").get<std::string>());
        if (!bytes) throw std::runtime_error("inject: bad hex");
        s.steps.emplace_back(
            ActInject{j.at("to").get<std::uint64_t>(), std::move(*bytes)});
      } else if (op == "reveal_ltk") {
        s.steps.emplace_back(ActRevealLtk{j.at("id").get<std::string>()});
      } else if (op == "reveal_psk") {
        s.steps.emplace_back(
            ActRevealPsk{j.at("initiator").get<std::string>(),
                         j.at("responder").get<std::string>()});
      } else if (op == "reveal_sk") {
        s.steps.emplace_back(ActRevealSk{j.at("tid").get<std::uint64_t>()});
      } else if (op == "deduce") {
        s.steps.emplace_back(ActDeduce{j.at("term").get<std::string>()});
      } else if (op == "attacker_fresh") {
        s.steps.emplace_back(ActAttackerFresh{j.at("base").get<std::string>()});
      } else {
        throw std::runtime_error("unknown schedule op: " + op);
      }
    }
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("malformed schedule: ") + e.what());
  }
}

// ---------------------------------------------------------------------
// world

namespace {

struct Sess {
  std::uint64_t tid = 0;
  std::string role;
  std::string self;
  std::unique_ptr<InitiatorSession> initiator;
  std::unique_ptr<ResponderSession> responder;
};

class World {
 public:
  World(Trace& tr, const Bounds& bounds)
      : tr_(tr), bounds_(bounds), reg_(fs_, kb_, tr_) {
    for (const char* id : {"A", "B", "C"}) {
      reg_.register_identity(id, Auth::Sig);
      reg_.register_identity(id, Auth::Stat);
    }
    reg_.register_psk("A", "B");
  }

  void apply(const Action& a) {
    std::visit([this](const auto& v) { handle(v); }, a);
  }

  const KnowledgeBase& kb() const { return kb_; }
  const std::vector<Bytes>& outbox() const { return outbox_; }
  const Registry& registry() const { return reg_; }

  std::optional<Step> session_step(std::uint64_t tid) const {
    for (const Sess& s : sessions_)
      if (s.tid == tid)
        return s.initiator ? s.initiator->step() : s.responder->step();
    return std::nullopt;
  }

  std::vector<SessionSummary> summaries() const {
    std::vector<SessionSummary> out;
    for (const Sess& s : sessions_) {
      SessionSummary sum;
      sum.tid = s.tid;
      sum.role = s.role;
      sum.self = s.self;
      if (s.initiator) {
        sum.step = s.initiator->step();
        sum.abort = s.initiator->abort_reason();
      } else {
        sum.step = s.responder->step();
        sum.abort = s.responder->abort_reason();
      }
      out.push_back(std::move(sum));
    }
    return out;
  }

  KnowledgeBase take_kb() { return std::move(kb_); }
  std::vector<Bytes> take_outbox() { return std::move(outbox_); }

 private:
  FreshSource fs_;
  KnowledgeBase kb_;
  Trace& tr_;
  Bounds bounds_;
  Registry reg_;
  std::vector<Bytes> outbox_;
  std::vector<Sess> sessions_;
  std::uint64_t next_tid_ = 1;

  Sess& find_session(std::uint64_t tid) {
    for (Sess& s : sessions_)
      if (s.tid == tid) return s;
    throw std::runtime_error("schedule references unknown session tid " +
                             std::to_string(tid));
  }

  void emit_message(const AnyMessage& m) {
    Bytes b = encode(m);
    const std::size_t idx = outbox_.size();
    outbox_.push_back(b);
    for (const Term& f : message_fields(m)) learn(kb_, tr_, f);
    tr_.emit(EventKind::AttackerKnows,
             {{"bytes", to_hex(b)}, {"index", idx}});
  }

  void deliver_decoded(const AnyMessage& msg, std::uint64_t to) {
    Sess& s = find_session(to);
    std::visit(
        overloaded{
            [&](const Message1& m1) {
              if (!s.responder)
                throw std::runtime_error("message 1 sent to non-responder");
              auto out = s.responder->r2(m1, fs_, tr_);
              if (out.m2) emit_message(AnyMessage{*out.m2});
            },
            [&](const Message2& m2) {
              if (!s.initiator)
                throw std::runtime_error("message 2 sent to non-initiator");
              auto out = s.initiator->i3(m2, tr_);
              if (out.m3) emit_message(AnyMessage{*out.m3});
            },
            [&](const Message3& m3) {
              if (!s.responder)
                throw std::runtime_error("message 3 sent to non-responder");
              s.responder->r4(m3, tr_);
            },
        },
        msg);
  }

  void handle(const ActNewSession& a) {
    if (sessions_.size() >= bounds_.max_sessions)
      throw std::runtime_error("session bound exceeded");
    Sess s;
    s.tid = next_tid_++;
    s.role = a.role;
    s.self = a.self;
    if (a.role == "initiator") {
      auto method = parse_method(a.method);
      if (!method)
        throw std::runtime_error("unknown method pair: " + a.method);
      InitiatorConfig cfg;
      cfg.tid = s.tid;
      cfg.own_identity = a.self;
      cfg.intended_peer = a.peer;
      cfg.method = *method;
      cfg.suites = a.suites;
      cfg.mitigation = a.mitigation;
      if (method->initiator == Auth::Psk) {
        const PskEntry* entry = reg_.psk(a.self, a.peer);
        if (!entry)
          throw std::runtime_error("no psk registered for " + a.self + "|" +
                                   a.peer);
        cfg.auth.secret = entry->psk;
        cfg.auth.id_cred = reg_.psk_id(a.self, a.peer);
      } else {
        const OwnAuth* own = reg_.credentials(a.self, method->initiator);
        if (!own) throw std::runtime_error("unregistered identity " + a.self);
        cfg.auth = *own;
      }
      if (method->responder == Auth::Psk) {
        cfg.expected_peer_id_cred = reg_.psk_id(a.self, a.peer);
      } else {
        const OwnAuth* peer = reg_.credentials(a.peer, method->responder);
        if (!peer) throw std::runtime_error("unregistered peer " + a.peer);
        cfg.expected_peer_id_cred = peer->id_cred;
      }
      s.initiator =
          std::make_unique<InitiatorSession>(cfg, &reg_.directory());
      sessions_.push_back(std::move(s));
      Message1 m1 = sessions_.back().initiator->i1(fs_, tr_);
      emit_message(AnyMessage{m1});
    } else if (a.role == "responder") {
      ResponderConfig cfg;
      cfg.tid = s.tid;
      cfg.own_identity = a.self;
      cfg.supported_suites = {0, 1};
      cfg.accepted_methods = all_methods();
      for (Auth kind : {Auth::Sig, Auth::Stat})
        if (const OwnAuth* own = reg_.credentials(a.self, kind))
          cfg.creds[kind] = *own;
      cfg.psks_by_id = reg_.psks_for_responder(a.self);
      s.responder =
          std::make_unique<ResponderSession>(cfg, &reg_.directory());
      sessions_.push_back(std::move(s));
    } else {
      throw std::runtime_error("unknown session role: " + a.role);
    }
  }

  void handle(const ActDeliver& a) {
    if (a.index >= outbox_.size())
      throw std::runtime_error("deliver: no message with index " +
                               std::to_string(a.index));
    const Bytes& b = outbox_[a.index];
    tr_.emit(EventKind::Delivered,
             {{"index", a.index}, {"msg", to_hex(b)}, {"to", a.to}});
    auto dec = decode(b);
    if (!dec.message) throw std::runtime_error("deliver: undecodable bytes");
    deliver_decoded(*dec.message, a.to);
  }

  void handle(const ActDrop& a) {
    if (a.index >= outbox_.size())
      throw std::runtime_error("drop: no message with index " +
                               std::to_string(a.index));
    tr_.emit(EventKind::Dropped,
             {{"index", a.index}, {"msg", to_hex(outbox_[a.index])}});
  }

  void handle(const ActInject& a) {
    auto dec = decode(a.message);
    if (!dec.message)
      throw std::runtime_error("inject: bytes do not decode to a message");
    for (const Term& f : message_fields(*dec.message))
      if (!kb_.can_derive(f))
        throw std::runtime_error("inject: field not derivable: " + render(f));
    tr_.emit(EventKind::Injected,
             {{"msg", to_hex(a.message)}, {"to", a.to}});
    deliver_decoded(*dec.message, a.to);
  }

  void handle(const ActRevealLtk& a) {
    const OwnAuth* sig = reg_.credentials(a.id, Auth::Sig);
    const OwnAuth* stat = reg_.credentials(a.id, Auth::Stat);
    if (!sig && !stat)
      throw std::runtime_error("reveal_ltk: unknown identity " + a.id);
    tr_.emit(EventKind::LTKRev, {{"id", a.id}});
    if (sig) learn(kb_, tr_, sig->secret);
    if (stat) learn(kb_, tr_, stat->secret);
  }

  void handle(const ActRevealPsk& a) {
    const PskEntry* entry = reg_.psk(a.initiator, a.responder);
    if (!entry)
      throw std::runtime_error("reveal_psk: no psk for " + a.initiator + "|" +
                               a.responder);
    tr_.emit(EventKind::LTKRev,
             {{"pair", nlohmann::json::array({a.initiator, a.responder})}});
    learn(kb_, tr_, entry->psk);
  }

  void handle(const ActRevealSk& a) {
    Sess& s = find_session(a.tid);
    const bool done = s.initiator ? s.initiator->step() == Step::Done
                                  : s.responder->step() == Step::Done;
    if (!done)
      throw std::runtime_error("reveal_sk: session " + std::to_string(a.tid) +
                               " has not committed");
    Term sk = s.initiator ? s.initiator->key_material().imp_sk
                          : s.responder->key_material().imp_sk;
    tr_.emit(EventKind::SKRev, {{"sk", render(sk)}, {"tid", a.tid}});
    learn(kb_, tr_, sk);
  }

  void handle(const ActDeduce& a) {
    Term t;
    try {
      t = parse_term(a.term);
    } catch (const std::invalid_argument& e) {
      throw std::runtime_error(std::string("deduce: bad term: ") + e.what());
    }
    if (!kb_.can_derive(t))
      throw std::runtime_error("deduce: term not derivable: " + a.term);
    learn(kb_, tr_, t);
  }

  void handle(const ActAttackerFresh& a) {
    learn(kb_, tr_, fs_.make(a.base));
  }
};

} // namespace

RunResult run_schedule(const Schedule& s, const Bounds& bounds) {
  if (s.steps.size() > bounds.max_steps)
    throw std::runtime_error("schedule exceeds step bound");
  RunResult rr;
  World w(rr.trace, bounds);
  for (const Action& a : s.steps) w.apply(a);
  rr.kb = w.take_kb();
  rr.outbox = w.take_outbox();
  rr.sessions = w.summaries();
  return rr;
}

// ---------------------------------------------------------------------
// bounded exploration

namespace {

// Grows a schedule action by action against a live world, so every choice
// (including synthesized injections) is grounded in the attacker knowledge
// at that point. The finished schedule is then rerun from scratch; the
// returned trace comes from that pure replay.
class ScheduleBuilder {
 public:
  ScheduleBuilder(MethodPair method, std::uint64_t seed, const Bounds& bounds)
      : method_(method), bounds_(bounds), rng_(seed), world_(scratch_, bounds) {
    sched_.seed = seed;
  }

  Schedule build() {
    step(ActNewSession{"responder", "B", "", "", {0}, false});
    resp_tid_ = 1;
    step(ActNewSession{"initiator", "A", "B", method_name(method_), {0},
                       false});
    init_tid_ = 2;

    while (budget() > 6) {
      auto next = first_pending();
      if (!next) break;
      const unsigned roll = pct();
      if (roll < 55) {
        deliver(*next);
      } else if (roll < 63) {
        consume(*next);
        step(ActDrop{pending_[*next].index});
      } else if (roll < 75) {
        tamper(*next);
      } else if (roll < 83 && !delivered_.empty()) {
        const auto& d = delivered_[rng_() % delivered_.size()];
        step(ActDeliver{d.index, d.target});
      } else if (roll < 88 && !revealed_ltk_b_) {
        revealed_ltk_b_ = true;
        step(ActRevealLtk{"B"});
      } else if (roll < 91 && !revealed_ltk_a_) {
        revealed_ltk_a_ = true;
        step(ActRevealLtk{"A"});
      } else if (roll < 94 && method_.initiator == Auth::Psk &&
                 !revealed_psk_) {
        revealed_psk_ = true;
        step(ActRevealPsk{"A", "B"});
      } else if (auto tid = random_done_session()) {
        step(ActRevealSk{*tid});
      } else {
        deliver(*next);
      }
    }

    // occasional post-flow extras
    if (budget() > 6 && pct() < 30) forged_start();
    if (budget() > 1 && pct() < 40) {
      if (auto tid = random_done_session()) step(ActRevealSk{*tid});
    }
    return sched_;
  }

 private:
  struct PendingMsg {
    std::size_t index = 0;
    int type = 0;
    std::uint64_t target = 0;
    bool consumed = false;
  };

  MethodPair method_;
  Bounds bounds_;
  std::mt19937_64 rng_;
  Trace scratch_;
  World world_;
  Schedule sched_;
  std::uint64_t resp_tid_ = 0, init_tid_ = 0;
  std::vector<PendingMsg> pending_;
  std::vector<PendingMsg> delivered_;
  std::size_t classified_ = 0;
  std::set<std::uint64_t> sk_revealed_;
  bool revealed_ltk_a_ = false, revealed_ltk_b_ = false,
       revealed_psk_ = false;
  std::uint64_t fresh_count_ = 0;

  unsigned pct() { return rng_() % 100; }
  std::size_t budget() const {
    return bounds_.max_steps - sched_.steps.size();
  }

  void step(Action a) {
    world_.apply(a);
    sched_.steps.push_back(std::move(a));
    classify_new();
  }

  // raw step without classification, for messages meant to vanish
  void step_quiet(Action a) {
    world_.apply(a);
    sched_.steps.push_back(std::move(a));
    classified_ = world_.outbox().size();
  }

  void classify_new() {
    for (; classified_ < world_.outbox().size(); ++classified_) {
      const Bytes& b = world_.outbox()[classified_];
      PendingMsg p;
      p.index = classified_;
      p.type = b.empty() ? 0 : b[0];
      p.target = p.type == 2 ? init_tid_ : resp_tid_;
      pending_.push_back(p);
    }
  }

  std::optional<std::size_t> first_pending() const {
    for (std::size_t i = 0; i < pending_.size(); ++i)
      if (!pending_[i].consumed) return i;
    return std::nullopt;
  }

  void consume(std::size_t i) { pending_[i].consumed = true; }

  void deliver(std::size_t i) {
    consume(i);
    step(ActDeliver{pending_[i].index, pending_[i].target});
    delivered_.push_back(pending_[i]);
  }

  std::optional<std::uint64_t> random_done_session() {
    std::vector<std::uint64_t> done;
    for (std::uint64_t tid : {init_tid_, resp_tid_})
      if (!sk_revealed_.count(tid) &&
          world_.session_step(tid) == Step::Done)
        done.push_back(tid);
    if (done.empty()) return std::nullopt;
    std::uint64_t tid = done[rng_() % done.size()];
    sk_revealed_.insert(tid);
    return tid;
  }

  Term mint(const std::string& base) {
    step(ActAttackerFresh{base + std::to_string(fresh_count_++)});
    return world_.kb().items().back();
  }

  // swap one field of a recorded message for attacker material and inject
  void tamper(std::size_t i) {
    const PendingMsg p = pending_[i];
    auto dec = decode(world_.outbox()[p.index]);
    if (!dec.message) {
      deliver(i);
      return;
    }
    consume(i);
    AnyMessage shape = *dec.message;
    if (p.type == 1) {
      std::get<Message1>(shape).c_i = mint("ci");
    } else if (p.type == 2) {
      std::get<Message2>(shape).c_r = mint("cr");
    } else {
      std::get<Message3>(shape).ciphertext_3 = mint("junk");
    }
    auto plan = synthesize(world_.kb(), shape);
    if (!plan) return; // nothing injectable from current knowledge
    for (const Term& t : plan->deductions)
      step(ActDeduce{render(t)});
    step(ActInject{p.target, plan->message});
  }

  // fresh responder session fed a fully synthesized m1
  void forged_start() {
    if (bounds_.max_sessions < 3) return;
    step(ActNewSession{"responder", "B", "", "", {0}, false});
    const std::uint64_t forged_tid = 3;
    Term x = mint("x");
    Term ci = mint("ci");
    Message1 shape;
    shape.method_i = method_.initiator;
    shape.method_r = method_.responder;
    shape.suites_i = {0};
    shape.g_x = normalize(dh(gen(), x));
    shape.c_i = ci;
    if (method_.initiator == Auth::Psk)
      shape.id_psk = world_.registry().psk_id("A", "B");
    auto plan = synthesize(world_.kb(), AnyMessage{shape});
    if (!plan) return;
    for (const Term& t : plan->deductions) step(ActDeduce{render(t)});
    step_quiet(ActInject{forged_tid, plan->message});
  }
};

ExploreOutcome generate_one(MethodPair method, std::uint64_t seed,
                            const Bounds& bounds) {
  ScheduleBuilder builder(method, seed, bounds);
  ExploreOutcome out;
  out.seed = seed;
  out.schedule = builder.build();
  out.trace = run_schedule(out.schedule, bounds).trace;
  return out;
}

} // namespace

std::vector<ExploreOutcome> explore_serial(MethodPair method,
                                           std::size_t n_seeds,
                                           const Bounds& bounds,
                                           std::uint64_t base_seed) {
  std::vector<ExploreOutcome> out(n_seeds);
  for (std::size_t i = 0; i < n_seeds; ++i)
    out[i] = generate_one(method, base_seed + i, bounds);
  return out;
}

std::vector<ExploreOutcome> explore_parallel(MethodPair method,
                                             std::size_t n_seeds,
                                             const Bounds& bounds,
                                             std::uint64_t base_seed) {
  std::vector<ExploreOutcome> out(n_seeds);
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < static_cast<long>(n_seeds); ++i)
    out[static_cast<std::size_t>(i)] =
        generate_one(method, base_seed + static_cast<std::uint64_t>(i), bounds);
  return out;
}

} // namespace edhoc
