#include "edhoc/attacker.hpp"

#include <functional>
#include <stdexcept>

namespace edhoc {

bool KnowledgeBase::contains(const Term& t) const {
  return index_.count(normalize(t)) != 0;
}

bool KnowledgeBase::add(const Term& normalized, std::vector<Term>& added) {
  if (!index_.insert(normalized).second) return false;
  items_.push_back(normalized);
  added.push_back(normalized);
  memo_.clear();
  return true;
}

// Sweep-to-fixpoint over the stored set. Each sweep walks items in
// insertion order, so the added-terms order is reproducible run to run.
void KnowledgeBase::saturate(std::vector<Term>& added) {
  bool grew = true;
  while (grew) {
    grew = false;
    for (std::size_t i = 0; i < items_.size(); ++i) {
      Term t = items_[i];
      if (t->kind == Kind::Tuple) {
        for (const Term& a : t->args) grew = add(a, added) || grew;
      } else if (t->kind == Kind::App && t->fun == Fun::Xor) {
        for (const Term& e : t->args) {
          if (e->kind == Kind::Pub || index_.count(e))
            grew = add(normalize(xor2(t, e)), added) || grew;
        }
      } else if (t->kind == Kind::App && t->fun == Fun::AeadEnc) {
        if (!index_.count(t->args[1]) && can_derive(t->args[0]))
          grew = add(t->args[1], added) || grew;
      }
    }
  }
}

std::vector<Term> KnowledgeBase::observe(const Term& t) {
  std::vector<Term> added;
  if (add(normalize(t), added)) saturate(added);
  return added;
}

bool KnowledgeBase::can_derive(const Term& t, int depth) const {
  return derive_impl(normalize(t), depth);
}

bool KnowledgeBase::derive_impl(const Term& t, int depth) const {
  if (t->kind == Kind::Pub) return true;
  if (index_.count(t)) return true;
  if (depth <= 0) return false;

  {
    auto it = memo_.find(t);
    if (it != memo_.end() && (int)it->second.size() > depth &&
        it->second[depth] >= 0)
      return it->second[depth] != 0;
  }

  auto xor_of = [](std::vector<Term> parts) {
    return parts.size() == 1 ? parts[0] : app(Fun::Xor, std::move(parts));
  };

  bool ok = false;
  switch (t->kind) {
    case Kind::Pub:
    case Kind::Fresh:
      break;
    case Kind::Tuple: {
      ok = true;
      for (const Term& a : t->args) ok = ok && derive_impl(a, depth - 1);
      break;
    }
    case Kind::App:
      if (t->fun == Fun::Exp) {
        // peel one exponent: prefix and peeled exponent both derivable
        for (std::size_t i = 1; i < t->args.size() && !ok; ++i) {
          Term prefix;
          if (t->args.size() == 2) {
            prefix = t->args[0];
          } else {
            std::vector<Term> rest;
            for (std::size_t j = 0; j < t->args.size(); ++j)
              if (j != i) rest.push_back(t->args[j]);
            prefix = normalize(app(Fun::Exp, std::move(rest)));
          }
          ok = derive_impl(prefix, depth - 1) &&
               derive_impl(t->args[i], depth - 1);
        }
      } else if (t->fun == Fun::Xor) {
        // split the element set into two derivable halves; masks with the
        // low bit set cover each unordered split exactly once
        const auto& s = t->args;
        const std::size_t n = s.size();
        for (std::size_t mask = 1; mask + 1 < (1u << n) && !ok; mask += 2) {
          std::vector<Term> a, b;
          for (std::size_t i = 0; i < n; ++i)
            (mask & (1u << i) ? a : b).push_back(s[i]);
          if (b.empty()) continue;
          ok = derive_impl(xor_of(std::move(a)), depth - 1) &&
               derive_impl(xor_of(std::move(b)), depth - 1);
        }
      } else {
        ok = true;
        for (const Term& a : t->args) ok = ok && derive_impl(a, depth - 1);
      }
      break;
  }

  if (!ok) {
    // cancellation against a stored xor blob: t = blob xor diff
    for (const Term& c : items_) {
      if (c->kind != Kind::App || c->fun != Fun::Xor) continue;
      if (derive_impl(normalize(xor2(t, c)), depth - 1)) {
        ok = true;
        break;
      }
    }
  }

  auto& slots = memo_[t];
  if ((int)slots.size() <= depth) slots.resize(depth + 1, -1);
  slots[depth] = ok ? 1 : 0;
  return ok;
}

namespace {

// Post-order construction of one term: every composite or unlockable leaf
// that is not already cheap (member or one symbol away) gets recorded, so
// each chain entry stays derivable well inside the bound given its
// predecessors.
bool ensure_term(KnowledgeBase& work, std::vector<Term>& chain,
                 const Term& raw) {
  Term t = normalize(raw);
  if (work.can_derive(t, 1)) return true;
  if (t->args.empty()) {
    if (!work.can_derive(t)) return false;
    work.observe(t);
    chain.push_back(t);
    return true;
  }
  for (const Term& a : t->args)
    if (!ensure_term(work, chain, a)) return false;
  if (!work.can_derive(t, 1)) {
    work.observe(t);
    chain.push_back(t);
  }
  return true;
}

} // namespace

std::optional<SynthesisPlan> synthesize(const KnowledgeBase& kb,
                                        const AnyMessage& shape) {
  KnowledgeBase work = kb;
  SynthesisPlan plan;

  std::vector<Term> fields;
  std::visit(
      [&](const auto& m) {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, Message1>) {
          fields = {m.g_x, m.c_i};
          if (m.id_psk) fields.push_back(*m.id_psk);
          if (m.ad_1) fields.push_back(*m.ad_1);
        } else if constexpr (std::is_same_v<M, Message2>) {
          fields = {m.c_i, m.g_y, m.c_r, m.ciphertext_2};
        } else {
          fields = {m.c_r, m.ciphertext_3};
        }
      },
      shape);

  for (const Term& f : fields)
    if (!ensure_term(work, plan.deductions, f)) return std::nullopt;

  try {
    plan.message = encode(shape);
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
  return plan;
}

} // namespace edhoc
