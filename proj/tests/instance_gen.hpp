// Random deduction instances for cross-checking can_derive against the
// BFS oracle. All xor operands come from the declared pool and all
// exponents from the exponent pool, which is what the oracle's universe
// construction assumes (see oracle_bfs.hpp).

#pragma once

#include "oracle_bfs.hpp"

#include <algorithm>
#include <random>
#include <vector>

namespace edhoc::testing {

struct InstanceGen {
  std::mt19937_64 rng;
  explicit InstanceGen(std::uint64_t seed) : rng(seed) {}

  std::size_t pick(std::size_t n) { return rng() % n; }
  bool coin() { return rng() % 2 == 0; }

  OracleInstance make() {
    OracleInstance inst;
    FreshSource fs;
    Term alg = pub("cAEAD0");
    Term ad = pub("ad");
    std::vector<Term> atoms;
    for (const char* b : {"na", "nb", "nc", "nd"}) atoms.push_back(fs.make(b));
    Term x = fs.make("x");
    Term y = fs.make("y");
    Term k = fs.make("k");
    Term m = fs.make("m");

    inst.xor_pool = {atoms[0], atoms[1], atoms[2],
                     normalize(h1(atoms[3]))};
    inst.exponents = {x, y};

    auto pool_xor = [&] {
      std::vector<Term> parts;
      std::size_t want = 2 + pick(2);
      std::vector<std::size_t> idx = {0, 1, 2, 3};
      std::shuffle(idx.begin(), idx.end(), rng);
      for (std::size_t i = 0; i < want; ++i)
        parts.push_back(inst.xor_pool[idx[i]]);
      return normalize(app(Fun::Xor, std::move(parts)));
    };
    auto some_exp = [&] {
      std::vector<Term> args = {gen(), inst.exponents[pick(2)]};
      if (coin()) args.push_back(inst.exponents[pick(2)]);
      return normalize(app(Fun::Exp, std::move(args)));
    };
    auto entry = [&]() -> Term {
      switch (pick(8)) {
        case 0: return atoms[pick(4)];
        case 1: return pool_xor();
        case 2: return some_exp();
        case 3: return normalize(tuple({atoms[pick(4)], pool_xor()}));
        case 4:
          return normalize(aead_encrypt(coin() ? k : normalize(h1(k)), m,
                                        ad, alg));
        case 5: return normalize(h1(atoms[pick(4)]));
        case 6: return inst.exponents[pick(2)];
        default: return normalize(sign(atoms[pick(4)], k));
      }
    };

    std::size_t kb_n = 3 + pick(4); // 3..6
    for (std::size_t i = 0; i < kb_n; ++i) inst.kb.push_back(entry());

    auto query = [&]() -> Term {
      switch (pick(10)) {
        case 0: return atoms[pick(4)];
        case 1: return pool_xor();
        case 2: return some_exp();
        case 3: return normalize(dh(dh(gen(), x), y));
        case 4: return normalize(tuple({atoms[pick(4)], atoms[pick(4)]}));
        case 5: return normalize(h1(pool_xor()));
        case 6: return m;
        case 7: return k;
        case 8: return normalize(h1(atoms[pick(4)]));
        default:
          return normalize(tuple({normalize(h1(atoms[pick(4)])), pool_xor()}));
      }
    };
    for (int i = 0; i < 12; ++i) inst.queries.push_back(query());
    return inst;
  }
};

} // namespace edhoc::testing
