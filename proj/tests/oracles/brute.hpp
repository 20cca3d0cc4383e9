#pragma once

// Brute-force reference implementations. They follow the definitions
// literally and share no code with the library algorithms beyond lattice
// operations.

#include <cstdint>
#include <utility>
#include <vector>

#include "qbisim/vcat.hpp"

namespace qbisim::oracle {

using Pairs = std::vector<std::pair<std::uint32_t, std::uint32_t>>;

inline bool in(const Pairs& r, std::uint32_t a, std::uint32_t b) {
  for (const auto& p : r) {
    if (p.first == a && p.second == b) return true;
  }
  return false;
}

// For (a,b) in R and every a': A(a,a') <= join{B(b,b') : (a',b') in R}.
inline bool is_simulation(const VCategory& a, const VCategory& b, const Pairs& r) {
  for (const auto& [x, y] : r) {
    for (std::uint32_t x2 = 0; x2 < a.size(); ++x2) {
      const Lattice& l = a.lattice(x, x2);
      Elem acc = l.bottom();
      for (const auto& [p, q] : r) {
        if (p == x2) acc = l.join(acc, b.hom(y, q));
      }
      if (!l.leq(a.hom(x, x2), acc)) return false;
    }
  }
  return true;
}

inline Pairs inverse(const Pairs& r) {
  Pairs out;
  for (const auto& [x, y] : r) out.emplace_back(y, x);
  return out;
}

inline bool is_bisimulation(const VCategory& a, const VCategory& b, const Pairs& r) {
  return is_simulation(a, b, r) && is_simulation(b, a, inverse(r));
}

inline Pairs candidates(const VCategory& a, const VCategory& b) {
  Pairs out;
  for (std::uint32_t x = 0; x < a.size(); ++x) {
    for (std::uint32_t y = 0; y < b.size(); ++y) {
      if (a.extent(x) == b.extent(y)) out.emplace_back(x, y);
    }
  }
  return out;
}

// Union of every subset of candidate pairs that passes the test. Exponential;
// keep the candidate count small (<= 16).
template <class Pred>
Pairs union_of_all(const VCategory& a, const VCategory& b, Pred pred) {
  const Pairs cand = candidates(a, b);
  std::vector<bool> hit(cand.size(), false);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << cand.size()); ++mask) {
    Pairs r;
    for (std::size_t i = 0; i < cand.size(); ++i) {
      if (mask >> i & 1) r.push_back(cand[i]);
    }
    if (!pred(r)) continue;
    for (std::size_t i = 0; i < cand.size(); ++i) {
      if (mask >> i & 1) hit[i] = true;
    }
  }
  Pairs out;
  for (std::size_t i = 0; i < cand.size(); ++i) {
    if (hit[i]) out.push_back(cand[i]);
  }
  return out;
}

inline Pairs largest_simulation(const VCategory& a, const VCategory& b) {
  return union_of_all(a, b, [&](const Pairs& r) { return is_simulation(a, b, r); });
}

inline Pairs largest_bisimulation(const VCategory& a, const VCategory& b) {
  return union_of_all(a, b, [&](const Pairs& r) { return is_bisimulation(a, b, r); });
}

// B(f x, y) = join{A(x,x') : f x' = y}, checked pair by pair.
inline bool functional_bisimulation(const VCategory& a, const VCategory& b, const std::vector<std::uint32_t>& f) {
  for (std::uint32_t x = 0; x < a.size(); ++x) {
    for (std::uint32_t y = 0; y < b.size(); ++y) {
      const Lattice& l = b.lattice(f[x], y);
      Elem acc = l.bottom();
      for (std::uint32_t x2 = 0; x2 < a.size(); ++x2) {
        if (f[x2] == y) acc = l.join(acc, a.hom(x, x2));
      }
      if (!(acc == b.hom(f[x], y))) return false;
    }
  }
  return true;
}

}  // namespace qbisim::oracle
