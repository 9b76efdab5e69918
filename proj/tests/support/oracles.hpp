#pragma once

// Test-only oracles, kept independent of the implementation paths they
// check.

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "bmg/structures.hpp"

namespace bmg::test {

/// Plain exhaustive EF-game recursion: duplicator survives `depth` rounds
/// iff every spoiler pick on either side has an atomic-type-preserving
/// response.
inline bool partial_iso_ok(const FinStructure& a, const FinStructure& b,
                           const std::map<Vertex, Vertex>& m) {
  for (const auto& rel : a.sig().relations()) {
    const int arity = rel.arity;
    std::vector<Vertex> dom;
    for (const auto& [x, y] : m) dom.push_back(x);
    std::vector<int> idx(static_cast<std::size_t>(arity), 0);
    bool ok = true;
    auto rec = [&](auto&& self, std::size_t pos) -> void {
      if (!ok) return;
      if (pos == idx.size()) {
        Tuple t(idx.size()), img(idx.size());
        for (std::size_t i = 0; i < idx.size(); ++i) {
          t[i] = dom[static_cast<std::size_t>(idx[i])];
          img[i] = m.at(t[i]);
        }
        if (a.has_tuple(rel.name, t) != b.has_tuple(rel.name, img)) ok = false;
        return;
      }
      for (std::size_t i = 0; i < dom.size(); ++i) {
        idx[pos] = static_cast<int>(i);
        self(self, pos + 1);
      }
    };
    if (!dom.empty()) rec(rec, 0);
    if (!ok) return false;
  }
  return true;
}

inline bool ef_game_equiv_rec(const FinStructure& a, const FinStructure& b,
                              std::map<Vertex, Vertex>& fwd, std::map<Vertex, Vertex>& bwd,
                              int rounds) {
  if (rounds == 0) return true;
  // Spoiler in A.
  for (Vertex x : a.universe()) {
    bool answered = false;
    if (auto it = fwd.find(x); it != fwd.end()) {
      answered = ef_game_equiv_rec(a, b, fwd, bwd, rounds - 1);
    } else {
      for (Vertex y : b.universe()) {
        if (bwd.count(y)) continue;
        fwd[x] = y;
        bwd[y] = x;
        const bool good = partial_iso_ok(a, b, fwd) && ef_game_equiv_rec(a, b, fwd, bwd, rounds - 1);
        fwd.erase(x);
        bwd.erase(y);
        if (good) {
          answered = true;
          break;
        }
      }
    }
    if (!answered) return false;
  }
  // Spoiler in B.
  for (Vertex y : b.universe()) {
    bool answered = false;
    if (auto it = bwd.find(y); it != bwd.end()) {
      answered = ef_game_equiv_rec(a, b, fwd, bwd, rounds - 1);
    } else {
      for (Vertex x : a.universe()) {
        if (fwd.count(x)) continue;
        fwd[x] = y;
        bwd[y] = x;
        const bool good = partial_iso_ok(a, b, fwd) && ef_game_equiv_rec(a, b, fwd, bwd, rounds - 1);
        fwd.erase(x);
        bwd.erase(y);
        if (good) {
          answered = true;
          break;
        }
      }
    }
    if (!answered) return false;
  }
  return true;
}

inline bool ef_game_equiv(const FinStructure& a, const FinStructure& b, int rounds) {
  if (!(a.sig() == b.sig())) return false;
  std::map<Vertex, Vertex> fwd, bwd;
  return ef_game_equiv_rec(a, b, fwd, bwd, rounds);
}

/// Brute-force embedding count: every injective vertex assignment validated
/// with check_embedding alone.
inline int count_embeddings_brute(const FinStructure& a, const FinStructure& b) {
  const std::vector<Vertex> dom = a.vertices();
  const std::vector<Vertex> cod = b.vertices();
  int count = 0;
  std::map<Vertex, Vertex> m;
  std::set<Vertex> used;
  auto rec = [&](auto&& self, std::size_t pos) -> void {
    if (pos == dom.size()) {
      if (check_embedding(Embedding{a, b, m})) ++count;
      return;
    }
    for (Vertex y : cod) {
      if (used.count(y)) continue;
      m[dom[pos]] = y;
      used.insert(y);
      self(self, pos + 1);
      m.erase(dom[pos]);
      used.erase(y);
    }
  };
  rec(rec, 0);
  return count;
}

/// Does the graph contain, at any root, a complete `branching`-ary tree of
/// depth `depth` (greedy in trees: subtrees below distinct children are
/// disjoint)?
inline bool hosts_complete_tree(const FinStructure& g, Vertex root, Vertex parent,
                                int branching, int depth) {
  if (depth == 0) return true;
  int hosting = 0;
  for (Vertex c : graph_neighbors(g, root)) {
    if (c == parent) continue;
    if (hosts_complete_tree(g, c, root, branching, depth - 1)) ++hosting;
    if (hosting >= branching) return true;
  }
  return false;
}

inline bool component_hosts_complete_tree(const FinStructure& g,
                                          const std::vector<Vertex>& component, int branching,
                                          int depth) {
  for (Vertex root : component) {
    if (hosts_complete_tree(g, root, -1, branching, depth)) return true;
  }
  return false;
}

}  // namespace bmg::test
