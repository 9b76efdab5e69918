#include "bmg/structures.hpp"

#include <algorithm>
#include <functional>

namespace bmg {

Signature::Signature(std::vector<RelSpec> relations) : relations_(std::move(relations)) {
  for (std::size_t i = 0; i < relations_.size(); ++i) {
    if (relations_[i].arity < 1) {
      throw GameError(Fault::InvalidArgument, "relation arity must be >= 1");
    }
    for (std::size_t j = i + 1; j < relations_.size(); ++j) {
      if (relations_[i].name == relations_[j].name) {
        throw GameError(Fault::InvalidArgument,
                        "duplicate relation name: " + relations_[i].name);
      }
    }
  }
}

const RelSpec* Signature::find(const std::string& name) const {
  for (const auto& r : relations_) {
    if (r.name == name) return &r;
  }
  return nullptr;
}

const Signature& Signature::empty() {
  static const Signature sig{};
  return sig;
}

const Signature& Signature::graphs() {
  static const Signature sig{std::vector<RelSpec>{{"edge", 2}}};
  return sig;
}

const Signature& Signature::linear_orders() {
  static const Signature sig{std::vector<RelSpec>{{"lt", 2}}};
  return sig;
}

void FinStructure::add_vertex(Vertex v) { universe_.insert(v); }

void FinStructure::add_tuple(const std::string& rel, Tuple t) {
  const RelSpec* spec = sig_.find(rel);
  if (!spec) throw GameError(Fault::InvalidArgument, "unknown relation: " + rel);
  if (static_cast<int>(t.size()) != spec->arity) {
    throw GameError(Fault::InvalidArgument, "arity mismatch for relation " + rel);
  }
  for (Vertex v : t) {
    if (!has_vertex(v)) {
      throw GameError(Fault::InvalidArgument,
                      "tuple entry " + std::to_string(v) + " outside the universe");
    }
  }
  tables_[rel].insert(std::move(t));
}

bool FinStructure::has_tuple(const std::string& rel, const Tuple& t) const {
  auto it = tables_.find(rel);
  return it != tables_.end() && it->second.count(t) > 0;
}

const std::set<Tuple>& FinStructure::table(const std::string& rel) const {
  static const std::set<Tuple> kEmpty;
  auto it = tables_.find(rel);
  return it == tables_.end() ? kEmpty : it->second;
}

void FinStructure::add_edge(Vertex u, Vertex v) {
  if (u == v) throw GameError(Fault::InvalidArgument, "loops are not allowed");
  add_tuple("edge", {u, v});
  add_tuple("edge", {v, u});
}

bool FinStructure::adjacent(Vertex u, Vertex v) const { return has_tuple("edge", {u, v}); }

FinStructure induced_substructure(const FinStructure& m, const std::set<Vertex>& s) {
  FinStructure out(m.sig());
  for (Vertex v : s) {
    if (!m.has_vertex(v)) {
      throw GameError(Fault::InvalidArgument,
                      "induced substructure over a non-subset of the universe");
    }
    out.add_vertex(v);
  }
  for (const auto& rel : m.sig().relations()) {
    for (const Tuple& t : m.table(rel.name)) {
      bool inside = true;
      for (Vertex v : t) {
        if (!s.count(v)) {
          inside = false;
          break;
        }
      }
      if (inside) out.add_tuple(rel.name, t);
    }
  }
  return out;
}

bool structure_extends(const FinStructure& small, const FinStructure& big) {
  if (!(small.sig() == big.sig())) return false;
  for (Vertex v : small.universe()) {
    if (!big.has_vertex(v)) return false;
  }
  return induced_substructure(big, small.universe()) == small;
}

Vertex Embedding::operator()(Vertex v) const {
  auto it = map.find(v);
  if (it == map.end()) {
    throw GameError(Fault::InvalidArgument,
                    "embedding undefined on vertex " + std::to_string(v));
  }
  return it->second;
}

Embedding Embedding::identity(const FinStructure& s) {
  Embedding e{s, s, {}};
  for (Vertex v : s.universe()) e.map[v] = v;
  return e;
}

namespace {

/// Every assignment of `arity` vertices drawn (with repetition) from `verts`.
void for_each_tuple(const std::vector<Vertex>& verts, int arity,
                    const std::function<void(const Tuple&)>& fn) {
  Tuple t(static_cast<std::size_t>(arity));
  auto rec = [&](auto&& self, int pos) -> void {
    if (pos == arity) {
      fn(t);
      return;
    }
    for (Vertex v : verts) {
      t[static_cast<std::size_t>(pos)] = v;
      self(self, pos + 1);
    }
  };
  rec(rec, 0);
}

}  // namespace

bool check_embedding(const Embedding& e) {
  const auto& dom = e.domain;
  const auto& cod = e.codomain;
  if (!(dom.sig() == cod.sig())) return false;

  std::set<Vertex> images;
  for (Vertex v : dom.universe()) {
    auto it = e.map.find(v);
    if (it == e.map.end()) return false;               // not total
    if (!cod.has_vertex(it->second)) return false;     // escapes the codomain
    if (!images.insert(it->second).second) return false;  // not injective
  }

  const std::vector<Vertex> verts = dom.vertices();
  bool ok = true;
  for (const auto& rel : dom.sig().relations()) {
    for_each_tuple(verts, rel.arity, [&](const Tuple& t) {
      if (!ok) return;
      Tuple image(t.size());
      for (std::size_t i = 0; i < t.size(); ++i) image[i] = e.map.at(t[i]);
      if (dom.has_tuple(rel.name, t) != cod.has_tuple(rel.name, image)) ok = false;
    });
    if (!ok) return false;
  }
  return true;
}

namespace {

/// Incremental consistency when mapping a -> b on top of `partial`: every
/// domain tuple inside dom(partial)+a containing a must map into the
/// codomain table, and every codomain tuple inside ran(partial)+b
/// containing b must pull back into the domain table.
bool extension_consistent(const FinStructure& dom, const FinStructure& cod,
                          const std::map<Vertex, Vertex>& partial,
                          const std::map<Vertex, Vertex>& partial_inv, Vertex a,
                          Vertex b) {
  for (const auto& rel : dom.sig().relations()) {
    for (const Tuple& t : dom.table(rel.name)) {
      bool touches_a = false;
      bool mapped = true;
      Tuple image(t.size());
      for (std::size_t i = 0; i < t.size(); ++i) {
        Vertex v = t[i];
        if (v == a) {
          touches_a = true;
          image[i] = b;
        } else if (auto it = partial.find(v); it != partial.end()) {
          image[i] = it->second;
        } else {
          mapped = false;
          break;
        }
      }
      if (touches_a && mapped && !cod.has_tuple(rel.name, image)) return false;
    }
    for (const Tuple& u : cod.table(rel.name)) {
      bool touches_b = false;
      bool in_range = true;
      Tuple pre(u.size());
      for (std::size_t i = 0; i < u.size(); ++i) {
        Vertex w = u[i];
        if (w == b) {
          touches_b = true;
          pre[i] = a;
        } else if (auto it = partial_inv.find(w); it != partial_inv.end()) {
          pre[i] = it->second;
        } else {
          in_range = false;
          break;
        }
      }
      if (touches_b && in_range && !dom.has_tuple(rel.name, pre)) return false;
    }
  }
  return true;
}

}  // namespace

std::vector<Embedding> enumerate_embeddings(const FinStructure& a, const FinStructure& b) {
  std::vector<Embedding> out;
  if (a.size() > b.size()) return out;
  const std::vector<Vertex> dom_verts = a.vertices();
  const std::vector<Vertex> cod_verts = b.vertices();
  std::map<Vertex, Vertex> partial;
  std::map<Vertex, Vertex> partial_inv;

  auto rec = [&](auto&& self, std::size_t pos) -> void {
    if (pos == dom_verts.size()) {
      out.push_back(Embedding{a, b, partial});
      return;
    }
    const Vertex av = dom_verts[pos];
    for (const Vertex bv : cod_verts) {
      if (partial_inv.count(bv)) continue;
      if (!extension_consistent(a, b, partial, partial_inv, av, bv)) continue;
      partial[av] = bv;
      partial_inv[bv] = av;
      self(self, pos + 1);
      partial.erase(av);
      partial_inv.erase(bv);
    }
  };
  rec(rec, 0);
  return out;
}

bool isomorphic(const FinStructure& a, const FinStructure& b) {
  if (a.size() != b.size()) return false;
  // Same-size embeddings are onto, hence isomorphisms; stop at the first.
  const std::vector<Vertex> dom_verts = a.vertices();
  const std::vector<Vertex> cod_verts = b.vertices();
  std::map<Vertex, Vertex> partial;
  std::map<Vertex, Vertex> partial_inv;
  auto rec = [&](auto&& self, std::size_t pos) -> bool {
    if (pos == dom_verts.size()) return true;
    const Vertex av = dom_verts[pos];
    for (const Vertex bv : cod_verts) {
      if (partial_inv.count(bv)) continue;
      if (!extension_consistent(a, b, partial, partial_inv, av, bv)) continue;
      partial[av] = bv;
      partial_inv[bv] = av;
      if (self(self, pos + 1)) return true;
      partial.erase(av);
      partial_inv.erase(bv);
    }
    return false;
  };
  return rec(rec, 0);
}

FinStructure make_graph(const std::vector<Vertex>& vertices,
                        const std::vector<std::pair<Vertex, Vertex>>& edges) {
  FinStructure g(Signature::graphs());
  for (Vertex v : vertices) g.add_vertex(v);
  for (const auto& [u, v] : edges) g.add_edge(u, v);
  return g;
}

FinStructure path_graph(int n) {
  FinStructure g(Signature::graphs());
  for (int i = 0; i < n; ++i) g.add_vertex(i);
  for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  return g;
}

FinStructure complete_graph(int n) {
  FinStructure g(Signature::graphs());
  for (int i = 0; i < n; ++i) g.add_vertex(i);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
  }
  return g;
}

FinStructure empty_graph(int n) {
  FinStructure g(Signature::graphs());
  for (int i = 0; i < n; ++i) g.add_vertex(i);
  return g;
}

namespace {

std::map<Vertex, std::vector<Vertex>> adjacency_of(const FinStructure& g) {
  std::map<Vertex, std::vector<Vertex>> adj;
  for (const Tuple& t : g.table("edge")) adj[t[0]].push_back(t[1]);
  for (auto& [v, nb] : adj) std::sort(nb.begin(), nb.end());
  return adj;
}

}  // namespace

int graph_degree(const FinStructure& g, Vertex v) {
  int d = 0;
  for (const Tuple& t : g.table("edge")) {
    if (t[0] == v) ++d;
  }
  return d;
}

int graph_max_degree(const FinStructure& g) {
  std::map<Vertex, int> deg;
  for (const Tuple& t : g.table("edge")) deg[t[0]]++;
  int best = 0;
  for (const auto& [v, d] : deg) best = std::max(best, d);
  return best;
}

std::vector<Vertex> graph_neighbors(const FinStructure& g, Vertex v) {
  std::vector<Vertex> out;
  for (const Tuple& t : g.table("edge")) {
    if (t[0] == v) out.push_back(t[1]);
  }
  return out;
}

std::vector<std::vector<Vertex>> graph_components(const FinStructure& g) {
  const auto adj = adjacency_of(g);
  std::vector<std::vector<Vertex>> comps;
  std::set<Vertex> seen;
  for (Vertex start : g.universe()) {
    if (seen.count(start)) continue;
    std::vector<Vertex> comp;
    std::vector<Vertex> stack{start};
    seen.insert(start);
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      comp.push_back(v);
      if (auto it = adj.find(v); it != adj.end()) {
        for (Vertex w : it->second) {
          if (seen.insert(w).second) stack.push_back(w);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  return comps;
}

bool graph_is_acyclic(const FinStructure& g) {
  // DFS with parent tracking; a visited non-parent neighbor closes a cycle.
  const auto adj = adjacency_of(g);
  std::set<Vertex> seen;
  for (Vertex start : g.universe()) {
    if (seen.count(start)) continue;
    std::vector<std::pair<Vertex, Vertex>> stack{{start, -1}};
    seen.insert(start);
    while (!stack.empty()) {
      auto [v, parent] = stack.back();
      stack.pop_back();
      bool skipped_parent_edge = false;
      auto it = adj.find(v);
      if (it == adj.end()) continue;
      for (Vertex w : it->second) {
        if (w == parent && !skipped_parent_edge) {
          skipped_parent_edge = true;  // one edge back to the parent is fine
          continue;
        }
        if (seen.count(w)) return false;
        seen.insert(w);
        stack.emplace_back(w, v);
      }
    }
  }
  return true;
}

FinStructure make_linear_order(const std::vector<Vertex>& elements_in_order) {
  FinStructure s(Signature::linear_orders());
  for (Vertex v : elements_in_order) s.add_vertex(v);
  for (std::size_t i = 0; i < elements_in_order.size(); ++i) {
    for (std::size_t j = i + 1; j < elements_in_order.size(); ++j) {
      s.add_tuple("lt", {elements_in_order[i], elements_in_order[j]});
    }
  }
  return s;
}

std::vector<Vertex> linear_order_of(const FinStructure& s) {
  std::vector<Vertex> out = s.vertices();
  for (Vertex a : out) {
    for (Vertex b : out) {
      if (a == b) continue;
      const bool ab = s.has_tuple("lt", {a, b});
      const bool ba = s.has_tuple("lt", {b, a});
      if (ab == ba) {
        throw GameError(Fault::InvalidArgument, "relation is not a strict total order");
      }
    }
  }
  std::sort(out.begin(), out.end(),
            [&s](Vertex a, Vertex b) { return s.has_tuple("lt", {a, b}); });
  return out;
}

}  // namespace bmg
