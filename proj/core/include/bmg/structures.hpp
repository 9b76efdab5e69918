#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "bmg/errors.hpp"

namespace bmg {

using Vertex = std::int64_t;
using Tuple = std::vector<Vertex>;

struct RelSpec {
  std::string name;
  int arity = 1;

  bool operator==(const RelSpec& o) const { return name == o.name && arity == o.arity; }
};

class Signature {
 public:
  Signature() = default;
  explicit Signature(std::vector<RelSpec> relations);

  const std::vector<RelSpec>& relations() const { return relations_; }
  const RelSpec* find(const std::string& name) const;
  bool operator==(const Signature& o) const { return relations_ == o.relations_; }

  static const Signature& empty();
  static const Signature& graphs();         // edge/2, kept irreflexive and symmetric
  static const Signature& linear_orders();  // lt/2, strict total order

 private:
  std::vector<RelSpec> relations_;
};

/// Finite relational structure: a finite universe of integer vertex ids and
/// one tuple table per relation. Values are cheap to copy at desk scale and
/// immutable in spirit: the game layer only ever grows fresh copies.
class FinStructure {
 public:
  explicit FinStructure(Signature sig = Signature::empty()) : sig_(std::move(sig)) {}

  const Signature& sig() const { return sig_; }
  const std::set<Vertex>& universe() const { return universe_; }
  std::size_t size() const { return universe_.size(); }
  bool empty() const { return universe_.empty(); }
  bool has_vertex(Vertex v) const { return universe_.count(v) > 0; }
  Vertex max_vertex() const { return universe_.empty() ? -1 : *universe_.rbegin(); }
  std::vector<Vertex> vertices() const {
    return std::vector<Vertex>(universe_.begin(), universe_.end());
  }

  void add_vertex(Vertex v);
  void add_tuple(const std::string& rel, Tuple t);
  bool has_tuple(const std::string& rel, const Tuple& t) const;
  const std::set<Tuple>& table(const std::string& rel) const;

  // Graph conveniences over the edge/2 relation (stored in both directions).
  void add_edge(Vertex u, Vertex v);
  bool adjacent(Vertex u, Vertex v) const;

  bool operator==(const FinStructure& o) const {
    return sig_ == o.sig_ && universe_ == o.universe_ && tables_ == o.tables_;
  }

 private:
  Signature sig_;
  std::set<Vertex> universe_;
  std::map<std::string, std::set<Tuple>> tables_;
};

/// Universe S, tables restricted to tuples inside S.
FinStructure induced_substructure(const FinStructure& m, const std::set<Vertex>& s);

/// True when a = induced_substructure(b, universe(a)): the extension order
/// the structure games are played in.
bool structure_extends(const FinStructure& small, const FinStructure& big);

struct Embedding {
  FinStructure domain;
  FinStructure codomain;
  std::map<Vertex, Vertex> map;

  Vertex operator()(Vertex v) const;
  static Embedding identity(const FinStructure& s);
};

/// Exhaustive validity check: map total on the domain universe, injective,
/// into the codomain, and preserving-and-reflecting every relation.
bool check_embedding(const Embedding& e);

/// All embeddings of A into B, deterministic: domain vertices in ascending
/// order, images tried in ascending order.
std::vector<Embedding> enumerate_embeddings(const FinStructure& a, const FinStructure& b);

/// Same-universe-size embedding existence; with preserve-and-reflect this
/// is isomorphism.
bool isomorphic(const FinStructure& a, const FinStructure& b);

// -- graph utilities ---------------------------------------------------------

FinStructure make_graph(const std::vector<Vertex>& vertices,
                        const std::vector<std::pair<Vertex, Vertex>>& edges);
FinStructure path_graph(int n);      // vertices 0..n-1, consecutive edges
FinStructure complete_graph(int n);  // K_n on 0..n-1
FinStructure empty_graph(int n);

int graph_degree(const FinStructure& g, Vertex v);
int graph_max_degree(const FinStructure& g);
std::vector<Vertex> graph_neighbors(const FinStructure& g, Vertex v);
std::vector<std::vector<Vertex>> graph_components(const FinStructure& g);
bool graph_is_acyclic(const FinStructure& g);

/// Strict total order as a structure: lt-tuples for every increasing pair
/// of the given element sequence.
FinStructure make_linear_order(const std::vector<Vertex>& elements_in_order);
/// The elements of an lt-structure sorted by the order; throws if the
/// relation is not a strict total order.
std::vector<Vertex> linear_order_of(const FinStructure& s);

}  // namespace bmg
