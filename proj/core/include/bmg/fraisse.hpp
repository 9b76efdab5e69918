#pragma once

#include <memory>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "bmg/errors.hpp"
#include "bmg/structures.hpp"

namespace bmg {

using Rng = std::mt19937_64;

/// Explicit presentation of a countable limit structure as the union of the
/// increasing chain prefix(0) c= prefix(1) c= ... where prefix(n) is the
/// induced substructure on ids 0..n-1. Concrete presentations answer
/// relation queries on arbitrary finite id sets and can realize one-point
/// extensions by picking fresh ids.
class LimitPresentation {
 public:
  virtual ~LimitPresentation() = default;

  virtual std::string name() const = 0;
  virtual const Signature& sig() const = 0;

  /// Induced substructure of the limit on the given ids.
  virtual FinStructure induced_on(const std::set<Vertex>& ids) const = 0;

  FinStructure prefix(int n) const;

  /// Picks a fresh limit id for `new_v` such that extending `embedded`
  /// (structure vertex -> limit id, defined on dom(B) minus new_v) by
  /// new_v -> id preserves and reflects B's relations. Ids in `used` are
  /// taken. Throws REALIZE_FAILURE when the id range is exhausted.
  virtual Vertex realize_vertex(const FinStructure& b, Vertex new_v,
                                const std::map<Vertex, Vertex>& embedded,
                                const std::set<Vertex>& used) const = 0;

  /// Extends an embedding f into prefix(m) along a one-point extension
  /// B of dom(f); the result embeds B into prefix(m') for some m' >= m.
  Embedding realize(const Embedding& f, const FinStructure& b) const;

  /// Presentations that want the game strategy to keep small extension
  /// types realized (the random graph does) opt in here.
  virtual bool saturate_small_types() const { return false; }
};

struct AmalgamResult {
  FinStructure v;
  Embedding from_x;  // f': X -> V
  Embedding from_y;  // g': Y -> V
};

using AmalgamOutcome = std::variant<AmalgamResult, Failure>;

inline bool amalgam_ok(const AmalgamOutcome& o) {
  return std::holds_alternative<AmalgamResult>(o);
}

struct JointEmbedding {
  FinStructure z;
  Embedding from_x;
  Embedding from_y;
};

/// A pluggable class of finite structures: membership, enumeration up to
/// isomorphism, joint embedding and amalgamation, plus an explicit limit
/// presentation when the class has one (the two non-amalgamable graph
/// classes ship without it).
class FraisseClass {
 public:
  virtual ~FraisseClass() = default;

  virtual std::string name() const = 0;
  virtual const Signature& sig() const = 0;
  virtual bool contains(const FinStructure& s) const = 0;

  /// Members with at most `size_bound` vertices, one per isomorphism type,
  /// grown by closing the empty structure under one-point extensions.
  virtual std::vector<FinStructure> enumerate_members(int size_bound) const;

  /// Completes the span X <-f- Z -g-> Y to a commuting square inside the
  /// class. The default is free amalgamation gated by contains(); classes
  /// without the amalgamation property report a typed Failure on the
  /// instances that do not glue.
  virtual AmalgamOutcome amalgamate(const Embedding& f, const Embedding& g) const;

  /// Some Z the two structures both embed into; default is the disjoint
  /// union (concatenation for orders).
  virtual JointEmbedding joint_embed(const FinStructure& x, const FinStructure& y) const;

  virtual const LimitPresentation* limit() const { return nullptr; }

  /// All one-point class extensions of `a` up to isomorphism over `a`; the
  /// new point always takes id max+1.
  virtual std::vector<FinStructure> one_point_extensions(const FinStructure& a) const;

  /// Seeded one-step extension (possibly a stall) used by the random
  /// adversary.
  virtual FinStructure random_one_step_extension(const FinStructure& s, Rng& rng) const;
};

/// Free amalgamation: V is X plus fresh copies of the Y-vertices outside
/// g(Z), relations inherited from both sides and nothing else. The class
/// membership of the result is the caller's concern.
AmalgamResult free_amalgamate(const Embedding& f, const Embedding& g);

/// Disjoint union with Y relabeled to fresh ids.
JointEmbedding disjoint_union_embed(const FinStructure& x, const FinStructure& y);

// -- extension property -------------------------------------------------------

struct ExtensionFailure {
  std::set<Vertex> base;
  FinStructure extension;  // unrealized one-point extension of induced(m, base)
};

struct ExtensionReport {
  std::vector<ExtensionFailure> failures;
  int bases_checked = 0;

  bool pass() const { return failures.empty(); }
};

/// For every induced A c= m with |A| <= bound (A drawn from base_universe
/// when given) and every one-point class extension B of A, checks that some
/// vertex of m realizes B over A.
ExtensionReport extension_property_check(const FraisseClass& cls, const FinStructure& m,
                                         int bound,
                                         const std::set<Vertex>* base_universe = nullptr);

// -- random-graph presentation plumbing ---------------------------------------

/// Explicit realizer for the BIT presentation of the random graph
/// (adjacency: for i < j, bit i of j is set): returns
/// j = 2^t + sum_{p in pos} 2^p with t = max(floor, max(pos u neg) + 1),
/// which exceeds `floor` and every constraint id, has every pos bit set and
/// every neg bit clear.
Vertex rado_witness(const std::set<Vertex>& pos, const std::set<Vertex>& neg, Vertex floor);

// -- bounded-degree machinery --------------------------------------------------

/// Embeds g (max degree <= n) into a graph in which every vertex has degree
/// exactly n, by repeatedly doubling and joining deficient twins. Input ids
/// are preserved; fresh ids start above fresh_floor and g's own ids.
FinStructure n_complete_embed(const FinStructure& g, int n, Vertex fresh_floor = -1);

/// The first `count` n-complete graphs, enumerated by increasing vertex
/// count and deduplicated up to isomorphism. Deterministic; memoized per n.
const std::vector<FinStructure>& n_complete_catalogue(int n, int count);

// -- shipped classes -----------------------------------------------------------

/// Looks up a class by registry name: "graphs", "linear_orders",
/// "pure_sets", "bounded_degree:N", "forests". Returns nullptr when the
/// name is unknown.
std::shared_ptr<const FraisseClass> find_class(const std::string& name);

std::vector<std::string> class_names();

std::shared_ptr<const FraisseClass> graphs_class();
std::shared_ptr<const FraisseClass> linear_orders_class();
std::shared_ptr<const FraisseClass> pure_sets_class();
std::shared_ptr<const FraisseClass> bounded_degree_class(int n);
std::shared_ptr<const FraisseClass> forests_class();

}  // namespace bmg
