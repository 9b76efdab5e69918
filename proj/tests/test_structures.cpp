#include "doctest.h"

#include <random>

#include "bmg/structure_io.hpp"
#include "bmg/structures.hpp"
#include "support/oracles.hpp"

using namespace bmg;

namespace {

using Rng = std::mt19937_64;

FinStructure random_graph(int n, Rng& rng) {
  FinStructure g = empty_graph(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (std::uniform_int_distribution<int>(0, 1)(rng) == 0) g.add_edge(i, j);
    }
  }
  return g;
}

}  // namespace

TEST_CASE("embedding validity") {
  const FinStructure k3 = complete_graph(3);
  const FinStructure p2 = path_graph(2);

  SUBCASE("identity is an embedding") {
    CHECK(check_embedding(Embedding::identity(k3)));
  }

  SUBCASE("any injective map of an edge into a triangle works") {
    for (Vertex a = 0; a < 3; ++a) {
      for (Vertex b = 0; b < 3; ++b) {
        if (a == b) continue;
        Embedding e{p2, k3, {{0, a}, {1, b}}};
        CHECK(check_embedding(e));
      }
    }
  }

  SUBCASE("an edge cannot land on a non-adjacent pair") {
    FinStructure two = empty_graph(2);
    Embedding e{p2, two, {{0, 0}, {1, 1}}};
    CHECK_FALSE(check_embedding(e));
  }

  SUBCASE("non-injective maps fail") {
    Embedding e{empty_graph(2), k3, {{0, 1}, {1, 1}}};
    CHECK_FALSE(check_embedding(e));
  }
}

TEST_CASE("embedding enumeration counts") {
  const FinStructure k3 = complete_graph(3);

  CHECK(enumerate_embeddings(empty_graph(1), k3).size() == 3);
  CHECK(enumerate_embeddings(path_graph(2), k3).size() == 6);
  CHECK(enumerate_embeddings(path_graph(2), empty_graph(2)).empty());

  SUBCASE("agreement with the brute-force oracle") {
    Rng rng(3);
    for (int trial = 0; trial < 20; ++trial) {
      const FinStructure a = random_graph(std::uniform_int_distribution<int>(0, 3)(rng), rng);
      const FinStructure b = random_graph(std::uniform_int_distribution<int>(2, 5)(rng), rng);
      const auto found = enumerate_embeddings(a, b);
      CHECK(static_cast<int>(found.size()) == test::count_embeddings_brute(a, b));
      for (const Embedding& e : found) CHECK(check_embedding(e));
    }
  }

  SUBCASE("closed under relabeling the codomain") {
    Rng rng(4);
    const FinStructure a = path_graph(2);
    const FinStructure b = random_graph(4, rng);
    // Relabel B by an order-scrambling bijection.
    std::map<Vertex, Vertex> relabel{{0, 10}, {1, 3}, {2, 7}, {3, 5}};
    FinStructure b2(b.sig());
    for (Vertex v : b.universe()) b2.add_vertex(relabel[v]);
    for (const Tuple& t : b.table("edge")) b2.add_tuple("edge", {relabel[t[0]], relabel[t[1]]});
    for (const Embedding& e : enumerate_embeddings(a, b)) {
      std::map<Vertex, Vertex> composed;
      for (const auto& [x, y] : e.map) composed[x] = relabel[y];
      CHECK(check_embedding(Embedding{a, b2, composed}));
    }
    CHECK(enumerate_embeddings(a, b).size() == enumerate_embeddings(a, b2).size());
  }
}

TEST_CASE("induced substructures") {
  const FinStructure k3 = complete_graph(3);

  SUBCASE("whole universe gives the structure back") {
    CHECK(induced_substructure(k3, k3.universe()) == k3);
  }

  SUBCASE("two vertices of a triangle form an edge") {
    const FinStructure sub = induced_substructure(k3, {0, 2});
    CHECK(sub.size() == 2);
    CHECK(sub.table("edge").size() == 2);  // both directions of one edge
    CHECK(sub.adjacent(0, 2));
  }

  SUBCASE("empty set gives the empty structure") {
    CHECK(induced_substructure(k3, {}).empty());
  }

  SUBCASE("idempotent and monotone") {
    Rng rng(5);
    for (int trial = 0; trial < 20; ++trial) {
      const FinStructure g = random_graph(5, rng);
      std::set<Vertex> s2;
      for (Vertex v : g.universe()) {
        if (std::uniform_int_distribution<int>(0, 1)(rng)) s2.insert(v);
      }
      std::set<Vertex> s1;
      for (Vertex v : s2) {
        if (std::uniform_int_distribution<int>(0, 1)(rng)) s1.insert(v);
      }
      const FinStructure g2 = induced_substructure(g, s2);
      CHECK(induced_substructure(g2, s2) == g2);
      CHECK(induced_substructure(g2, s1) == induced_substructure(g, s1));
    }
  }
}

TEST_CASE("structure extension order") {
  const FinStructure p3 = path_graph(3);
  const FinStructure p2 = path_graph(2);
  CHECK(structure_extends(p2, p3));
  CHECK_FALSE(structure_extends(p3, p2));
  CHECK(structure_extends(p3, p3));

  // Adding an edge between existing vertices is not an extension.
  FinStructure with_edge = p3;
  with_edge.add_edge(0, 2);
  CHECK_FALSE(structure_extends(p3, with_edge));
}

TEST_CASE("graph utilities") {
  FinStructure g = make_graph({0, 1, 2, 3, 4}, {{0, 1}, {1, 2}, {3, 4}});
  CHECK(graph_degree(g, 1) == 2);
  CHECK(graph_max_degree(g) == 2);
  CHECK(graph_components(g).size() == 2);
  CHECK(graph_is_acyclic(g));
  g.add_edge(0, 2);
  CHECK_FALSE(graph_is_acyclic(g));
}

TEST_CASE("linear order structures") {
  const FinStructure order = make_linear_order({5, 2, 9});
  CHECK(linear_order_of(order) == std::vector<Vertex>({5, 2, 9}));
  CHECK(order.has_tuple("lt", {5, 9}));
  CHECK_FALSE(order.has_tuple("lt", {9, 5}));

  FinStructure broken(Signature::linear_orders());
  broken.add_vertex(0);
  broken.add_vertex(1);
  CHECK_THROWS_AS(linear_order_of(broken), GameError);
}

TEST_CASE("structure JSON round trip") {
  Rng rng(6);
  for (int trial = 0; trial < 10; ++trial) {
    const FinStructure g = random_graph(5, rng);
    const std::string text = structure_to_json(g);
    CHECK(structure_from_json(Signature::graphs(), text) == g);
  }
  const FinStructure order = make_linear_order({3, 1, 2});
  CHECK(structure_from_json(Signature::linear_orders(), structure_to_json(order)) == order);
}

TEST_CASE("graph DOT round trip") {
  Rng rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    const FinStructure g = random_graph(5, rng);
    CHECK(graph_from_dot(graph_to_dot(g)) == g);
  }
}
