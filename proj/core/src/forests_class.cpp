#include <algorithm>

#include "bmg/fraisse.hpp"

namespace bmg {

namespace {

class ForestsClass final : public FraisseClass {
 public:
  std::string name() const override { return "forests"; }
  const Signature& sig() const override { return Signature::graphs(); }

  bool contains(const FinStructure& s) const override {
    return graphs_class()->contains(s) && graph_is_acyclic(s);
  }

  FinStructure random_one_step_extension(const FinStructure& s, Rng& rng) const override {
    std::uniform_int_distribution<int> roll(0, 3);
    if (!s.empty() && roll(rng) == 0) return s;
    FinStructure out = s;
    const Vertex v = s.max_vertex() + 1;
    out.add_vertex(v);
    // Pendant vertex (or isolated, half the time) keeps the graph acyclic.
    const std::vector<Vertex> verts = s.vertices();
    if (!verts.empty() && std::uniform_int_distribution<int>(0, 1)(rng) == 0) {
      std::uniform_int_distribution<std::size_t> dpick(0, verts.size() - 1);
      out.add_edge(v, verts[dpick(rng)]);
    }
    return out;
  }
};

}  // namespace

std::shared_ptr<const FraisseClass> forests_class() {
  static const auto instance = std::make_shared<const ForestsClass>();
  return instance;
}

}  // namespace bmg
