#include <algorithm>

#include "bmg/fraisse.hpp"

namespace bmg {

namespace {

/// Adjacency of the BIT graph on the naturals: for i < j, i ~ j iff bit i
/// of j is set.
bool bit_adjacent(Vertex a, Vertex b) {
  if (a == b) return false;
  const Vertex lo = std::min(a, b);
  const Vertex hi = std::max(a, b);
  if (lo >= 62) return false;
  return (hi >> lo) & 1;
}

constexpr Vertex kIdCap = Vertex(1) << 62;

// Any id adjacent-from-below to some constraint id is a bit position
// (<= 61), and ids above 61 must carry the whole pos set in their bits, so
// scanning [0, 4096) plus the closed-form high witness misses no shape of
// solution, only non-minimal ones.
constexpr Vertex kAscendingScanLimit = 4096;

class BitGraphPresentation final : public LimitPresentation {
 public:
  std::string name() const override { return "bit_graph"; }
  const Signature& sig() const override { return Signature::graphs(); }

  FinStructure induced_on(const std::set<Vertex>& ids) const override {
    FinStructure g(Signature::graphs());
    for (Vertex v : ids) g.add_vertex(v);
    for (auto it = ids.begin(); it != ids.end(); ++it) {
      for (auto jt = std::next(it); jt != ids.end(); ++jt) {
        if (bit_adjacent(*it, *jt)) g.add_edge(*it, *jt);
      }
    }
    return g;
  }

  Vertex realize_vertex(const FinStructure& b, Vertex new_v,
                        const std::map<Vertex, Vertex>& embedded,
                        const std::set<Vertex>& used) const override {
    // Required adjacency of the new point to every embedded limit id.
    std::vector<std::pair<Vertex, bool>> constraints;
    std::set<Vertex> pos;
    Vertex max_id = -1;
    for (const auto& [bv, id] : embedded) {
      const bool adj = b.adjacent(new_v, bv);
      constraints.emplace_back(id, adj);
      if (adj) pos.insert(id);
      max_id = std::max(max_id, id);
    }

    // Smallest fresh id satisfying every constraint in both directions.
    for (Vertex j = 0; j < kAscendingScanLimit; ++j) {
      if (used.count(j)) continue;
      bool ok = true;
      for (const auto& [id, adj] : constraints) {
        if (bit_adjacent(j, id) != adj) {
          ok = false;
          break;
        }
      }
      if (ok) return j;
    }

    // Above-everything witness: bits = pos plus one fresh high bit.
    if (!pos.empty() && *pos.rbegin() >= 61) {
      throw GameError(Fault::RealizeFailure, "bit-graph id range exhausted");
    }
    for (Vertex t = max_id + 1;; ++t) {
      if (t >= 62) throw GameError(Fault::RealizeFailure, "bit-graph id range exhausted");
      Vertex j = Vertex(1) << t;
      for (Vertex p : pos) j |= Vertex(1) << p;
      if (j >= kIdCap) throw GameError(Fault::RealizeFailure, "bit-graph id range exhausted");
      if (!used.count(j)) return j;
    }
  }

  bool saturate_small_types() const override { return true; }
};

class GraphsClass final : public FraisseClass {
 public:
  std::string name() const override { return "graphs"; }
  const Signature& sig() const override { return Signature::graphs(); }

  bool contains(const FinStructure& s) const override {
    if (!(s.sig() == Signature::graphs())) return false;
    for (const Tuple& t : s.table("edge")) {
      if (t[0] == t[1]) return false;                       // irreflexive
      if (!s.has_tuple("edge", {t[1], t[0]})) return false;  // symmetric
    }
    return true;
  }

  const LimitPresentation* limit() const override { return &presentation_; }

  FinStructure random_one_step_extension(const FinStructure& s, Rng& rng) const override {
    std::uniform_int_distribution<int> roll(0, 3);
    if (!s.empty() && roll(rng) == 0) return s;  // stall
    FinStructure out = s;
    const Vertex v = s.max_vertex() + 1;
    out.add_vertex(v);
    const std::vector<Vertex> verts = s.vertices();
    if (!verts.empty()) {
      const int cap = static_cast<int>(std::min<std::size_t>(verts.size(), 4));
      std::uniform_int_distribution<int> dcount(0, cap);
      int count = dcount(rng);
      std::vector<Vertex> pool = verts;
      for (int i = 0; i < count; ++i) {
        std::uniform_int_distribution<std::size_t> dpick(0, pool.size() - 1);
        const std::size_t k = dpick(rng);
        out.add_edge(v, pool[k]);
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(k));
      }
    }
    return out;
  }

 private:
  BitGraphPresentation presentation_;
};

}  // namespace

std::shared_ptr<const FraisseClass> graphs_class() {
  static const auto instance = std::make_shared<const GraphsClass>();
  return instance;
}

}  // namespace bmg
