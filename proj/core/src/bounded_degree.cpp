#include <algorithm>
#include <map>
#include <mutex>

#include "bmg/fraisse.hpp"

namespace bmg {

FinStructure n_complete_embed(const FinStructure& g, int n, Vertex fresh_floor) {
  if (graph_max_degree(g) > n) {
    throw GameError(Fault::DegreeExceeded,
                    "input has a vertex of degree above " + std::to_string(n));
  }
  FinStructure h = g;
  Vertex fresh = std::max(g.max_vertex(), fresh_floor) + 1;
  for (int round = 0; round <= n; ++round) {
    std::vector<Vertex> deficient;
    for (Vertex v : h.vertices()) {
      if (graph_degree(h, v) < n) deficient.push_back(v);
    }
    if (deficient.empty()) break;
    // Double: fresh twin for every vertex, twin edges copied, and one new
    // edge between the two copies of each deficient vertex.
    std::map<Vertex, Vertex> twin;
    FinStructure doubled = h;
    for (Vertex v : h.vertices()) {
      twin[v] = fresh++;
      doubled.add_vertex(twin[v]);
    }
    for (const Tuple& t : h.table("edge")) {
      if (t[0] < t[1]) doubled.add_edge(twin[t[0]], twin[t[1]]);
    }
    for (Vertex v : deficient) doubled.add_edge(v, twin[v]);
    h = std::move(doubled);
  }
  return h;
}

namespace {

bool is_n_complete(const FinStructure& g, int n) {
  for (Vertex v : g.universe()) {
    if (graph_degree(g, v) != n) return false;
  }
  return true;
}

/// All n-regular graphs on exactly k vertices (ids 0..k-1), up to
/// isomorphism, via edge backtracking in lexicographic pair order. Once the
/// scan leaves a vertex's row its degree is final, which prunes hard.
std::vector<FinStructure> regular_graphs_on(int n, int k) {
  std::vector<std::pair<Vertex, Vertex>> pairs;
  for (Vertex i = 0; i < k; ++i) {
    for (Vertex j = i + 1; j < k; ++j) pairs.emplace_back(i, j);
  }
  std::vector<int> deg(static_cast<std::size_t>(k), 0);
  std::vector<std::pair<Vertex, Vertex>> chosen;
  std::vector<FinStructure> found;

  auto rec = [&](auto&& self, std::size_t idx) -> void {
    if (idx == pairs.size()) {
      bool all = true;
      for (int d : deg) {
        if (d != n) all = false;
      }
      if (!all) return;
      FinStructure g = empty_graph(k);
      for (const auto& [u, v] : chosen) g.add_edge(u, v);
      for (const FinStructure& known : found) {
        if (isomorphic(known, g)) return;
      }
      found.push_back(std::move(g));
      return;
    }
    const auto [u, v] = pairs[idx];
    // Row u ends at pair (u, k-1); beyond it deg[u] is frozen.
    const bool row_ends = (v == k - 1);
    if (deg[static_cast<std::size_t>(u)] < n && deg[static_cast<std::size_t>(v)] < n) {
      ++deg[static_cast<std::size_t>(u)];
      ++deg[static_cast<std::size_t>(v)];
      chosen.emplace_back(u, v);
      if (!row_ends || deg[static_cast<std::size_t>(u)] == n) self(self, idx + 1);
      chosen.pop_back();
      --deg[static_cast<std::size_t>(u)];
      --deg[static_cast<std::size_t>(v)];
    }
    if (!row_ends || deg[static_cast<std::size_t>(u)] == n) self(self, idx + 1);
  };
  rec(rec, 0);
  return found;
}

}  // namespace

const std::vector<FinStructure>& n_complete_catalogue(int n, int count) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::vector<FinStructure>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& entry = cache[{n, count}];
  if (!entry.empty()) return entry;

  for (int k = n + 1; static_cast<int>(entry.size()) < count; ++k) {
    if (k > 12) {
      throw GameError(Fault::InvalidArgument,
                      "catalogue request too large for desk-scale enumeration");
    }
    for (FinStructure& g : regular_graphs_on(n, k)) entry.push_back(std::move(g));
  }
  entry.resize(static_cast<std::size_t>(count));
  return entry;
}

namespace {

class BoundedDegreeClass final : public FraisseClass {
 public:
  explicit BoundedDegreeClass(int n) : n_(n) {}

  std::string name() const override { return "bounded_degree:" + std::to_string(n_); }
  const Signature& sig() const override { return Signature::graphs(); }

  bool contains(const FinStructure& s) const override {
    return graphs_class()->contains(s) && graph_max_degree(s) <= n_;
  }

  int degree_bound() const { return n_; }

  FinStructure random_one_step_extension(const FinStructure& s, Rng& rng) const override {
    std::uniform_int_distribution<int> roll(0, 3);
    if (!s.empty() && roll(rng) == 0) return s;
    FinStructure out = s;
    const Vertex v = s.max_vertex() + 1;
    out.add_vertex(v);
    std::vector<Vertex> eligible;
    for (Vertex u : s.universe()) {
      if (graph_degree(s, u) < n_) eligible.push_back(u);
    }
    if (!eligible.empty()) {
      const int cap = static_cast<int>(std::min<std::size_t>(
          {eligible.size(), static_cast<std::size_t>(n_), std::size_t(2)}));
      std::uniform_int_distribution<int> dcount(0, cap);
      int cnt = dcount(rng);
      for (int i = 0; i < cnt; ++i) {
        std::uniform_int_distribution<std::size_t> dpick(0, eligible.size() - 1);
        const std::size_t pick = dpick(rng);
        out.add_edge(v, eligible[pick]);
        eligible.erase(eligible.begin() + static_cast<std::ptrdiff_t>(pick));
      }
    }
    return out;
  }

 private:
  int n_;
};

}  // namespace

std::shared_ptr<const FraisseClass> bounded_degree_class(int n) {
  static std::mutex mu;
  static std::map<int, std::shared_ptr<const FraisseClass>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& entry = cache[n];
  if (!entry) entry = std::make_shared<const BoundedDegreeClass>(n);
  return entry;
}

}  // namespace bmg
