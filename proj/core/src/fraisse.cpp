#include "bmg/fraisse.hpp"

#include <algorithm>
#include <functional>

namespace bmg {

FinStructure LimitPresentation::prefix(int n) const {
  std::set<Vertex> ids;
  for (int i = 0; i < n; ++i) ids.insert(i);
  return induced_on(ids);
}

Embedding LimitPresentation::realize(const Embedding& f, const FinStructure& b) const {
  if (!structure_extends(f.domain, b) || b.size() != f.domain.size() + 1) {
    throw GameError(Fault::InvalidArgument, "realize expects a one-point extension of dom(f)");
  }
  Vertex new_v = -1;
  for (Vertex v : b.universe()) {
    if (!f.domain.has_vertex(v)) new_v = v;
  }
  std::set<Vertex> used;
  for (const auto& [_, id] : f.map) used.insert(id);
  const Vertex id = realize_vertex(b, new_v, f.map, used);

  Embedding out;
  out.domain = b;
  out.map = f.map;
  out.map[new_v] = id;
  const Vertex old_m = f.codomain.max_vertex() + 1;
  out.codomain = prefix(static_cast<int>(std::max(old_m, id + 1)));
  return out;
}

AmalgamResult free_amalgamate(const Embedding& f, const Embedding& g) {
  if (!(f.domain == g.domain)) {
    throw GameError(Fault::InvalidArgument, "amalgamation requires a common domain Z");
  }
  if (!check_embedding(f) || !check_embedding(g)) {
    throw GameError(Fault::InvalidArgument, "amalgamation requires valid embeddings");
  }
  const FinStructure& x = f.codomain;
  const FinStructure& y = g.codomain;

  FinStructure v(x.sig());
  for (Vertex xv : x.universe()) v.add_vertex(xv);

  // Y-vertices inside g(Z) glue onto f(Z); the rest get fresh ids.
  std::map<Vertex, Vertex> y_to_v;
  for (const auto& [z, yz] : g.map) y_to_v[yz] = f.map.at(z);
  Vertex fresh = std::max(x.max_vertex(), y.max_vertex()) + 1;
  for (Vertex yv : y.universe()) {
    if (!y_to_v.count(yv)) {
      y_to_v[yv] = fresh++;
      v.add_vertex(y_to_v[yv]);
    }
  }

  for (const auto& rel : x.sig().relations()) {
    for (const Tuple& t : x.table(rel.name)) v.add_tuple(rel.name, t);
    for (const Tuple& t : y.table(rel.name)) {
      Tuple img(t.size());
      for (std::size_t i = 0; i < t.size(); ++i) img[i] = y_to_v.at(t[i]);
      v.add_tuple(rel.name, img);
    }
  }

  Embedding from_x = Embedding::identity(x);
  from_x.codomain = v;
  Embedding from_y{y, v, y_to_v};
  return AmalgamResult{std::move(v), std::move(from_x), std::move(from_y)};
}

JointEmbedding disjoint_union_embed(const FinStructure& x, const FinStructure& y) {
  FinStructure z(x.sig());
  for (Vertex v : x.universe()) z.add_vertex(v);
  std::map<Vertex, Vertex> y_map;
  Vertex fresh = std::max(x.max_vertex(), static_cast<Vertex>(-1)) + 1;
  for (Vertex v : y.universe()) {
    y_map[v] = fresh++;
    z.add_vertex(y_map[v]);
  }
  for (const auto& rel : x.sig().relations()) {
    for (const Tuple& t : x.table(rel.name)) z.add_tuple(rel.name, t);
    for (const Tuple& t : y.table(rel.name)) {
      Tuple img(t.size());
      for (std::size_t i = 0; i < t.size(); ++i) img[i] = y_map.at(t[i]);
      z.add_tuple(rel.name, img);
    }
  }
  Embedding from_x = Embedding::identity(x);
  from_x.codomain = z;
  Embedding from_y{y, z, y_map};
  return JointEmbedding{std::move(z), std::move(from_x), std::move(from_y)};
}

AmalgamOutcome FraisseClass::amalgamate(const Embedding& f, const Embedding& g) const {
  if (!contains(f.codomain) || !contains(g.codomain) || !contains(f.domain)) {
    throw GameError(Fault::InvalidArgument, "amalgamation inputs must lie in the class");
  }
  AmalgamResult res = free_amalgamate(f, g);
  if (!contains(res.v)) {
    return Failure{Fault::AmalgamationFailure,
                   "free amalgam leaves class " + name()};
  }
  return res;
}

JointEmbedding FraisseClass::joint_embed(const FinStructure& x, const FinStructure& y) const {
  return disjoint_union_embed(x, y);
}

std::vector<FinStructure> FraisseClass::enumerate_members(int size_bound) const {
  std::vector<FinStructure> out;
  FinStructure start(sig());
  if (!contains(start)) return out;
  out.push_back(start);
  std::vector<FinStructure> frontier{start};
  for (int sz = 1; sz <= size_bound; ++sz) {
    std::vector<FinStructure> next;
    for (const FinStructure& s : frontier) {
      for (const FinStructure& ext : one_point_extensions(s)) {
        bool seen = false;
        for (const FinStructure& known : next) {
          if (isomorphic(known, ext)) {
            seen = true;
            break;
          }
        }
        if (!seen) next.push_back(ext);
      }
    }
    for (const FinStructure& s : next) out.push_back(s);
    frontier = std::move(next);
  }
  return out;
}

std::vector<FinStructure> FraisseClass::one_point_extensions(const FinStructure& a) const {
  const Vertex p = a.max_vertex() + 1;

  // Candidate tuples touching the new point, over relations of arity <= 2.
  std::vector<std::pair<std::string, Tuple>> candidates;
  for (const auto& rel : sig().relations()) {
    if (rel.arity == 1) {
      candidates.push_back({rel.name, {p}});
    } else if (rel.arity == 2) {
      candidates.push_back({rel.name, {p, p}});
      for (Vertex v : a.universe()) {
        candidates.push_back({rel.name, {p, v}});
        candidates.push_back({rel.name, {v, p}});
      }
    } else {
      throw GameError(Fault::InvalidArgument,
                      "one-point extension enumeration supports arity <= 2");
    }
  }
  if (candidates.size() > 20) {
    throw GameError(Fault::InvalidArgument, "base too large for extension enumeration");
  }

  std::vector<FinStructure> out;
  for (std::uint64_t mask = 0; mask < (1ull << candidates.size()); ++mask) {
    FinStructure ext = a;
    ext.add_vertex(p);
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      if (mask & (1ull << i)) ext.add_tuple(candidates[i].first, candidates[i].second);
    }
    if (!contains(ext)) continue;
    bool seen = false;
    for (const FinStructure& known : out) {
      if (known == ext) {
        seen = true;
        break;
      }
    }
    if (!seen) out.push_back(std::move(ext));
  }
  return out;
}

FinStructure FraisseClass::random_one_step_extension(const FinStructure& s, Rng& rng) const {
  std::vector<FinStructure> options = one_point_extensions(s);
  options.push_back(s);  // stalling is always available
  std::uniform_int_distribution<std::size_t> d(0, options.size() - 1);
  return options[d(rng)];
}

ExtensionReport extension_property_check(const FraisseClass& cls, const FinStructure& m,
                                         int bound, const std::set<Vertex>* base_universe) {
  ExtensionReport report;
  const std::vector<Vertex> pool = base_universe
                                       ? std::vector<Vertex>(base_universe->begin(),
                                                             base_universe->end())
                                       : m.vertices();
  std::vector<Vertex> base;
  const std::vector<Vertex> all = m.vertices();

  std::function<void(std::size_t)> visit = [&](std::size_t start) {
    // Check the current base.
    {
      std::set<Vertex> base_set(base.begin(), base.end());
      const FinStructure a = induced_substructure(m, base_set);
      const Vertex p = a.max_vertex() + 1;
      report.bases_checked++;
      for (const FinStructure& ext : cls.one_point_extensions(a)) {
        bool realized = false;
        for (Vertex v : all) {
          if (base_set.count(v)) continue;
          std::set<Vertex> with_v = base_set;
          with_v.insert(v);
          // Relabel the extension's new point onto v and compare.
          FinStructure relabeled(a.sig());
          for (Vertex u : a.universe()) relabeled.add_vertex(u);
          relabeled.add_vertex(v);
          bool valid = true;
          for (const auto& rel : a.sig().relations()) {
            for (const Tuple& t : ext.table(rel.name)) {
              Tuple img(t.size());
              for (std::size_t i = 0; i < t.size(); ++i) img[i] = (t[i] == p) ? v : t[i];
              bool ok = true;
              for (Vertex u : img) {
                if (!relabeled.has_vertex(u)) ok = false;
              }
              if (!ok) {
                valid = false;
                break;
              }
              relabeled.add_tuple(rel.name, img);
            }
            if (!valid) break;
          }
          if (valid && relabeled == induced_substructure(m, with_v)) {
            realized = true;
            break;
          }
        }
        if (!realized) {
          report.failures.push_back(ExtensionFailure{base_set, ext});
        }
      }
    }
    if (static_cast<int>(base.size()) == bound) return;
    for (std::size_t i = start; i < pool.size(); ++i) {
      base.push_back(pool[i]);
      visit(i + 1);
      base.pop_back();
    }
  };
  visit(0);
  return report;
}

Vertex rado_witness(const std::set<Vertex>& pos, const std::set<Vertex>& neg, Vertex floor) {
  for (Vertex p : pos) {
    if (neg.count(p)) {
      throw GameError(Fault::InvalidArgument, "pos and neg must be disjoint");
    }
  }
  Vertex max_id = -1;
  if (!pos.empty()) max_id = std::max(max_id, *pos.rbegin());
  if (!neg.empty()) max_id = std::max(max_id, *neg.rbegin());
  const Vertex t = std::max(floor, max_id + 1);
  if (t >= 62 || (!pos.empty() && *pos.rbegin() >= 62)) {
    throw GameError(Fault::RealizeFailure, "rado witness exceeds the id range");
  }
  Vertex j = Vertex(1) << t;
  for (Vertex p : pos) j |= Vertex(1) << p;
  return j;
}

std::shared_ptr<const FraisseClass> find_class(const std::string& name) {
  if (name == "graphs") return graphs_class();
  if (name == "linear_orders") return linear_orders_class();
  if (name == "pure_sets") return pure_sets_class();
  if (name == "forests") return forests_class();
  const std::string prefix = "bounded_degree:";
  if (name.rfind(prefix, 0) == 0) {
    try {
      const int n = std::stoi(name.substr(prefix.size()));
      if (n >= 1) return bounded_degree_class(n);
    } catch (const std::exception&) {
      return nullptr;
    }
  }
  return nullptr;
}

std::vector<std::string> class_names() {
  return {"graphs", "linear_orders", "pure_sets", "bounded_degree:N", "forests"};
}

}  // namespace bmg
