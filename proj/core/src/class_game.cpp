#include "bmg/class_game.hpp"

#include <algorithm>
#include <sstream>

namespace bmg {

namespace {

std::optional<FinStructure> structure_union(const FraisseClass& cls, const FinStructure& a,
                                            const FinStructure& b) {
  if (!(a.sig() == b.sig())) return std::nullopt;
  FinStructure u(a.sig());
  for (Vertex v : a.universe()) u.add_vertex(v);
  for (Vertex v : b.universe()) u.add_vertex(v);
  for (const auto& rel : a.sig().relations()) {
    for (const Tuple& t : a.table(rel.name)) u.add_tuple(rel.name, t);
    for (const Tuple& t : b.table(rel.name)) u.add_tuple(rel.name, t);
  }
  if (!structure_extends(a, u) || !structure_extends(b, u) || !cls.contains(u)) {
    return std::nullopt;
  }
  return u;
}

}  // namespace

Poset<FinStructure> structure_poset(std::shared_ptr<const FraisseClass> cls) {
  Poset<FinStructure> p;
  p.id = "class:" + cls->name();
  p.leq = [](const FinStructure& a, const FinStructure& b) { return structure_extends(a, b); };
  p.join_witness = [cls](const FinStructure& a,
                         const FinStructure& b) -> std::optional<FinStructure> {
    return structure_union(*cls, a, b);
  };
  p.label = [](const FinStructure& s) {
    std::size_t tuples = 0;
    for (const auto& rel : s.sig().relations()) tuples += s.table(rel.name).size();
    std::ostringstream os;
    os << "|V|=" << s.size() << " |T|=" << tuples;
    return os.str();
  };
  return p;
}

TargetChain path_chain(int length) {
  return TargetChain{"paths", length, [](int n) { return path_graph(n + 1); }};
}

TargetChain random_graph_chain(int length, int max_vertices, std::uint64_t seed) {
  // Materialize the whole chain up front so chain(n) is pure.
  auto chain = std::make_shared<std::vector<FinStructure>>();
  Rng rng(seed);
  FinStructure g(Signature::graphs());
  g.add_vertex(0);
  chain->push_back(g);
  for (int n = 1; n < length; ++n) {
    if (static_cast<int>(g.size()) < max_vertices) {
      const Vertex v = g.max_vertex() + 1;
      g.add_vertex(v);
      for (Vertex u : g.universe()) {
        if (u != v && std::uniform_int_distribution<int>(0, 1)(rng) == 0) g.add_edge(u, v);
      }
    }
    chain->push_back(g);
  }
  return TargetChain{"random_graphs", length,
                     [chain](int n) { return (*chain)[static_cast<std::size_t>(n)]; }};
}

// ---------------------------------------------------------------------------
// LimitOddStrategy

LimitOddStrategy::LimitOddStrategy(std::shared_ptr<const FraisseClass> cls)
    : cls_(std::move(cls)), lim_(cls_->limit()) {
  if (!lim_) {
    throw GameError(Fault::InvalidArgument,
                    "class " + cls_->name() + " has no limit presentation");
  }
  saturate_ = lim_->saturate_small_types();
}

void LimitOddStrategy::reset() {
  f_.clear();
  used_.clear();
  history_.clear();
}

void LimitOddStrategy::extend_over(const FinStructure& vn) {
  for (Vertex v : vn.vertices()) {
    if (f_.count(v)) continue;
    const Vertex id = lim_->realize_vertex(vn, v, f_, used_);
    f_[v] = id;
    used_.insert(id);
  }
}

void LimitOddStrategy::cover_prefix(Vertex n) {
  Vertex next_game = f_.empty() ? 0 : f_.rbegin()->first + 1;
  for (Vertex m = 0; m < n; ++m) {
    if (used_.count(m)) continue;
    f_[next_game++] = m;
    used_.insert(m);
  }
}

void LimitOddStrategy::saturate(const FinStructure& base_structure, int bound) {
  const std::vector<Vertex> pool = base_structure.vertices();
  std::vector<Vertex> base;
  Vertex next_game = f_.empty() ? 0 : f_.rbegin()->first + 1;

  auto handle_base = [&]() {
    std::set<Vertex> images;
    for (Vertex gv : base) images.insert(f_.at(gv));
    const FinStructure a = lim_->induced_on(images);
    const Vertex p = a.max_vertex() + 1;
    for (const FinStructure& ext : cls_->one_point_extensions(a)) {
      bool realized = false;
      for (Vertex w : used_) {
        if (images.count(w)) continue;
        std::set<Vertex> with_w = images;
        with_w.insert(w);
        FinStructure relabeled(a.sig());
        for (Vertex u : a.universe()) relabeled.add_vertex(u);
        relabeled.add_vertex(w);
        bool valid = true;
        for (const auto& rel : a.sig().relations()) {
          for (const Tuple& t : ext.table(rel.name)) {
            Tuple img(t.size());
            for (std::size_t i = 0; i < t.size(); ++i) img[i] = (t[i] == p) ? w : t[i];
            bool inside = true;
            for (Vertex u : img) {
              if (!relabeled.has_vertex(u)) inside = false;
            }
            if (!inside) {
              valid = false;
              break;
            }
            relabeled.add_tuple(rel.name, img);
          }
          if (!valid) break;
        }
        if (valid && relabeled == lim_->induced_on(with_w)) {
          realized = true;
          break;
        }
      }
      if (!realized) {
        std::map<Vertex, Vertex> embedded;
        for (Vertex img : images) embedded[img] = img;
        const Vertex id = lim_->realize_vertex(ext, p, embedded, used_);
        f_[next_game++] = id;
        used_.insert(id);
      }
    }
  };

  std::function<void(std::size_t)> visit = [&](std::size_t start) {
    handle_base();
    if (static_cast<int>(base.size()) == bound) return;
    for (std::size_t i = start; i < pool.size(); ++i) {
      base.push_back(pool[i]);
      visit(i + 1);
      base.pop_back();
    }
  };
  visit(0);
}

FinStructure LimitOddStrategy::materialize() const {
  std::map<Vertex, Vertex> inverse;
  std::set<Vertex> range;
  for (const auto& [gv, id] : f_) {
    inverse[id] = gv;
    range.insert(id);
  }
  const FinStructure limit_side = lim_->induced_on(range);
  FinStructure out(limit_side.sig());
  for (const auto& [gv, id] : f_) out.add_vertex(gv);
  for (const auto& rel : limit_side.sig().relations()) {
    for (const Tuple& t : limit_side.table(rel.name)) {
      Tuple game(t.size());
      for (std::size_t i = 0; i < t.size(); ++i) game[i] = inverse.at(t[i]);
      out.add_tuple(rel.name, game);
    }
  }
  return out;
}

FinStructure LimitOddStrategy::respond(const Transcript<FinStructure>& t, Rng&) {
  if (t.empty()) {
    throw GameError(Fault::InvalidArgument, "limit strategy plays Odd; Eve opens");
  }
  const FinStructure& vn = t.back();
  extend_over(vn);
  cover_prefix(static_cast<Vertex>(t.size()) - 1);
  if (saturate_) {
    const std::size_t idx = (t.size() + 1) / 2 - 1;
    saturate(t[idx], 2);
  }
  history_.push_back(f_);
  return materialize();
}

Embedding LimitOddStrategy::materialized_embedding(const FinStructure& s) const {
  std::map<Vertex, Vertex> sub;
  std::set<Vertex> range;
  for (Vertex v : s.universe()) {
    sub[v] = f_.at(v);
    range.insert(f_.at(v));
  }
  return Embedding{s, lim_->induced_on(range), sub};
}

std::shared_ptr<LimitOddStrategy> odd_markov_strategy(std::shared_ptr<const FraisseClass> cls) {
  return std::make_shared<LimitOddStrategy>(std::move(cls));
}

// ---------------------------------------------------------------------------
// UniversalityEveStrategy

UniversalityEveStrategy::UniversalityEveStrategy(std::shared_ptr<const FraisseClass> cls,
                                                 TargetChain target)
    : cls_(std::move(cls)), target_(std::move(target)) {
  if (target_.length < 1) {
    throw GameError(Fault::InvalidArgument, "target chain must be nonempty");
  }
}

void UniversalityEveStrategy::reset() {
  n_ = -1;
  e_.clear();
  history_.clear();
}

FinStructure UniversalityEveStrategy::respond(const Transcript<FinStructure>& t, Rng&) {
  if (t.size() % 2 == 1) {
    throw GameError(Fault::InvalidArgument, "universality strategy plays Eve");
  }
  if (t.empty()) {
    n_ = 0;
    const FinStructure x0 = target_.at(0);
    e_.clear();
    for (Vertex v : x0.universe()) e_[v] = v;
    history_.push_back(e_);
    return x0;
  }

  ++n_;
  const FinStructure x_prev = target_.at(n_ - 1);
  const FinStructure x_cur = target_.at(n_);
  if (!structure_extends(x_prev, x_cur)) {
    throw GameError(Fault::InvalidArgument, "target chain is not increasing");
  }
  const FinStructure& u_last = t.back();

  Embedding f{x_prev, u_last, e_};
  Embedding g = Embedding::identity(x_prev);
  g.codomain = x_cur;

  AmalgamOutcome out = cls_->amalgamate(f, g);
  if (!amalgam_ok(out)) {
    const Failure& fail = std::get<Failure>(out);
    throw GameError(fail.fault, fail.detail);
  }
  AmalgamResult& res = std::get<AmalgamResult>(out);

  // Rename V so the U-side lands on its own ids; everything else is fresh.
  std::map<Vertex, Vertex> rename;
  for (const auto& [u, vid] : res.from_x.map) rename[vid] = u;
  Vertex fresh = u_last.max_vertex() + 1;
  for (Vertex vid : res.v.universe()) {
    if (!rename.count(vid)) rename[vid] = fresh++;
  }

  FinStructure next(res.v.sig());
  for (Vertex vid : res.v.universe()) next.add_vertex(rename.at(vid));
  for (const auto& rel : res.v.sig().relations()) {
    for (const Tuple& tup : res.v.table(rel.name)) {
      Tuple img(tup.size());
      for (std::size_t i = 0; i < tup.size(); ++i) img[i] = rename.at(tup[i]);
      next.add_tuple(rel.name, img);
    }
  }

  e_.clear();
  for (const auto& [x, vid] : res.from_y.map) e_[x] = rename.at(vid);
  history_.push_back(e_);
  return next;
}

Embedding UniversalityEveStrategy::recorded_embedding(const FinStructure& final_structure) const {
  if (n_ < 0) throw GameError(Fault::InvalidArgument, "no play recorded");
  return Embedding{target_.at(n_), final_structure, e_};
}

std::shared_ptr<UniversalityEveStrategy> eve_universality_strategy(
    std::shared_ptr<const FraisseClass> cls, TargetChain target) {
  return std::make_shared<UniversalityEveStrategy>(std::move(cls), std::move(target));
}

// ---------------------------------------------------------------------------
// BoundedDegreeOddStrategy

namespace {

/// Merges `piece` into `acc` (disjoint ids expected).
void merge_into(FinStructure& acc, const FinStructure& piece) {
  for (Vertex v : piece.universe()) acc.add_vertex(v);
  for (const auto& rel : piece.sig().relations()) {
    for (const Tuple& t : piece.table(rel.name)) acc.add_tuple(rel.name, t);
  }
}

FinStructure relabel_fresh(const FinStructure& s, Vertex& fresh) {
  std::map<Vertex, Vertex> ren;
  for (Vertex v : s.universe()) ren[v] = fresh++;
  FinStructure out(s.sig());
  for (Vertex v : s.universe()) out.add_vertex(ren[v]);
  for (const auto& rel : s.sig().relations()) {
    for (const Tuple& t : s.table(rel.name)) {
      Tuple img(t.size());
      for (std::size_t i = 0; i < t.size(); ++i) img[i] = ren.at(t[i]);
      out.add_tuple(rel.name, img);
    }
  }
  return out;
}

/// Index into the catalogue so every entry recurs: 0, 0,1, 0,1,2, ...
int triangular_index(int i) {
  int row = 0;
  while (i > row) {
    i -= row + 1;
    ++row;
  }
  return i;
}

}  // namespace

FinStructure BoundedDegreeOddStrategy::respond(const Transcript<FinStructure>& t, Rng&) {
  if (t.empty()) {
    throw GameError(Fault::InvalidArgument, "bounded-degree strategy plays Odd; Eve opens");
  }
  const FinStructure& g = t.back();
  if (graph_max_degree(g) > n_) {
    throw GameError(Fault::DegreeExceeded,
                    "Eve's move exceeds the degree bound " + std::to_string(n_));
  }
  FinStructure r = g;
  Vertex fresh = g.max_vertex() + 1;
  int components = 0;
  for (const std::vector<Vertex>& comp : graph_components(g)) {
    ++components;
    const std::set<Vertex> comp_set(comp.begin(), comp.end());
    const FinStructure cg = induced_substructure(g, comp_set);
    bool regular = true;
    for (Vertex v : comp) {
      if (graph_degree(cg, v) != n_) regular = false;
    }
    if (regular) continue;
    FinStructure h = n_complete_embed(cg, n_, fresh - 1);
    fresh = std::max(fresh, h.max_vertex() + 1);
    merge_into(r, h);
  }

  // k-th Odd move wants at least k components.
  const int k = static_cast<int>(t.size()) / 2 + 1;
  const auto& catalogue = n_complete_catalogue(n_, 16);
  for (int pad = 0; components + pad < k; ++pad) {
    const FinStructure& u = catalogue[static_cast<std::size_t>(triangular_index(pad))];
    merge_into(r, relabel_fresh(u, fresh));
  }
  return r;
}

std::shared_ptr<BoundedDegreeOddStrategy> bounded_degree_odd_strategy(int n) {
  return std::make_shared<BoundedDegreeOddStrategy>(n);
}

// ---------------------------------------------------------------------------
// ForestOddStrategy

namespace {

struct AdjView {
  std::set<Vertex> verts;
  std::map<Vertex, std::vector<Vertex>> adj;

  explicit AdjView(const FinStructure& g) : verts(g.universe()) {
    for (const Tuple& t : g.table("edge")) adj[t[0]].push_back(t[1]);
    for (auto& [v, nb] : adj) std::sort(nb.begin(), nb.end());
  }

  void add_pendant(Vertex parent, Vertex child) {
    verts.insert(child);
    adj[parent].push_back(child);
    adj[child].push_back(parent);
  }

  FinStructure materialize() const {
    FinStructure g(Signature::graphs());
    for (Vertex v : verts) g.add_vertex(v);
    for (const auto& [v, nb] : adj) {
      for (Vertex w : nb) {
        if (v < w) g.add_edge(v, w);
      }
    }
    return g;
  }
};

void ensure_complete_subtree(AdjView& view, Vertex v, Vertex parent, int branching, int depth,
                             Vertex& fresh) {
  if (depth == 0) return;
  std::vector<Vertex> children;
  for (Vertex w : view.adj[v]) {
    if (w != parent) children.push_back(w);
  }
  while (static_cast<int>(children.size()) < branching) {
    const Vertex u = fresh++;
    view.add_pendant(v, u);
    children.push_back(u);
  }
  for (int i = 0; i < branching; ++i) {
    ensure_complete_subtree(view, children[static_cast<std::size_t>(i)], v, branching,
                            depth - 1, fresh);
  }
}

}  // namespace

FinStructure ForestOddStrategy::respond(const Transcript<FinStructure>& t, Rng&) {
  if (t.empty()) {
    throw GameError(Fault::InvalidArgument, "forest strategy plays Odd; Eve opens");
  }
  const FinStructure& g = t.back();
  if (!graph_is_acyclic(g)) {
    throw GameError(Fault::CycleDetected, "Eve's move contains a cycle");
  }
  const int stage = static_cast<int>(t.size()) / 2 + 1;
  AdjView view(g);
  Vertex fresh = g.max_vertex() + 1;

  // Roots: the least vertex of every existing component.
  std::vector<Vertex> roots;
  for (const std::vector<Vertex>& comp : graph_components(g)) roots.push_back(comp.front());
  while (static_cast<int>(roots.size()) < stage) {
    const Vertex r = fresh++;
    view.verts.insert(r);
    roots.push_back(r);
  }
  for (Vertex root : roots) {
    ensure_complete_subtree(view, root, -1, stage, stage, fresh);
  }
  return view.materialize();
}

std::shared_ptr<ForestOddStrategy> forest_odd_strategy() {
  return std::make_shared<ForestOddStrategy>();
}

// ---------------------------------------------------------------------------
// adversaries, registry, checks

StrategyPtr<FinStructure> random_class_eve(std::shared_ptr<const FraisseClass> cls) {
  return make_strategy<FinStructure>(
      "random", [cls](const Transcript<FinStructure>& t, Rng& rng) {
        const FinStructure base = t.empty() ? FinStructure(cls->sig()) : t.back();
        return cls->random_one_step_extension(base, rng);
      });
}

StrategyPtr<FinStructure> class_odd_strategy(std::shared_ptr<const FraisseClass> cls,
                                             const std::string& id) {
  if (id == "markov" || id == "winning") {
    if (cls->limit()) return odd_markov_strategy(cls);
    const std::string name = cls->name();
    if (name == "forests") return forest_odd_strategy();
    const std::string prefix = "bounded_degree:";
    if (name.rfind(prefix, 0) == 0) {
      return bounded_degree_odd_strategy(std::stoi(name.substr(prefix.size())));
    }
    return nullptr;
  }
  if (id == "echo") return echo_strategy(FinStructure(cls->sig()));
  return nullptr;
}

StrategyPtr<FinStructure> class_eve_strategy(std::shared_ptr<const FraisseClass> cls,
                                             const std::string& id) {
  if (id == "random") return random_class_eve(cls);
  if (id == "echo") return echo_strategy(FinStructure(cls->sig()));
  return nullptr;
}

WinCheck<FinStructure> extension_check(std::shared_ptr<const FraisseClass> cls, int bound) {
  WinCheck<FinStructure> check;
  check.id = "extension:" + std::to_string(bound);
  check.fail_budget_monotone = true;
  check.verdict = [cls, bound](const Transcript<FinStructure>& t, int budget) -> VerdictResult {
    if (t.empty()) return {Verdict::Undecided, "empty play"};
    const int eff = std::min(bound, budget);
    const ExtensionReport report = extension_property_check(*cls, t.back(), eff);
    if (report.pass()) return {Verdict::Pass, ""};
    const ExtensionFailure& first = report.failures.front();
    std::ostringstream os;
    os << report.failures.size() << " unrealized extension(s); first base {";
    bool sep = false;
    for (Vertex v : first.base) {
      if (sep) os << ",";
      os << v;
      sep = true;
    }
    os << "}";
    return {Verdict::Fail, os.str()};
  };
  return check;
}

WinCheck<FinStructure> class_membership_check(std::shared_ptr<const FraisseClass> cls) {
  WinCheck<FinStructure> check;
  check.id = "membership:" + cls->name();
  check.fail_budget_monotone = true;
  check.verdict = [cls](const Transcript<FinStructure>& t, int) -> VerdictResult {
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (!cls->contains(t[i])) {
        return {Verdict::Fail, "move " + std::to_string(i) + " leaves the class"};
      }
    }
    return {Verdict::Pass, ""};
  };
  return check;
}

}  // namespace bmg
