#include <algorithm>

#include "bmg/fraisse.hpp"
#include "bmg/rational.hpp"

namespace bmg {

namespace {

/// Midpoint enumeration of the dyadic rationals in (0,1): id 0 -> 1/2,
/// ids 1,2 -> 1/4, 3/4, ids 3..6 -> odd/8, ... Level l holds ids
/// 2^l - 1 .. 2^{l+1} - 2, value (2k+1)/2^{l+1} for the k-th id of the
/// level.
Rational dyadic_value(Vertex id) {
  int level = 0;
  Vertex first = 0;
  while (id >= first + (Vertex(1) << level)) {
    first += Vertex(1) << level;
    ++level;
    if (level >= 62) throw GameError(Fault::RealizeFailure, "dyadic id range exhausted");
  }
  const Vertex k = id - first;
  return Rational(2 * k + 1, Vertex(1) << (level + 1));
}

class DyadicOrderPresentation final : public LimitPresentation {
 public:
  std::string name() const override { return "dyadic_order"; }
  const Signature& sig() const override { return Signature::linear_orders(); }

  FinStructure induced_on(const std::set<Vertex>& ids) const override {
    std::vector<Vertex> sorted(ids.begin(), ids.end());
    std::sort(sorted.begin(), sorted.end(), [](Vertex a, Vertex b) {
      return dyadic_value(a) < dyadic_value(b);
    });
    return make_linear_order(sorted);
  }

  Vertex realize_vertex(const FinStructure& b, Vertex new_v,
                        const std::map<Vertex, Vertex>& embedded,
                        const std::set<Vertex>& used) const override {
    // Order gap the new point must land in, in limit values.
    Rational lo(0);
    Rational hi(1);
    for (const auto& [bv, id] : embedded) {
      const Rational val = dyadic_value(id);
      if (b.has_tuple("lt", {bv, new_v})) {
        if (lo < val) lo = val;
      } else if (b.has_tuple("lt", {new_v, bv})) {
        if (val < hi) hi = val;
      } else {
        throw GameError(Fault::InvalidArgument, "order type of the new point is incomplete");
      }
    }
    if (!(lo < hi)) {
      throw GameError(Fault::RealizeFailure, "empty order gap (input not a linear order?)");
    }
    // Walk levels coarse-to-fine; within a level ids grow left to right, so
    // the first unused grid point inside the gap is the smallest fresh id.
    for (int level = 0; level < 62; ++level) {
      const Vertex den = Vertex(1) << (level + 1);
      const Vertex first_id = (Vertex(1) << level) - 1;
      // Odd numerators k_num with lo < k_num/den < hi.
      Vertex k_num = (lo * Rational(den)).floor() + 1;
      if (k_num % 2 == 0) ++k_num;
      for (; Rational(k_num, den) < hi; k_num += 2) {
        if (!(lo < Rational(k_num, den))) continue;
        const Vertex id = first_id + (k_num - 1) / 2;
        if (!used.count(id)) return id;
      }
    }
    throw GameError(Fault::RealizeFailure, "dyadic id range exhausted");
  }
};

class LinearOrdersClass final : public FraisseClass {
 public:
  std::string name() const override { return "linear_orders"; }
  const Signature& sig() const override { return Signature::linear_orders(); }

  bool contains(const FinStructure& s) const override {
    if (!(s.sig() == Signature::linear_orders())) return false;
    const std::vector<Vertex> verts = s.vertices();
    for (Vertex a : verts) {
      if (s.has_tuple("lt", {a, a})) return false;
      for (Vertex b : verts) {
        if (a == b) continue;
        if (s.has_tuple("lt", {a, b}) == s.has_tuple("lt", {b, a})) return false;  // total, antisymmetric
        for (Vertex c : verts) {
          if (s.has_tuple("lt", {a, b}) && s.has_tuple("lt", {b, c}) &&
              !s.has_tuple("lt", {a, c})) {
            return false;
          }
        }
      }
    }
    return true;
  }

  /// Order-merge along Z: inside each Z-gap the X-elements come first, then
  /// the Y-elements (ties broken toward X).
  AmalgamOutcome amalgamate(const Embedding& f, const Embedding& g) const override {
    if (!contains(f.codomain) || !contains(g.codomain) || !contains(f.domain)) {
      throw GameError(Fault::InvalidArgument, "amalgamation inputs must lie in the class");
    }
    if (!(f.domain == g.domain)) {
      throw GameError(Fault::InvalidArgument, "amalgamation requires a common domain Z");
    }
    if (!check_embedding(f) || !check_embedding(g)) {
      throw GameError(Fault::InvalidArgument, "amalgamation requires valid embeddings");
    }
    const std::vector<Vertex> z_order = linear_order_of(f.domain);
    const std::vector<Vertex> x_order = linear_order_of(f.codomain);
    const std::vector<Vertex> y_order = linear_order_of(g.codomain);

    // Gap index of an element: number of Z-images at or below it.
    auto gap_of = [&](const std::vector<Vertex>& order, const std::map<Vertex, Vertex>& emb,
                      Vertex v) {
      std::size_t gap = 0;
      for (std::size_t zi = 0; zi < z_order.size(); ++zi) {
        const Vertex img = emb.at(z_order[zi]);
        auto pos_img = std::find(order.begin(), order.end(), img) - order.begin();
        auto pos_v = std::find(order.begin(), order.end(), v) - order.begin();
        if (pos_img <= pos_v) gap = zi + 1;
      }
      return gap;
    };

    std::map<Vertex, Vertex> y_to_v;
    for (const auto& [z, yz] : g.map) y_to_v[yz] = f.map.at(z);
    Vertex fresh = std::max(f.codomain.max_vertex(), g.codomain.max_vertex()) + 1;

    // Merged order as V-ids: per gap, X-elements then non-glued Y-elements.
    std::vector<Vertex> merged;
    for (std::size_t gap = 0; gap <= z_order.size(); ++gap) {
      for (Vertex xv : x_order) {
        if (gap_of(x_order, f.map, xv) == gap) merged.push_back(xv);
      }
      for (Vertex yv : y_order) {
        if (y_to_v.count(yv)) continue;  // glued onto its X twin already
        if (gap_of(y_order, g.map, yv) == gap) {
          y_to_v[yv] = fresh++;
          merged.push_back(y_to_v[yv]);
        }
      }
    }

    FinStructure v = make_linear_order(merged);
    Embedding from_x = Embedding::identity(f.codomain);
    from_x.codomain = v;
    Embedding from_y{g.codomain, v, y_to_v};
    if (!check_embedding(from_x) || !check_embedding(from_y)) {
      return Failure{Fault::AmalgamationFailure, "order merge failed to embed both sides"};
    }
    return AmalgamResult{std::move(v), std::move(from_x), std::move(from_y)};
  }

  /// Concatenation: all of X, then all of Y.
  JointEmbedding joint_embed(const FinStructure& x, const FinStructure& y) const override {
    const std::vector<Vertex> x_order = linear_order_of(x);
    const std::vector<Vertex> y_order = linear_order_of(y);
    std::map<Vertex, Vertex> y_map;
    Vertex fresh = x.max_vertex() + 1;
    std::vector<Vertex> merged = x_order;
    for (Vertex yv : y_order) {
      y_map[yv] = fresh++;
      merged.push_back(y_map[yv]);
    }
    FinStructure z = make_linear_order(merged);
    Embedding from_x = Embedding::identity(x);
    from_x.codomain = z;
    Embedding from_y{y, z, y_map};
    return JointEmbedding{std::move(z), std::move(from_x), std::move(from_y)};
  }

  const LimitPresentation* limit() const override { return &presentation_; }

  FinStructure random_one_step_extension(const FinStructure& s, Rng& rng) const override {
    std::uniform_int_distribution<int> roll(0, 3);
    if (!s.empty() && roll(rng) == 0) return s;
    const std::vector<Vertex> order = s.empty() ? std::vector<Vertex>{} : linear_order_of(s);
    std::uniform_int_distribution<std::size_t> dpos(0, order.size());
    const std::size_t pos = dpos(rng);
    std::vector<Vertex> extended = order;
    extended.insert(extended.begin() + static_cast<std::ptrdiff_t>(pos), s.max_vertex() + 1);
    return make_linear_order(extended);
  }

 private:
  DyadicOrderPresentation presentation_;
};

}  // namespace

std::shared_ptr<const FraisseClass> linear_orders_class() {
  static const auto instance = std::make_shared<const LinearOrdersClass>();
  return instance;
}

}  // namespace bmg
