#include "bmg/fraisse.hpp"

namespace bmg {

namespace {

class PureSetPresentation final : public LimitPresentation {
 public:
  std::string name() const override { return "naturals"; }
  const Signature& sig() const override { return Signature::empty(); }

  FinStructure induced_on(const std::set<Vertex>& ids) const override {
    FinStructure s(Signature::empty());
    for (Vertex v : ids) s.add_vertex(v);
    return s;
  }

  Vertex realize_vertex(const FinStructure&, Vertex, const std::map<Vertex, Vertex>&,
                        const std::set<Vertex>& used) const override {
    Vertex j = 0;
    while (used.count(j)) ++j;
    return j;
  }
};

class PureSetsClass final : public FraisseClass {
 public:
  std::string name() const override { return "pure_sets"; }
  const Signature& sig() const override { return Signature::empty(); }

  bool contains(const FinStructure& s) const override { return s.sig() == Signature::empty(); }

  const LimitPresentation* limit() const override { return &presentation_; }

  FinStructure random_one_step_extension(const FinStructure& s, Rng& rng) const override {
    std::uniform_int_distribution<int> roll(0, 3);
    if (!s.empty() && roll(rng) == 0) return s;
    FinStructure out = s;
    out.add_vertex(s.max_vertex() + 1);
    return out;
  }

 private:
  PureSetPresentation presentation_;
};

}  // namespace

std::shared_ptr<const FraisseClass> pure_sets_class() {
  static const auto instance = std::make_shared<const PureSetsClass>();
  return instance;
}

}  // namespace bmg
