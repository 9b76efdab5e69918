#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "bmg/fraisse.hpp"
#include "bmg/game.hpp"
#include "bmg/poset.hpp"
#include "bmg/structures.hpp"

namespace bmg {

/// The poset the structure games are played in: members of the class under
/// the extension order (same vertex ids, induced substructure). The join
/// witness is the plain union when it is consistent and stays in the class.
Poset<FinStructure> structure_poset(std::shared_ptr<const FraisseClass> cls);

/// Increasing chain X_0 c= X_1 c= ... of class members; constant past
/// length-1.
struct TargetChain {
  std::string name;
  int length = 0;
  std::function<FinStructure(int)> chain;

  FinStructure at(int n) const { return chain(n < length ? n : length - 1); }
};

TargetChain path_chain(int length);
TargetChain random_graph_chain(int length, int max_vertices, std::uint64_t seed);

/// Odd's strategy in the game on a class with a limit presentation. It
/// records an embedding of the play into the limit, extends it over Eve's
/// new vertices one point at a time, and enlarges its response so the
/// n-th prefix of the limit is covered by round n. Presentations that opt
/// into saturation additionally keep every small extension type over the
/// half-play-old vertices realized, so long plays are rich at small depth.
///
/// The recorded embedding is state beyond (last move, move count), so the
/// markov flag stays unset.
class LimitOddStrategy final : public Strategy<FinStructure> {
 public:
  explicit LimitOddStrategy(std::shared_ptr<const FraisseClass> cls);

  FinStructure respond(const Transcript<FinStructure>& t, Rng& rng) override;
  void reset() override;
  std::string name() const override { return "markov"; }

  /// Game vertex -> limit id, as recorded after each of this play's moves.
  const std::vector<std::map<Vertex, Vertex>>& history() const { return history_; }
  const std::map<Vertex, Vertex>& embedding_ids() const { return f_; }

  /// The recorded embedding of `s` (a structure of this play) into the
  /// materialized limit prefix.
  Embedding materialized_embedding(const FinStructure& s) const;

 private:
  void extend_over(const FinStructure& vn);
  void cover_prefix(Vertex n);
  void saturate(const FinStructure& base_structure, int bound);
  FinStructure materialize() const;

  std::shared_ptr<const FraisseClass> cls_;
  const LimitPresentation* lim_;
  bool saturate_;
  std::map<Vertex, Vertex> f_;
  std::set<Vertex> used_;
  std::vector<std::map<Vertex, Vertex>> history_;
};

std::shared_ptr<LimitOddStrategy> odd_markov_strategy(std::shared_ptr<const FraisseClass> cls);

/// Eve's embedding strategy: open with X_0, and on Odd's U_{2n-1}
/// amalgamate X_{n-1} -> U_{2n-1} with X_{n-1} -> X_n into the next move
/// U_2n, extending the recorded embedding e_{n-1} to e_n: X_n -> U_2n.
/// After the play, recorded_embedding() certifies that the target chain
/// embeds into the final structure.
class UniversalityEveStrategy final : public Strategy<FinStructure> {
 public:
  UniversalityEveStrategy(std::shared_ptr<const FraisseClass> cls, TargetChain target);

  FinStructure respond(const Transcript<FinStructure>& t, Rng& rng) override;
  void reset() override;
  std::string name() const override { return "universality(" + target_.name + ")"; }

  const std::vector<std::map<Vertex, Vertex>>& history() const { return history_; }
  int stages_played() const { return n_ + 1; }

  /// e_n as an embedding of X_n into `final_structure` (any extension of
  /// Eve's last move).
  Embedding recorded_embedding(const FinStructure& final_structure) const;

 private:
  std::shared_ptr<const FraisseClass> cls_;
  TargetChain target_;
  int n_ = -1;
  std::map<Vertex, Vertex> e_;
  std::vector<std::map<Vertex, Vertex>> history_;
};

std::shared_ptr<UniversalityEveStrategy> eve_universality_strategy(
    std::shared_ptr<const FraisseClass> cls, TargetChain target);

/// Odd's strategy for graphs of degree <= n: complete every component of
/// Eve's move to an n-regular graph and pad with catalogue graphs so his
/// k-th move has at least k components. Depends only on (last move, move
/// count).
class BoundedDegreeOddStrategy final : public Strategy<FinStructure> {
 public:
  explicit BoundedDegreeOddStrategy(int n) : n_(n) {}

  FinStructure respond(const Transcript<FinStructure>& t, Rng& rng) override;
  bool markov() const override { return true; }
  std::string name() const override { return "bounded_degree"; }

 private:
  int n_;
};

std::shared_ptr<BoundedDegreeOddStrategy> bounded_degree_odd_strategy(int n);

/// Odd's strategy for cycle-free graphs: at his k-th move, grow every
/// component until it contains a complete k-ary tree of depth k at its
/// root, and keep at least k components. Depends only on (last move, move
/// count).
class ForestOddStrategy final : public Strategy<FinStructure> {
 public:
  FinStructure respond(const Transcript<FinStructure>& t, Rng& rng) override;
  bool markov() const override { return true; }
  std::string name() const override { return "forest"; }
};

std::shared_ptr<ForestOddStrategy> forest_odd_strategy();

/// Seeded adversary: one-step class extensions of the running structure.
StrategyPtr<FinStructure> random_class_eve(std::shared_ptr<const FraisseClass> cls);

/// Registry used by the CLI: "markov" (the class's winning strategy),
/// "echo". Returns nullptr for unknown ids.
StrategyPtr<FinStructure> class_odd_strategy(std::shared_ptr<const FraisseClass> cls,
                                             const std::string& id);
StrategyPtr<FinStructure> class_eve_strategy(std::shared_ptr<const FraisseClass> cls,
                                             const std::string& id);

/// WinCheck scoring the final structure with the one-point extension
/// property at base size min(bound, budget). FAIL witnesses stay valid as
/// the budget grows; PASS is not stable under extending the play.
WinCheck<FinStructure> extension_check(std::shared_ptr<const FraisseClass> cls, int bound);

/// PASS iff every move is a class member (FAIL pinpoints the first that is
/// not).
WinCheck<FinStructure> class_membership_check(std::shared_ptr<const FraisseClass> cls);

}  // namespace bmg
