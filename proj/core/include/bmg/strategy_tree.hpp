#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "bmg/game.hpp"
#include "bmg/metric_tree.hpp"

namespace bmg {

/// Antichain tree extracted from an Odd strategy, together with the Eve
/// move each node answers. Node a at level n encodes the partial play
///   e_0, o_0, e_1, o_1, ..., e_n, o_n
/// where the o_i are the node values on the path to a and e_i the recorded
/// Eve moves; replaying those Eve moves through the strategy regenerates
/// the o_i.
template <typename E>
struct StrategyTree {
  MetricTree<E> tree;
  std::vector<E> eve_moves;  // indexed by node id

  std::vector<E> eve_moves_to(int node) const {
    std::vector<E> es;
    for (int id : tree.path_to(node)) es.push_back(eve_moves[static_cast<std::size_t>(id)]);
    return es;
  }
};

/// Feeds the given Eve moves to a freshly reset strategy and returns the
/// resulting transcript (Eve moves interleaved with the strategy's
/// responses). The strategy must be deterministic for replays to agree.
template <typename E>
Transcript<E> replay_against(const Poset<E>& poset, Strategy<E>& odd,
                             const std::vector<E>& eve_moves, std::uint64_t seed = 0) {
  odd.reset();
  Rng rng(seed);
  Transcript<E> t(&poset, seed);
  for (const E& e : eve_moves) {
    t.push(e);
    t.push(odd.respond(t, rng));
  }
  return t;
}

namespace detail {

/// Greedy antichain filter: keep a candidate iff it is incompatible (within
/// budget) with everything kept so far. Candidate order is the enumeration
/// order, which makes tie-breaking deterministic.
template <typename E>
std::vector<std::size_t> greedy_antichain(const Poset<E>& poset,
                                          const std::vector<E>& candidates,
                                          std::size_t budget) {
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    bool clash = false;
    for (std::size_t k : kept) {
      if (poset.compatible_within(candidates[i], candidates[k], budget)) {
        clash = true;
        break;
      }
    }
    if (!clash) kept.push_back(i);
  }
  return kept;
}

}  // namespace detail

/// Builds the tree of (budget-)maximal antichains induced by an Odd
/// strategy: level 0 filters Odd's responses to the first `budget`
/// enumerated Eve openings, and the level above node a filters Odd's
/// responses to the enumerated Eve continuations above a. Every level is a
/// pairwise-incompatible set and every root-to-node path replays as a legal
/// partial play of the strategy.
///
/// Throws EMPTY_LEVEL when some node admits no enumerated continuation
/// within the budget, or when every continuation makes the strategy stall
/// (a stalling response cannot be a strict child).
template <typename E>
StrategyTree<E> strategy_to_antichain_tree(const Poset<E>& poset, Strategy<E>& odd,
                                           std::size_t depth, std::size_t budget,
                                           std::uint64_t seed = 0) {
  if (!poset.has_enumerate()) {
    throw GameError(Fault::InvalidArgument, "poset does not support enumeration");
  }
  StrategyTree<E> out{MetricTree<E>(&poset), {}};
  if (depth == 0) return out;

  const std::vector<E> universe = poset.enumerate(budget);

  // Level 0: responses to the enumerated openings.
  {
    std::vector<E> responses;
    std::vector<E> openings;
    for (const E& e : universe) {
      Transcript<E> t = replay_against(poset, odd, {e}, seed);
      responses.push_back(t.back());
      openings.push_back(e);
    }
    if (responses.empty()) {
      throw GameError(Fault::EmptyLevel, "no enumerated Eve opening within budget");
    }
    for (std::size_t i : detail::greedy_antichain(poset, responses, budget)) {
      out.tree.add_root(responses[i]);
      out.eve_moves.push_back(openings[i]);
    }
  }

  for (std::size_t lvl = 1; lvl < depth; ++lvl) {
    if (out.tree.depth() < lvl) break;  // unreachable; defensive against empty levels
    const std::vector<int> parents = out.tree.level(lvl - 1);
    for (int a : parents) {
      const E& a_val = out.tree.node(a).value;
      std::vector<E> prefix = out.eve_moves_to(a);
      std::vector<E> responses;
      std::vector<E> continuations;
      bool any_continuation = false;
      for (const E& v : universe) {
        if (!poset.leq(a_val, v)) continue;
        any_continuation = true;
        std::vector<E> eves = prefix;
        eves.push_back(v);
        Transcript<E> t = replay_against(poset, odd, eves, seed);
        const E& r = t.back();
        if (r == a_val) continue;  // stall: not a strict child
        responses.push_back(r);
        continuations.push_back(v);
      }
      if (!any_continuation) {
        throw GameError(Fault::EmptyLevel,
                        "no enumerated Eve continuation above node at level " +
                            std::to_string(lvl - 1));
      }
      if (responses.empty()) {
        throw GameError(Fault::EmptyLevel,
                        "strategy stalls on every continuation above node at level " +
                            std::to_string(lvl - 1));
      }
      for (std::size_t i : detail::greedy_antichain(poset, responses, budget)) {
        out.tree.add_child(a, responses[i]);
        out.eve_moves.push_back(continuations[i]);
      }
    }
  }
  return out;
}

/// Stateful Odd strategy walking a fixed antichain tree: on Eve's move u it
/// picks the first child a of its current node (roots initially) for which
/// join_witness(u, a) is defined, advances to a and answers the witness.
/// Past a leaf it echoes; a level with children but no join witness is
/// NO_COMPATIBLE_CHILD.
template <typename E>
class TreeOddStrategy final : public Strategy<E> {
 public:
  TreeOddStrategy(MetricTree<E> tree, const Poset<E>* poset)
      : tree_(std::move(tree)), poset_(poset) {
    if (tree_.empty()) throw GameError(Fault::InvalidArgument, "empty tree");
    if (!poset_->has_join_witness()) {
      throw GameError(Fault::InvalidArgument, "poset does not supply join_witness");
    }
  }

  E respond(const Transcript<E>& t, Rng&) override {
    if (t.empty()) {
      // Opening (Eve role): enter the tree at its first root.
      advance(tree_.level(0).front());
      return tree_.node(current_).value;
    }
    const E& u = t.back();
    const std::vector<int>* options =
        current_ == -1 ? &tree_.level(0) : &tree_.node(current_).children;
    if (options->empty()) return u;  // branch exhausted: stall
    for (int id : *options) {
      if (auto v = poset_->join_witness(u, tree_.node(id).value)) {
        advance(id);
        return *v;
      }
    }
    throw GameError(Fault::NoCompatibleChild,
                    "no child of the current tree node admits a join witness");
  }

  void reset() override {
    current_ = -1;
    visited_.clear();
  }

  std::string name() const override { return "tree"; }

  const MetricTree<E>& tree() const { return tree_; }
  /// Node ids visited so far in this play (a root-down path).
  const std::vector<int>& visited() const { return visited_; }

 private:
  void advance(int id) {
    current_ = id;
    visited_.push_back(id);
  }

  MetricTree<E> tree_;
  const Poset<E>* poset_;
  int current_ = -1;
  std::vector<int> visited_;
};

template <typename E>
std::shared_ptr<TreeOddStrategy<E>> tree_to_odd_strategy(MetricTree<E> tree,
                                                         const Poset<E>* poset) {
  return std::make_shared<TreeOddStrategy<E>>(std::move(tree), poset);
}

}  // namespace bmg
