#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bmg/errors.hpp"

namespace bmg {

/// A partial order handed to the engine as a bundle of callables. `leq` is
/// the only required capability; `enumerate`, `join_witness` and `compat`
/// unlock enumeration-based operations (antichain trees, budgeted
/// compatibility search, cofinality checks).
///
/// Contracts the rest of the library relies on:
///  - leq is reflexive, antisymmetric and transitive,
///  - join_witness(x, y) == z implies leq(x, z) and leq(y, z),
///  - compat(x, y) == false means no z whatsoever lies above both.
template <typename E>
struct Poset {
  using Element = E;

  std::string id;
  std::function<bool(const E&, const E&)> leq;

  // Optional capabilities.
  std::function<std::vector<E>(std::size_t budget)> enumerate;
  std::function<std::optional<E>(const E&, const E&)> join_witness;
  std::function<bool(const E&, const E&)> compat;

  // Element rendering, used by transcript serialization and DOT export.
  std::function<std::string(const E&)> label;

  bool has_enumerate() const { return static_cast<bool>(enumerate); }
  bool has_join_witness() const { return static_cast<bool>(join_witness); }
  bool has_compat() const { return static_cast<bool>(compat); }

  std::string label_of(const E& x) const { return label ? label(x) : std::string("?"); }

  /// True when x and y are known to have a common upper bound. Uses the
  /// compat capability when present, otherwise a join witness, otherwise a
  /// search over the first `budget` enumerated elements. Without any
  /// capability the answer is a (sound for antichains) "not found".
  bool compatible_within(const E& x, const E& y, std::size_t budget) const {
    if (compat) return compat(x, y);
    if (leq(x, y) || leq(y, x)) return true;
    if (join_witness && join_witness(x, y).has_value()) return true;
    if (enumerate) {
      for (const E& z : enumerate(budget)) {
        if (leq(x, z) && leq(y, z)) return true;
      }
    }
    return false;
  }
};

enum class Player { Eve, Odd };

inline Player player_at(std::size_t move_index) {
  return move_index % 2 == 0 ? Player::Eve : Player::Odd;
}

inline std::string_view player_name(Player p) { return p == Player::Eve ? "Eve" : "Odd"; }

/// The increasing chain u0 <= u1 <= ... produced by a play. Attribution is
/// by index parity: even moves are Eve's, odd moves are Odd's. Instances
/// are grown by the play runner and treated as immutable afterwards.
template <typename E>
class Transcript {
 public:
  explicit Transcript(const Poset<E>* poset, std::uint64_t seed = 0)
      : poset_(poset), seed_(seed) {}

  Transcript(const Poset<E>* poset, std::vector<E> moves, std::uint64_t seed = 0)
      : poset_(poset), seed_(seed) {
    for (auto& m : moves) push(std::move(m));
  }

  const Poset<E>& poset() const { return *poset_; }
  std::uint64_t seed() const { return seed_; }
  const std::vector<E>& moves() const { return moves_; }
  std::size_t size() const { return moves_.size(); }
  bool empty() const { return moves_.empty(); }
  const E& operator[](std::size_t i) const { return moves_[i]; }
  const E& back() const { return moves_.back(); }
  Player player(std::size_t i) const { return player_at(i); }

  /// Appends a move, enforcing the chain condition (equality permitted).
  void push(E move) {
    if (!moves_.empty() && !poset_->leq(moves_.back(), move)) {
      const auto idx = static_cast<int>(moves_.size());
      throw GameError(Fault::StrategyViolation,
                      std::string(player_name(player_at(idx))) + " move " +
                          std::to_string(idx) + " is not above the previous move",
                      idx);
    }
    moves_.push_back(std::move(move));
  }

  /// The chain condition, re-checked from scratch (used by verifiers).
  bool chain_ok() const {
    for (std::size_t i = 0; i + 1 < moves_.size(); ++i) {
      if (!poset_->leq(moves_[i], moves_[i + 1])) return false;
    }
    return true;
  }

 private:
  const Poset<E>* poset_;
  std::uint64_t seed_;
  std::vector<E> moves_;
};

/// Finitely generated ideal, represented by an increasing chain of
/// generators (typically a transcript prefix). Membership is "below some
/// generator", which makes the represented set downward closed and directed.
template <typename E>
class IdealRep {
 public:
  IdealRep(const Poset<E>* poset, std::vector<E> generators)
      : poset_(poset), generators_(std::move(generators)) {
    if (generators_.empty()) {
      throw GameError(Fault::InvalidArgument, "ideal needs at least one generator");
    }
    for (std::size_t i = 0; i + 1 < generators_.size(); ++i) {
      if (!poset_->leq(generators_[i], generators_[i + 1])) {
        throw GameError(Fault::InvalidArgument,
                        "ideal generators must form an increasing chain");
      }
    }
  }

  static IdealRep from_transcript(const Transcript<E>& t) {
    return IdealRep(&t.poset(), t.moves());
  }

  const Poset<E>& poset() const { return *poset_; }
  const std::vector<E>& generators() const { return generators_; }

  bool contains(const E& x) const {
    for (const E& a : generators_) {
      if (poset_->leq(x, a)) return true;
    }
    return false;
  }

 private:
  const Poset<E>* poset_;
  std::vector<E> generators_;
};

template <typename E>
bool ideal_membership(const IdealRep<E>& ideal, const E& x) {
  return ideal.contains(x);
}

/// One cofinal set D: a membership predicate plus a witness function
/// returning some d in D above a given element.
template <typename E>
struct CofinalSet {
  std::string name;
  std::function<bool(const E&)> member;
  std::function<E(const E&)> witness_above;
};

template <typename E>
struct CofinalFamily {
  std::vector<CofinalSet<E>> sets;

  std::size_t size() const { return sets.size(); }
};

}  // namespace bmg
