#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <random>
#include <string>
#include <utility>

#include "bmg/poset.hpp"

namespace bmg {

using Rng = std::mt19937_64;

/// A (possibly stateful) strategy for one player. Instances must not be
/// shared across concurrent plays; the runner calls reset() at the start of
/// every play so an instance can be reused sequentially. Strategies flagged
/// markov() must depend only on the last move and the move count.
template <typename E>
class Strategy {
 public:
  virtual ~Strategy() = default;
  virtual E respond(const Transcript<E>& t, Rng& rng) = 0;
  virtual void reset() {}
  virtual bool markov() const { return false; }
  virtual std::string name() const { return "strategy"; }
};

template <typename E>
using StrategyPtr = std::shared_ptr<Strategy<E>>;

template <typename E>
class FnStrategy final : public Strategy<E> {
 public:
  using Fn = std::function<E(const Transcript<E>&, Rng&)>;

  FnStrategy(std::string name, Fn fn, bool markov = false)
      : name_(std::move(name)), fn_(std::move(fn)), markov_(markov) {}

  E respond(const Transcript<E>& t, Rng& rng) override { return fn_(t, rng); }
  bool markov() const override { return markov_; }
  std::string name() const override { return name_; }

 private:
  std::string name_;
  Fn fn_;
  bool markov_;
};

template <typename E>
StrategyPtr<E> make_strategy(std::string name,
                             std::function<E(const Transcript<E>&, Rng&)> fn,
                             bool markov = false) {
  return std::make_shared<FnStrategy<E>>(std::move(name), std::move(fn), markov);
}

/// Deterministic strategy from a plain transcript function.
template <typename E, typename F>
StrategyPtr<E> make_plain_strategy(std::string name, F fn, bool markov = false) {
  return make_strategy<E>(
      std::move(name), [fn](const Transcript<E>& t, Rng&) { return fn(t); }, markov);
}

/// Echoes the last move (legal since the order is reflexive); opens with the
/// supplied element when used as Eve.
template <typename E>
StrategyPtr<E> echo_strategy(E opening) {
  return make_strategy<E>(
      "echo",
      [opening](const Transcript<E>& t, Rng&) { return t.empty() ? opening : t.back(); },
      /*markov=*/true);
}

/// Runs one play of the Banach-Mazur game: `rounds` alternating moves, Eve
/// first. Any randomness inside the strategies is drawn from a single
/// generator seeded with `seed`, so the transcript is a pure function of
/// (poset, strategies, rounds, seed). A move below its predecessor aborts
/// the play with STRATEGY_VIOLATION identifying player and index.
template <typename E>
Transcript<E> run_play(const Poset<E>& poset, Strategy<E>& eve, Strategy<E>& odd,
                       int rounds, std::uint64_t seed) {
  if (rounds < 1) throw GameError(Fault::InvalidArgument, "rounds must be >= 1");
  eve.reset();
  odd.reset();
  Rng rng(seed);
  Transcript<E> t(&poset, seed);
  for (int i = 0; i < rounds; ++i) {
    Strategy<E>& mover = (i % 2 == 0) ? eve : odd;
    t.push(mover.respond(t, rng));
  }
  return t;
}

/// Odd's generic strategy over a finite family of cofinal sets: his n-th
/// move (global index 2n+1) is family.sets[n].witness_above(last move);
/// past the end of the family he echoes the last move.
template <typename E>
class GenericOddStrategy final : public Strategy<E> {
 public:
  GenericOddStrategy(const Poset<E>* poset, CofinalFamily<E> family)
      : poset_(poset), family_(std::move(family)) {}

  E respond(const Transcript<E>& t, Rng&) override {
    if (t.empty()) {
      throw GameError(Fault::InvalidArgument, "generic strategy cannot open a play");
    }
    const E& last = t.back();
    const std::size_t n = t.size() / 2;  // Odd's move counter at length 2n+1
    if (n >= family_.sets.size()) return last;
    const auto& set = family_.sets[n];
    E d = set.witness_above(last);
    if (!poset_->leq(last, d)) {
      throw GameError(Fault::WitnessInvalid,
                      "witness for " + set.name + " is not above the last move");
    }
    if (set.member && !set.member(d)) {
      throw GameError(Fault::WitnessInvalid,
                      "witness for " + set.name + " is not a member of the set");
    }
    return d;
  }

  bool markov() const override { return true; }
  std::string name() const override { return "generic"; }

 private:
  const Poset<E>* poset_;
  CofinalFamily<E> family_;
};

template <typename E>
StrategyPtr<E> generic_odd_strategy(const Poset<E>* poset, CofinalFamily<E> family) {
  return std::make_shared<GenericOddStrategy<E>>(poset, std::move(family));
}

enum class Verdict { Pass, Fail, Undecided };

inline std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "PASS";
    case Verdict::Fail: return "FAIL";
    case Verdict::Undecided: return "UNDECIDED";
  }
  return "?";
}

struct VerdictResult {
  Verdict verdict = Verdict::Undecided;
  std::string witness;  // populated on FAIL

  bool pass() const { return verdict == Verdict::Pass; }
};

/// Finite-stage approximation of the winning family W. A check never sees
/// the infinite ideal, only the transcript and a work budget; concrete
/// checks document how their verdicts behave as the budget or the play
/// grows:
///  - fail_budget_monotone: a FAIL witness found at budget b remains a
///    counterexample at any larger budget;
///  - pass_ideal_monotone: once a play PASSes, every extension of it PASSes
///    (the represented W is a final segment on these plays).
template <typename E>
struct WinCheck {
  std::string id;
  bool fail_budget_monotone = false;
  bool pass_ideal_monotone = false;
  std::function<VerdictResult(const Transcript<E>&, int budget)> verdict;
};

template <typename E>
VerdictResult evaluate(const WinCheck<E>& check, const Transcript<E>& t, int budget) {
  return check.verdict(t, budget);
}

/// PASS as soon as every set in the family has been hit by some move (the
/// move itself then witnesses that the generated ideal meets the set).
/// Sets not yet met leave the verdict UNDECIDED: a finite prefix cannot
/// refute genericity.
template <typename E>
WinCheck<E> meets_family_check(std::string id, CofinalFamily<E> family) {
  WinCheck<E> check;
  check.id = std::move(id);
  check.pass_ideal_monotone = true;
  check.verdict = [family = std::move(family)](const Transcript<E>& t,
                                               int /*budget*/) -> VerdictResult {
    for (const auto& set : family.sets) {
      bool met = false;
      for (const E& u : t.moves()) {
        if (set.member(u)) {
          met = true;
          break;
        }
      }
      if (!met) return {Verdict::Undecided, "not yet met: " + set.name};
    }
    return {Verdict::Pass, ""};
  };
  return check;
}

/// PASS once some move satisfies the predicate; UNDECIDED until then.
template <typename E>
WinCheck<E> some_move_check(std::string id, std::function<bool(const E&)> pred) {
  WinCheck<E> check;
  check.id = std::move(id);
  check.pass_ideal_monotone = true;
  check.verdict = [pred = std::move(pred)](const Transcript<E>& t,
                                           int /*budget*/) -> VerdictResult {
    for (const E& u : t.moves()) {
      if (pred(u)) return {Verdict::Pass, ""};
    }
    return {Verdict::Undecided, "no move satisfies the predicate yet"};
  };
  return check;
}

template <typename E>
WinCheck<E> always_pass_check() {
  WinCheck<E> check;
  check.id = "always_pass";
  check.fail_budget_monotone = true;
  check.pass_ideal_monotone = true;
  check.verdict = [](const Transcript<E>&, int) -> VerdictResult {
    return {Verdict::Pass, ""};
  };
  return check;
}

}  // namespace bmg
