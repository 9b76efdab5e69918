#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bmg/game.hpp"
#include "bmg/poset.hpp"

namespace bmg {

/// Dominating mapping phi: Q -> P. Beyond order preservation and cofinal
/// image (D1), it carries the (D2) witness as an operation: for q in Q and
/// p in P with phi(q) <= p, dominate_above(q, p) returns q' with q <= q'
/// and p <= phi(q'). An explicit (D1) witness is optional; the pushed
/// strategy falls back to a budgeted search over the source enumeration.
template <typename EQ, typename EP>
struct DominatingMap {
  Poset<EQ> source;  // Q
  Poset<EP> target;  // P
  std::function<EP(const EQ&)> phi;
  std::function<EQ(const EQ&, const EP&)> dominate_above;
  std::function<std::optional<EQ>(const EP&)> cofinal_witness;
};

struct DominationViolation {
  std::string kind;  // "monotone", "D1", "D2"
  std::string detail;
};

struct DominationReport {
  std::vector<DominationViolation> violations;
  int trials = 0;

  bool ok() const { return violations.empty(); }
};

/// Randomized spot-check of the dominating-map laws over the first
/// `samples` enumerated elements of both posets. Violations are data, not
/// errors; an empty report means none were found, not a proof.
template <typename EQ, typename EP>
DominationReport check_dominating(const DominatingMap<EQ, EP>& map, int samples,
                                  std::uint64_t seed) {
  DominationReport report;
  if (!map.source.enumerate || !map.target.enumerate) {
    report.violations.push_back({"setup", "both posets must support enumeration"});
    return report;
  }
  const auto qs = map.source.enumerate(static_cast<std::size_t>(samples));
  const auto ps = map.target.enumerate(static_cast<std::size_t>(samples));
  if (qs.empty() || ps.empty()) {
    report.violations.push_back({"setup", "empty enumeration"});
    return report;
  }
  Rng rng(seed);
  auto pick = [&rng](const auto& v) -> const auto& {
    std::uniform_int_distribution<std::size_t> d(0, v.size() - 1);
    return v[d(rng)];
  };

  for (int i = 0; i < samples; ++i) {
    report.trials++;

    // Order preservation on a sampled comparable pair.
    {
      const EQ& q1 = pick(qs);
      const EQ& q2 = pick(qs);
      if (map.source.leq(q1, q2) && !map.target.leq(map.phi(q1), map.phi(q2))) {
        report.violations.push_back(
            {"monotone", "phi not order preserving on " + map.source.label_of(q1) +
                             " <= " + map.source.label_of(q2)});
      }
    }

    // (D1): some enumerated q lies phi-above a sampled p.
    {
      const EP& p = pick(ps);
      bool found = false;
      for (const EQ& q : qs) {
        if (map.target.leq(p, map.phi(q))) {
          found = true;
          break;
        }
      }
      if (!found) {
        report.violations.push_back(
            {"D1", "no enumerated q with phi(q) above " + map.target.label_of(p)});
      }
    }

    // (D2): witness validity on a sampled pair satisfying the premise.
    {
      const EQ& q = pick(qs);
      const EP& p = pick(ps);
      if (map.target.leq(map.phi(q), p)) {
        try {
          EQ q2 = map.dominate_above(q, p);
          if (!map.source.leq(q, q2) || !map.target.leq(p, map.phi(q2))) {
            report.violations.push_back(
                {"D2", "dominate_above(" + map.source.label_of(q) + ", " +
                           map.target.label_of(p) + ") is not a valid witness"});
          }
        } catch (const GameError& e) {
          report.violations.push_back({"D2", std::string("dominate_above failed: ") + e.what()});
        }
      }
    }
  }
  return report;
}

/// Odd strategy for BM(Q, W^phi) obtained from an Odd strategy sigma on P:
/// Eve's Q-moves are transported through phi, sigma answers on the P side,
/// and the (D2) witness lifts the answer back to Q. The strategy carries
/// the P-side play as internal state and is single-play.
template <typename EQ, typename EP>
class PulledOddStrategy final : public Strategy<EQ> {
 public:
  PulledOddStrategy(DominatingMap<EQ, EP> map, StrategyPtr<EP> sigma)
      : map_(std::move(map)), sigma_(std::move(sigma)), p_side_(&map_.target) {}

  PulledOddStrategy(const PulledOddStrategy&) = delete;
  PulledOddStrategy& operator=(const PulledOddStrategy&) = delete;

  EQ respond(const Transcript<EQ>& t, Rng& rng) override {
    if (t.empty()) {
      throw GameError(Fault::InvalidArgument, "pulled strategy plays Odd; Eve opens");
    }
    const EQ& v = t.back();
    EP phi_v = map_.phi(v);
    if (!p_side_.empty() && !map_.target.leq(p_side_.back(), phi_v)) {
      throw GameError(Fault::WitnessInvalid,
                      "phi image breaks the target-side chain (map not order preserving?)");
    }
    p_side_.push(std::move(phi_v));
    EP u = sigma_->respond(p_side_, rng);
    p_side_.push(std::move(u));
    EQ v_next = map_.dominate_above(v, p_side_.back());
    if (!map_.source.leq(v, v_next) || !map_.target.leq(p_side_.back(), map_.phi(v_next))) {
      throw GameError(Fault::WitnessInvalid, "(D2) witness invalid while pulling");
    }
    return v_next;
  }

  void reset() override {
    p_side_ = Transcript<EP>(&map_.target);
    sigma_->reset();
  }

  std::string name() const override { return "pull(" + sigma_->name() + ")"; }

  /// The interleaved P-side play phi(v0) <= u1 <= phi(v2) <= u3 <= ...
  const Transcript<EP>& target_side() const { return p_side_; }

 private:
  DominatingMap<EQ, EP> map_;
  StrategyPtr<EP> sigma_;
  Transcript<EP> p_side_;
};

template <typename EQ, typename EP>
std::shared_ptr<PulledOddStrategy<EQ, EP>> pull_odd_strategy(DominatingMap<EQ, EP> map,
                                                             StrategyPtr<EP> sigma) {
  return std::make_shared<PulledOddStrategy<EQ, EP>>(std::move(map), std::move(sigma));
}

/// Odd strategy for BM(P, W) obtained from an Odd strategy pi on Q. Eve's
/// first P-move is lifted into Q with a (D1) witness, later ones with the
/// (D2) witness; pi answers on the Q side and phi transports the answer
/// back to P.
template <typename EQ, typename EP>
class PushedOddStrategy final : public Strategy<EP> {
 public:
  PushedOddStrategy(DominatingMap<EQ, EP> map, StrategyPtr<EQ> pi,
                    std::size_t d1_search_budget = 256)
      : map_(std::move(map)),
        pi_(std::move(pi)),
        q_side_(&map_.source),
        d1_search_budget_(d1_search_budget) {}

  PushedOddStrategy(const PushedOddStrategy&) = delete;
  PushedOddStrategy& operator=(const PushedOddStrategy&) = delete;

  EP respond(const Transcript<EP>& t, Rng& rng) override {
    if (t.empty()) {
      throw GameError(Fault::InvalidArgument, "pushed strategy plays Odd; Eve opens");
    }
    const EP& u = t.back();
    EQ v_even = q_side_.empty() ? d1_witness(u) : map_.dominate_above(q_side_.back(), u);
    if ((!q_side_.empty() && !map_.source.leq(q_side_.back(), v_even)) ||
        !map_.target.leq(u, map_.phi(v_even))) {
      throw GameError(Fault::WitnessInvalid, "witness invalid while pushing");
    }
    q_side_.push(std::move(v_even));
    EQ v_next = pi_->respond(q_side_, rng);
    q_side_.push(std::move(v_next));
    return map_.phi(q_side_.back());
  }

  void reset() override {
    q_side_ = Transcript<EQ>(&map_.source);
    pi_->reset();
  }

  std::string name() const override { return "push(" + pi_->name() + ")"; }

  /// The source-side play v0 <= v1 <= ... whose odd entries pi produced.
  const Transcript<EQ>& source_side() const { return q_side_; }

 private:
  EQ d1_witness(const EP& u) {
    if (map_.cofinal_witness) {
      if (auto q = map_.cofinal_witness(u)) {
        if (!map_.target.leq(u, map_.phi(*q))) {
          throw GameError(Fault::WitnessInvalid, "(D1) witness not phi-above the move");
        }
        return *q;
      }
      throw GameError(Fault::NoCofinalWitness, "cofinal witness unavailable");
    }
    if (map_.source.enumerate) {
      for (const EQ& q : map_.source.enumerate(d1_search_budget_)) {
        if (map_.target.leq(u, map_.phi(q))) return q;
      }
    }
    throw GameError(Fault::NoCofinalWitness,
                    "(D1) search failed within budget " + std::to_string(d1_search_budget_));
  }

  DominatingMap<EQ, EP> map_;
  StrategyPtr<EQ> pi_;
  Transcript<EQ> q_side_;
  std::size_t d1_search_budget_;
};

template <typename EQ, typename EP>
std::shared_ptr<PushedOddStrategy<EQ, EP>> push_odd_strategy(DominatingMap<EQ, EP> map,
                                                             StrategyPtr<EQ> pi,
                                                             std::size_t d1_budget = 256) {
  return std::make_shared<PushedOddStrategy<EQ, EP>>(std::move(map), std::move(pi), d1_budget);
}

/// The check W^phi: a Q-side play is scored by evaluating the target-side
/// check on the phi-image of its transcript.
template <typename EQ, typename EP>
WinCheck<EQ> induced_check(DominatingMap<EQ, EP> map, WinCheck<EP> base) {
  WinCheck<EQ> out;
  out.id = base.id + "^phi";
  out.fail_budget_monotone = base.fail_budget_monotone;
  out.pass_ideal_monotone = base.pass_ideal_monotone;
  out.verdict = [map = std::move(map), base = std::move(base)](
                    const Transcript<EQ>& t, int budget) -> VerdictResult {
    Transcript<EP> image(&map.target, t.seed());
    for (const EQ& v : t.moves()) image.push(map.phi(v));
    return base.verdict(image, budget);
  };
  return out;
}

/// Dominating map induced by a cofinal subset Q of P: phi is the identity
/// on Q, the (D1) witness is witness_above, and the (D2) witness lifts via
/// witness_above directly (when q <= p) or through a common upper bound
/// found with join_witness or a budgeted search (NO_JOIN on failure).
template <typename E>
DominatingMap<E, E> cofinal_inclusion(const Poset<E>& p, std::string subset_id,
                                      std::function<bool(const E&)> member,
                                      std::function<E(const E&)> witness_above,
                                      std::size_t join_budget = 256) {
  Poset<E> q = p;
  q.id = std::move(subset_id);
  if (p.enumerate) {
    q.enumerate = [p_enum = p.enumerate, member](std::size_t budget) {
      std::vector<E> out;
      // Widen the window over P's enumeration until enough members surface.
      for (std::size_t window = budget; out.size() < budget && window <= budget * 64;
           window *= 2) {
        out.clear();
        for (const E& e : p_enum(window)) {
          if (member(e)) {
            out.push_back(e);
            if (out.size() == budget) break;
          }
        }
      }
      return out;
    };
  }

  auto lift = [member, witness_above](const E& base, const Poset<E>& amb) -> E {
    E d = witness_above(base);
    if (!amb.leq(base, d) || !member(d)) {
      throw GameError(Fault::WitnessInvalid, "witness_above left the subset or the cone");
    }
    return d;
  };

  DominatingMap<E, E> map;
  map.source = std::move(q);
  map.target = p;
  map.phi = [](const E& x) { return x; };
  map.cofinal_witness = [lift, p](const E& pt) -> std::optional<E> { return lift(pt, p); };
  map.dominate_above = [lift, p, join_budget](const E& q0, const E& pt) -> E {
    if (p.leq(q0, pt)) return lift(pt, p);
    std::optional<E> upper;
    if (p.join_witness) upper = p.join_witness(q0, pt);
    if (!upper && p.enumerate) {
      for (const E& z : p.enumerate(join_budget)) {
        if (p.leq(q0, z) && p.leq(pt, z)) {
          upper = z;
          break;
        }
      }
    }
    if (!upper) {
      throw GameError(Fault::NoJoin, "no common upper bound in the subset within budget");
    }
    return lift(*upper, p);
  };
  return map;
}

}  // namespace bmg
