#include "doctest.h"

#include <numeric>

#include "bmg/posets.hpp"
#include "bmg/transfer.hpp"

using namespace bmg;

namespace {

std::uint64_t lcm64(std::uint64_t a, std::uint64_t b) { return a / std::gcd(a, b) * b; }

DominatingMap<std::uint64_t, std::uint64_t> identity_map() {
  Poset<std::uint64_t> p = posets::divisibility();
  DominatingMap<std::uint64_t, std::uint64_t> map;
  map.source = p;
  map.target = p;
  map.phi = [](const std::uint64_t& x) { return x; };
  map.dominate_above = [](const std::uint64_t& q, const std::uint64_t& pt) {
    return lcm64(q, pt);
  };
  map.cofinal_witness = [](const std::uint64_t& pt) -> std::optional<std::uint64_t> {
    return pt;
  };
  return map;
}

/// Even positive integers included into the divisibility order.
DominatingMap<std::uint64_t, std::uint64_t> evens_map() {
  Poset<std::uint64_t> p = posets::divisibility();
  DominatingMap<std::uint64_t, std::uint64_t> map;
  map.source = p;
  map.source.id = "evens";
  map.source.enumerate = [](std::size_t budget) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t n = 2; out.size() < budget; n += 2) out.push_back(n);
    return out;
  };
  map.target = p;
  map.phi = [](const std::uint64_t& x) { return x; };
  map.dominate_above = [](const std::uint64_t& q, const std::uint64_t& pt) {
    return lcm64(q, 2 * pt);
  };
  map.cofinal_witness = [](const std::uint64_t& pt) -> std::optional<std::uint64_t> {
    return 2 * pt;
  };
  return map;
}

StrategyPtr<std::uint64_t> fresh_prime_sigma() {
  return make_plain_strategy<std::uint64_t>(
      "fresh_prime",
      [](const Transcript<std::uint64_t>& t) -> std::uint64_t {
        const std::uint64_t u = t.back();
        for (std::uint64_t prime : posets::kSmallPrimes) {
          if (u % prime != 0) return u * prime;
        }
        return u;
      },
      /*markov=*/true);
}

StrategyPtr<std::uint64_t> random_even_eve() {
  return make_strategy<std::uint64_t>(
      "random_even", [](const Transcript<std::uint64_t>& t, Rng& rng) -> std::uint64_t {
        if (t.empty()) return 2 * std::uniform_int_distribution<std::uint64_t>(1, 4)(rng);
        static constexpr std::uint64_t factors[] = {1, 2, 3};
        return t.back() * factors[std::uniform_int_distribution<int>(0, 2)(rng)];
      });
}

}  // namespace

TEST_CASE("identity map is dominating") {
  DominationReport report = check_dominating(identity_map(), 100, 1);
  CHECK(report.ok());
  CHECK(report.trials == 100);
}

TEST_CASE("evens into divisibility is dominating") {
  DominationReport report = check_dominating(evens_map(), 200, 2);
  CHECK(report.ok());
}

TEST_CASE("a bounded subset fails cofinality") {
  DominatingMap<std::uint64_t, std::uint64_t> map = identity_map();
  map.source.enumerate = [](std::size_t) { return std::vector<std::uint64_t>{1}; };
  DominationReport report = check_dominating(map, 50, 3);
  REQUIRE_FALSE(report.ok());
  bool saw_d1 = false;
  for (const auto& v : report.violations) {
    if (v.kind == "D1") saw_d1 = true;
  }
  CHECK(saw_d1);
}

TEST_CASE("a broken D2 witness is reported") {
  DominatingMap<std::uint64_t, std::uint64_t> map = identity_map();
  map.dominate_above = [](const std::uint64_t& q, const std::uint64_t&) { return q; };
  DominationReport report = check_dominating(map, 200, 4);
  bool saw_d2 = false;
  for (const auto& v : report.violations) {
    if (v.kind == "D2") saw_d2 = true;
  }
  CHECK(saw_d2);
}

TEST_CASE("pulling through the identity changes nothing") {
  Poset<std::uint64_t> p = posets::divisibility();
  auto eve = posets::doubling_eve();

  auto sigma = fresh_prime_sigma();
  Transcript<std::uint64_t> direct = run_play(p, *eve, *sigma, 8, 5);

  auto pulled = pull_odd_strategy(identity_map(), fresh_prime_sigma());
  Transcript<std::uint64_t> via_pull = run_play(p, *eve, *pulled, 8, 5);

  CHECK(direct.moves() == via_pull.moves());
}

TEST_CASE("pushing through the identity changes nothing") {
  Poset<std::uint64_t> p = posets::divisibility();
  auto eve = posets::doubling_eve();

  auto pi = fresh_prime_sigma();
  Transcript<std::uint64_t> direct = run_play(p, *eve, *pi, 8, 5);

  auto pushed = push_odd_strategy(identity_map(), fresh_prime_sigma());
  Transcript<std::uint64_t> via_push = run_play(p, *eve, *pushed, 8, 5);

  CHECK(direct.moves() == via_push.moves());
}

TEST_CASE("pull composed with push over the identity is the original") {
  Poset<std::uint64_t> p = posets::divisibility();
  auto eve = posets::doubling_eve();

  auto original = fresh_prime_sigma();
  Transcript<std::uint64_t> direct = run_play(p, *eve, *original, 10, 9);

  StrategyPtr<std::uint64_t> pulled =
      pull_odd_strategy(identity_map(), fresh_prime_sigma());
  auto round_trip = push_odd_strategy(identity_map(), pulled);
  Transcript<std::uint64_t> composed = run_play(p, *eve, *round_trip, 10, 9);

  CHECK(direct.moves() == composed.moves());
}

TEST_CASE("pulled strategy plays inside the subset and above sigma") {
  Poset<std::uint64_t> q = evens_map().source;
  auto pulled = pull_odd_strategy(evens_map(), fresh_prime_sigma());
  auto eve = random_even_eve();

  Transcript<std::uint64_t> play = run_play(q, *eve, *pulled, 10, 11);
  CHECK(play.chain_ok());
  const Transcript<std::uint64_t>& p_side = pulled->target_side();
  REQUIRE(p_side.size() == 10);
  CHECK(p_side.chain_ok());
  for (std::size_t i = 1; i < play.size(); i += 2) {
    CHECK(play[i] % 2 == 0);          // response stays in Q
    CHECK(play[i] % p_side[i] == 0);  // response lies above sigma's move
  }

  // The P-side play is sigma-consistent: replaying sigma against its
  // Eve-side moves regenerates the Odd-side moves.
  auto sigma2 = fresh_prime_sigma();
  Poset<std::uint64_t> p = posets::divisibility();
  Transcript<std::uint64_t> replay(&p, p_side.seed());
  Rng rng(0);
  for (std::size_t i = 0; i < p_side.size(); i += 2) {
    replay.push(p_side[i]);
    const std::uint64_t odd_move = sigma2->respond(replay, rng);
    CHECK(odd_move == p_side[i + 1]);
    replay.push(odd_move);
  }
}

TEST_CASE("pushed strategy answers with phi-images of a Q-side play") {
  Poset<std::uint64_t> p = posets::divisibility();
  auto pushed = push_odd_strategy(evens_map(), fresh_prime_sigma());
  auto eve = posets::random_divisibility_eve();

  Transcript<std::uint64_t> play = run_play(p, *eve, *pushed, 10, 13);
  CHECK(play.chain_ok());
  const Transcript<std::uint64_t>& q_side = pushed->source_side();
  REQUIRE(q_side.size() == 10);
  CHECK(q_side.chain_ok());
  for (std::size_t i = 1; i < play.size(); i += 2) {
    CHECK(play[i] == q_side[i]);  // phi is the inclusion
    CHECK(q_side[i] % 2 == 0);
  }
}

TEST_CASE("cofinal inclusion produces a dominating map") {
  SUBCASE("the whole poset") {
    Poset<std::uint64_t> p = posets::divisibility();
    auto map = cofinal_inclusion<std::uint64_t>(
        p, "all", [](const std::uint64_t&) { return true; },
        [](const std::uint64_t& pt) { return pt; });
    CHECK(check_dominating(map, 100, 17).ok());
  }

  SUBCASE("multiples of six") {
    Poset<std::uint64_t> p = posets::divisibility();
    auto map = cofinal_inclusion<std::uint64_t>(
        p, "multiples_of_6", [](const std::uint64_t& x) { return x % 6 == 0; },
        [](const std::uint64_t& pt) { return 6 * pt; });
    CHECK(check_dominating(map, 100, 18).ok());
  }

  SUBCASE("dyadic intervals inside rational intervals") {
    Poset<posets::Interval> p = posets::rational_intervals();
    auto map = cofinal_inclusion<posets::Interval>(
        p, "dyadic_intervals",
        [](const posets::Interval& iv) { return posets::is_dyadic_interval(iv); },
        [](const posets::Interval& iv) { return posets::dyadic_subinterval(iv); });
    CHECK(check_dominating(map, 60, 19).ok());
  }
}

TEST_CASE("transfer preserves monotone passes") {
  // W = "some move divisible by 64"; sigma doubles, so any play it joins
  // passes. The induced check on the Q side evaluates W on the phi-image.
  WinCheck<std::uint64_t> w = some_move_check<std::uint64_t>(
      "div64", [](const std::uint64_t& u) { return u % 64 == 0; });
  auto sigma = make_plain_strategy<std::uint64_t>(
      "double", [](const Transcript<std::uint64_t>& t) { return t.back() * 2; }, true);

  Poset<std::uint64_t> p = posets::divisibility();

  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    auto p_eve = posets::random_divisibility_eve();
    Transcript<std::uint64_t> base = run_play(p, *p_eve, *sigma, 16, seed);
    REQUIRE(evaluate(w, base, 0).verdict == Verdict::Pass);
  }

  WinCheck<std::uint64_t> w_phi = induced_check(evens_map(), w);
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    auto q_eve = random_even_eve();
    auto pulled = pull_odd_strategy(
        evens_map(), make_plain_strategy<std::uint64_t>(
                         "double",
                         [](const Transcript<std::uint64_t>& t) { return t.back() * 2; }, true));
    Poset<std::uint64_t> q = evens_map().source;
    Transcript<std::uint64_t> play = run_play(q, *q_eve, *pulled, 16, seed);
    CHECK(evaluate(w_phi, play, 0).verdict == Verdict::Pass);
  }

  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    auto p_eve = posets::random_divisibility_eve();
    auto pushed = push_odd_strategy(
        evens_map(), make_plain_strategy<std::uint64_t>(
                         "double",
                         [](const Transcript<std::uint64_t>& t) { return t.back() * 2; }, true));
    Transcript<std::uint64_t> play = run_play(p, *p_eve, *pushed, 16, seed);
    CHECK(evaluate(w, play, 0).verdict == Verdict::Pass);
  }
}
