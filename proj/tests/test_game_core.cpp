#include "doctest.h"

#include "bmg/class_game.hpp"
#include "bmg/game.hpp"
#include "bmg/posets.hpp"

using namespace bmg;

namespace {

Poset<int> one_element_poset() {
  Poset<int> p;
  p.id = "singleton";
  p.leq = [](const int& a, const int& b) { return a == b; };
  p.label = [](const int& a) { return std::to_string(a); };
  return p;
}

}  // namespace

TEST_CASE("run_play on a one-element poset") {
  Poset<int> p = one_element_poset();
  auto eve = echo_strategy<int>(7);
  auto odd = echo_strategy<int>(7);
  Transcript<int> t = run_play(p, *eve, *odd, 1, 0);
  REQUIRE(t.size() == 1);
  CHECK(t[0] == 7);
  CHECK(t.player(0) == Player::Eve);
}

TEST_CASE("run_play rejects zero rounds") {
  Poset<int> p = one_element_poset();
  auto s = echo_strategy<int>(7);
  CHECK_THROWS_AS(run_play(p, *s, *s, 0, 0), GameError);
}

TEST_CASE("doubling Eve against the generic strategy over prime multiples") {
  // Hand-executed: u0=1 (Eve), u1=1*2=2 (D_0), u2=4 (double), u3=4*3=12 (D_1).
  Poset<std::uint64_t> p = posets::divisibility();
  auto eve = posets::doubling_eve();
  auto odd = generic_odd_strategy<std::uint64_t>(&p, posets::prime_multiples_family(4));
  Transcript<std::uint64_t> t = run_play(p, *eve, *odd, 4, 0);
  REQUIRE(t.moves() == std::vector<std::uint64_t>({1, 2, 4, 12}));
  CHECK(t.chain_ok());
  CHECK(t[3] % 3 == 0);  // u3 lands in D_1, the multiples of 3
}

TEST_CASE("generic strategy meets every set after 2n+2 rounds") {
  Poset<std::uint64_t> p = posets::divisibility();
  CofinalFamily<std::uint64_t> family = posets::prime_multiples_family(4);
  WinCheck<std::uint64_t> meets = meets_family_check<std::uint64_t>("meets", family);
  auto eve = posets::doubling_eve();
  auto odd = generic_odd_strategy<std::uint64_t>(&p, family);
  for (std::size_t n = 0; n < family.size(); ++n) {
    Transcript<std::uint64_t> t = run_play(p, *eve, *odd, static_cast<int>(2 * n + 2), 0);
    CofinalFamily<std::uint64_t> first_n{{family.sets.begin(), family.sets.begin() + n + 1}};
    WinCheck<std::uint64_t> check = meets_family_check<std::uint64_t>("meets", first_n);
    CHECK(evaluate(check, t, 0).verdict == Verdict::Pass);
  }
}

TEST_CASE("generic strategy beyond the family echoes") {
  Poset<std::string> p = posets::binary_strings();
  auto eve = echo_strategy<std::string>("");
  auto odd = generic_odd_strategy<std::string>(&p, CofinalFamily<std::string>{});
  Transcript<std::string> t = run_play(p, *eve, *odd, 6, 0);
  for (const std::string& m : t.moves()) CHECK(m == "");
}

TEST_CASE("generic strategy forces string length growth") {
  Poset<std::string> p = posets::binary_strings();
  auto eve = echo_strategy<std::string>("");
  const int k = 7;
  auto odd = generic_odd_strategy<std::string>(&p, posets::min_length_family(k));
  Transcript<std::string> t = run_play(p, *eve, *odd, 2 * k, 0);
  CHECK(t.back().size() >= static_cast<std::size_t>(k));
  CHECK(t.chain_ok());
}

TEST_CASE("strategy violation identifies player and index") {
  Poset<std::uint64_t> p = posets::divisibility();
  auto eve = posets::doubling_eve();
  auto bad_odd = make_plain_strategy<std::uint64_t>(
      "bad", [](const Transcript<std::uint64_t>& t) { return t.back() + 1; });
  try {
    run_play(p, *eve, *bad_odd, 4, 0);
    FAIL("expected STRATEGY_VIOLATION");
  } catch (const GameError& e) {
    CHECK(e.fault() == Fault::StrategyViolation);
    CHECK(e.move_index() == 1);
    CHECK(player_at(static_cast<std::size_t>(e.move_index())) == Player::Odd);
  }
}

TEST_CASE("witness validation in the generic strategy") {
  Poset<std::uint64_t> p = posets::divisibility();
  CofinalFamily<std::uint64_t> bad;
  bad.sets.push_back(CofinalSet<std::uint64_t>{
      "broken", [](const std::uint64_t&) { return true; },
      [](const std::uint64_t& x) { return x + 1; }});  // x+1 never divisible by x for x >= 2
  auto eve = make_plain_strategy<std::uint64_t>(
      "four", [](const Transcript<std::uint64_t>& t) -> std::uint64_t {
        return t.empty() ? 4 : t.back();
      });
  auto odd = generic_odd_strategy<std::uint64_t>(&p, bad);
  try {
    run_play(p, *eve, *odd, 2, 0);
    FAIL("expected WITNESS_INVALID");
  } catch (const GameError& e) {
    CHECK(e.fault() == Fault::WitnessInvalid);
  }
}

TEST_CASE("ideal membership") {
  Poset<std::uint64_t> p = posets::divisibility();
  IdealRep<std::uint64_t> ideal(&p, {1, 2, 4, 12});

  CHECK(ideal_membership(ideal, std::uint64_t(4)));   // a generator itself
  CHECK(ideal_membership(ideal, std::uint64_t(6)));   // 6 | 12
  CHECK_FALSE(ideal_membership(ideal, std::uint64_t(8)));
  CHECK(ideal_membership(ideal, std::uint64_t(1)));   // below the first generator

  SUBCASE("downward closure on sampled pairs") {
    Rng rng(41);
    std::uniform_int_distribution<std::uint64_t> d(1, 64);
    for (int i = 0; i < 500; ++i) {
      const std::uint64_t x = d(rng);
      const std::uint64_t y = d(rng);
      if (ideal_membership(ideal, x) && p.leq(y, x)) {
        CHECK(ideal_membership(ideal, y));
      }
    }
  }

  SUBCASE("generators must form a chain") {
    CHECK_THROWS_AS(IdealRep<std::uint64_t>(&p, {2, 3}), GameError);
    CHECK_THROWS_AS(IdealRep<std::uint64_t>(&p, {}), GameError);
  }
}

TEST_CASE("always-pass check passes everything") {
  Poset<std::uint64_t> p = posets::divisibility();
  Transcript<std::uint64_t> t(&p, {1, 3, 9});
  CHECK(evaluate(always_pass_check<std::uint64_t>(), t, 0).verdict == Verdict::Pass);
}

TEST_CASE("extension check fails a play ending in a triangle") {
  auto cls = graphs_class();
  Poset<FinStructure> p = structure_poset(cls);
  Transcript<FinStructure> t(&p, {complete_graph(3)});
  WinCheck<FinStructure> check = extension_check(cls, 1);

  // No vertex of K3 is non-adjacent to a given vertex.
  VerdictResult res = evaluate(check, t, 1);
  CHECK(res.verdict == Verdict::Fail);
  CHECK(!res.witness.empty());

  // Budget 0 caps the base size at 0; the empty base is realizable.
  CHECK(evaluate(check, t, 0).verdict == Verdict::Pass);
}

TEST_CASE("seeded plays are reproducible") {
  Poset<std::string> p = posets::binary_strings();
  auto eve = posets::random_bits_eve();
  auto odd = generic_odd_strategy<std::string>(&p, posets::min_length_family(5));
  Transcript<std::string> a = run_play(p, *eve, *odd, 10, 99);
  Transcript<std::string> b = run_play(p, *eve, *odd, 10, 99);
  CHECK(a.moves() == b.moves());
  Transcript<std::string> c = run_play(p, *eve, *odd, 10, 100);
  CHECK(a.moves() != c.moves());  // overwhelmingly likely for this adversary
}

TEST_CASE("markov-flagged strategies depend only on length and last move") {
  Poset<std::uint64_t> p = posets::divisibility();
  std::vector<StrategyPtr<std::uint64_t>> flagged = {
      posets::doubling_eve(),
      echo_strategy<std::uint64_t>(1),
      generic_odd_strategy<std::uint64_t>(&p, posets::prime_multiples_family(5)),
  };
  Rng rng(7);
  std::uniform_int_distribution<std::uint64_t> start(1, 6);
  std::uniform_int_distribution<int> factor(1, 4);

  auto random_chain_to = [&](std::size_t len) {
    // Random divisor chain of the given length; last element varies.
    std::vector<std::uint64_t> chain{start(rng)};
    while (chain.size() < len) chain.push_back(chain.back() * factor(rng));
    return chain;
  };
  auto random_chain_ending_at = [&](std::uint64_t target, std::size_t len) {
    // Random divisor chain with a pinned last element.
    std::vector<std::uint64_t> chain(len, target);
    for (std::size_t i = len - 1; i > 0; --i) {
      std::vector<std::uint64_t> divs;
      for (std::uint64_t d = 1; d <= chain[i]; ++d) {
        if (chain[i] % d == 0) divs.push_back(d);
      }
      chain[i - 1] = divs[std::uniform_int_distribution<std::size_t>(0, divs.size() - 1)(rng)];
    }
    return chain;
  };

  for (auto& strat : flagged) {
    REQUIRE(strat->markov());
    for (int trial = 0; trial < 200; ++trial) {
      std::uniform_int_distribution<std::size_t> dlen(1, 4);
      const std::size_t len = dlen(rng) * 2 - 1;  // odd lengths: Odd to move
      std::vector<std::uint64_t> c1 = random_chain_to(len);
      std::vector<std::uint64_t> c2 = random_chain_ending_at(c1.back(), len);
      Transcript<std::uint64_t> t1(&p, c1);
      Transcript<std::uint64_t> t2(&p, c2);
      Rng r1(0), r2(0);
      strat->reset();
      const std::uint64_t a = strat->respond(t1, r1);
      strat->reset();
      const std::uint64_t b = strat->respond(t2, r2);
      CHECK(a == b);
    }
  }
}

TEST_CASE("chain soundness across a corpus of random plays") {
  Poset<std::string> p = posets::binary_strings();
  auto eve = posets::random_bits_eve();
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto odd = generic_odd_strategy<std::string>(&p, posets::min_length_family(6));
    Transcript<std::string> t = run_play(p, *eve, *odd, 12, seed);
    CHECK(t.chain_ok());
    CHECK(t.size() == 12);
  }
}
