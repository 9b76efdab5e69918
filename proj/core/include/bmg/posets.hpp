#pragma once

#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "bmg/game.hpp"
#include "bmg/poset.hpp"
#include "bmg/rational.hpp"

/// Ready-made posets used by the CLI, the test corpus and the examples:
/// positive integers under divisibility, binary strings under extension,
/// rational intervals under reverse inclusion, and small chain posets.
namespace bmg::posets {

inline constexpr std::uint64_t kSmallPrimes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29,
                                                 31, 37, 41, 43, 47, 53, 59, 61, 67, 71};

// ---------------------------------------------------------------------------
// Positive integers under divisibility.

inline Poset<std::uint64_t> divisibility() {
  Poset<std::uint64_t> p;
  p.id = "divisibility";
  p.leq = [](const std::uint64_t& a, const std::uint64_t& b) { return b % a == 0; };
  p.enumerate = [](std::size_t budget) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t n = 1; out.size() < budget; ++n) out.push_back(n);
    return out;
  };
  p.join_witness = [](const std::uint64_t& a,
                      const std::uint64_t& b) -> std::optional<std::uint64_t> {
    const std::uint64_t g = std::gcd(a, b);
    const std::uint64_t q = a / g;
    if (b > UINT64_MAX / 2 / q) return std::nullopt;  // lcm would overflow
    return q * b;
  };
  p.compat = [](const std::uint64_t&, const std::uint64_t&) { return true; };
  p.label = [](const std::uint64_t& a) { return std::to_string(a); };
  return p;
}

/// D_n = multiples of the (n+1)-th prime; the witness above p is p times
/// that prime.
inline CofinalFamily<std::uint64_t> prime_multiples_family(std::size_t m) {
  CofinalFamily<std::uint64_t> family;
  for (std::size_t n = 0; n < m && n < std::size(kSmallPrimes); ++n) {
    const std::uint64_t prime = kSmallPrimes[n];
    family.sets.push_back(CofinalSet<std::uint64_t>{
        "multiples_of_" + std::to_string(prime),
        [prime](const std::uint64_t& x) { return x % prime == 0; },
        [prime](const std::uint64_t& p) { return p * prime; }});
  }
  return family;
}

/// Eve opens with 1 and doubles the last move on the board.
inline StrategyPtr<std::uint64_t> doubling_eve() {
  return make_strategy<std::uint64_t>(
      "doubling",
      [](const Transcript<std::uint64_t>& t, Rng&) -> std::uint64_t {
        return t.empty() ? 1 : t.back() * 2;
      },
      /*markov=*/true);
}

/// Seeded adversary: opens with a small number, then multiplies the last
/// move by a random factor from {1, 2, 3, 5} (factor 1 = stall).
inline StrategyPtr<std::uint64_t> random_divisibility_eve() {
  return make_strategy<std::uint64_t>(
      "random", [](const Transcript<std::uint64_t>& t, Rng& rng) -> std::uint64_t {
        if (t.empty()) return std::uniform_int_distribution<std::uint64_t>(1, 8)(rng);
        static constexpr std::uint64_t factors[] = {1, 2, 3, 5};
        return t.back() * factors[std::uniform_int_distribution<int>(0, 3)(rng)];
      });
}

// ---------------------------------------------------------------------------
// Binary strings ordered by extension (s <= t iff s is a prefix of t).

inline bool is_prefix(const std::string& s, const std::string& t) {
  return s.size() <= t.size() && t.compare(0, s.size(), s) == 0;
}

inline Poset<std::string> binary_strings() {
  Poset<std::string> p;
  p.id = "binary_strings";
  p.leq = [](const std::string& a, const std::string& b) { return is_prefix(a, b); };
  p.enumerate = [](std::size_t budget) {
    // Length-lexicographic: "", 0, 1, 00, 01, 10, 11, 000, ...
    std::vector<std::string> out;
    out.emplace_back("");
    for (std::size_t len = 1; out.size() < budget; ++len) {
      for (std::uint64_t bits = 0; bits < (1ull << len) && out.size() < budget; ++bits) {
        std::string s(len, '0');
        for (std::size_t i = 0; i < len; ++i) {
          if (bits & (1ull << (len - 1 - i))) s[i] = '1';
        }
        out.push_back(std::move(s));
      }
    }
    out.resize(budget);
    return out;
  };
  p.join_witness = [](const std::string& a, const std::string& b) -> std::optional<std::string> {
    if (is_prefix(a, b)) return b;
    if (is_prefix(b, a)) return a;
    return std::nullopt;
  };
  p.compat = [](const std::string& a, const std::string& b) {
    return is_prefix(a, b) || is_prefix(b, a);
  };
  p.label = [](const std::string& s) { return s.empty() ? std::string("<empty>") : s; };
  return p;
}

/// D_n = strings of length >= n+1; the witness pads with zeros.
inline CofinalFamily<std::string> min_length_family(std::size_t m) {
  CofinalFamily<std::string> family;
  for (std::size_t n = 0; n < m; ++n) {
    const std::size_t min_len = n + 1;
    family.sets.push_back(CofinalSet<std::string>{
        "length_ge_" + std::to_string(min_len),
        [min_len](const std::string& s) { return s.size() >= min_len; },
        [min_len](const std::string& p) {
          std::string s = p;
          if (s.size() < min_len) s.append(min_len - s.size(), '0');
          return s;
        }});
  }
  return family;
}

/// Seeded adversary: opens with the empty string, then appends one random
/// bit (or stalls with probability 1/4).
inline StrategyPtr<std::string> random_bits_eve() {
  return make_strategy<std::string>(
      "random", [](const Transcript<std::string>& t, Rng& rng) -> std::string {
        if (t.empty()) return "";
        std::uniform_int_distribution<int> d(0, 3);
        const int roll = d(rng);
        if (roll == 3) return t.back();
        return t.back() + (roll % 2 == 0 ? '0' : '1');
      });
}

inline StrategyPtr<std::string> append_bit_strategy(char bit) {
  return make_strategy<std::string>(
      std::string("append") + bit,
      [bit](const Transcript<std::string>& t, Rng&) -> std::string {
        return t.empty() ? std::string(1, bit) : t.back() + bit;
      },
      /*markov=*/true);
}

// ---------------------------------------------------------------------------
// Rational intervals under reverse inclusion.

struct Interval {
  Rational lo;
  Rational hi;

  bool operator==(const Interval& o) const { return lo == o.lo && hi == o.hi; }
  Rational length() const { return hi - lo; }
};

inline Poset<Interval> rational_intervals() {
  Poset<Interval> p;
  p.id = "intervals";
  // I <= J iff J is contained in I.
  p.leq = [](const Interval& a, const Interval& b) { return a.lo <= b.lo && b.hi <= a.hi; };
  p.enumerate = [](std::size_t budget) {
    // Intervals with endpoints a/d < b/d in [0,1], by increasing denominator.
    std::vector<Interval> out;
    for (std::int64_t d = 1; out.size() < budget; ++d) {
      for (std::int64_t a = 0; a < d && out.size() < budget; ++a) {
        for (std::int64_t b = a + 1; b <= d && out.size() < budget; ++b) {
          Interval iv{Rational(a, d), Rational(b, d)};
          bool seen = false;
          for (const auto& e : out) {
            if (e == iv) {
              seen = true;
              break;
            }
          }
          if (!seen) out.push_back(iv);
        }
      }
    }
    return out;
  };
  p.join_witness = [](const Interval& a, const Interval& b) -> std::optional<Interval> {
    Interval meet{a.lo < b.lo ? b.lo : a.lo, a.hi < b.hi ? a.hi : b.hi};
    if (meet.lo < meet.hi) return meet;
    return std::nullopt;
  };
  p.compat = [](const Interval& a, const Interval& b) {
    const Rational lo = a.lo < b.lo ? b.lo : a.lo;
    const Rational hi = a.hi < b.hi ? a.hi : b.hi;
    return lo < hi;
  };
  p.label = [](const Interval& iv) { return "(" + iv.lo.str() + "," + iv.hi.str() + ")"; };
  return p;
}

inline bool is_dyadic(const Rational& r) {
  std::int64_t d = r.den();
  while (d % 2 == 0) d /= 2;
  return d == 1;
}

inline bool is_dyadic_interval(const Interval& iv) {
  return is_dyadic(iv.lo) && is_dyadic(iv.hi);
}

/// Dyadic subinterval strictly inside iv, on the coarsest grid that fits.
inline Interval dyadic_subinterval(const Interval& iv) {
  for (std::int64_t k = 0; k < 62; ++k) {
    const std::int64_t scale = std::int64_t(1) << k;
    // Need two consecutive grid points strictly inside (lo, hi).
    const std::int64_t a = (iv.lo * Rational(scale)).floor() + 1;
    const Rational left(a, scale);
    const Rational right(a + 1, scale);
    if (iv.lo < left && right < iv.hi) return Interval{left, right};
  }
  throw GameError(Fault::WitnessInvalid, "no dyadic subinterval found (interval too thin)");
}

/// Odd halves the interval each move.
inline StrategyPtr<Interval> halving_strategy() {
  return make_strategy<Interval>(
      "halving",
      [](const Transcript<Interval>& t, Rng&) -> Interval {
        if (t.empty()) return Interval{Rational(0), Rational(1)};
        const Interval& iv = t.back();
        const Rational mid = (iv.lo + iv.hi) / Rational(2);
        return Interval{iv.lo, mid};
      },
      /*markov=*/true);
}

/// Seeded adversary: opens with (0,1), then either stalls or keeps a random
/// half of the last interval.
inline StrategyPtr<Interval> random_interval_eve() {
  return make_strategy<Interval>(
      "random", [](const Transcript<Interval>& t, Rng& rng) -> Interval {
        if (t.empty()) return Interval{Rational(0), Rational(1)};
        const Interval& iv = t.back();
        std::uniform_int_distribution<int> d(0, 2);
        const int roll = d(rng);
        if (roll == 2) return iv;
        const Rational mid = (iv.lo + iv.hi) / Rational(2);
        return roll == 0 ? Interval{iv.lo, mid} : Interval{mid, iv.hi};
      });
}

// ---------------------------------------------------------------------------
// Small chain-like posets (antichain-tree corpus).

/// The chain 0 < 1 < ... < n-1.
inline Poset<int> int_chain(int n) {
  Poset<int> p;
  p.id = "chain" + std::to_string(n);
  p.leq = [](const int& a, const int& b) { return a <= b; };
  p.enumerate = [n](std::size_t budget) {
    std::vector<int> out;
    for (int i = 0; i < n && out.size() < budget; ++i) out.push_back(i);
    return out;
  };
  p.join_witness = [](const int& a, const int& b) -> std::optional<int> {
    return a < b ? b : a;
  };
  p.compat = [](const int&, const int&) { return true; };
  p.label = [](const int& a) { return std::to_string(a); };
  return p;
}

/// Powers of two 1 | 2 | 4 | ... | 2^(n-1) under divisibility.
inline Poset<std::uint64_t> pow2_chain(int n) {
  Poset<std::uint64_t> p = divisibility();
  p.id = "pow2_chain" + std::to_string(n);
  p.enumerate = [n](std::size_t budget) {
    std::vector<std::uint64_t> out;
    for (int i = 0; i < n && out.size() < budget; ++i) out.push_back(std::uint64_t(1) << i);
    return out;
  };
  return p;
}

/// Two disjoint chains a_1 < ... < a_len and b_1 < ... < b_len; elements of
/// different chains are incomparable and incompatible.
struct ChainElem {
  int chain;  // 0 or 1
  int rank;   // 1-based

  bool operator==(const ChainElem& o) const { return chain == o.chain && rank == o.rank; }
};

inline Poset<ChainElem> two_chains(int len) {
  Poset<ChainElem> p;
  p.id = "two_chains" + std::to_string(len);
  p.leq = [](const ChainElem& a, const ChainElem& b) {
    return a.chain == b.chain && a.rank <= b.rank;
  };
  p.enumerate = [len](std::size_t budget) {
    std::vector<ChainElem> out;
    for (int r = 1; r <= len && out.size() < budget; ++r) {
      out.push_back({0, r});
      if (out.size() < budget) out.push_back({1, r});
    }
    return out;
  };
  p.join_witness = [](const ChainElem& a, const ChainElem& b) -> std::optional<ChainElem> {
    if (a.chain != b.chain) return std::nullopt;
    return a.rank < b.rank ? b : a;
  };
  p.compat = [](const ChainElem& a, const ChainElem& b) { return a.chain == b.chain; };
  p.label = [](const ChainElem& e) {
    return std::string(e.chain == 0 ? "a" : "b") + std::to_string(e.rank);
  };
  return p;
}

}  // namespace bmg::posets
