#include "registry.hpp"

#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "json.hpp"

#include "bmg/class_game.hpp"
#include "bmg/posets.hpp"
#include "bmg/strategy_tree.hpp"
#include "bmg/structure_io.hpp"

namespace bmgcli {

using nlohmann::json;

namespace {

template <typename E>
struct PosetGameDef {
  bmg::Poset<E> poset;
  std::map<std::string, std::function<bmg::StrategyPtr<E>()>> eves;
  std::map<std::string, std::function<bmg::StrategyPtr<E>()>> odds;
  std::map<std::string, bmg::WinCheck<E>> checks;
  std::function<json(const E&)> encode;
  std::function<E(const json&)> decode;
};

template <typename Map>
std::vector<std::string> keys_of(const Map& map) {
  std::vector<std::string> out;
  for (const auto& [k, v] : map) out.push_back(k);
  return out;
}

template <typename E>
class PosetEntry final : public GameEntry {
 public:
  explicit PosetEntry(PosetGameDef<E> def) : def_(std::move(def)) {}

  std::string id() const override { return def_.poset.id; }
  std::vector<std::string> eve_ids() const override { return keys_of(def_.eves); }
  std::vector<std::string> odd_ids() const override { return keys_of(def_.odds); }
  std::vector<std::string> check_ids() const override { return keys_of(def_.checks); }

  PlayOutcome play(const PlayRequest& req) const override {
    auto eve = make_strategy_by_id(def_.eves, req.eve, "eve");
    auto odd = make_strategy_by_id(def_.odds, req.odd, "odd");
    const bmg::WinCheck<E>& check = check_by_id(req.check);
    if (req.rounds < 1) throw UsageError{"--rounds must be at least 1"};
    bmg::Transcript<E> t = bmg::run_play(def_.poset, *eve, *odd, req.rounds, req.seed);
    return outcome_of(t, check, req.budget);
  }

  PlayOutcome verify(const std::string& transcript_json, const std::string& check_id,
                     int budget) const override {
    json doc = json::parse(transcript_json);
    bmg::Transcript<E> t(&def_.poset, doc.value("seed", std::uint64_t(0)));
    PlayOutcome out;
    for (const json& move : doc.at("moves")) {
      try {
        t.push(def_.decode(move));
      } catch (const bmg::GameError&) {
        out.chain_ok = false;
        out.verdict = bmg::Verdict::Fail;
        out.witness = "transcript breaks the chain condition";
        out.check_id = check_id;
        out.transcript_json = transcript_json;
        return out;
      }
    }
    out = outcome_of(t, check_by_id(check_id), budget);
    return out;
  }

  std::string export_dot(const std::string& transcript_json) const override {
    json doc = json::parse(transcript_json);
    std::ostringstream os;
    os << "digraph play {\n  rankdir=LR;\n";
    int i = 0;
    for (const json& move : doc.at("moves")) {
      os << "  m" << i << " [label=\"" << def_.poset.label_of(def_.decode(move))
         << "\", shape=" << (i % 2 == 0 ? "box" : "ellipse") << "];\n";
      if (i > 0) os << "  m" << i - 1 << " -> m" << i << ";\n";
      ++i;
    }
    os << "}\n";
    return os.str();
  }

  bool supports_tree() const override { return def_.poset.has_enumerate(); }

  TreeOutcome tree(const TreeRequest& req) const override {
    if (req.depth < 0) throw UsageError{"tree depth must be nonnegative"};
    auto odd = make_strategy_by_id(def_.odds, req.odd, "odd");
    bmg::StrategyTree<E> st = bmg::strategy_to_antichain_tree(
        def_.poset, *odd, static_cast<std::size_t>(req.depth),
        static_cast<std::size_t>(req.budget));
    TreeOutcome out;
    out.dot = st.tree.dot();
    for (std::size_t lvl = 0; lvl < st.tree.depth(); ++lvl) {
      out.level_sizes.push_back(st.tree.level(lvl).size());
      out.maximality_gaps +=
          st.tree.budget_maximality_gaps(lvl, static_cast<std::size_t>(req.budget)).size();
    }
    out.antichain_violations =
        st.tree.antichain_violations(static_cast<std::size_t>(req.budget)).size();
    return out;
  }

 private:
  template <typename Factories>
  bmg::StrategyPtr<E> make_strategy_by_id(const Factories& factories, const std::string& sid,
                                          const char* role) const {
    auto it = factories.find(sid);
    if (it == factories.end()) {
      throw UsageError{"unknown " + std::string(role) + " strategy '" + sid + "' for " +
                       def_.poset.id};
    }
    return it->second();
  }

  const bmg::WinCheck<E>& check_by_id(const std::string& cid) const {
    auto it = def_.checks.find(cid);
    if (it == def_.checks.end()) {
      throw UsageError{"unknown check '" + cid + "' for " + def_.poset.id};
    }
    return it->second;
  }

  PlayOutcome outcome_of(const bmg::Transcript<E>& t, const bmg::WinCheck<E>& check,
                         int budget) const {
    PlayOutcome out;
    bmg::VerdictResult res = bmg::evaluate(check, t, budget);
    out.verdict = res.verdict;
    out.witness = res.witness;
    out.check_id = check.id;
    out.chain_ok = t.chain_ok();

    json doc;
    doc["poset_id"] = def_.poset.id;
    doc["seed"] = t.seed();
    doc["length"] = t.size();
    json moves = json::array();
    for (const E& m : t.moves()) moves.push_back(def_.encode(m));
    doc["moves"] = moves;
    out.transcript_json = doc.dump(2) + "\n";
    return out;
  }

  PosetGameDef<E> def_;
};

// ---------------------------------------------------------------------------
// Registered posets

PosetGameDef<std::uint64_t> divisibility_def() {
  using E = std::uint64_t;
  PosetGameDef<E> def;
  def.poset = bmg::posets::divisibility();
  def.eves["random"] = [] { return bmg::posets::random_divisibility_eve(); };
  def.eves["doubling"] = [] { return bmg::posets::doubling_eve(); };
  def.eves["echo"] = [] { return bmg::echo_strategy<E>(1); };
  def.odds["generic"] = [] {
    static const bmg::Poset<E> p = bmg::posets::divisibility();
    return bmg::generic_odd_strategy<E>(&p, bmg::posets::prime_multiples_family(8));
  };
  def.odds["doubling"] = [] { return bmg::posets::doubling_eve(); };
  def.odds["echo"] = [] { return bmg::echo_strategy<E>(1); };
  def.checks["always"] = bmg::always_pass_check<E>();
  def.checks["meets_primes"] =
      bmg::meets_family_check<E>("meets_primes", bmg::posets::prime_multiples_family(8));
  def.checks["div64"] =
      bmg::some_move_check<E>("div64", [](const E& u) { return u % 64 == 0; });
  def.encode = [](const E& u) { return json(u); };
  def.decode = [](const json& j) { return j.get<E>(); };
  return def;
}

PosetGameDef<std::string> binary_strings_def() {
  using E = std::string;
  PosetGameDef<E> def;
  def.poset = bmg::posets::binary_strings();
  def.eves["random"] = [] { return bmg::posets::random_bits_eve(); };
  def.eves["echo"] = [] { return bmg::echo_strategy<E>(""); };
  def.odds["generic"] = [] {
    static const bmg::Poset<E> p = bmg::posets::binary_strings();
    return bmg::generic_odd_strategy<E>(&p, bmg::posets::min_length_family(10));
  };
  def.odds["append0"] = [] { return bmg::posets::append_bit_strategy('0'); };
  def.odds["append1"] = [] { return bmg::posets::append_bit_strategy('1'); };
  def.odds["echo"] = [] { return bmg::echo_strategy<E>(""); };
  def.checks["always"] = bmg::always_pass_check<E>();
  def.checks["meets_lengths"] =
      bmg::meets_family_check<E>("meets_lengths", bmg::posets::min_length_family(10));
  def.encode = [](const E& s) { return json(s); };
  def.decode = [](const json& j) { return j.get<E>(); };
  return def;
}

PosetGameDef<bmg::posets::Interval> intervals_def() {
  using E = bmg::posets::Interval;
  PosetGameDef<E> def;
  def.poset = bmg::posets::rational_intervals();
  def.eves["random"] = [] { return bmg::posets::random_interval_eve(); };
  def.eves["echo"] = [] {
    return bmg::echo_strategy<E>(E{bmg::Rational(0), bmg::Rational(1)});
  };
  def.odds["halving"] = [] { return bmg::posets::halving_strategy(); };
  def.odds["echo"] = [] {
    return bmg::echo_strategy<E>(E{bmg::Rational(0), bmg::Rational(1)});
  };
  def.checks["always"] = bmg::always_pass_check<E>();
  def.checks["small64"] = bmg::some_move_check<E>(
      "small64", [](const E& iv) { return iv.length() <= bmg::Rational(1, 64); });
  def.encode = [](const E& iv) {
    return json::array({iv.lo.num(), iv.lo.den(), iv.hi.num(), iv.hi.den()});
  };
  def.decode = [](const json& j) {
    return E{bmg::Rational(j.at(0).get<std::int64_t>(), j.at(1).get<std::int64_t>()),
             bmg::Rational(j.at(2).get<std::int64_t>(), j.at(3).get<std::int64_t>())};
  };
  return def;
}

/// Deterministic walkers shared by the chain-shaped demo posets.
template <typename E>
void add_chain_strategies(PosetGameDef<E>& def, std::function<E(const E&)> step_up,
                          E bottom) {
  def.eves["echo"] = [bottom] { return bmg::echo_strategy<E>(bottom); };
  def.eves["random"] = [bottom, step_up] {
    return bmg::make_strategy<E>("random", [bottom, step_up](const bmg::Transcript<E>& t,
                                                             bmg::Rng& rng) -> E {
      if (t.empty()) return bottom;
      return std::uniform_int_distribution<int>(0, 1)(rng) == 0 ? t.back() : step_up(t.back());
    });
  };
  def.odds["echo"] = [bottom] { return bmg::echo_strategy<E>(bottom); };
  def.odds["step"] = [step_up] {
    return bmg::make_plain_strategy<E>(
        "step", [step_up](const bmg::Transcript<E>& t) { return step_up(t.back()); }, true);
  };
  // Climbs at half speed: step on every second call, echo otherwise.
  def.odds["lazy"] = [step_up] {
    struct Lazy final : bmg::Strategy<E> {
      std::function<E(const E&)> up;
      int calls = 0;
      explicit Lazy(std::function<E(const E&)> f) : up(std::move(f)) {}
      E respond(const bmg::Transcript<E>& t, bmg::Rng&) override {
        return (calls++ % 2 == 0) ? up(t.back()) : t.back();
      }
      void reset() override { calls = 0; }
      std::string name() const override { return "lazy"; }
    };
    return std::make_shared<Lazy>(step_up);
  };
  def.checks["always"] = bmg::always_pass_check<E>();
}

PosetGameDef<int> chain12_def() {
  PosetGameDef<int> def;
  def.poset = bmg::posets::int_chain(12);
  add_chain_strategies<int>(
      def, [](const int& v) { return v < 11 ? v + 1 : v; }, 0);
  def.encode = [](const int& v) { return json(v); };
  def.decode = [](const json& j) { return j.get<int>(); };
  return def;
}

PosetGameDef<std::uint64_t> pow2_def() {
  PosetGameDef<std::uint64_t> def;
  def.poset = bmg::posets::pow2_chain(12);
  add_chain_strategies<std::uint64_t>(
      def, [](const std::uint64_t& v) { return v < (1u << 11) ? v * 2 : v; }, 1);
  def.encode = [](const std::uint64_t& v) { return json(v); };
  def.decode = [](const json& j) { return j.get<std::uint64_t>(); };
  return def;
}

PosetGameDef<bmg::posets::ChainElem> two_chains_def() {
  using E = bmg::posets::ChainElem;
  PosetGameDef<E> def;
  def.poset = bmg::posets::two_chains(12);
  add_chain_strategies<E>(
      def,
      [](const E& v) {
        E up = v;
        if (up.rank < 12) up.rank++;
        return up;
      },
      E{0, 1});
  def.encode = [](const E& v) { return json::array({v.chain, v.rank}); };
  def.decode = [](const json& j) { return E{j.at(0).get<int>(), j.at(1).get<int>()}; };
  return def;
}

// ---------------------------------------------------------------------------
// Class games (structures under extension)

/// Parses one Eve line. Grammar, per class:
///   "" | "pass"            stall
///   "v [ids...]"           graphs-likes: new vertex adjacent to listed ids
///   "v [pos]"              linear orders: insert at position pos (default end)
///   "v"                    pure sets
/// Returns nullopt on malformed input.
std::optional<bmg::FinStructure> parse_class_move(const bmg::FraisseClass& cls,
                                                  const bmg::FinStructure& current,
                                                  const std::string& line) {
  std::istringstream is(line);
  std::string head;
  if (!(is >> head) || head == "pass") return current;  // blank = stall
  if (head != "v") return std::nullopt;

  const bmg::Vertex fresh = current.max_vertex() + 1;
  if (cls.sig() == bmg::Signature::linear_orders()) {
    std::vector<bmg::Vertex> order =
        current.empty() ? std::vector<bmg::Vertex>{} : bmg::linear_order_of(current);
    long long pos = static_cast<long long>(order.size());
    if (is >> pos) {
      if (pos < 0 || pos > static_cast<long long>(order.size())) return std::nullopt;
    } else if (!is.eof()) {
      return std::nullopt;
    }
    order.insert(order.begin() + static_cast<std::ptrdiff_t>(pos), fresh);
    return bmg::make_linear_order(order);
  }

  bmg::FinStructure next = current;
  next.add_vertex(fresh);
  bmg::Vertex id;
  std::vector<bmg::Vertex> targets;
  while (is >> id) {
    if (!current.has_vertex(id)) return std::nullopt;
    targets.push_back(id);
  }
  if (!is.eof()) return std::nullopt;
  if (!targets.empty() && !(cls.sig() == bmg::Signature::graphs())) return std::nullopt;
  for (bmg::Vertex t : targets) next.add_edge(fresh, t);
  if (!cls.contains(next)) return std::nullopt;
  return next;
}

void print_structure(const bmg::FraisseClass& cls, const bmg::FinStructure& s,
                     std::ostream& os) {
  if (cls.sig() == bmg::Signature::linear_orders()) {
    os << "order:";
    if (!s.empty()) {
      for (bmg::Vertex v : bmg::linear_order_of(s)) os << " " << v;
    }
    os << "\n";
    return;
  }
  os << "vertices:";
  for (bmg::Vertex v : s.universe()) os << " " << v;
  os << "\n";
  if (cls.sig() == bmg::Signature::graphs()) {
    os << "edges:";
    for (const bmg::Tuple& t : s.table("edge")) {
      if (t[0] < t[1]) os << " " << t[0] << "-" << t[1];
    }
    os << "\n";
  }
}

/// Scripted Eve: replays one parse_class_move line per move.
class ScriptEve final : public bmg::Strategy<bmg::FinStructure> {
 public:
  ScriptEve(std::shared_ptr<const bmg::FraisseClass> cls, std::vector<std::string> lines)
      : cls_(std::move(cls)), lines_(std::move(lines)) {}

  bmg::FinStructure respond(const bmg::Transcript<bmg::FinStructure>& t, bmg::Rng&) override {
    const bmg::FinStructure current =
        t.empty() ? bmg::FinStructure(cls_->sig()) : t.back();
    if (cursor_ >= lines_.size()) return current;  // script exhausted: stall
    auto next = parse_class_move(*cls_, current, lines_[cursor_++]);
    if (!next) {
      throw UsageError{"malformed script line " + std::to_string(cursor_) + ": '" +
                       lines_[cursor_ - 1] + "'"};
    }
    return *next;
  }

  void reset() override { cursor_ = 0; }
  std::string name() const override { return "script"; }

 private:
  std::shared_ptr<const bmg::FraisseClass> cls_;
  std::vector<std::string> lines_;
  std::size_t cursor_ = 0;
};

class ClassEntry final : public GameEntry {
 public:
  explicit ClassEntry(std::shared_ptr<const bmg::FraisseClass> cls)
      : cls_(std::move(cls)), poset_(bmg::structure_poset(cls_)) {}

  std::string id() const override { return cls_->name(); }
  std::vector<std::string> eve_ids() const override {
    return {"random", "echo", "script:<file>"};
  }
  std::vector<std::string> odd_ids() const override { return {"markov", "echo"}; }
  std::vector<std::string> check_ids() const override {
    return {"always", "membership", "extension:<bound>"};
  }

  PlayOutcome play(const PlayRequest& req) const override {
    auto eve = eve_by_id(req.eve);
    auto odd = odd_by_id(req.odd);
    bmg::WinCheck<bmg::FinStructure> check = check_by_id(req.check);
    if (req.rounds < 1) throw UsageError{"--rounds must be at least 1"};
    bmg::Transcript<bmg::FinStructure> t =
        bmg::run_play(poset_, *eve, *odd, req.rounds, req.seed);
    return outcome_of(t, check, req.budget);
  }

  PlayOutcome verify(const std::string& transcript_json, const std::string& check_id,
                     int budget) const override {
    json doc = json::parse(transcript_json);
    bmg::Transcript<bmg::FinStructure> t(&poset_, doc.value("seed", std::uint64_t(0)));
    PlayOutcome out;
    for (const json& move : doc.at("moves")) {
      try {
        t.push(bmg::structure_from_json(cls_->sig(), move.dump()));
      } catch (const bmg::GameError&) {
        out.chain_ok = false;
        out.verdict = bmg::Verdict::Fail;
        out.witness = "transcript breaks the chain condition";
        out.check_id = check_id;
        out.transcript_json = transcript_json;
        return out;
      }
    }
    return outcome_of(t, check_by_id(check_id), budget);
  }

  std::string export_dot(const std::string& transcript_json) const override {
    json doc = json::parse(transcript_json);
    const json& moves = doc.at("moves");
    if (moves.empty()) throw UsageError{"transcript has no moves"};
    const bmg::FinStructure last =
        bmg::structure_from_json(cls_->sig(), moves.back().dump());
    if (cls_->sig() == bmg::Signature::graphs()) return bmg::graph_to_dot(last);
    throw UsageError{"DOT export is only available for graph classes"};
  }

  bool supports_interactive() const override { return true; }

  PlayOutcome interactive(std::istream& in, std::ostream& os,
                          const PlayRequest& req) const override {
    auto odd = odd_by_id(req.odd);
    bmg::WinCheck<bmg::FinStructure> check = check_by_id(req.check);
    if (req.rounds < 1) throw UsageError{"--rounds must be at least 1"};

    odd->reset();
    bmg::Rng rng(req.seed);
    bmg::Transcript<bmg::FinStructure> t(&poset_, req.seed);
    os << "interactive play on " << cls_->name() << "; you are Eve.\n";
    os << "moves: blank or 'pass' to stall, 'v [args]' to add a vertex.\n";
    for (int i = 0; i < req.rounds; ++i) {
      if (i % 2 == 0) {
        const bmg::FinStructure current =
            t.empty() ? bmg::FinStructure(cls_->sig()) : t.back();
        while (true) {
          os << "eve[" << i << "]> " << std::flush;
          std::string line;
          if (!std::getline(in, line)) throw InteractiveEof{};
          auto next = parse_class_move(*cls_, current, line);
          if (!next) {
            os << "malformed move, try again\n";
            continue;
          }
          t.push(*next);
          break;
        }
      } else {
        t.push(odd->respond(t, rng));
        os << "odd[" << i << "] plays:\n";
        print_structure(*cls_, t.back(), os);
      }
    }
    PlayOutcome out = outcome_of(t, check, req.budget);
    os << "verdict: " << bmg::verdict_name(out.verdict) << "\n";
    return out;
  }

 private:
  bmg::StrategyPtr<bmg::FinStructure> eve_by_id(const std::string& sid) const {
    const std::string script_prefix = "script:";
    if (sid.rfind(script_prefix, 0) == 0) {
      const std::string path = sid.substr(script_prefix.size());
      std::ifstream file(path);
      if (!file) throw UsageError{"cannot read eve script '" + path + "'"};
      std::vector<std::string> lines;
      std::string line;
      while (std::getline(file, line)) lines.push_back(line);
      return std::make_shared<ScriptEve>(cls_, std::move(lines));
    }
    auto s = bmg::class_eve_strategy(cls_, sid);
    if (!s) throw UsageError{"unknown eve strategy '" + sid + "' for " + cls_->name()};
    return s;
  }

  bmg::StrategyPtr<bmg::FinStructure> odd_by_id(const std::string& sid) const {
    auto s = bmg::class_odd_strategy(cls_, sid);
    if (!s) throw UsageError{"unknown odd strategy '" + sid + "' for " + cls_->name()};
    return s;
  }

  bmg::WinCheck<bmg::FinStructure> check_by_id(const std::string& cid) const {
    if (cid == "always") return bmg::always_pass_check<bmg::FinStructure>();
    if (cid == "membership") return bmg::class_membership_check(cls_);
    const std::string ext_prefix = "extension:";
    if (cid.rfind(ext_prefix, 0) == 0) {
      try {
        return bmg::extension_check(cls_, std::stoi(cid.substr(ext_prefix.size())));
      } catch (const std::exception&) {
        throw UsageError{"bad extension bound in '" + cid + "'"};
      }
    }
    throw UsageError{"unknown check '" + cid + "' for " + cls_->name()};
  }

  PlayOutcome outcome_of(const bmg::Transcript<bmg::FinStructure>& t,
                         const bmg::WinCheck<bmg::FinStructure>& check, int budget) const {
    PlayOutcome out;
    bmg::VerdictResult res = bmg::evaluate(check, t, budget);
    out.verdict = res.verdict;
    out.witness = res.witness;
    out.check_id = check.id;
    out.chain_ok = t.chain_ok();

    json doc;
    doc["poset_id"] = poset_.id;
    doc["seed"] = t.seed();
    doc["length"] = t.size();
    json moves = json::array();
    for (const bmg::FinStructure& m : t.moves()) {
      moves.push_back(json::parse(bmg::structure_to_json(m)));
    }
    doc["moves"] = moves;
    out.transcript_json = doc.dump(2) + "\n";
    return out;
  }

  std::shared_ptr<const bmg::FraisseClass> cls_;
  bmg::Poset<bmg::FinStructure> poset_;
};

// ---------------------------------------------------------------------------

const std::map<std::string, std::unique_ptr<GameEntry>>& poset_games() {
  static const auto games = [] {
    std::map<std::string, std::unique_ptr<GameEntry>> out;
    out["divisibility"] = std::make_unique<PosetEntry<std::uint64_t>>(divisibility_def());
    out["binary_strings"] = std::make_unique<PosetEntry<std::string>>(binary_strings_def());
    out["intervals"] = std::make_unique<PosetEntry<bmg::posets::Interval>>(intervals_def());
    out["chain12"] = std::make_unique<PosetEntry<int>>(chain12_def());
    out["pow2_chain12"] = std::make_unique<PosetEntry<std::uint64_t>>(pow2_def());
    out["two_chains12"] =
        std::make_unique<PosetEntry<bmg::posets::ChainElem>>(two_chains_def());
    return out;
  }();
  return games;
}

}  // namespace

const GameEntry* find_poset_game(const std::string& id) {
  const auto& games = poset_games();
  auto it = games.find(id);
  return it == games.end() ? nullptr : it->second.get();
}

const GameEntry* find_class_game(const std::string& id) {
  static std::map<std::string, std::unique_ptr<GameEntry>> games;
  auto it = games.find(id);
  if (it != games.end()) return it->second.get();
  auto cls = bmg::find_class(id);
  if (!cls) return nullptr;
  auto [pos, inserted] = games.emplace(id, std::make_unique<ClassEntry>(std::move(cls)));
  return pos->second.get();
}

std::vector<std::string> poset_game_ids() {
  std::vector<std::string> out;
  for (const auto& [k, v] : poset_games()) out.push_back(k);
  return out;
}

std::vector<std::string> class_game_ids() { return bmg::class_names(); }

}  // namespace bmgcli
