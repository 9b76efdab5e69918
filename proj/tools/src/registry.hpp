#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "bmg/game.hpp"

namespace bmgcli {

/// Errors that should surface as usage problems (unknown ids, bad values).
struct UsageError {
  std::string message;
};

/// Raised when interactive play hits end of input.
struct InteractiveEof {};

struct PlayRequest {
  std::string eve = "random";
  std::string odd;
  std::string check = "always";
  int rounds = 8;
  int budget = 8;
  std::uint64_t seed = 0;
};

struct PlayOutcome {
  bmg::Verdict verdict = bmg::Verdict::Undecided;
  std::string witness;
  std::string check_id;
  std::string transcript_json;
  bool chain_ok = true;
};

struct TreeRequest {
  std::string odd;
  int depth = 3;
  int budget = 8;
};

struct TreeOutcome {
  std::string dot;
  std::vector<std::size_t> level_sizes;
  std::size_t antichain_violations = 0;
  std::size_t maximality_gaps = 0;
};

/// One playable game (a registered poset or a structure class), type-erased
/// for the command layer.
class GameEntry {
 public:
  virtual ~GameEntry() = default;

  virtual std::string id() const = 0;
  virtual std::vector<std::string> eve_ids() const = 0;
  virtual std::vector<std::string> odd_ids() const = 0;
  virtual std::vector<std::string> check_ids() const = 0;

  virtual PlayOutcome play(const PlayRequest& req) const = 0;
  virtual PlayOutcome verify(const std::string& transcript_json, const std::string& check,
                             int budget) const = 0;
  virtual std::string export_dot(const std::string& transcript_json) const = 0;

  virtual bool supports_tree() const { return false; }
  virtual TreeOutcome tree(const TreeRequest&) const {
    throw UsageError{"game '" + id() + "' does not support antichain trees"};
  }

  virtual bool supports_interactive() const { return false; }
  virtual PlayOutcome interactive(std::istream&, std::ostream&, const PlayRequest&) const {
    throw UsageError{"game '" + id() + "' does not support interactive play"};
  }
};

/// Looks up a registered poset (`--poset`) or class game (`--class`).
/// Returns nullptr when the id is unknown.
const GameEntry* find_poset_game(const std::string& id);
const GameEntry* find_class_game(const std::string& id);

std::vector<std::string> poset_game_ids();
std::vector<std::string> class_game_ids();

}  // namespace bmgcli
