#include "bmgcli/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "bmg/errors.hpp"
#include "registry.hpp"

namespace bmgcli {

namespace {

using nlohmann::json;

struct CommonOpts {
  std::string poset;
  std::string cls;
  std::string eve;
  std::string odd;
  std::string check;
  std::string out_path;
  std::string format;
  std::string config_path;
  std::string input_path;
  int rounds = -1;
  int budget = -1;
  std::int64_t seed = -1;
};

/// Flat JSON config; explicit flags override file values, which override
/// the built-in defaults.
void apply_config(CommonOpts& opts, std::ostream& err) {
  if (opts.config_path.empty()) return;
  std::ifstream file(opts.config_path);
  if (!file) throw UsageError{"cannot read config file '" + opts.config_path + "'"};
  json doc;
  try {
    file >> doc;
  } catch (const json::exception& e) {
    throw UsageError{"bad config file: " + std::string(e.what())};
  }
  auto take_str = [&](const char* key, std::string& slot) {
    if (slot.empty() && doc.contains(key)) slot = doc.at(key).get<std::string>();
  };
  auto take_int = [&](const char* key, auto& slot) {
    if (slot < 0 && doc.contains(key)) slot = doc.at(key).get<std::decay_t<decltype(slot)>>();
  };
  take_str("poset", opts.poset);
  take_str("class", opts.cls);
  take_str("eve", opts.eve);
  take_str("odd", opts.odd);
  take_str("check", opts.check);
  take_str("out", opts.out_path);
  take_str("format", opts.format);
  take_str("input", opts.input_path);
  take_int("rounds", opts.rounds);
  take_int("budget", opts.budget);
  take_int("seed", opts.seed);
  for (const auto& [key, value] : doc.items()) {
    static const std::set<std::string> known{"poset",  "class", "eve",  "odd",   "check",
                                             "out",    "format", "rounds", "budget", "seed",
                                             "input"};
    if (!known.count(key)) err << "warning: ignoring unknown config key '" << key << "'\n";
  }
}

const GameEntry* resolve_game(const CommonOpts& opts) {
  if (!opts.poset.empty() && !opts.cls.empty()) {
    throw UsageError{"--poset and --class are mutually exclusive"};
  }
  if (!opts.poset.empty()) {
    const GameEntry* game = find_poset_game(opts.poset);
    if (!game) throw UsageError{"unknown poset '" + opts.poset + "'"};
    return game;
  }
  if (!opts.cls.empty()) {
    const GameEntry* game = find_class_game(opts.cls);
    if (!game) throw UsageError{"unknown class '" + opts.cls + "'"};
    return game;
  }
  throw UsageError{"one of --poset or --class is required"};
}

PlayRequest request_of(const CommonOpts& opts) {
  PlayRequest req;
  if (!opts.eve.empty()) req.eve = opts.eve;
  req.odd = opts.odd.empty() ? std::string("markov") : opts.odd;
  if (!opts.check.empty()) req.check = opts.check;
  if (opts.rounds >= 0) req.rounds = opts.rounds;
  if (opts.budget >= 0) req.budget = opts.budget;
  if (opts.seed >= 0) req.seed = static_cast<std::uint64_t>(opts.seed);
  return req;
}

void write_or_print(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::ios_base::failure("cannot open '" + path + "' for writing");
  file << text;
  if (!file) throw std::ios_base::failure("write to '" + path + "' failed");
}

int exit_code_of(bmg::Verdict v) {
  switch (v) {
    case bmg::Verdict::Pass: return kExitPass;
    case bmg::Verdict::Fail: return kExitFail;
    case bmg::Verdict::Undecided: return kExitUndecided;
  }
  return kExitSoftware;
}

int report_outcome(const PlayOutcome& outcome, const CommonOpts& opts, std::ostream& out) {
  if (!opts.out_path.empty()) write_or_print(outcome.transcript_json, opts.out_path, out);
  out << "check " << outcome.check_id << ": " << bmg::verdict_name(outcome.verdict);
  if (!outcome.witness.empty()) out << " (" << outcome.witness << ")";
  out << "\n";
  if (!outcome.chain_ok) {
    out << "chain: broken\n";
    return kExitFail;
  }
  return exit_code_of(outcome.verdict);
}

std::string slurp(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw std::ios_base::failure("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << file.rdbuf();
  return buf.str();
}

int cmd_play(const CommonOpts& opts, std::ostream& out) {
  const GameEntry* game = resolve_game(opts);
  return report_outcome(game->play(request_of(opts)), opts, out);
}

int cmd_interactive(const CommonOpts& opts, std::istream& in, std::ostream& out) {
  const GameEntry* game = resolve_game(opts);
  if (!game->supports_interactive()) {
    throw UsageError{"interactive mode needs --class"};
  }
  return report_outcome(game->interactive(in, out, request_of(opts)), opts, out);
}

int cmd_tree(const CommonOpts& opts, std::ostream& out) {
  const GameEntry* game = resolve_game(opts);
  if (!game->supports_tree()) {
    throw UsageError{"game '" + game->id() + "' has no enumeration; tree needs --poset"};
  }
  TreeRequest req;
  req.odd = opts.odd.empty() ? std::string("echo") : opts.odd;
  if (opts.rounds >= 0) req.depth = opts.rounds;  // tree reuses --rounds as depth
  if (opts.budget >= 0) req.budget = opts.budget;
  TreeOutcome res = game->tree(req);
  write_or_print(res.dot, opts.out_path, out);
  out << "levels:";
  for (std::size_t n : res.level_sizes) out << " " << n;
  out << "\n";
  out << "antichain violations: " << res.antichain_violations << "\n";
  out << "budget-maximality gaps: " << res.maximality_gaps << "\n";
  return res.antichain_violations == 0 && res.maximality_gaps == 0 ? kExitPass : kExitFail;
}

int cmd_verify(const CommonOpts& opts, std::ostream& out) {
  if (opts.input_path.empty()) throw UsageError{"verify needs a transcript file"};
  const GameEntry* game = resolve_game(opts);
  const std::string text = slurp(opts.input_path);
  PlayRequest req = request_of(opts);
  PlayOutcome outcome = game->verify(text, req.check, req.budget);
  out << "chain: " << (outcome.chain_ok ? "ok" : "broken") << "\n";
  out << "check " << outcome.check_id << ": " << bmg::verdict_name(outcome.verdict);
  if (!outcome.witness.empty()) out << " (" << outcome.witness << ")";
  out << "\n";
  if (!outcome.chain_ok) return kExitFail;
  return exit_code_of(outcome.verdict);
}

int cmd_export(const CommonOpts& opts, std::ostream& out) {
  if (opts.input_path.empty()) throw UsageError{"export needs a transcript file"};
  if (!opts.format.empty() && opts.format != "dot") {
    throw UsageError{"export supports --format dot"};
  }
  const GameEntry* game = resolve_game(opts);
  write_or_print(game->export_dot(slurp(opts.input_path)), opts.out_path, out);
  return kExitPass;
}

void add_common_flags(CLI::App* cmd, CommonOpts& opts, bool with_input) {
  cmd->add_option("--poset", opts.poset, "registered poset id");
  cmd->add_option("--class", opts.cls, "registered structure class id");
  cmd->add_option("--eve", opts.eve, "Eve strategy id");
  cmd->add_option("--odd", opts.odd, "Odd strategy id");
  cmd->add_option("--rounds", opts.rounds, "number of moves (tree: depth)");
  cmd->add_option("--seed", opts.seed, "random seed");
  cmd->add_option("--check", opts.check, "winning-condition check id");
  cmd->add_option("--budget", opts.budget, "work budget for checks and enumeration");
  cmd->add_option("--out", opts.out_path, "output file");
  cmd->add_option("--format", opts.format, "output format (json|dot)");
  cmd->add_option("--config", opts.config_path, "flat JSON config; flags override");
  if (with_input) {
    cmd->add_option("input", opts.input_path, "transcript JSON file");
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Banach-Mazur games on posets and classes of finite structures"};
  app.require_subcommand(1);

  CommonOpts opts;
  CLI::App* play = app.add_subcommand("play", "run a scripted play and score it");
  add_common_flags(play, opts, false);
  CLI::App* interactive =
      app.add_subcommand("interactive", "play Eve yourself against a strategy");
  add_common_flags(interactive, opts, false);
  CLI::App* tree =
      app.add_subcommand("tree", "extract the antichain tree of an Odd strategy");
  add_common_flags(tree, opts, false);
  CLI::App* verify = app.add_subcommand("verify", "re-check a transcript file");
  add_common_flags(verify, opts, true);
  CLI::App* exp = app.add_subcommand("export", "convert a transcript to DOT");
  add_common_flags(exp, opts, true);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    apply_config(opts, err);
    if (play->parsed()) return cmd_play(opts, out);
    if (interactive->parsed()) return cmd_interactive(opts, in, out);
    if (tree->parsed()) return cmd_tree(opts, out);
    if (verify->parsed()) return cmd_verify(opts, out);
    if (exp->parsed()) return cmd_export(opts, out);
    err << "error: no command\n";
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.message << "\n";
    return kExitUsage;
  } catch (const InteractiveEof&) {
    err << "error: end of input\n";
    return kExitEof;
  } catch (const std::ios_base::failure& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const nlohmann::json::exception& e) {
    err << "error: bad input file: " << e.what() << "\n";
    return kExitNoInput;
  } catch (const bmg::GameError& e) {
    err << "error: " << e.what() << "\n";
    return e.fault() == bmg::Fault::EmptyLevel ? kExitEmptyLevel : kExitSoftware;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitSoftware;
  }
}

}  // namespace bmgcli
