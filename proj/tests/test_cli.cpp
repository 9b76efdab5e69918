#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "bmgcli/cli.hpp"

using bmgcli::run_cli;

namespace {

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult cli(const std::vector<std::string>& args, const std::string& stdin_text = "") {
  std::istringstream in(stdin_text);
  std::ostringstream out, err;
  const int code = run_cli(args, in, out, err);
  return {code, out.str(), err.str()};
}

/// Temp file helper; removes the file on scope exit.
struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name, const std::string& content = "") {
    path = std::string("bmg_test_") + name;
    if (!content.empty()) {
      std::ofstream f(path);
      f << content;
    }
  }
  ~TempFile() { std::remove(path.c_str()); }

  std::string read() const {
    std::ifstream f(path, std::ios::binary);
    std::ostringstream buf;
    buf << f.rdbuf();
    return buf.str();
  }
};

}  // namespace

TEST_CASE("pure-set markov play passes") {
  CliResult r = cli({"play", "--class", "pure_sets", "--odd", "markov", "--eve", "random",
                     "--rounds", "6", "--seed", "1"});
  CHECK(r.code == bmgcli::kExitPass);
  CHECK(r.out.find("PASS") != std::string::npos);
}

TEST_CASE("graph markov play passes the extension check") {
  CliResult r = cli({"play", "--class", "graphs", "--odd", "markov", "--eve", "random",
                     "--rounds", "16", "--check", "extension:2", "--seed", "7",
                     "--budget", "8"});
  CHECK(r.code == bmgcli::kExitPass);
}

TEST_CASE("zero rounds is a usage error") {
  CliResult r = cli({"play", "--class", "pure_sets", "--odd", "markov", "--rounds", "0"});
  CHECK(r.code == bmgcli::kExitUsage);
}

TEST_CASE("unknown ids are usage errors") {
  CHECK(cli({"play", "--class", "nonsense", "--odd", "markov"}).code == bmgcli::kExitUsage);
  CHECK(cli({"play", "--poset", "nonsense"}).code == bmgcli::kExitUsage);
  CHECK(cli({"play", "--class", "graphs", "--odd", "nonsense"}).code == bmgcli::kExitUsage);
  CHECK(cli({"play", "--class", "graphs", "--odd", "markov", "--check", "nonsense"}).code ==
        bmgcli::kExitUsage);
  CHECK(cli({"play", "--odd", "markov"}).code == bmgcli::kExitUsage);
  CHECK(cli({"frobnicate"}).code == bmgcli::kExitUsage);
}

TEST_CASE("undecided verdicts exit with 2") {
  // Echo Odd never meets the length family.
  CliResult r = cli({"play", "--poset", "binary_strings", "--eve", "echo", "--odd", "echo",
                     "--check", "meets_lengths", "--rounds", "4"});
  CHECK(r.code == bmgcli::kExitUndecided);
}

TEST_CASE("poset play writes a deterministic transcript") {
  TempFile f1("t1.json"), f2("t2.json");
  std::vector<std::string> base{"play",     "--poset", "binary_strings", "--eve",
                                "random",   "--odd",   "generic",        "--rounds",
                                "10",       "--seed",  "42",             "--check",
                                "meets_lengths"};
  auto with_out = [&](const std::string& path) {
    std::vector<std::string> args = base;
    args.push_back("--out");
    args.push_back(path);
    return args;
  };
  CliResult r1 = cli(with_out(f1.path));
  CliResult r2 = cli(with_out(f2.path));
  CHECK(r1.code == r2.code);
  const std::string t1 = f1.read();
  REQUIRE(!t1.empty());
  CHECK(t1 == f2.read());
  CHECK(t1.find("\"poset_id\"") != std::string::npos);
  CHECK(t1.find("\"seed\"") != std::string::npos);
  CHECK(t1.find("\"moves\"") != std::string::npos);
  CHECK(t1.find("\"length\"") != std::string::npos);
}

TEST_CASE("verify re-checks a written transcript") {
  TempFile f("verify.json");
  CliResult play = cli({"play", "--poset", "divisibility", "--eve", "doubling", "--odd",
                        "generic", "--rounds", "8", "--seed", "3", "--check", "meets_primes",
                        "--out", f.path});
  REQUIRE(play.code == bmgcli::kExitUndecided);  // 8 rounds only meet 4 of 8 sets

  CliResult verify = cli({"verify", f.path, "--poset", "divisibility", "--check", "div64"});
  CHECK(verify.code == bmgcli::kExitUndecided);
  CHECK(verify.out.find("chain: ok") != std::string::npos);

  SUBCASE("tampered transcripts are flagged") {
    std::string text = f.read();
    const auto pos = text.find("2,");
    REQUIRE(pos != std::string::npos);
    text.replace(pos, 2, "3,");
    TempFile bad("tampered.json", text);
    CliResult broken = cli({"verify", bad.path, "--poset", "divisibility", "--check", "always"});
    CHECK(broken.code == bmgcli::kExitFail);
    CHECK(broken.out.find("chain: broken") != std::string::npos);
  }
}

TEST_CASE("missing input files exit with the IO code") {
  CliResult r = cli({"verify", "no_such_file.json", "--poset", "divisibility"});
  CHECK(r.code == bmgcli::kExitIo);
}

TEST_CASE("tree command emits DOT and a level report") {
  TempFile f("tree.dot");
  CliResult r = cli({"tree", "--poset", "two_chains12", "--odd", "step", "--rounds", "4",
                     "--budget", "8", "--out", f.path});
  CHECK(r.code == bmgcli::kExitPass);
  CHECK(r.out.find("levels:") != std::string::npos);
  CHECK(r.out.find("antichain violations: 0") != std::string::npos);
  CHECK(f.read().find("digraph") != std::string::npos);

  SUBCASE("depth zero still writes an empty graph") {
    CliResult r0 = cli({"tree", "--poset", "two_chains12", "--odd", "step", "--rounds", "0"});
    CHECK(r0.code == bmgcli::kExitPass);
    CHECK(r0.out.find("digraph") != std::string::npos);
  }

  SUBCASE("budget exhaustion exits with 4") {
    CliResult rx = cli({"tree", "--poset", "binary_strings", "--odd", "append1", "--rounds",
                        "3", "--budget", "2"});
    CHECK(rx.code == bmgcli::kExitEmptyLevel);
  }

  SUBCASE("tree needs an enumerable poset") {
    CliResult rc = cli({"tree", "--class", "graphs", "--odd", "markov"});
    CHECK(rc.code == bmgcli::kExitUsage);
  }
}

TEST_CASE("export converts a graph transcript to DOT") {
  TempFile t("export.json"), d("export.dot");
  CliResult play = cli({"play", "--class", "graphs", "--odd", "markov", "--eve", "random",
                        "--rounds", "6", "--seed", "5", "--out", t.path});
  REQUIRE(play.code == bmgcli::kExitPass);
  CliResult exp = cli({"export", t.path, "--class", "graphs", "--format", "dot", "--out",
                       d.path});
  CHECK(exp.code == bmgcli::kExitPass);
  CHECK(d.read().find("graph g {") != std::string::npos);
}

TEST_CASE("interactive play") {
  SUBCASE("stalling is legal and Odd still moves") {
    CliResult r = cli({"interactive", "--class", "pure_sets", "--odd", "markov", "--rounds",
                       "4"},
                      "\n\n");
    CHECK(r.code == bmgcli::kExitPass);
    CHECK(r.out.find("odd[1]") != std::string::npos);
  }

  SUBCASE("malformed input re-prompts without consuming the round") {
    CliResult r = cli({"interactive", "--class", "graphs", "--odd", "markov", "--rounds", "2"},
                      "v 99\nv\n");
    CHECK(r.code == bmgcli::kExitPass);
    CHECK(r.out.find("malformed") != std::string::npos);
  }

  SUBCASE("end of input aborts with 3") {
    CliResult r = cli({"interactive", "--class", "graphs", "--odd", "markov", "--rounds", "4"},
                      "v\n");
    CHECK(r.code == bmgcli::kExitEof);
  }

  SUBCASE("interactive needs a class game") {
    CliResult r = cli({"interactive", "--poset", "divisibility"}, "");
    CHECK(r.code == bmgcli::kExitUsage);
  }
}

TEST_CASE("scripted stdin matches the script eve strategy") {
  const std::string script = "v\nv 0\nv 0 1\nv\n";
  TempFile sf("script.txt", script);
  TempFile t_play("script_play.json"), t_inter("script_inter.json");

  CliResult play = cli({"play", "--class", "graphs", "--eve", "script:" + sf.path, "--odd",
                        "markov", "--rounds", "8", "--seed", "11", "--out", t_play.path});
  REQUIRE(play.code == bmgcli::kExitPass);

  CliResult inter = cli({"interactive", "--class", "graphs", "--odd", "markov", "--rounds",
                         "8", "--seed", "11", "--out", t_inter.path},
                        script);
  REQUIRE(inter.code == bmgcli::kExitPass);

  CHECK(t_play.read() == t_inter.read());
}

TEST_CASE("config file supplies defaults and flags override") {
  TempFile cfg("config.json", R"({
    "class": "pure_sets",
    "odd": "markov",
    "eve": "random",
    "rounds": 6,
    "seed": 1
  })");
  CliResult from_config = cli({"play", "--config", cfg.path});
  CHECK(from_config.code == bmgcli::kExitPass);

  // The flag wins over the config value.
  CliResult overridden = cli({"play", "--config", cfg.path, "--rounds", "0"});
  CHECK(overridden.code == bmgcli::kExitUsage);

  CliResult missing = cli({"play", "--config", "no_such_config.json"});
  CHECK(missing.code == bmgcli::kExitUsage);
}
