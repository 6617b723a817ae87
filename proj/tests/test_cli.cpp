#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "doctest.h"
#include "json.hpp"
#include "support/fixtures.hpp"
#include "shareq/cli.hpp"
#include "shareq/graph_json.hpp"

using namespace shareq;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() / ("shareq-cli-" + std::to_string(::getpid()));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string write(const std::string& name, const std::string& text) const {
    const fs::path p = path_ / name;
    std::ofstream(p) << text;
    return p.string();
  }

 private:
  fs::path path_;
};

const char* kFourLambdasJson = R"({
  "nodes": [
    {"id": 0, "kind": "app", "left": 2, "right": 3},
    {"id": 1, "kind": "app", "left": 4, "right": 4},
    {"id": 2, "kind": "app", "left": 5, "right": 5},
    {"id": 3, "kind": "app", "left": 6, "right": 6},
    {"id": 4, "kind": "app", "left": 7, "right": 8},
    {"id": 5, "kind": "abs", "body": 9},
    {"id": 6, "kind": "abs", "body": 10},
    {"id": 7, "kind": "abs", "body": 11},
    {"id": 8, "kind": "abs", "body": 12},
    {"id": 9, "kind": "bvar", "binder": 5},
    {"id": 10, "kind": "bvar", "binder": 6},
    {"id": 11, "kind": "bvar", "binder": 7},
    {"id": 12, "kind": "bvar", "binder": 8}
  ],
  "roots": [{"id": 0, "name": "left"}, {"id": 1, "name": "right"}]
})";

}  // namespace

TEST_CASE("check on surface files") {
  TempDir dir;
  const auto a = dir.write("a.lam", fixtures::kFirstTree);
  const auto b = dir.write("b.lam", fixtures::kFirstShared);
  const auto id = dir.write("id.lam", "\\x. x");
  const auto k = dir.write("k.lam", "\\x. \\y. x");
  const auto x = dir.write("x.lam", "x");
  const auto xy = dir.write("xy.lam", "x y");
  const auto y = dir.write("y.lam", "y");

  Run r = cli({"check", a, b});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("EQUAL", 0) == 0);
  CHECK(cli({"check", a, a}).code == 0);

  r = cli({"check", id, k});
  CHECK(r.code == 1);
  CHECK(r.out.rfind("NOT EQUAL: NotHomogeneous at node ", 0) == 0);

  // Bare free variables.
  CHECK(cli({"check", x, x}).code == 0);
  r = cli({"check", x, y});
  CHECK(r.code == 1);
  CHECK(r.out.find("FreeVarsDistinct") != std::string::npos);
  r = cli({"check", x, xy});
  CHECK(r.code == 1);
  CHECK(r.out.find("NotHomogeneous") != std::string::npos);
  CHECK(cli({"check", xy, x}).code == 1);

  for (const auto& backend : {"queue", "recursive"}) {
    CHECK(cli({"check", a, b, "--backend", backend}).code == 0);
    CHECK(cli({"check", id, k, "--backend", backend}).code == 1);
  }
  CHECK(cli({"check", a, b, "--skip-validation"}).code == 0);
}

TEST_CASE("check statistics are JSON") {
  TempDir dir;
  const auto a = dir.write("a.lam", fixtures::kFirstTree);
  const auto b = dir.write("b.lam", fixtures::kFirstShared);
  Run r = cli({"check", a, b, "--stats"});
  REQUIRE(r.code == 0);
  const auto nl = r.out.find('\n');
  auto stats = nlohmann::json::parse(r.out.substr(nl + 1));
  CHECK(stats["query"] == 1);
  CHECK(stats["verdict"] == "EQUAL");
  CHECK(stats["nodes"].get<int>() > 0);
  CHECK(stats["edges"].get<int>() > 0);
  CHECK(stats["transitions"].get<int>() > 0);
  // Identical input, identical output.
  CHECK(cli({"check", a, b, "--stats"}).out == r.out);
}

TEST_CASE("check on graph and query files") {
  TempDir dir;
  const auto g = dir.write("four.json", kFourLambdasJson);
  const auto q_ids = dir.write("ids.query", "[[0, 1]]");
  const auto q_names = dir.write("names.query", "[[\"left\", \"right\"]]");
  const auto q_bad = dir.write("bad.query", "[[0, 5]]");
  const auto q_unknown = dir.write("unknown.query", "[[\"nope\", 0]]");
  const auto q_garbage = dir.write("garbage.query", "[[0, 1]");
  CHECK(cli({"check", g, q_ids}).code == 0);
  CHECK(cli({"check", g, q_names}).code == 0);
  Run r = cli({"check", g, q_bad});
  CHECK(r.code == 2);
  CHECK(r.err.find("NonRootQuery") != std::string::npos);
  CHECK(cli({"check", g, q_unknown}).code == 2);
  CHECK(cli({"check", g, q_garbage}).code == 2);
}

TEST_CASE("validate") {
  TempDir dir;
  const auto bad = dir.write("escape.json", fixtures::kEscapingVarJson);
  Run r = cli({"validate", bad});
  CHECK(r.code == 2);
  CHECK(r.out.find("DominationViolation") != std::string::npos);

  const auto good = dir.write("four.json", kFourLambdasJson);
  r = cli({"validate", good});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("OK", 0) == 0);

  const auto lam = dir.write("t.lam", fixtures::kFirstShared);
  CHECK(cli({"validate", lam}).code == 0);
  const auto syntax = dir.write("s.lam", "(\\x. x");
  CHECK(cli({"validate", syntax}).code == 2);

  const auto cyclic = dir.write("cyc.json", R"({"nodes": [{"id": 0, "kind": "abs", "body": 0}]})");
  r = cli({"validate", cyclic});
  CHECK(r.code == 2);
  CHECK(r.out.find("CyclicGraph") != std::string::npos);

  const auto mismatch =
      dir.write("roots.json", R"({"nodes": [{"id": 0, "kind": "fvar", "name": "x"}], "roots": []})");
  r = cli({"validate", mismatch});
  CHECK(r.code == 2);
  CHECK(r.out.find("RootMismatch") != std::string::npos);

  const auto unknown_field =
      dir.write("extra.json", R"({"nodes": [{"id": 0, "kind": "fvar", "name": "x", "colour": 1}]})");
  r = cli({"validate", unknown_field});
  CHECK(r.code == 2);
  CHECK(r.err.find("FormatError") != std::string::npos);

  CHECK(cli({"validate", dir.write("missing-dir/none.json", "")}).code == 2);
}

TEST_CASE("unfold") {
  TempDir dir;
  const auto single = dir.write("single.json", R"({"nodes": [{"id": 0, "kind": "fvar", "name": "x"}]})");
  Run r = cli({"unfold", single});
  CHECK(r.code == 0);
  CHECK(r.out == "x\n");

  const auto k = dir.write("k.lam", "\\x. \\y. x");
  CHECK(cli({"unfold", k}).out == "\\. \\. 1\n");
  CHECK(cli({"unfold", k, "--named"}).out == "\\x0. \\x1. x0\n");

  const auto big = dir.write("big.lam", "let a = x x in let b = a a in let c = b b in c c");
  CHECK(cli({"unfold", big, "--limit", "31"}).code == 0);
  r = cli({"unfold", big, "--limit", "30"});
  CHECK(r.code == 3);
  CHECK(r.out.find("LimitExceeded") != std::string::npos);

  const auto four = dir.write("four.json", kFourLambdasJson);
  r = cli({"unfold", four});
  CHECK(r.out == "0: (\\. 0) (\\. 0) ((\\. 0) \\. 0)\n1: (\\. 0) (\\. 0) ((\\. 0) \\. 0)\n");
  CHECK(cli({"unfold", four, "--root", "right"}).out == "(\\. 0) (\\. 0) ((\\. 0) \\. 0)\n");
  CHECK(cli({"unfold", four, "--root", "1"}).code == 0);
  CHECK(cli({"unfold", four, "--root", "5"}).code == 2);
  CHECK(cli({"unfold", four, "--root", "nope"}).code == 2);
}

TEST_CASE("quotient") {
  TempDir dir;
  const auto g = dir.write("four.json", kFourLambdasJson);
  const auto q = dir.write("four.query", "[[\"left\", \"right\"]]");
  Run r = cli({"quotient", g, q});
  REQUIRE(r.code == 0);
  LamGraph quot = parse_graph_json(r.out);
  CHECK(fixtures::isomorphic(quot, fixtures::four_lambdas_collapsed()));

  const auto out_file = dir.write("out.json", "");
  CHECK(cli({"quotient", g, q, "-o", out_file}).code == 0);
  std::ifstream in(out_file);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == r.out);

  const auto ids = dir.write("ids.json", R"({"nodes": [
    {"id": 0, "kind": "abs", "body": 1}, {"id": 1, "kind": "bvar", "binder": 0},
    {"id": 2, "kind": "abs", "body": 4}, {"id": 3, "kind": "abs", "body": 2},
    {"id": 4, "kind": "bvar", "binder": 3}]})");
  const auto q2 = dir.write("ids.query", "[[0, 3]]");
  r = cli({"quotient", ids, q2});
  CHECK(r.code == 1);
  CHECK(r.out.rfind("NOT EQUAL", 0) == 0);
}

TEST_CASE("bench") {
  Run r = cli({"bench", "--sizes", "0", "--json", "--min-time", "0"});
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  REQUIRE(j["rows"].size() == 1);
  CHECK(j["rows"][0]["equal"] == true);
  CHECK(j["rows"][0]["classes"] == 1);

  r = cli({"bench", "--sizes", "2^4..2^6", "--min-time", "0"});
  CHECK(r.code == 0);
  CHECK(r.out.find("fit:") != std::string::npos);

  r = cli({"bench", "--family", "random-sharing", "--sizes", "16,32", "--json", "--min-time", "0"});
  CHECK(r.code == 0);
  ::setenv("SHAREQ_SEED", "42", 1);
  Run a = cli({"bench", "--family", "random-sharing", "--sizes", "16,32", "--json", "--min-time", "0"});
  Run b = cli({"bench", "--family", "random-sharing", "--sizes", "16,32", "--json", "--min-time", "0", "--seed", "7"});
  ::unsetenv("SHAREQ_SEED");
  auto nodes = [](const Run& run) { return nlohmann::json::parse(run.out)["rows"][1]["nodes"]; };
  CHECK(nodes(a) == nodes(b));

  CHECK(cli({"bench", "--sizes", "2^26"}).code == 2);
  CHECK(cli({"bench", "--sizes", "2^x"}).code == 2);
  CHECK(cli({"bench", "--family", "nope"}).code == 2);
}

TEST_CASE("usage errors") {
  CHECK(cli({}).code == 2);
  CHECK(cli({"frobnicate"}).code == 2);
  CHECK(cli({"check", "only-one"}).code == 2);
  CHECK(cli({"check", "a", "b", "--backend", "parallel"}).code == 2);
  CHECK(cli({"--help"}).code == 0);
}
