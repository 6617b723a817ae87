#include "doctest.h"
#include "support/fixtures.hpp"
#include "support/nameless.hpp"
#include "shareq/generators.hpp"
#include "shareq/term.hpp"

using namespace shareq;

TEST_CASE("parse shapes") {
  SUBCASE("variable") {
    SurfaceAst a = parse_surface("x");
    CHECK(a.at(a.root).kind == Expr::Kind::Var);
    CHECK(a.at(a.root).name == "x");
  }
  SUBCASE("let") {
    SurfaceAst a = parse_surface("let d = x x in d d");
    const Expr& let = a.at(a.root);
    REQUIRE(let.kind == Expr::Kind::Let);
    CHECK(let.name == "d");
    const Expr& bound = a.at(let.first);
    REQUIRE(bound.kind == Expr::Kind::App);
    CHECK(a.at(bound.first).name == "x");
    CHECK(a.at(bound.second).name == "x");
    const Expr& body = a.at(let.second);
    REQUIRE(body.kind == Expr::Kind::App);
    CHECK(a.at(body.first).name == "d");
  }
  SUBCASE("first term") {
    SurfaceAst a = parse_surface(fixtures::kFirstTree);
    const Expr& root = a.at(a.root);
    REQUIRE(root.kind == Expr::Kind::App);
    const Expr& lam = a.at(root.first);
    REQUIRE(lam.kind == Expr::Kind::Lam);
    CHECK(lam.name == "x");
    const Expr& arg = a.at(root.second);
    REQUIRE(arg.kind == Expr::Kind::App);
    CHECK(a.at(arg.first).kind == Expr::Kind::Lam);
    CHECK(a.at(arg.second).name == "w");
  }
  SUBCASE("application is left associative, lambda extends right") {
    SurfaceAst a = parse_surface("f x \\y. y z");
    const Expr& root = a.at(a.root);
    REQUIRE(root.kind == Expr::Kind::App);
    CHECK(a.at(root.second).kind == Expr::Kind::Lam);
    CHECK(a.at(root.first).kind == Expr::Kind::App);
  }
  SUBCASE("multi-binder sugar and comments") {
    SurfaceAst a = parse_surface("# k\n\\x y. x  # trailing\n");
    const Expr& outer = a.at(a.root);
    REQUIRE(outer.kind == Expr::Kind::Lam);
    CHECK(a.at(outer.first).kind == Expr::Kind::Lam);
  }
}

TEST_CASE("parse errors carry positions") {
  for (const char* bad : {"", "(x", "\\. x", "let x = y", "x )", "let in = x in x", "\\x x", "x $"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_surface(bad), ParseError);
  }
  try {
    parse_surface("x\n  (y");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.where().line == 2);
    CHECK(std::string(e.what()).rfind("2:", 0) == 0);
  }
}

TEST_CASE("compilation shapes") {
  SUBCASE("maximally shared self application has 5 nodes") {
    auto c = fixtures::compile("let y = (\\x. let s = x x in s s) in y y");
    CHECK(c.graph.size() == 5);
    CHECK(fixtures::compile(fixtures::kSelfAppShared).graph.size() == 5);
  }
  SUBCASE("single variable") { CHECK(fixtures::compile("x").graph.size() == 1); }
  SUBCASE("free x under a let, rebound by a lambda") {
    // x, x x, \x. (x x) and the root: the λ's own variable is unused.
    auto c = fixtures::compile("let s = x x in (\\x. s) s");
    CHECK(c.graph.size() == 4);
    CHECK_NOTHROW(validate_dominated(c.graph));
    CHECK(readback(c.graph, c.root, 100).to_string(c.graph.atoms()) == "(\\. x x) (x x)");
  }
  SUBCASE("unused let is not compiled") {
    auto c = fixtures::compile("let u = y in x");
    CHECK(c.graph.size() == 1);
  }
  SUBCASE("let sharing under a binder") {
    auto c = fixtures::compile("\\x. let d = x x in d d");
    CHECK(c.graph.size() == 4);
  }
  SUBCASE("fully unshared self application has 17 nodes") {
    GraphBuilder b;
    fixtures::append_fully_unshared(b, parse_surface(fixtures::kSelfAppTree));
    CHECK(std::move(b).build().size() == 17);
  }
}

TEST_CASE("compile then readback equals direct translation") {
  for (const char* src : {fixtures::kFirstTree, fixtures::kFirstShared, fixtures::kSelfAppShared,
                          "let s = x x in (\\x. s) s", "\\x. let f = \\y. x y in f (f x)",
                          "let a = \\z. z in let b = a a in \\q. b (q a)", "\\x. let x = x x in \\x. x"}) {
    CAPTURE(src);
    const SurfaceAst ast = parse_surface(src);
    auto c = compile_to_graph(ast);
    CHECK(readback(c.graph, c.root, 100000) == oracle::to_nameless(ast, c.graph.atoms()));
  }
}

TEST_CASE("random terms: compile and random sharing preserve the translation") {
  int collapsed = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const SurfaceAst ast = gen_random_term(12, seed);
    auto c = compile_to_graph(ast);
    const Term expected = oracle::to_nameless(ast, c.graph.atoms());
    REQUIRE(readback(c.graph, c.root, 1000) == expected);
    auto s = gen_random_sharing(ast, seed);
    CHECK(s.graph.size() <= c.graph.size());
    CHECK(readback(s.graph, s.root, 1000) == expected);
    if (s.graph.size() < c.graph.size()) ++collapsed;
  }
  CHECK(collapsed > 100);
}
