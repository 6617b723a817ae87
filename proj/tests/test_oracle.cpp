#include "doctest.h"
#include "support/fixtures.hpp"
#include "support/partitions.hpp"
#include "shareq/generators.hpp"
#include "shareq/oracle.hpp"
#include "shareq/term.hpp"

using namespace shareq;

namespace {

NodePartition relate(std::size_t n, std::initializer_list<std::pair<std::uint32_t, std::uint32_t>> pairs) {
  NodePartition p(n);
  for (auto [a, b] : pairs) p.unite(NodeId{a}, NodeId{b});
  return p;
}

bool refines(const NodePartition& fine, const NodePartition& coarse) {
  for (std::uint32_t i = 0; i < fine.size(); ++i)
    if (!coarse.same(NodeId{i}, fine.find(NodeId{i}))) return false;
  return true;
}

}  // namespace

TEST_CASE("partition basics") {
  NodePartition p(5);
  CHECK(p.class_count() == 5);
  CHECK(p.unite(NodeId{3}, NodeId{1}));
  CHECK_FALSE(p.unite(NodeId{1}, NodeId{3}));
  CHECK(p.unite(NodeId{4}, NodeId{3}));
  CHECK(p.class_count() == 3);
  CHECK(p.normalized() == std::vector<std::uint32_t>{0, 1, 2, 1, 1});
  const std::uint32_t reps[] = {0, 4, 2, 4, 4};
  CHECK(NodePartition::from_representatives(reps) == p);
  int count = 0;
  oracle::for_each_partition(5, [&](const NodePartition&) { ++count; });
  CHECK(count == 52);
}

TEST_CASE("spreading the four-lambda query") {
  LamGraph g = fixtures::four_lambdas();
  const std::vector<std::pair<NodeId, NodeId>> q{{NodeId{0}, NodeId{1}}};
  NodePartition s = spread_query(g, q);
  // Roots, the three inner applications, the four abstractions, the four
  // variables.
  CHECK(s.class_count() == 4);
  CHECK(s.same(NodeId{2}, NodeId{4}));
  CHECK(s.same(NodeId{3}, NodeId{4}));
  CHECK(s.same(NodeId{5}, NodeId{8}));
  CHECK(s.same(NodeId{9}, NodeId{12}));
  CHECK(is_blind_sharing_equivalence(g, s));
  CHECK(is_sharing_equivalence(g, s));
  Quotient quot = quotient(g, s);
  CHECK(quot.graph.size() == 4);
  CHECK(fixtures::isomorphic(quot.graph, fixtures::four_lambdas_collapsed()));
  CHECK_NOTHROW(validate_dominated(quot.graph));
  CHECK(sharing_check(g, q).partition == s);
}

TEST_CASE("spreading trivial relations") {
  LamGraph g = fixtures::four_lambdas();
  CHECK(spread_query(g, {}).class_count() == g.size());
  CHECK(spread_query(g, {{NodeId{3}, NodeId{3}}}).class_count() == g.size());
}

TEST_CASE("blind sharing equivalence") {
  GraphBuilder b;
  const NodeId x = b.free_var("x");
  const NodeId app = b.app(x, x);
  const NodeId abs = b.abs(x);
  LamGraph g = std::move(b).build();
  CHECK_FALSE(is_blind_sharing_equivalence(g, relate(g.size(), {{app.value, abs.value}})));
  CHECK_FALSE(is_blind_sharing_equivalence(g, spread_query(g, {{app, abs}})));
  CHECK(is_blind_sharing_equivalence(g, NodePartition(g.size())));
}

TEST_CASE("sharing equivalence conditions") {
  LamGraph g = fixtures::two_identities();
  // Abs pair and var pair related.
  CHECK(is_sharing_equivalence(g, relate(4, {{0, 2}, {1, 3}})));
  // Only the variables: closed under spreading, blind, but binders apart.
  NodePartition d = spread_query(g, {{NodeId{1}, NodeId{3}}});
  CHECK(d.class_count() == 3);
  CHECK(is_blind_sharing_equivalence(g, d));
  CHECK_FALSE(is_sharing_equivalence(g, d));
  CHECK_THROWS_AS(quotient(g, d), NotASharingEquivalence);

  GraphBuilder b;
  const NodeId x = b.free_var("x");
  const NodeId y = b.free_var("y");
  LamGraph h = std::move(b).build();
  CHECK_FALSE(is_sharing_equivalence(h, relate(2, {{x.value, y.value}})));
  CHECK(is_sharing_equivalence(h, NodePartition(2)));
}

TEST_CASE("quotients") {
  SUBCASE("identity partition") {
    auto c = fixtures::compile(fixtures::kFirstShared);
    Quotient q = quotient(c.graph, NodePartition(c.graph.size()));
    CHECK(fixtures::isomorphic(q.graph, c.graph));
  }
  SUBCASE("unshared self application onto its shared form") {
    auto s = fixtures::self_app();
    auto r = sharing_check(s.graph, {{s.shared, s.tree}});
    REQUIRE(r.ok());
    // Restrict to the tree: rebuild the tree alone; its ids are the same
    // relative order, shifted by the 5 shared nodes compiled first.
    GraphBuilder b;
    const NodeId tree_root = fixtures::append_fully_unshared(b, parse_surface(fixtures::kSelfAppTree));
    LamGraph tree = std::move(b).build();
    REQUIRE(tree.size() == 17);
    REQUIRE(s.graph.size() == 22);
    std::vector<std::uint32_t> reps(17);
    const auto norm = r.partition.normalized();
    // In s.graph the tree occupies ids 5..21; map each tree node to the
    // smallest tree node of its class.
    for (std::uint32_t i = 0; i < 17; ++i) {
      std::uint32_t best = i;
      for (std::uint32_t j = 0; j < 17; ++j)
        if (norm[5 + j] == norm[5 + i]) best = std::min(best, j);
      reps[i] = best;
    }
    NodePartition restricted = NodePartition::from_representatives(reps);
    Quotient q = quotient(tree, restricted);
    CHECK(q.graph.size() == 5);
    CHECK_NOTHROW(validate_acyclic(q.graph));
    CHECK_NOTHROW(validate_dominated(q.graph));
    CHECK(readback(q.graph, q.image[tree_root.value], 1000) == readback(tree, tree_root, 1000));
  }
}

TEST_CASE("readback equality") {
  GraphBuilder b;
  const NodeId tree = compile_into(b, parse_surface(fixtures::kFirstTree));
  const NodeId shared = compile_into(b, parse_surface(fixtures::kFirstShared));
  const NodeId id = compile_into(b, parse_surface("\\x. x"));
  const NodeId ki = compile_into(b, parse_surface("\\x. \\y. y"));
  LamGraph g = std::move(b).build();
  CHECK(readback_equal(g, {{tree, tree}}, 100));
  CHECK(readback_equal(g, {{tree, shared}}, 100));
  CHECK_FALSE(readback_equal(g, {{id, ki}}, 100));
  CHECK_THROWS_AS(readback_equal(g, {{tree, shared}}, 3), LimitExceeded);
}

TEST_CASE("spreading a query is the smallest sharing equivalence containing it") {
  // Exhaustive over graphs of up to 5 nodes, every single-pair root query and
  // every partition of the nodes.
  std::size_t graphs = 0;
  enumerate_graphs(5, [&](const LamGraph& g) {
    ++graphs;
    for (NodeId a : g.roots()) {
      for (NodeId b : g.roots()) {
        if (b < a) continue;
        const Query q{{a, b}};
        const NodePartition spread = spread_query(g, q);
        const SharingResult r = sharing_check(g, q);
        bool any = false;
        oracle::for_each_partition(static_cast<std::uint32_t>(g.size()), [&](const NodePartition& p) {
          if (!p.same(a, b) || !is_sharing_equivalence(g, p)) return;
          any = true;
          CHECK(refines(spread, p));
        });
        // A sharing equivalence containing the query exists iff the check
        // succeeds, and then the spread is one.
        CHECK(any == r.ok());
        CHECK(is_sharing_equivalence(g, spread) == r.ok());
        CHECK(readback_equal(g, q, 1000) == r.ok());
      }
    }
  });
  CHECK(graphs > 100);
}
