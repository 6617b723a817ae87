// Hand-built graphs shared by the unit and acceptance tests.

#pragma once

#include <string>

#include "shareq/checker.hpp"
#include "shareq/generators.hpp"
#include "shareq/graph.hpp"
#include "shareq/surface.hpp"

namespace fixtures {

using namespace shareq;

// (\x. x (\y. w)) ((\y. w) w) without sharing, and with \y. w shared.
inline const char* kFirstTree = "(\\x. x (\\y. w)) ((\\y. w) w)";
inline const char* kFirstShared = "let k = \\y. w in (\\x. x k) (k w)";

// App(Abs(A), A) with A = App(v, v) and v bound by the Abs: v is reachable
// from the root without crossing its binder.
inline const char* kEscapingVarJson = R"({
  "nodes": [
    {"id": 0, "kind": "app", "left": 1, "right": 2},
    {"id": 1, "kind": "abs", "body": 2},
    {"id": 2, "kind": "app", "left": 3, "right": 3},
    {"id": 3, "kind": "bvar", "binder": 1}
  ]
})";

/// Two roots over four λ.0 subgraphs:
///   r1 = App(P, Q), P = App(L0, L0), Q = App(L1, L1)
///   r2 = App(S, S), S = App(L2, L3)
/// Node ids: r1 0, r2 1, P 2, Q 3, S 4, L0..L3 5..8, their variables 9..12.
LamGraph four_lambdas();
inline constexpr std::uint32_t kFourLambdasRoots[2] = {0, 1};

/// App(X, X), X = App(L, L), L = λ.0: what four_lambdas collapses to.
LamGraph four_lambdas_collapsed();

/// Two separate λ.0 graphs: Abs 0 (var 1) and Abs 2 (var 3).
LamGraph two_identities();

/// (\x. (x x)(x x)) (\x. (x x)(x x)) with maximal sharing: 5 nodes.
inline const char* kSelfAppShared = "let f = \\x. let d = x x in d d in f f";
/// The same term as a tree: one node per constructor occurrence.
inline const char* kSelfAppTree = "(\\x. (x x) (x x)) (\\x. (x x) (x x))";

/// One graph holding both forms above, roots `shared` and `tree`.
struct SelfApp {
  LamGraph graph;
  NodeId shared;
  NodeId tree;
};
SelfApp self_app();

/// A λ-term tree built node by node: every variable occurrence gets its own
/// node, unlike compile_into which shares one BoundVar per binder.
NodeId append_fully_unshared(GraphBuilder& b, const SurfaceAst& ast);

CompiledGraph compile(const std::string& text);

/// Structural isomorphism (same shapes, binders and free names), trying every
/// pairing of roots. Meant for small graphs.
bool isomorphic(const LamGraph& a, const LamGraph& b);

}  // namespace fixtures
