// Deterministic graph and term generators for tests and benchmarks. Every
// generator is a pure function of its arguments.

#pragma once

#include <cstdint>
#include <functional>
#include <span>

#include "shareq/graph.hpp"
#include "shareq/surface.hpp"

namespace shareq {

/// s_0 = x, s_{k+1} = App(s_k, s_k): n+1 nodes unfolding to 2^{n+1}-1
/// constructors. Appends into `builder` (sharing its free variable `x`).
NodeId append_shared_power(GraphBuilder& builder, std::uint32_t n);
CompiledGraph gen_shared_power(std::uint32_t n);

/// The unfolding of gen_shared_power(n) as a tree (apart from the merged free
/// variable). Refuses n > 24.
NodeId append_unshared_tree(GraphBuilder& builder, std::uint32_t n);

/// Two independent shared-power chains over one free variable.
struct GraphPair {
  LamGraph graph;
  NodeId first;
  NodeId second;
};
GraphPair gen_shared_power_pair(std::uint32_t n);

/// Calls `visit` with every valid λ-graph of 1..max_nodes nodes, up to node
/// renaming and renaming of the (at most two) free variables `x`, `y`.
/// Nodes are numbered in depth-first order from the roots. max_nodes <= 7.
void enumerate_graphs(std::uint32_t max_nodes, const std::function<void(const LamGraph&)>& visit);

/// Random let-free term of exactly `size` constructors. Half of the variable
/// leaves reuse an enclosing binder when one exists; free names are `x`, `y`.
SurfaceAst gen_random_term(std::uint32_t size, std::uint64_t seed);

/// Randomly shares structurally identical subgraphs of `g`. Identity is taken
/// up to the binders a subgraph refers to outside itself, which keeps every
/// collapse readback-preserving and domination-safe. Nodes in `keep` stay
/// distinct; the result holds only nodes reachable from them, and `keep` is
/// rewritten to the new ids.
LamGraph random_collapse(const LamGraph& g, std::span<NodeId> keep, std::uint64_t seed);

/// compile_to_graph followed by random_collapse of the compiled root.
CompiledGraph gen_random_sharing(const SurfaceAst& ast, std::uint64_t seed);

/// Two random terms in one arena with independent random sharings. The second
/// term is, with equal odds, independent of the first, the first with its
/// binders renamed, or the first with one leaf changed.
struct RandomPair {
  SurfaceAst first_ast;
  SurfaceAst second_ast;
  GraphPair pair;
};
RandomPair gen_random_pair(std::uint32_t max_size, std::uint64_t seed);

}  // namespace shareq
